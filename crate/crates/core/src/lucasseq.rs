//! Lucas sequences U_n(P,Q), V_n(P,Q) by fast doubling, exact over the
//! integers or reduced modulo an odd modulus, with the √D closed forms as a
//! cross-check. Indices near p/4 for p around 10⁷ make the O(log n) doubling
//! necessary for scan throughput.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modres::{inv_mod, mul_mod, pow_mod_u64, reduce_mod, sqrt_mod};
use crate::{Error, Result};

/// A value pair (U_n, V_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasPair {
    pub u: BigInt,
    pub v: BigInt,
}

/// Exact (U_n(P,Q), V_n(P,Q)) by fast doubling.
///
/// Doubling: U_2k = U_k V_k, V_2k = V_k² − 2Q^k; stepping:
/// U_{k+1} = (P U_k + V_k)/2, V_{k+1} = (D U_k + P V_k)/2 with D = P²−4Q.
pub fn lucas_uv(p: i64, q: i64, n: u64) -> LucasPair {
    let (pp, qq) = (BigInt::from(p), BigInt::from(q));
    let dd = &pp * &pp - &qq * 4;
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one(); // Q^k for the current index k
    for i in (0..64).rev() {
        let u2 = &u * &v;
        let v2 = &v * &v - &qk * 2;
        u = u2;
        v = v2;
        qk = &qk * &qk;
        if (n >> i) & 1 == 1 {
            let u3 = (&pp * &u + &v) / 2;
            let v3 = (&dd * &u + &pp * &v) / 2;
            u = u3;
            v = v3;
            qk *= &qq;
        }
    }
    LucasPair { u, v }
}

/// (U_n, V_n) mod an odd modulus ≥ 3.
pub fn lucas_uv_mod(p: i64, q: i64, n: u64, modulus: u64) -> Result<(u64, u64)> {
    if modulus < 3 || modulus % 2 == 0 {
        return Err(Error::BadModulus);
    }
    let m = modulus;
    let inv2 = (m + 1) / 2;
    let pp = reduce_mod(p, m);
    let qq = reduce_mod(q, m);
    let dd = (mul_mod(pp, pp, m) + 4 * m - 4 * qq % m) % m;
    let mut u = 0u64;
    let mut v = 2 % m;
    let mut qk = 1u64;
    for i in (0..64).rev() {
        let u2 = mul_mod(u, v, m);
        let v2 = (mul_mod(v, v, m) + 2 * m - 2 * qk % m) % m;
        u = u2;
        v = v2;
        qk = mul_mod(qk, qk, m);
        if (n >> i) & 1 == 1 {
            let t = (mul_mod(pp, u, m) + v) % m;
            let u3 = mul_mod(t, inv2, m);
            let s = (mul_mod(dd, u, m) + mul_mod(pp, v, m)) % m;
            let v3 = mul_mod(s, inv2, m);
            u = u3;
            v = v3;
            qk = mul_mod(qk, qq, m);
        }
    }
    Ok((u, v))
}

/// Evaluates the closed forms
/// U_n = (α^n − β^n)/√D and V_n = α^n + β^n with α,β = (P ± √D)/2
/// in F_p and compares them with the doubling path. Requires D = P²−4Q to be
/// a nonzero quadratic residue mod the odd prime p.
pub fn closed_form_check(p_param: i64, q_param: i64, n: u64, p: u64) -> Result<bool> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::BadModulus);
    }
    let pp0 = reduce_mod(p_param, p);
    let qq0 = reduce_mod(q_param, p);
    let d = (mul_mod(pp0, pp0, p) + 4 * p - 4 * qq0 % p) % p;
    if d == 0 {
        return Err(Error::Precondition("D = P² - 4Q ≡ 0".into()));
    }
    let s = sqrt_mod(d as i64, p)
        .ok_or_else(|| Error::Precondition(format!("D = {d} is not a square mod {p}")))?;
    if s == 0 {
        return Err(Error::Precondition("D = P² - 4Q ≡ 0".into()));
    }
    let inv2 = (p + 1) / 2;
    let pp = reduce_mod(p_param, p);
    let alpha = mul_mod((pp + s) % p, inv2, p);
    let beta = mul_mod((pp + p - s) % p, inv2, p);
    let an = pow_mod_u64(alpha, n, p);
    let bn = pow_mod_u64(beta, n, p);
    let sinv = inv_mod(s, p).ok_or(Error::NotInvertible)?;
    let u_cf = mul_mod((an + p - bn) % p, sinv, p);
    let v_cf = (an + bn) % p;
    let (u, v) = lucas_uv_mod(p_param, q_param, n, p)?;
    Ok(u == u_cf && v == v_cf)
}

/// Checks the equivalence
/// p | U_{(p−1)/8}(2a,−1) ⟺ V_{(p−1)/4}(2a,−1) ≡ 2(−1)^((p−1)/8) (mod p)
/// for p ≡ 1 (mod 8). A library self-test: the equivalence must always hold.
pub fn eighth_index_divisibility_criterion(a: i64, p: u64) -> Result<bool> {
    if p % 8 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 8")));
    }
    let (u8th, _) = lucas_uv_mod(2 * a, -1, (p - 1) / 8, p)?;
    let (_, v4th) = lucas_uv_mod(2 * a, -1, (p - 1) / 4, p)?;
    let lhs = u8th == 0;
    let signated = if ((p - 1) / 8) % 2 == 0 { 2 % p } else { p - 2 };
    let rhs = v4th == signated;
    Ok(lhs == rhs)
}
