//! Rational modular arithmetic used by the congruence catalog: modular
//! exponentiation, Tonelli–Shanks square roots, the octic power q^[p/8]
//! mod p, residue classification by quartic character, and the −2 identity.
//!
//! Moduli are machine words; every product goes through u128 so the
//! arithmetic is exact for any modulus below 2^63.

use crate::qforms::TwoSquaresRep;
use crate::qsymbol;
use crate::{Error, GaussianInt, Result};

/// a·b mod m via u128.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// b^e mod m for m ≥ 1.
pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    b %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Reduces a signed value into [0, m).
#[inline]
pub fn reduce_mod(v: i64, m: u64) -> u64 {
    v.rem_euclid(m as i64) as u64
}

/// Multiplicative inverse mod m, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// base^exp mod modulus. Negative exponents are allowed when the base is
/// invertible.
pub fn mod_pow(base: i64, exp: i64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::BadModulus);
    }
    let b = reduce_mod(base, modulus);
    if exp >= 0 {
        Ok(pow_mod_u64(b, exp as u64, modulus))
    } else {
        let inv = inv_mod(b, modulus).ok_or(Error::NotInvertible)?;
        Ok(pow_mod_u64(inv, exp.unsigned_abs(), modulus))
    }
}

/// Smallest nonnegative square root of a mod p (p an odd prime), or `None`
/// when a is a quadratic nonresidue. Deterministic: the Tonelli–Shanks
/// nonresidue base is the smallest prime nonresidue.
pub fn sqrt_mod(a: i64, p: u64) -> Option<u64> {
    let a = reduce_mod(a, p);
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod_u64(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod_u64(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    Some(root.min(p - root))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut s = p - 1;
    let mut e = 0u32;
    while s % 2 == 0 {
        s /= 2;
        e += 1;
    }
    let mut z = 2u64;
    while pow_mod_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut b = pow_mod_u64(a, s, p);
    let mut g = pow_mod_u64(z, s, p);
    let mut x = pow_mod_u64(a, (s + 1) / 2, p);
    let mut r = e;
    loop {
        let mut t = b;
        let mut m = 0u32;
        while m < r && t != 1 {
            t = mul_mod(t, t, p);
            m += 1;
        }
        if m == 0 {
            return x;
        }
        let gs = pow_mod_u64(g, 1 << (r - m - 1), p);
        g = mul_mod(gs, gs, p);
        x = mul_mod(x, gs, p);
        b = mul_mod(b, g, p);
        r = m;
    }
}

/// The greatest-integer exponent e = [p/8] attached to an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OcticExponent {
    pub p: u64,
    pub e: u64,
}

impl OcticExponent {
    pub fn new(p: u64) -> Self {
        Self { p, e: p / 8 }
    }
}

/// q^[p/8] mod p for p ≡ 1 (mod 4), p ∤ q.
pub fn octic_power(q: i64, p: u64) -> Result<u64> {
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    if reduce_mod(q, p) == 0 {
        return Err(Error::Precondition(format!("p = {p} divides q = {q}")));
    }
    mod_pow(q, OcticExponent::new(p).e as i64, p)
}

// --- arithmetic in Z[i]/(p) for inert p -------------------------------------

/// A residue a + bi in Z[i]/(p). For p ≡ 3 (mod 4) this ring is the field of
/// p² elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussModP {
    pub re: u64,
    pub im: u64,
}

impl GaussModP {
    pub fn new(re: i64, im: i64, p: u64) -> Self {
        Self {
            re: reduce_mod(re, p),
            im: reduce_mod(im, p),
        }
    }

    pub fn mul(self, o: Self, p: u64) -> Self {
        let re = (self.re as u128 * o.re as u128 + (p as u128) * (p as u128)
            - self.im as u128 * o.im as u128)
            % p as u128;
        let im = (self.re as u128 * o.im as u128 + self.im as u128 * o.re as u128) % p as u128;
        Self {
            re: re as u64,
            im: im as u64,
        }
    }

    pub fn pow(self, mut e: u64, p: u64) -> Self {
        let mut base = self;
        let mut acc = Self { re: 1, im: 0 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base, p);
            }
            base = base.mul(base, p);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the conjugate; requires norm ≢ 0 (mod p).
    pub fn inv(self, p: u64) -> Option<Self> {
        let norm = (mul_mod(self.re, self.re, p) + mul_mod(self.im, self.im, p)) % p;
        let ninv = inv_mod(norm, p)?;
        Some(Self {
            re: mul_mod(self.re, ninv, p),
            im: mul_mod((p - self.im) % p, ninv, p),
        })
    }

    /// Writes self as i^k if it is an exact fourth root of unity.
    pub fn unit_exponent(self, p: u64) -> Option<u8> {
        match (self.re, self.im) {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            (r, 0) if r == p - 1 => Some(2),
            (0, i) if i == p - 1 => Some(3),
            _ => None,
        }
    }
}

/// A residue k together with the exponent r of its quartic class
/// ((k+i)/p)₄ = i^r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QrClass {
    pub k: u64,
    pub r: u8,
}

/// Classifies k by the quartic symbol ((k+i)/p)₄ directly. Requires
/// k² + 1 ≢ 0 (mod p).
pub fn classify_qr(k: u64, p: u64) -> Result<QrClass> {
    if (mul_mod(k, k, p) + 1) % p == 0 {
        return Err(Error::Precondition(format!("k² ≡ -1 (mod {p})")));
    }
    let sym = qsymbol::quartic_jacobi(
        &GaussianInt::new(k as i64, 1),
        &GaussianInt::new(p as i64, 0),
    )?;
    Ok(QrClass {
        k,
        r: sym.exponent(),
    })
}

/// The classification criterion, used as an independent cross-check of
/// [`classify_qr`].
///
/// For p ≡ 1 (mod 4): k ∈ Q_r(p) iff ((k+t)/(k−t))^((p−1)/4) ≡ t^r (mod p),
/// where t is any square root of −1 (pass it explicitly; the result must not
/// depend on which of the two roots is used).
///
/// For p ≡ 3 (mod 4): k ∈ Q_r(p) iff ((k−i)/(k+i))^((p+1)/4) ≡ i^r in Z[i]/(p).
pub fn qr_criterion(k: u64, p: u64, t_choice: Option<u64>) -> Result<u8> {
    if (mul_mod(k, k, p) + 1) % p == 0 {
        return Err(Error::Precondition(format!("k² ≡ -1 (mod {p})")));
    }
    if p % 4 == 1 {
        let t = match t_choice {
            Some(t) => {
                if mul_mod(t, t, p) != p - 1 {
                    return Err(Error::Precondition(format!("t² ≢ -1 (mod {p})")));
                }
                t
            }
            None => sqrt_mod(-1, p)
                .ok_or_else(|| Error::Precondition(format!("-1 is not a square mod {p}")))?,
        };
        let num = (k + t) % p;
        let den = (k + p - t) % p;
        let w = mul_mod(num, inv_mod(den, p).ok_or(Error::NotInvertible)?, p);
        let v = pow_mod_u64(w, (p - 1) / 4, p);
        for r in 0..4u8 {
            if v == pow_mod_u64(t, r as u64, p) {
                return Ok(r);
            }
        }
        Err(Error::Internal(format!(
            "criterion power is not in <t> for k={k}, p={p}"
        )))
    } else {
        let num = GaussModP::new(k as i64, -1, p);
        let den = GaussModP::new(k as i64, 1, p);
        let w = num.mul(den.inv(p).ok_or(Error::NotInvertible)?, p);
        let v = w.pow((p + 1) / 4, p);
        v.unit_exponent(p)
            .ok_or_else(|| Error::Internal(format!("criterion power is not i^r for k={k}, p={p}")))
    }
}

/// The two-case closed form for (−2)^((p−1)/8) mod p attached to the
/// normalized representation p = c²+d²: d/c when 8 | d−4, (−1)^(d/8) when
/// 8 | d. Requires p ≡ 1 (mod 8).
pub fn neg_two_octic_check(p: u64, rep: &TwoSquaresRep) -> Result<u64> {
    if p % 8 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 8")));
    }
    let d = rep.d;
    if (d - 4).rem_euclid(8) == 0 {
        let c_inv = inv_mod(reduce_mod(rep.c, p), p).ok_or(Error::NotInvertible)?;
        Ok(mul_mod(reduce_mod(d, p), c_inv, p))
    } else {
        debug_assert!(d.rem_euclid(8) == 0);
        if (d / 8) % 2 == 0 {
            Ok(1)
        } else {
            Ok(p - 1)
        }
    }
}

/// Translates a symbol value into the octic power it predicts: given
/// ((x/y)/(c+di))₄ = (−1)^(s+(p−1)/8) i^n for p = x²+2qy², the value of
/// (−q)^((p−1)/8) mod p is (−1)^s (d/c)^(n−1) when 8 | d−4, and
/// (−1)^(s+d/8) (d/c)^n when 8 | d.
pub fn octic_prediction(s: u8, n: u8, rep: &TwoSquaresRep, p: u64) -> Result<u64> {
    if p % 8 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 8")));
    }
    let dc = mul_mod(
        reduce_mod(rep.d, p),
        inv_mod(reduce_mod(rep.c, p), p).ok_or(Error::NotInvertible)?,
        p,
    );
    // (d/c)² ≡ −1, so exponents act mod 4.
    let (sign_exp, dc_exp) = if (rep.d - 4).rem_euclid(8) == 0 {
        (s as i64, (n as i64 + 3) % 4)
    } else {
        (s as i64 + rep.d / 8, n as i64 % 4)
    };
    let mut v = pow_mod_u64(dc, dc_exp as u64, p);
    if sign_exp.rem_euclid(2) == 1 {
        v = p - v;
    }
    Ok(v % p)
}
