//! Quadratic and quartic Jacobi symbols.
//!
//! The quadratic symbol follows the conventions (a/1) = 1 and (a/−m) = (a/m).
//!
//! The quartic Jacobi symbol ((α/μ))₄ is computed two independent ways:
//!
//! * [`quartic_jacobi`] — a Euclidean algorithm built on the general quartic
//!   reciprocity flip together with the closed-form supplements for i, 1+i,
//!   −1 and 2. No factorization is performed, so the cost is polynomial in
//!   log norm(μ). This is the production path.
//! * [`quartic_oracle`] — factors μ into Gaussian primes by trial division of
//!   its norm and multiplies the classical power characters
//!   α^((N(π)−1)/4) mod π. Slower, used only as a differential-testing
//!   reference.
//!
//! The value type [`QuarticValue`] is an exact fourth root of unity; symbols
//! are never 0 here — non-coprime input is an error.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gint::GaussianInt;
use crate::{Error, Result};

pub mod oracle;

pub use oracle::{quartic_oracle, FactoredDenominator};

/// An exact fourth root of unity i^k, k ∈ Z/4Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarticValue(u8);

impl QuarticValue {
    pub const ONE: Self = QuarticValue(0);
    pub const I: Self = QuarticValue(1);
    pub const MINUS_ONE: Self = QuarticValue(2);
    pub const MINUS_I: Self = QuarticValue(3);

    /// i^k for any integer k.
    pub fn from_exponent(k: i64) -> Self {
        QuarticValue(k.rem_euclid(4) as u8)
    }

    /// The exponent k ∈ {0,1,2,3} with self = i^k.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Self) -> Self {
        QuarticValue((self.0 + other.0) % 4)
    }

    pub fn inv(self) -> Self {
        QuarticValue((4 - self.0) % 4)
    }

    pub fn pow(self, e: i64) -> Self {
        Self::from_exponent(self.0 as i64 * e.rem_euclid(4))
    }

    /// The square, always ±1: returns +1 or −1 as an i8.
    pub fn square_sign(self) -> i8 {
        if self.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn as_gaussian(self) -> GaussianInt {
        GaussianInt::one().mul_i_pow(self.0)
    }
}

impl fmt::Display for QuarticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// Quadratic Jacobi symbol (a/m) for odd m ≠ 0, with (a/1) = 1 and
/// (a/−m) = (a/m). Returns 0 exactly when gcd(a, m) > 1.
pub fn jacobi(a: &BigInt, m: &BigInt) -> Result<i8> {
    if m.is_zero() || m.is_even() {
        return Err(Error::BadModulus);
    }
    let mut m = m.abs();
    if m.is_one() {
        return Ok(1);
    }
    let mut a = a.mod_floor(&m);
    let mut sign = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let m8 = (&m % 8u8).to_u8().unwrap();
            if m8 == 3 || m8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if (&a % 4u8).to_u8().unwrap() == 3 && (&m % 4u8).to_u8().unwrap() == 3 {
            sign = -sign;
        }
        a = a.mod_floor(&m);
    }
    if m.is_one() {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Convenience wrapper over machine integers.
pub fn jacobi_i64(a: i64, m: i64) -> Result<i8> {
    jacobi(&BigInt::from(a), &BigInt::from(m))
}

// --- closed-form supplements -----------------------------------------------
//
// All four supplements depend only on the denominator's coordinates mod 16,
// so they are computed from small residues. The denominator must have odd
// real part and even imaginary part.

fn mod16_big(v: &BigInt) -> u8 {
    v.mod_floor(&BigInt::from(16)).to_u8().unwrap()
}

/// Exponent k with (i/(a+bi))₄ = i^k: k = (a²+b²−1)/4 mod 4.
fn sup_i_exp(a16: u8, b16: u8) -> u8 {
    let n16 = (a16 as u32 * a16 as u32 + b16 as u32 * b16 as u32) % 16;
    debug_assert!(n16 % 4 == 1);
    ((n16 - 1) / 4) as u8 % 4
}

/// Exponent k with ((1+i)/(a+bi))₄ = i^k, split on b mod 4.
fn sup_one_plus_i_exp(a16: u8, b16: u8) -> u8 {
    let negate = a16 % 4 == 3;
    if b16 % 4 == 0 {
        // i^(((-1)^((a-1)/2) (a-b) - 1)/4)
        let t = if negate {
            (32 - (a16 + 16 - b16) % 16) % 16
        } else {
            (a16 + 16 - b16) % 16
        };
        debug_assert!(t % 4 == 1);
        (t - 1) / 4 % 4
    } else {
        // i^((((-1)^((a-1)/2) (b-a) - 1)/4) - 1)
        let s = if negate {
            (32 - (b16 + 16 - a16) % 16) % 16
        } else {
            (b16 + 16 - a16) % 16
        };
        debug_assert!(s % 4 == 1);
        ((s - 1) / 4 + 3) % 4
    }
}

/// Exponent k with (−1/(a+bi))₄ = i^k: (−1)^(b/2).
fn sup_minus_one_exp(b16: u8) -> u8 {
    if b16 % 4 == 0 {
        0
    } else {
        2
    }
}

/// Exponent k with (2/(a+bi))₄ = i^k: i^((−1)^((a−1)/2)·b/2).
fn sup_two_exp(a16: u8, b16: u8) -> u8 {
    let h = (b16 % 8) / 2; // b/2 mod 4
    if a16 % 4 == 3 {
        (4 - h) % 4
    } else {
        h
    }
}

/// Sign exponent of the general quartic reciprocity flip
/// ((a+bi)/(c+di))₄ = (−1)^((b/2)(c−1)/2 + (d/2)(a+b−1)/2) ((c+di)/(a+bi))₄.
fn flip_parity(a16: u8, b16: u8, c16: u8, d16: u8) -> u8 {
    let b2 = u8::from(b16 % 4 == 2);
    let c2 = u8::from(c16 % 4 == 3);
    let d2 = u8::from(d16 % 4 == 2);
    let ab2 = u8::from((a16 + b16) % 4 == 3);
    (b2 * c2 + d2 * ab2) % 2
}

// --- generic engine ---------------------------------------------------------

/// Minimal coefficient interface so the Euclidean engine can run on machine
/// integers when the operands are small and on `BigInt` otherwise.
trait Coeff: Clone + PartialEq {
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_is_even(&self) -> bool;
    fn c_add(&self, o: &Self) -> Self;
    fn c_sub(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_half(&self) -> Self;
    fn c_mod16(&self) -> u8;
    /// round(num/den), den > 0, ties toward +∞.
    fn c_round_div(num: &Self, den: &Self) -> Self;
}

impl Coeff for i64 {
    fn c_one() -> Self {
        1
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
    fn c_is_even(&self) -> bool {
        self % 2 == 0
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_half(&self) -> Self {
        self / 2
    }
    fn c_mod16(&self) -> u8 {
        self.rem_euclid(16) as u8
    }
    fn c_round_div(num: &Self, den: &Self) -> Self {
        let n = *num as i128;
        let d = *den as i128;
        num_integer::Integer::div_floor(&(2 * n + d), &(2 * d)) as i64
    }
}

impl Coeff for BigInt {
    fn c_one() -> Self {
        One::one()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn c_is_even(&self) -> bool {
        Integer::is_even(self)
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_neg(&self) -> Self {
        -self.clone()
    }
    fn c_half(&self) -> Self {
        self / 2
    }
    fn c_mod16(&self) -> u8 {
        mod16_big(self)
    }
    fn c_round_div(num: &Self, den: &Self) -> Self {
        let two = BigInt::from(2);
        (num * &two + den).div_floor(&(den * &two))
    }
}

/// One Euclidean step: numerator mod denominator (nearest rounding).
fn reduce<T: Coeff>(nr: &T, ni: &T, dr: &T, di: &T) -> (T, T) {
    // num·conj(den)
    let tr = nr.c_mul(dr).c_add(&ni.c_mul(di));
    let ti = ni.c_mul(dr).c_sub(&nr.c_mul(di));
    let norm = dr.c_mul(dr).c_add(&di.c_mul(di));
    let qr = T::c_round_div(&tr, &norm);
    let qi = T::c_round_div(&ti, &norm);
    // rem = num - q·den
    let rr = nr.c_sub(&qr.c_mul(dr).c_sub(&qi.c_mul(di)));
    let ri = ni.c_sub(&qr.c_mul(di).c_add(&qi.c_mul(dr)));
    (rr, ri)
}

/// Strips i^s (1+i)^e leaving the canonical primary core.
fn strip<T: Coeff>(mut zr: T, mut zi: T) -> (u8, u32, T, T) {
    let mut e: u32 = 0;
    while zr.c_add(&zi).c_is_even() {
        let nr = zr.c_add(&zi).c_half();
        let ni = zi.c_sub(&zr).c_half();
        zr = nr;
        zi = ni;
        e += 1;
    }
    for j in 0..4u8 {
        let (cr, ci) = match j {
            0 => (zr.clone(), zi.clone()),
            1 => (zi.c_neg(), zr.clone()),
            2 => (zr.c_neg(), zi.c_neg()),
            _ => (zi.clone(), zr.c_neg()),
        };
        if cr.c_mod16() % 2 == 1 && (cr.c_mod16() + ci.c_mod16()) % 4 == 1 {
            return ((4 - j) % 4, e, cr, ci);
        }
    }
    unreachable!("odd-norm value always has a primary associate")
}

/// Core loop shared by the i64 and BigInt paths. The denominator must have
/// odd norm; it is rotated into the re-odd/im-even shape first (a unit factor
/// on the denominator does not change the symbol).
fn engine<T: Coeff>(mut nr: T, mut ni: T, mut dr: T, mut di: T) -> Result<u8> {
    if dr.c_is_even() {
        let t = di.c_neg();
        di = dr;
        dr = t;
    }
    let one = T::c_one();
    let mut acc: u8 = 0;
    loop {
        if dr.c_mul(&dr).c_add(&di.c_mul(&di)) == one {
            return Ok(acc % 4);
        }
        let (rr, ri) = reduce(&nr, &ni, &dr, &di);
        if rr.c_is_zero() && ri.c_is_zero() {
            return Err(Error::NotCoprime);
        }
        let (s, e, cr, ci) = strip(rr, ri);
        let a16 = dr.c_mod16();
        let b16 = di.c_mod16();
        acc = (acc + s * sup_i_exp(a16, b16) + (e % 4) as u8 * sup_one_plus_i_exp(a16, b16)) % 4;
        if cr == one && ci.c_is_zero() {
            return Ok(acc);
        }
        acc = (acc + 2 * flip_parity(cr.c_mod16(), ci.c_mod16(), a16, b16)) % 4;
        // swap: new numerator = old denominator, new denominator = core
        nr = dr;
        ni = di;
        dr = cr;
        di = ci;
    }
}

const I64_COORD_BOUND: i64 = 1 << 30;

fn fits_i64(z: &GaussianInt) -> Option<(i64, i64)> {
    let re = z.re.to_i64()?;
    let im = z.im.to_i64()?;
    if re.abs() < I64_COORD_BOUND && im.abs() < I64_COORD_BOUND {
        Some((re, im))
    } else {
        None
    }
}

/// The quartic Jacobi symbol ((α/μ))₄ for μ of odd norm, gcd(α, μ) a unit.
///
/// Fully multiplicative in both arguments; invariant under unit multiples of
/// the denominator; for a Gaussian prime μ = π it agrees with the power
/// character α^((N(π)−1)/4) mod π.
pub fn quartic_jacobi(alpha: &GaussianInt, mu: &GaussianInt) -> Result<QuarticValue> {
    let n = mu.norm();
    if n.is_even() {
        return Err(Error::EvenNormDenominator);
    }
    if n.is_one() {
        return Ok(QuarticValue::ONE);
    }
    // Reduce once in BigInt so the fast path applies whenever μ is small.
    let alpha = alpha.rem(mu)?;
    let exp = match (fits_i64(&alpha), fits_i64(mu)) {
        (Some((ar, ai)), Some((mr, mi))) => engine::<i64>(ar, ai, mr, mi)?,
        _ => engine::<BigInt>(alpha.re, alpha.im, mu.re.clone(), mu.im.clone())?,
    };
    Ok(QuarticValue(exp))
}

/// (i/μ)₄ by the closed form i^((a²+b²−1)/4); μ must have odd re, even im.
pub fn quartic_i(mu: &GaussianInt) -> Result<QuarticValue> {
    check_shape(mu)?;
    Ok(QuarticValue(sup_i_exp(
        mod16_big(&mu.re),
        mod16_big(&mu.im),
    )))
}

/// ((1+i)/μ)₄ by the closed form, branching on im mod 4.
pub fn quartic_one_plus_i(mu: &GaussianInt) -> Result<QuarticValue> {
    check_shape(mu)?;
    Ok(QuarticValue(sup_one_plus_i_exp(
        mod16_big(&mu.re),
        mod16_big(&mu.im),
    )))
}

/// ((−1/μ)₄, (2/μ)₄) by the closed forms (−1)^(b/2) and i^((−1)^((a−1)/2)·b/2).
pub fn quartic_neg_one_and_two(mu: &GaussianInt) -> Result<(QuarticValue, QuarticValue)> {
    check_shape(mu)?;
    let a16 = mod16_big(&mu.re);
    let b16 = mod16_big(&mu.im);
    Ok((
        QuarticValue(sup_minus_one_exp(b16)),
        QuarticValue(sup_two_exp(a16, b16)),
    ))
}

fn check_shape(mu: &GaussianInt) -> Result<()> {
    if mu.re.is_odd() && mu.im.is_even() {
        Ok(())
    } else {
        Err(Error::ParityShape)
    }
}

/// ((u/v + i)/μ)₄ — the rational-slope numerator u/v + i interpreted through
/// multiplicativity: ((u+vi)/μ)₄ · ((v/μ)₄)⁻¹. When μ is a rational odd
/// integer the rational factor v is invisible, since (a/n)₄ = 1 for coprime
/// rational a, n with n odd.
pub fn quartic_rational_slope(u: &BigInt, v: &BigInt, mu: &GaussianInt) -> Result<QuarticValue> {
    if v.is_zero() || !v.gcd(&mu.norm()).is_one() {
        return Err(Error::NotInvertible);
    }
    let num = GaussianInt {
        re: u.clone(),
        im: v.clone(),
    };
    let main = quartic_jacobi(&num, mu)?;
    if mu.is_rational() {
        return Ok(main);
    }
    let vfac = quartic_jacobi(&GaussianInt::from_int(v), mu)?;
    Ok(main.mul(vfac.inv()))
}

/// ((u/v)/μ)₄ for a plain rational ratio u/v: (u/μ)₄ · ((v/μ)₄)⁻¹.
pub fn quartic_ratio(u: &BigInt, v: &BigInt, mu: &GaussianInt) -> Result<QuarticValue> {
    let num = quartic_jacobi(&GaussianInt::from_int(u), mu)?;
    let den = quartic_jacobi(&GaussianInt::from_int(v), mu)?;
    Ok(num.mul(den.inv()))
}

/// The quadratic surrogate ((c+di)/m)₄ = ((x(x+d))/m) valid whenever
/// x² ≡ c²+d² (mod m), 2∤m and (m, x(x+d)) = 1.
pub fn lemma_quadratic_surrogate(c: &BigInt, d: &BigInt, m: &BigInt, x: &BigInt) -> Result<i8> {
    if m.is_even() || m.is_zero() {
        return Err(Error::BadModulus);
    }
    let lhs = (x * x - (c * c + d * d)).mod_floor(&m.abs());
    if !lhs.is_zero() {
        return Err(Error::Precondition(format!("x² ≢ c²+d² (mod {m})")));
    }
    let prod = x * (x + d);
    if !BigInt::gcd(m, &prod).is_one() {
        return Err(Error::Precondition(format!(
            "gcd(m, x(x+d)) ≠ 1 for m = {m}"
        )));
    }
    jacobi(&prod, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn qj(nr: i64, ni: i64, dr: i64, di: i64) -> QuarticValue {
        quartic_jacobi(&g(nr, ni), &g(dr, di)).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_i64(3, -5).unwrap(), -1);
        assert_eq!(jacobi_i64(7, 1).unwrap(), 1);
        assert_eq!(jacobi_i64(6, 3).unwrap(), 0);
        assert_eq!(jacobi_i64(2, 0), Err(Error::BadModulus));
        assert_eq!(jacobi_i64(2, 4), Err(Error::BadModulus));
        // (a/-m) = (a/m)
        for a in -20i64..20 {
            for m in [3i64, 5, 9, 15, 21, 45] {
                assert_eq!(jacobi_i64(a, m).unwrap(), jacobi_i64(a, -m).unwrap());
            }
        }
    }

    #[test]
    fn jacobi_matches_euler_criterion_for_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for a in 0..p {
                let euler = crate::modres::pow_mod_u64(a, (p - 1) / 2, p);
                let expect: i8 = if euler == 0 {
                    0
                } else if euler == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi_i64(a as i64, p as i64).unwrap(), expect);
            }
        }
    }

    #[test]
    fn quartic_anchor_values() {
        assert_eq!(qj(0, 1, 3, 0), QuarticValue::MINUS_ONE); // (i/3)
        assert_eq!(qj(1, 1, 3, 0), QuarticValue::MINUS_I); // ((1+i)/3)
        assert_eq!(qj(-1, 1, 3, 0), QuarticValue::I); // ((-1+i)/3)
        assert_eq!(qj(6, 1, 27, 0), QuarticValue::MINUS_ONE);
        assert_eq!(qj(2, 1, 13, 0), QuarticValue::MINUS_I);
        assert_eq!(qj(2, 0, 3, 2), QuarticValue::MINUS_I);
    }

    #[test]
    fn quartic_errors() {
        assert_eq!(
            quartic_jacobi(&g(2, 0), &g(4, 0)),
            Err(Error::EvenNormDenominator)
        );
        assert_eq!(quartic_jacobi(&g(3, 0), &g(9, 0)), Err(Error::NotCoprime));
        assert_eq!(quartic_jacobi(&g(2, 1), &g(5, 0)), Err(Error::NotCoprime));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(quartic_i(&g(3, 0)).unwrap(), QuarticValue::MINUS_ONE);
        assert_eq!(quartic_i(&g(3, 4)).unwrap(), QuarticValue::MINUS_ONE);
        assert_eq!(quartic_i(&g(1, 4)).unwrap(), QuarticValue::ONE);
        assert_eq!(quartic_i(&g(2, 1)), Err(Error::ParityShape));

        assert_eq!(quartic_one_plus_i(&g(3, 0)).unwrap(), QuarticValue::MINUS_I);
        assert_eq!(
            quartic_one_plus_i(&g(7, 0)).unwrap(),
            QuarticValue::MINUS_ONE
        );
        assert_eq!(quartic_one_plus_i(&g(1, 0)).unwrap(), QuarticValue::ONE);

        let (m1, two) = quartic_neg_one_and_two(&g(3, 2)).unwrap();
        assert_eq!((m1, two), (QuarticValue::MINUS_ONE, QuarticValue::MINUS_I));
        let (m1, two) = quartic_neg_one_and_two(&g(3, 0)).unwrap();
        assert_eq!((m1, two), (QuarticValue::ONE, QuarticValue::ONE));
        let (m1, _) = quartic_neg_one_and_two(&g(1, 4)).unwrap();
        assert_eq!(m1, QuarticValue::ONE);
    }

    /// The closed forms must agree with the Euclidean engine on their whole
    /// shape domain (denominators with re odd, im even).
    #[test]
    fn closed_forms_match_engine_small() {
        for a in (-21i64..=21).step_by(2) {
            for b in (-20i64..=20).step_by(2) {
                let mu = g(a, b);
                if mu.norm() <= BigInt::one() {
                    continue;
                }
                assert_eq!(quartic_i(&mu).unwrap(), qj(0, 1, a, b), "i over {mu}");
                assert_eq!(
                    quartic_one_plus_i(&mu).unwrap(),
                    qj(1, 1, a, b),
                    "1+i over {mu}"
                );
                let (m1, two) = quartic_neg_one_and_two(&mu).unwrap();
                assert_eq!(m1, qj(-1, 0, a, b), "-1 over {mu}");
                assert_eq!(two, qj(2, 0, a, b), "2 over {mu}");
            }
        }
    }

    #[test]
    fn oracle_equivalence_small() {
        // Exhaustive up to norm 300 here; the acceptance suite goes to 5000.
        let r = 17i64;
        for dr in -r..=r {
            for di in -r..=r {
                let mu = g(dr, di);
                let n = mu.norm();
                if n.is_even() || n <= BigInt::one() || n > BigInt::from(300) {
                    continue;
                }
                let fd = FactoredDenominator::new(&mu).unwrap();
                let nn = n.to_i64().unwrap();
                let gg = dr.gcd(&di);
                let rows = nn / gg;
                for x in 0..rows {
                    for y in 0..gg {
                        let alpha = g(x, y);
                        match fd.character(&alpha) {
                            None => {
                                assert_eq!(
                                    quartic_jacobi(&alpha, &mu),
                                    Err(Error::NotCoprime),
                                    "α={alpha} μ={mu}"
                                );
                            }
                            Some(expect) => {
                                assert_eq!(
                                    quartic_jacobi(&alpha, &mu).unwrap(),
                                    expect,
                                    "α={alpha} μ={mu}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rational_slope_examples() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(
            quartic_rational_slope(&b(6), &b(1), &g(27, 0)).unwrap(),
            QuarticValue::MINUS_ONE
        );
        assert_eq!(
            quartic_rational_slope(&b(0), &b(1), &g(3, 0)).unwrap(),
            QuarticValue::MINUS_ONE
        );
        assert_eq!(
            quartic_rational_slope(&b(-6), &b(-1), &g(27, 0)).unwrap(),
            QuarticValue::MINUS_ONE
        );
        assert_eq!(
            quartic_rational_slope(&b(1), &b(3), &g(3, 0)),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn lemma_quadratic_surrogate_examples() {
        let b = |v: i64| BigInt::from(v);
        // degenerate zero witness: modulus 1, where (a/1) = 1
        assert_eq!(
            lemma_quadratic_surrogate(&b(0), &b(0), &b(1), &b(1)).unwrap(),
            1
        );
        assert!(matches!(
            lemma_quadratic_surrogate(&b(5), &b(4), &b(3), &b(1)),
            Err(Error::Precondition(_))
        ));
        // c=3, d=4, m=7, x=5: jacobi(45, 7) = jacobi(3, 7).
        let v = lemma_quadratic_surrogate(&b(3), &b(4), &b(7), &b(5)).unwrap();
        assert_eq!(v, jacobi_i64(3, 7).unwrap());
        // and it matches the quartic symbol, which is ±1 here
        let sym = quartic_jacobi(&g(3, 4), &g(7, 0)).unwrap();
        assert_eq!(
            sym,
            if v == 1 {
                QuarticValue::ONE
            } else {
                QuarticValue::MINUS_ONE
            }
        );
    }

    #[test]
    fn conjugation_inverts() {
        let pairs = [
            (g(2, 1), g(13, 0)),
            (g(5, 2), g(3, 2)),
            (g(7, 4), g(15, 2)),
            (g(1, 6), g(-5, 12)),
        ];
        for (a, m) in pairs {
            let v = quartic_jacobi(&a, &m).unwrap();
            let vc = quartic_jacobi(&a.conj(), &m.conj()).unwrap();
            assert_eq!(vc, v.inv());
        }
    }

    #[test]
    fn denominator_unit_invariance_small() {
        let r = 9i64;
        for dr in -r..=r {
            for di in -r..=r {
                let mu = g(dr, di);
                let n = mu.norm();
                if n.is_even() || n <= BigInt::one() {
                    continue;
                }
                let a = g(4, 7);
                let base = quartic_jacobi(&a, &mu);
                for k in 1..4u8 {
                    assert_eq!(base, quartic_jacobi(&a, &mu.clone().mul_i_pow(k)));
                }
            }
        }
    }

    proptest! {
        /// ((a+bi)/m)₄² = ((a²+b²)/m) for odd m coprime to a²+b².
        #[test]
        fn lemma_square_identity(a in -400i64..400, b in -400i64..400, m0 in 1i64..400) {
            let m = 2 * m0 + 1;
            let n = a * a + b * b;
            prop_assume!(n.gcd(&m) == 1);
            let sym = quartic_jacobi(&g(a, b), &g(m, 0)).unwrap();
            let jac = jacobi_i64(n, m).unwrap();
            prop_assert_eq!(sym.square_sign(), jac);
        }

        /// ((x²)/(a+bi))₄ = (x/(a²+b²)) for a odd, b even, gcd(x, a²+b²)=1.
        #[test]
        fn lemma_rational_square(a0 in -200i64..200, b0 in -200i64..200, x in -500i64..500) {
            let a = 2 * a0 + 1;
            let b = 2 * b0;
            let n = a * a + b * b;
            prop_assume!(n > 1 && x.gcd(&n) == 1);
            let sym = quartic_jacobi(&g(x * x, 0), &g(a, b)).unwrap();
            let jac = jacobi_i64(x, n).unwrap();
            let expect = if jac == 1 { QuarticValue::ONE } else { QuarticValue::MINUS_ONE };
            prop_assert_eq!(sym, expect);
        }

        /// Multiplicativity in the numerator. The denominator is built with
        /// odd re, even im so its norm is odd by construction.
        #[test]
        fn numerator_multiplicative(ar in -50i64..50, ai in -50i64..50,
                                    br in -50i64..50, bi in -50i64..50,
                                    mr0 in -25i64..25, mi0 in -25i64..25, rot in 0u8..4) {
            let m = g(2 * mr0 + 1, 2 * mi0).mul_i_pow(rot);
            prop_assume!(m.norm() > BigInt::one());
            let a = g(ar, ai);
            let b = g(br, bi);
            let (sa, sb) = (quartic_jacobi(&a, &m), quartic_jacobi(&b, &m));
            prop_assume!(sa.is_ok() && sb.is_ok());
            let sab = quartic_jacobi(&(&a * &b), &m).unwrap();
            prop_assert_eq!(sab, sa.unwrap().mul(sb.unwrap()));
        }

        /// Multiplicativity in the denominator.
        #[test]
        fn denominator_multiplicative(ar in -50i64..50, ai in -50i64..50,
                                      mr0 in -10i64..10, mi0 in -10i64..10,
                                      nr0 in -10i64..10, ni0 in -10i64..10) {
            let m = g(2 * mr0 + 1, 2 * mi0);
            let n = g(2 * nr0 + 1, 2 * ni0);
            prop_assume!(m.norm() > BigInt::one() && n.norm() > BigInt::one());
            let a = g(ar, ai);
            let (sm, sn) = (quartic_jacobi(&a, &m), quartic_jacobi(&a, &n));
            prop_assume!(sm.is_ok() && sn.is_ok());
            let smn = quartic_jacobi(&a, &(&m * &n)).unwrap();
            prop_assert_eq!(smn, sm.unwrap().mul(sn.unwrap()));
        }

        /// The engine agrees with the factorization oracle on random input.
        #[test]
        fn engine_matches_oracle(ar in -3000i64..3000, ai in -3000i64..3000,
                                 mr0 in -150i64..150, mi0 in -150i64..150, rot in 0u8..4) {
            let m = g(2 * mr0 + 1, 2 * mi0).mul_i_pow(rot);
            prop_assume!(m.norm() > BigInt::one());
            let a = g(ar, ai);
            match quartic_oracle(&a, &m) {
                Err(Error::NotCoprime) => prop_assert_eq!(quartic_jacobi(&a, &m), Err(Error::NotCoprime)),
                Ok(v) => prop_assert_eq!(quartic_jacobi(&a, &m).unwrap(), v),
                Err(e) => return Err(TestCaseError::fail(format!("oracle error {e}"))),
            }
        }
    }
}
