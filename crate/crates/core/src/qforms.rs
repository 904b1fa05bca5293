//! Binary-quadratic-form representations with the catalog's normalizations:
//! p = c²+d² with c ≡ 1 (mod 4) and d = 2^r·d₀, d₀ ≡ 1 (mod 4);
//! 4p = x²+qy²; p = x²+2qy²; p = x²+qy²; and splits q = a²+b².
//!
//! `represent` enumerates ALL integer solutions (classes with more than one
//! representation exist), expands sign variants, and filters by the
//! normalization the governing statement demands. The x coordinate is kept
//! in both signs; the y sign is pinned by the normalization.

use num_integer::Integer;

use crate::modres::sqrt_mod;
use crate::primes::is_prime;
use crate::{Error, Result};

/// Normalized two-squares representation p = c² + d².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSquaresRep {
    pub p: u64,
    pub c: i64,
    pub d: i64,
    pub r: u32,
    pub d0: i64,
}

/// The unique normalized representation of a prime p ≡ 1 (mod 4): the sign
/// of c is fixed by c ≡ 1 (mod 4), the sign of d by d₀ ≡ 1 (mod 4).
pub fn two_squares(p: u64) -> Result<TwoSquaresRep> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::Precondition(format!(
            "{p} is not a prime ≡ 1 (mod 4)"
        )));
    }
    // Cornacchia seeded by a square root of -1.
    let t = sqrt_mod(-1, p).expect("-1 is a square mod p ≡ 1 (mod 4)");
    let mut r0 = p;
    let mut r1 = t.max(p - t);
    while (r1 as u128) * (r1 as u128) >= p as u128 {
        let r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    let a = r1;
    let b = isqrt(p - a * a);
    debug_assert_eq!(a * a + b * b, p);
    let (c_abs, d_abs) = if a % 2 == 1 { (a, b) } else { (b, a) };
    let mut c = c_abs as i64;
    if c.rem_euclid(4) != 1 {
        c = -c;
    }
    let r = d_abs.trailing_zeros();
    let mut d = d_abs as i64;
    let mut d0 = d >> r;
    if d0.rem_euclid(4) != 1 {
        d = -d;
        d0 = -d0;
    }
    Ok(TwoSquaresRep { p, c, d, r, d0 })
}

/// Which quadratic form a witness solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormVariant {
    /// 4p = x² + qy²
    FourP,
    /// p = x² + 2qy²
    TwoQ,
    /// p = x² + qy²
    Plain,
}

/// Sign normalization applied to y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YNorm {
    /// keep only odd y, signed so y ≡ 1 (mod 4)
    OneMod4,
    /// sign y so its odd part y₀ ≡ 1 (mod 4)
    Y0OneMod4,
    /// keep y positive
    Positive,
}

/// One solution of the governing form, sign-expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormWitness {
    pub variant: FormVariant,
    pub q: u64,
    pub x: i64,
    pub y: i64,
    pub y0: i64,
    pub beta: u32,
}

impl FormVariant {
    fn target(self, p: u64) -> u64 {
        match self {
            FormVariant::FourP => 4 * p,
            _ => p,
        }
    }

    fn coefficient(self, q: u64) -> u64 {
        match self {
            FormVariant::TwoQ => 2 * q,
            _ => q,
        }
    }
}

/// Enumerates every integer solution of the form, expanded into the sign
/// variants admitted by `ynorm`; x is emitted in both signs. Empty when the
/// form does not represent the target.
pub fn represent(variant: FormVariant, p: u64, q: u64, ynorm: YNorm) -> Result<Vec<FormWitness>> {
    // the plain form also serves x² + (a²+1)y², whose coefficient is even
    if q == 0 || (q % 2 == 0 && variant != FormVariant::Plain) {
        return Err(Error::Precondition(format!(
            "q = {q} must be odd and positive"
        )));
    }
    if q % p == 0 {
        return Err(Error::Precondition(format!("p = {p} divides q = {q}")));
    }
    let target = variant.target(p);
    let coeff = variant.coefficient(q);
    let mut out = Vec::new();
    let mut y = 1u64;
    while (coeff as u128) * (y as u128) * (y as u128) < target as u128 {
        let rest = target - coeff * y * y;
        let x = isqrt(rest);
        if x * x == rest && x > 0 {
            // sign the y coordinate per the requested normalization
            let beta = y.trailing_zeros();
            let y0 = (y >> beta) as i64;
            let signed_y = match ynorm {
                YNorm::OneMod4 => {
                    if y % 2 == 0 {
                        None
                    } else if y % 4 == 1 {
                        Some(y as i64)
                    } else {
                        Some(-(y as i64))
                    }
                }
                YNorm::Y0OneMod4 => {
                    if y0.rem_euclid(4) == 1 {
                        Some(y as i64)
                    } else {
                        Some(-(y as i64))
                    }
                }
                YNorm::Positive => Some(y as i64),
            };
            if let Some(signed_y) = signed_y {
                for x_signed in [x as i64, -(x as i64)] {
                    out.push(FormWitness {
                        variant,
                        q,
                        x: x_signed,
                        y: signed_y,
                        y0: signed_y >> beta,
                        beta,
                    });
                }
            }
        }
        y += 1;
    }
    Ok(out)
}

/// A split q = a² + b².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QSplit {
    pub a: i64,
    pub b: i64,
}

/// Which splits of q a statement admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitConstraint {
    /// every (a, b) with a²+b² = q: all signs and both orders
    AllUnits,
    /// a ≠ 0, 2 | a, gcd(a, b) = 1 (so b is odd), all signs
    EvenACoprime,
}

/// All splits q = a²+b² meeting the constraint. Empty when q is not a sum of
/// two squares (or no split meets the constraint).
pub fn split_q(q: u64, constraint: SplitConstraint) -> Vec<QSplit> {
    let mut out = Vec::new();
    let mut a = 0u64;
    while a * a * 2 <= q {
        let rest = q - a * a;
        let b = isqrt(rest);
        if b * b == rest {
            let (a, b) = (a as i64, b as i64);
            match constraint {
                SplitConstraint::AllUnits => {
                    for (u, v) in [(a, b), (b, a)] {
                        for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let cand = QSplit {
                                a: su * u,
                                b: sv * v,
                            };
                            if !out.contains(&cand) {
                                out.push(cand);
                            }
                        }
                    }
                }
                SplitConstraint::EvenACoprime => {
                    for (u, v) in [(a, b), (b, a)] {
                        if u != 0 && u % 2 == 0 && u.gcd(&v) == 1 {
                            for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                                let cand = QSplit {
                                    a: su * u,
                                    b: sv * v,
                                };
                                if !out.contains(&cand) {
                                    out.push(cand);
                                }
                            }
                        }
                    }
                }
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// The named rational gcd hypotheses attached to witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcdCondition {
    /// (c, x+2d) = 1
    CXPlus2D,
    /// (d, x+2c) = 1
    DXPlus2C,
    /// (c, x+d) = 1
    CXPlusD,
    /// (d₀, x+c) = 1
    D0XPlusC,
    /// (d₀, x+2c) = 1
    D0XPlus2C,
}

impl std::str::FromStr for GcdCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "(c,x+2d)" => Ok(Self::CXPlus2D),
            "(d,x+2c)" => Ok(Self::DXPlus2C),
            "(c,x+d)" => Ok(Self::CXPlusD),
            "(d0,x+c)" => Ok(Self::D0XPlusC),
            "(d0,x+2c)" => Ok(Self::D0XPlus2C),
            _ => Err(Error::Precondition(format!(
                "unknown gcd condition tag {s:?}"
            ))),
        }
    }
}

/// Evaluates the named gcd hypothesis on a witness tuple.
pub fn gcd_filter(cond: GcdCondition, c: i64, d: i64, d0: i64, x: i64) -> bool {
    let g = match cond {
        GcdCondition::CXPlus2D => c.gcd(&(x + 2 * d)),
        GcdCondition::DXPlus2C => d.gcd(&(x + 2 * c)),
        GcdCondition::CXPlusD => c.gcd(&(x + d)),
        GcdCondition::D0XPlusC => d0.gcd(&(x + c)),
        GcdCondition::D0XPlus2C => d0.gcd(&(x + 2 * c)),
    };
    g == 1
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && (x as u128) * (x as u128) > n as u128 {
        x -= 1;
    }
    while ((x + 1) as u128) * ((x + 1) as u128) <= n as u128 {
        x += 1;
    }
    x
}
