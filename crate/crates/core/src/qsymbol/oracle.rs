//! Factorization-based reference for the quartic symbol.
//!
//! A denominator of odd norm below the trial-division bound is factored into
//! Gaussian primes once; the symbol of any numerator is then the product of
//! the classical power characters α^((N(π)−1)/4) mod π over the factors.
//! Split primes are handled in F_p through the embedding i ↦ τ with
//! τ² ≡ −1; inert primes in Z[i]/(ℓ) ≅ F_{ℓ²}.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::gint::GaussianInt;
use crate::modres::{mul_mod, pow_mod_u64, sqrt_mod, GaussModP};
use crate::qsymbol::QuarticValue;
use crate::{Error, Result};

const FACTOR_BOUND: u64 = 100_000_000;

#[derive(Debug, Clone)]
enum PrimeFactor {
    /// A split-prime divisor with residue field F_ell, i ↦ tau.
    Split { ell: u64, tau: u64, count: u32 },
    /// An inert rational prime ell ≡ 3 (mod 4).
    Inert { ell: u64, count: u32 },
}

/// A denominator factored into Gaussian primes, reusable across numerators.
#[derive(Debug, Clone)]
pub struct FactoredDenominator {
    factors: Vec<PrimeFactor>,
}

impl FactoredDenominator {
    pub fn new(mu: &GaussianInt) -> Result<Self> {
        let norm = mu.norm();
        if norm.is_even() {
            return Err(Error::EvenNormDenominator);
        }
        let n = norm
            .to_u64()
            .filter(|&n| n <= FACTOR_BOUND)
            .ok_or_else(|| Error::NormTooLarge(norm.to_u64().unwrap_or(u64::MAX)))?;
        let mut factors = Vec::new();
        let mut rest = mu.clone();
        let mut m = n;
        let mut ell = 3u64;
        while ell * ell <= m {
            if m % ell == 0 {
                let mut a = 0u32;
                while m % ell == 0 {
                    m /= ell;
                    a += 1;
                }
                push_prime_factors(&mut factors, &mut rest, ell, a)?;
            }
            ell += 2;
        }
        if m > 1 {
            push_prime_factors(&mut factors, &mut rest, m, 1)?;
        }
        if !rest.is_unit() {
            return Err(Error::Internal(format!("incomplete factorization of {mu}")));
        }
        Ok(Self { factors })
    }

    /// The product character i^k, or `None` when the numerator shares a
    /// prime with the denominator.
    pub fn character(&self, alpha: &GaussianInt) -> Option<QuarticValue> {
        let mut acc = 0u32;
        for f in &self.factors {
            let k = match *f {
                PrimeFactor::Split { ell, tau, count } => {
                    let re = alpha.re.mod_floor_u64(ell);
                    let im = alpha.im.mod_floor_u64(ell);
                    let z = (re + mul_mod(im, tau, ell)) % ell;
                    if z == 0 {
                        return None;
                    }
                    let w = pow_mod_u64(z, (ell - 1) / 4, ell);
                    let k = dlog_unit(w, tau, ell)?;
                    k as u32 * count
                }
                PrimeFactor::Inert { ell, count } => {
                    let re = alpha.re.mod_floor_u64(ell);
                    let im = alpha.im.mod_floor_u64(ell);
                    if re == 0 && im == 0 {
                        return None;
                    }
                    let w = GaussModP { re, im }.pow((ell * ell - 1) / 4, ell);
                    let k = w.unit_exponent(ell)?;
                    k as u32 * count
                }
            };
            acc = (acc + k) % 4;
        }
        Some(QuarticValue::from_exponent(acc as i64))
    }
}

/// w as a power of the fourth root of unity tau mod ell.
fn dlog_unit(w: u64, tau: u64, ell: u64) -> Option<u8> {
    if w == 1 {
        Some(0)
    } else if w == tau {
        Some(1)
    } else if w == ell - 1 {
        Some(2)
    } else if w == ell - tau {
        Some(3)
    } else {
        None
    }
}

fn push_prime_factors(
    factors: &mut Vec<PrimeFactor>,
    rest: &mut GaussianInt,
    ell: u64,
    norm_multiplicity: u32,
) -> Result<()> {
    if ell % 4 == 3 {
        if norm_multiplicity % 2 != 0 {
            return Err(Error::Internal(format!(
                "inert prime {ell} with odd norm multiplicity"
            )));
        }
        let count = norm_multiplicity / 2;
        let pi = GaussianInt::new(ell as i64, 0);
        for _ in 0..count {
            *rest = exact_div(rest, &pi)?;
        }
        factors.push(PrimeFactor::Inert { ell, count });
    } else {
        // ell ≡ 1 (mod 4) splits: π = gcd(ell, t+i), and π | t+i forces
        // i ≡ −t (mod π); the conjugate prime has i ≡ t.
        let t = sqrt_mod(-1, ell)
            .ok_or_else(|| Error::Internal(format!("no root of -1 mod split prime {ell}")))?;
        let pi = GaussianInt::gcd(
            &GaussianInt::new(ell as i64, 0),
            &GaussianInt::new(t as i64, 1),
        )?;
        for (prime, tau) in [(pi.clone(), ell - t), (pi.conj(), t)] {
            let mut count = 0u32;
            while prime.divides(rest) {
                *rest = exact_div(rest, &prime)?;
                count += 1;
            }
            if count > 0 {
                factors.push(PrimeFactor::Split { ell, tau, count });
            }
        }
    }
    Ok(())
}

fn exact_div(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    let (q, r) = a.divmod(b)?;
    if !r.is_zero() {
        return Err(Error::Internal(format!("{b} does not divide {a}")));
    }
    Ok(q)
}

/// Quartic symbol via prime factorization of the denominator. Independent of
/// [`super::quartic_jacobi`] and used only for differential testing.
pub fn quartic_oracle(alpha: &GaussianInt, mu: &GaussianInt) -> Result<QuarticValue> {
    let fd = FactoredDenominator::new(mu)?;
    fd.character(alpha).ok_or(Error::NotCoprime)
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloorU64 for num_bigint::BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num_integer::Integer;
        self.mod_floor(&num_bigint::BigInt::from(m))
            .to_u64()
            .unwrap()
    }
}
