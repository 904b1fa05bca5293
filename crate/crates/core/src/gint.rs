//! Exact arithmetic in the ring of Gaussian integers Z\[i\].
//!
//! Everything here is arbitrary precision and pure. Division is Euclidean
//! with nearest-integer quotient coordinates (ties toward +∞), which gives
//! the remainder bound norm(ρ) ≤ norm(μ)/2 that the symbol algorithm needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A Gaussian integer re + im·i with arbitrary-precision coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// Decomposition α = i^unit_power · (1+i)^one_plus_i_power · core where the
/// core has odd real part and even imaginary part and is not divisible by
/// 1+i. The core is further pinned to the associate with re + im ≡ 1 (mod 4)
/// so the decomposition is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddEvenForm {
    pub unit_power: u8,
    pub one_plus_i_power: u32,
    pub core: GaussianInt,
}

impl OddEvenForm {
    /// Multiplies the three factors back together.
    pub fn reassemble(&self) -> GaussianInt {
        let mut z = self.core.clone().mul_i_pow(self.unit_power);
        let one_plus_i = GaussianInt::new(1, 1);
        for _ in 0..self.one_plus_i_power {
            z = &z * &one_plus_i;
        }
        z
    }
}

impl GaussianInt {
    pub fn new<T: Into<BigInt>, U: Into<BigInt>>(re: T, im: U) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self {
            re: n.clone(),
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// norm(a+bi) = a² + b².
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplies by i^k.
    pub fn mul_i_pow(self, k: u8) -> Self {
        match k % 4 {
            0 => self,
            1 => Self {
                re: -self.im,
                im: self.re,
            },
            2 => Self {
                re: -self.re,
                im: -self.im,
            },
            _ => Self {
                re: self.im,
                im: -self.re,
            },
        }
    }

    /// Euclidean division: α = qμ + ρ with norm(ρ) ≤ norm(μ)/2. The quotient
    /// coordinates are the nearest integers to the exact rational coordinates
    /// of α·conj(μ)/norm(μ), ties rounded toward +∞.
    pub fn divmod(&self, modulus: &Self) -> Result<(Self, Self)> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = modulus.norm();
        let num = self * &modulus.conj();
        let q = Self {
            re: round_half_up(&num.re, &den),
            im: round_half_up(&num.im, &den),
        };
        let rem = self - &(&q * modulus);
        debug_assert!(rem.norm() * 2 <= den);
        Ok((q, rem))
    }

    /// Remainder of the Euclidean division.
    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        Ok(self.divmod(modulus)?.1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Normalizes to the associate in the first quadrant (re > 0, im ≥ 0).
    /// Zero stays zero.
    pub fn first_quadrant_associate(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut z = self;
        for _ in 0..3 {
            if z.re.is_positive() && !z.im.is_negative() {
                return z;
            }
            z = z.mul_i_pow(1);
        }
        z
    }

    /// Greatest common divisor, normalized to the first-quadrant associate.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r;
        }
        Ok(x.first_quadrant_associate())
    }

    /// Extracts i^s (1+i)^e so that the remaining core has odd real part and
    /// even imaginary part, with the canonical sign (core.re + core.im ≡ 1
    /// mod 4). The exponent e is maximal.
    pub fn decompose(&self) -> Result<OddEvenForm> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut z = self.clone();
        let mut e: u32 = 0;
        // z/(1+i) = ((re+im) + (im-re)i)/2, integral iff re+im is even.
        while (&z.re + &z.im).is_even() {
            let re = (&z.re + &z.im) / 2;
            let im = (&z.im - &z.re) / 2;
            z = Self { re, im };
            e += 1;
        }
        for j in 0..4u8 {
            let cand = z.clone().mul_i_pow(j);
            if cand.re.is_odd() && cand.im.is_even() {
                let s4: BigInt = (&cand.re + &cand.im).mod_floor(&BigInt::from(4));
                if s4.is_one() {
                    return Ok(OddEvenForm {
                        unit_power: (4 - j) % 4,
                        one_plus_i_power: e,
                        core: cand,
                    });
                }
            }
        }
        unreachable!("an odd-norm Gaussian integer always has a primary associate")
    }
}

/// round(num/den) with den > 0, ties toward +∞: floor((2num + den) / (2den)).
fn round_half_up(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        Self::new(re, im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.magnitude())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts the canonical forms "a", "bi", "a+bi", "a-bi" (and the
    /// shorthands "i", "+i", "-i", "a+i", "a-i").
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(s.to_string());
        if s.is_empty() || !s.is_ascii() {
            return Err(err());
        }
        let parse_int = |t: &str| BigInt::from_str(t).map_err(|_| err());
        let parse_imag_coeff = |t: &str| match t {
            "" | "+" => Ok(BigInt::one()),
            "-" => Ok(-BigInt::one()),
            _ => parse_int(t),
        };
        if let Some(body) = s.strip_suffix('i') {
            // Split at the last interior sign, if any.
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| bytes[i] == b'+' || bytes[i] == b'-');
            match split {
                Some(idx) => {
                    let re = parse_int(&body[..idx])?;
                    let im = parse_imag_coeff(&body[idx..])?;
                    Ok(Self { re, im })
                }
                None => Ok(Self {
                    re: BigInt::zero(),
                    im: parse_imag_coeff(body)?,
                }),
            }
        } else {
            Ok(Self {
                re: parse_int(s)?,
                im: BigInt::zero(),
            })
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add for &GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
