//! Exact Gaussian-integer arithmetic, quadratic and quartic Jacobi symbols,
//! binary-quadratic-form representations, Lucas sequences, and a scan engine
//! that checks a catalog of octic residue congruences over prime ranges.
//!
//! The crate is organized around the scan pipeline:
//!
//! * [`gint`] — arithmetic in Z\[i\]: norm, nearest-rounding division, gcd,
//!   unit/(1+i) factor extraction.
//! * [`qsymbol`] — the quadratic Jacobi symbol and the quartic Jacobi symbol,
//!   computed by a reciprocity-based Euclidean algorithm, plus an independent
//!   factorization oracle used for differential testing.
//! * [`modres`] — rational modular arithmetic: modular powers, Tonelli–Shanks
//!   square roots, octic powers q^[p/8] mod p, residue classification.
//! * [`qforms`] — solving p = c²+d², 4p = x²+qy², p = x²+2qy² and q = a²+b²
//!   with the sign normalizations the congruence catalog requires.
//! * [`lucasseq`] — Lucas sequences U_n(P,Q), V_n(P,Q) by fast doubling.
//! * [`verifier`] — the statement catalog and the prime-range scan engine.

pub mod error;
pub mod gint;
pub mod lucasseq;
pub mod modres;
pub mod primes;
pub mod qforms;
pub mod qsymbol;
pub mod verifier;

pub use error::Error;
pub use gint::{GaussianInt, OddEvenForm};
pub use qsymbol::QuarticValue;

pub type Result<T> = std::result::Result<T, Error>;
