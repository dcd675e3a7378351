//! Exact arithmetic for rational Beatty sets modulo `q`.
//!
//! A rational Beatty set `B(p, q, r) = { floor(n*q/p + r) : n in Z }` is
//! periodic modulo `q` and has density `p/q`. This crate provides:
//!
//! - [`modarith`]: extended gcd, generalized modular inverses, the order of 2,
//!   and nearest-integer continued fractions;
//! - [`cyclotomic`]: exact arithmetic in `Z[w]`, `w = e^{2*pi*i/q}`, with a
//!   decidable zero test via reduction modulo the cyclotomic polynomial;
//! - [`beatty`]: the Beatty indicator, duality and balance properties, the
//!   direct Fourier transform and its closed form;
//! - [`covering`]: perfect c-fold covering verification (both the brute-force
//!   profile and the spectral covering criterion), constructions from powers
//!   of 2, the multiplicity formula, and the 2-covering modulus enumeration;
//! - [`search`]: the finite search certifying that perfect covers by at most
//!   five Beatty sets with distinct densities are exactly the constructed ones;
//! - [`identities`]: cosecant-sum and sine/cosine ratio identities generated
//!   from cyclotomic cosets, verified exactly;
//! - [`conjectures`]: desk-scale scanners for the vanishing rational-function
//!   conjectures and the strong inequality conjecture.

pub mod beatty;
pub mod conjectures;
pub mod covering;
pub mod cyclotomic;
pub mod identities;
pub mod modarith;
pub mod search;

pub use beatty::BeattyParams;
pub use covering::{CoverVerdict, CoveringInstance};
pub use cyclotomic::CycloElt;
pub use modarith::{GeneralizedInverse, NicfExpansion};
pub use search::{CandidateTuple, SearchReport};

/// Errors for domain violations (bad moduli, non-coprime inputs, empty ranges).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
