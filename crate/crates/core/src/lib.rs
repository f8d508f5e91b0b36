//! Computational toolkit for finite incidence geometry.
//!
//! The crate provides four layers that build on each other:
//!
//! * [`gf`] — arithmetic tables for small finite fields `F_q` and dense
//!   matrices over them (RREF, inverses, permutation matrices).
//! * [`grassmann`] — canonical `k`-subspaces of `F_q^n`, exhaustive
//!   enumeration, intersection dimensions and generalised Johnson graphs.
//! * [`mgroup`] — matrix groups given by generators: orbits, exact group
//!   orders through a deterministic stabilizer chain, brute-force closure
//!   as an independent oracle, and classical order formulas.
//! * [`polygon`], [`sieve`], [`claims`] — generalised-polygon recognition,
//!   the parameter feasibility sieve, and executable witness checks for
//!   subspace actions on putative hexagons and octagons.

pub mod claims;
pub mod error;
pub mod exact;
pub(crate) mod factor;
pub mod gf;
pub mod grassmann;
pub mod mgroup;
pub mod polygon;
pub(crate) mod rng;
pub mod sieve;

pub use error::{Error, Result};

/// Resource limits for enumeration and group computations.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of subspaces an enumeration may visit.
    pub enumeration: u64,
    /// Maximum size `q^n` of the vector domain a stabilizer chain acts on.
    pub orbit: u64,
    /// Maximum number of group elements a closure computation may collect.
    pub closure_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 10_000_000,
            orbit: 10_000_000,
            closure_cap: 1_000_000,
        }
    }
}
