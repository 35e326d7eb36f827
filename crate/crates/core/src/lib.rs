//! # bplab
//!
//! Random matrix models for infinitely divisible laws on the real line.
//!
//! An infinitely divisible law is described by a drift `gamma` and a finite
//! measure `G` (a [`LevyTriple`]). This crate attaches two families of random
//! matrices to every triple:
//!
//! - a Hermitian family whose spectral laws approach the free counterpart of
//!   the law as the dimension grows ([`hermitian`]),
//! - a non-Hermitian family whose symmetrized singular-value laws approach the
//!   same free counterpart for symmetric triples ([`nonhermitian`]).
//!
//! The correspondence acts as the identity on cumulant sequences: the classical
//! cumulants of the law are the free cumulants of its image. The [`cumulants`]
//! module turns either kind of cumulant sequence into moments, and the
//! [`partitions`] module provides the set-partition combinatorics behind it.
//!
//! ## Quick start
//!
//! ```rust
//! use bplab::{levy, spectra};
//!
//! // Poisson(1) maps to Marchenko-Pastur(1), whose moments are Catalan numbers.
//! let t = levy::poisson(1.0).unwrap();
//! let m = spectra::psi_image_moments(&t, 4).unwrap();
//! assert_eq!(m.values(), &[1.0, 2.0, 5.0, 14.0]);
//! ```
//!
//! Sampling a Hermitian matrix and reading off its spectrum:
//!
//! ```rust
//! use bplab::{hermitian, levy, spectra, RngStream};
//!
//! let t = levy::gaussian(0.0, 1.0).unwrap();
//! let mut rng = RngStream::new(7, 0);
//! let m = hermitian::sample_p(&t, 100, &mut rng, &Default::default()).unwrap();
//! let esd = spectra::esd(&m).unwrap();
//! let moments = spectra::empirical_moments(&esd, 2).unwrap();
//! assert!((moments.get(2) - 1.0).abs() < 0.3);
//! ```
//!
//! ## Modules
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`partitions`] | set partitions, noncrossing partitions, acceptability predicates |
//! | [`cumulants`] | classical and free moment-cumulant transforms |
//! | [`levy`] | Levy triples, exponents, compound Poisson truncation, presets |
//! | [`sphere`] | uniform vectors on the complex sphere and simplex formulas |
//! | [`hermitian`] | Hermitian samplers |
//! | [`nonhermitian`] | non-Hermitian samplers and singular laws |
//! | [`spectra`] | empirical laws, reference laws, Cauchy transforms |
//! | [`experiment`] | config-driven Monte Carlo runs with CSV/JSON reports |
//! | [`verify`] | the built-in acceptance checks |

pub mod cumulants;
pub mod experiment;
pub mod hermitian;
pub mod levy;
pub mod linalg;
pub mod nonhermitian;
pub mod partitions;
pub mod rng;
pub mod spectra;
pub mod sphere;
pub mod stats;
pub mod verify;

pub use cumulants::{CumulantKind, CumulantSequence, MomentSequence};
pub use faer::c64;
pub use levy::{CompoundPoissonParams, FiniteMeasure, LevyTriple};
pub use partitions::{SetPartition, SplitGround};
pub use rng::RngStream;
pub use spectra::{EmpiricalDistribution, GridSpec, ReferenceLaw};

/// Errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("law has no density: {0}")]
    NoDensity(String),

    #[error("law has no moments: {0}")]
    NoMoments(String),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/cumulants.md")]
    mod cumulants {}
    #[doc = include_str!("../../../book/src/levy_triples.md")]
    mod levy_triples {}
    #[doc = include_str!("../../../book/src/sphere.md")]
    mod sphere {}
    #[doc = include_str!("../../../book/src/hermitian_model.md")]
    mod hermitian_model {}
    #[doc = include_str!("../../../book/src/nonhermitian_model.md")]
    mod nonhermitian_model {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
