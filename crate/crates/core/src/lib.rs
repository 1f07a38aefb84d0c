//! Computational toolkit for quantified nonembeddability.
//!
//! * [`complex`]: simplicial complexes, deleted joins and products, GF(2) chain complexes.
//! * [`homology`]: Betti numbers and homology-sphere recognition.
//! * [`metric`] and [`vietoris_rips`]: finite samples of circles, spheres and
//!   projective spaces, and their Vietoris–Rips complexes.
//! * [`moduli`]: discretized moduli of discontinuity and the κ lemma chain.
//! * [`bounds`]: the constants `r_n`, `c_{n,k}`, covering bounds and the theorem-backed bound oracle.
//! * [`witnesses`]: explicit discontinuous (almost) injective functions.
//! * [`report`] and [`experiment`]: the reproducible experiment harness behind the CLI.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod complex;
pub mod error;
pub mod experiment;
pub mod gf2;
pub mod homology;
pub mod metric;
pub mod moduli;
pub mod report;
pub mod rng;
pub mod vietoris_rips;
pub mod witnesses;

pub use error::{Error, Result};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
