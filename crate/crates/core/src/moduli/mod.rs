//! Discretized moduli of discontinuity.
//!
//! Every estimator works on a finite sample and closed balls (see
//! [`crate::metric::BALL_SLACK`]). For configuration spaces the metric is the
//! max over coordinates, and a ball around a configuration only contains
//! configurations that belong to the same [`ConfigSample`]; that keeps the
//! product-ball arguments behind the κ lemmas exact on the sample.

mod config;
mod domain;
mod estimate;
mod kappa;
mod sampled;

pub use config::{conf_r_map, CenteredTuple, ConfigSample, Membership};
pub use domain::{barycentric_grid, complex_grid, edge_point, lattice_resolution, ComplexSample};
pub use estimate::{
    alpha_hat, alpha_hat_ladder, alpha_r_hat, alpha_r_hat_ladder, conf_delta_hat, default_ladder, delta_hat,
    delta_hat_ladder, phi_f, LadderRung, ModulusEstimate,
};
pub use kappa::{kappa0_holds, kappa_conf, kappa_inf, kappa_inf_values, kappa_r, verify_lemma_chain, LemmaCheck, LemmaReport};
pub use sampled::{CodomainMetric, SampledFunction};
