use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{CenteredTuple, ConfigSample};
use super::estimate::{alpha_r_hat, conf_delta_hat, delta_hat};
use super::sampled::{CodomainMetric, SampledFunction};
use crate::error::{Error, Result};

/// Relative allowance for rounding in inequalities that hold exactly on the
/// sample.
pub const ROUNDING_GUARD: f64 = 1e-12;

/// `‖p − q‖ ≥ min(‖p‖, ‖q‖) · ‖p/‖p‖ − q/‖q‖‖` for nonzero `p`, `q`, up to
/// `tol`.
pub fn kappa0_holds(p: &[f64], q: &[f64], tol: f64) -> bool {
    let np = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nq = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return true;
    }
    let lhs: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let chord: f64 = p.iter().zip(q).map(|(a, b)| (a / np - b / nq).powi(2)).sum::<f64>().sqrt();
    lhs + tol >= np.min(nq) * chord
}

/// `inf ‖g‖` over the sample.
pub fn kappa_inf(g: &SampledFunction) -> f64 {
    kappa_inf_values(g.values())
}

pub fn kappa_inf_values(values: &[Vec<f64>]) -> f64 {
    values.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).fold(f64::INFINITY, f64::min)
}

/// `κ̂^{(r)}(f)`: minimum over the configuration sample of
/// `(1/r)·sqrt(Σ_i Σ_j ‖f(x_i) − f(x_j)‖²)`.
pub fn kappa_r(f: &SampledFunction, configs: &ConfigSample) -> Result<f64> {
    if configs.iter().flatten().any(|&i| i as usize >= f.len()) {
        return Err(Error::invalid("configuration index out of range"));
    }
    let r = configs.arity() as f64;
    Ok((0..configs.len())
        .into_par_iter()
        .map(|i| {
            let t = configs.tuple(i);
            let mut s = 0.0;
            for &a in t {
                for &b in t {
                    s += f.value(a as usize).iter().zip(f.value(b as usize)).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
                }
            }
            s.sqrt() / r
        })
        .reduce(|| f64::INFINITY, f64::min))
}

/// `κ̂(Conf_r^Δ(f))`: minimum norm of the centered tuples.
pub fn kappa_conf(f: &SampledFunction, configs: &ConfigSample) -> Result<f64> {
    if configs.iter().flatten().any(|&i| i as usize >= f.len()) {
        return Err(Error::invalid("configuration index out of range"));
    }
    Ok((0..configs.len())
        .into_par_iter()
        .map(|i| centered(f, configs.tuple(i)).norm())
        .reduce(|| f64::INFINITY, f64::min))
}

fn centered(f: &SampledFunction, t: &[u32]) -> CenteredTuple {
    let vals: Vec<&[f64]> = t.iter().map(|&p| f.value(p as usize)).collect();
    CenteredTuple::from_values(&vals)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    /// Left and right side of the inequality (or identity) checked; for the
    /// pairwise check these are the worst pair found.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub rho: f64,
    pub configurations: usize,
    pub alpha_r: f64,
    pub kappa_r: f64,
    pub kappa_conf: f64,
    pub delta_f: f64,
    pub delta_conf: f64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Pairs of centered tuples examined by the pairwise inequality: all pairs
/// when the sample is small, otherwise consecutive tuples in sample order.
const ALL_PAIRS_LIMIT: usize = 4096;

/// Checks, on the sample and at scale `ρ`:
/// the pairwise norm inequality on centered tuples,
/// `δ̂(Conf) ≤ √r·δ̂(f)`, `√2·κ̂(Conf) = √r·κ̂^{(r)}`, and
/// `δ̂(f) ≥ √2·sin(α̂^{(r)}/2)·κ̂^{(r)}`.
pub fn verify_lemma_chain(f: &SampledFunction, configs: &ConfigSample, rho: f64) -> Result<LemmaReport> {
    if configs.is_empty() {
        return Err(Error::invalid("configuration sample is empty"));
    }
    let r = configs.arity() as f64;
    let alpha = alpha_r_hat(f, configs, rho)?.value;
    let kr = kappa_r(f, configs)?;
    let kc = kappa_conf(f, configs)?;
    let df = delta_hat(f, rho, CodomainMetric::Euclidean)?.value;
    let dc = conf_delta_hat(f, configs, rho)?.value;

    let cs: Vec<Vec<f64>> = configs.iter().map(|t| centered(f, t).flatten()).collect();
    let pair_margin = |i: usize, j: usize| -> (f64, f64) {
        let (p, q) = (&cs[i], &cs[j]);
        let np = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nq = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let lhs: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let chord: f64 = p.iter().zip(q).map(|(a, b)| (a / np - b / nq).powi(2)).sum::<f64>().sqrt();
        (lhs, np.min(nq) * chord)
    };
    let n = cs.len();
    let worst = |a: (f64, f64), b: (f64, f64)| if a.0 - a.1 <= b.0 - b.1 { a } else { b };
    let pairwise = if n <= ALL_PAIRS_LIMIT {
        (0..n)
            .into_par_iter()
            .map(|i| (0..i).map(|j| pair_margin(i, j)).fold((f64::INFINITY, 0.0), worst))
            .reduce(|| (f64::INFINITY, 0.0), worst)
    } else {
        (1..n).into_par_iter().map(|i| pair_margin(i, i - 1)).reduce(|| (f64::INFINITY, 0.0), worst)
    };
    let guard = |x: f64| x.abs() * ROUNDING_GUARD + f64::MIN_POSITIVE;

    let sr = r.sqrt();
    let rhs_d = std::f64::consts::SQRT_2 * (alpha / 2.0).sin() * kr;
    let checks = vec![
        LemmaCheck {
            name: "pairwise_norm_inequality".into(),
            passed: pairwise.0 + guard(pairwise.1) >= pairwise.1,
            lhs: pairwise.0,
            rhs: pairwise.1,
        },
        LemmaCheck { name: "conf_modulus_bound".into(), passed: dc <= sr * df + guard(sr * df), lhs: dc, rhs: sr * df },
        LemmaCheck {
            name: "kappa_identity".into(),
            passed: (std::f64::consts::SQRT_2 * kc - sr * kr).abs() <= 1e-9,
            lhs: std::f64::consts::SQRT_2 * kc,
            rhs: sr * kr,
        },
        LemmaCheck { name: "kappa_theorem".into(), passed: df + guard(df) >= rhs_d, lhs: df, rhs: rhs_d },
    ];
    Ok(LemmaReport {
        rho,
        configurations: n,
        alpha_r: alpha,
        kappa_r: kr,
        kappa_conf: kc,
        delta_f: df,
        delta_conf: dc,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pairwise_inequality_on_random_vectors(
            p in prop::collection::vec(-10.0f64..10.0, 4),
            q in prop::collection::vec(-10.0f64..10.0, 4),
        ) {
            prop_assert!(kappa0_holds(&p, &q, 1e-9));
        }
    }

    #[test]
    fn kappa_inf_is_min_norm() {
        assert_eq!(kappa_inf_values(&[vec![3.0, 4.0], vec![0.0, 2.0], vec![-1.5, 2.0]]), 2.0);
    }
}
