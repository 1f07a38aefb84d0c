use serde::{Deserialize, Serialize};

use super::{c_constant, is_prime_power, r_constant};
use crate::error::{Error, Result};

/// A nonembeddability setting with a known lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum Scenario {
    /// `X → R^d` where `Conf_2(X)` admits no equivariant map to `S^{d−1}`.
    GeneralConf2 { d: usize },
    /// `n`-dimensional `X` without a linear/smooth embedding into `R^d`.
    HaefligerWeber { n: usize, d: usize },
    /// `RP^{2^k} → R^{2^{k+1}−1}`.
    ProjectivePowerOfTwo { k: u32 },
    /// `S^k → R^d`.
    SphereToEuclidean { k: usize, d: usize },
    /// `R^{k+1} → R^d`.
    EuclideanToEuclidean { k_plus_1: usize, d: usize },
    /// `sk_d(Δ_{2d+2}) → R^{2d}`, almost injective.
    VanKampenFlores { d: usize },
    /// `Δ_{(r−1)(d+1)} → R^d`, almost `r`-injective.
    Tverberg { r: u64, d: usize },
    /// Same setting; bound on `δ / κ^{(r)}`.
    TverbergKappaDelta { r: u64, d: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Alpha,
    Alpha2,
    AlphaR,
    DeltaOverKappaR,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    /// Hypotheses the oracle cannot check (topological assumptions).
    pub assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub scenario: Scenario,
    /// Radians, except for [`Quantity::DeltaOverKappaR`] (a ratio).
    pub bound: f64,
    pub quantity: Quantity,
    pub citation: String,
    pub conditions: Vec<Condition>,
    /// False when the bound rests on a numerical lower estimate of `c_{n,k}`.
    pub exact_constant: bool,
}

fn checked(name: impl Into<String>, passed: bool) -> Condition {
    Condition { name: name.into(), passed, assumed: false }
}

fn assumed(name: impl Into<String>) -> Condition {
    Condition { name: name.into(), passed: true, assumed: true }
}

fn require(theorem: &'static str, conditions: &[Condition]) -> Result<()> {
    match conditions.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::InapplicableTheorem { theorem, condition: c.name.clone() }),
        None => Ok(()),
    }
}

/// Lower bound for a scenario, with the theorem used and its hypotheses.
/// Fails with [`Error::InapplicableTheorem`] naming the first unmet condition.
pub fn bound_oracle(s: Scenario) -> Result<BoundReport> {
    let report = |bound: f64, quantity, citation: &str, conditions: Vec<Condition>, exact_constant| BoundReport {
        scenario: s,
        bound,
        quantity,
        citation: citation.to_string(),
        conditions,
        exact_constant,
    };
    match s {
        Scenario::GeneralConf2 { d } => {
            const T: &str = "general Conf_2 bound: alpha(f) >= r_{d-1}";
            let c = vec![checked("d >= 1", d >= 1), assumed("no Z/2-map Conf_2(X) -> S^{d-1}")];
            require(T, &c)?;
            Ok(report(r_constant(d - 1), Quantity::Alpha, T, c, true))
        }
        Scenario::HaefligerWeber { n, d } => {
            const T: &str = "quantified Haefliger-Weber: alpha(f) >= r_{d-1}";
            let c = vec![
                checked("d >= 1", d >= 1),
                checked("d > 3(n+1)/2", 2 * d > 3 * (n + 1)),
                assumed("X has no linear (resp. smooth) embedding into R^d"),
            ];
            require(T, &c)?;
            Ok(report(r_constant(d - 1), Quantity::Alpha, T, c, true))
        }
        Scenario::ProjectivePowerOfTwo { k } => {
            const T: &str = "projective spaces RP^{2^k} -> R^{2^{k+1}-1}: alpha(f) >= r_{2^{k+1}-2}";
            let c = vec![checked("k <= 30", k <= 30)];
            require(T, &c)?;
            Ok(report(r_constant((1usize << (k + 1)) - 2), Quantity::Alpha, T, c, true))
        }
        Scenario::SphereToEuclidean { k, d } => {
            const T: &str = "spheres S^k -> R^d: alpha(f) >= c_{d-1,k}";
            let c = vec![checked("d >= 1", d >= 1), checked("k >= d-1", d >= 1 && k + 1 >= d)];
            require(T, &c)?;
            let cv = c_constant(d - 1, k)?;
            Ok(report(cv.best_lower(), Quantity::Alpha, T, c, cv.exact.is_some()))
        }
        Scenario::EuclideanToEuclidean { k_plus_1, d } => {
            const T: &str = "Euclidean spaces R^{k+1} -> R^d: alpha(f) >= c_{d-1,k}";
            let c = vec![
                checked("d >= 1", d >= 1),
                checked("k+1 >= 1", k_plus_1 >= 1),
                checked("k >= d-1", d >= 1 && k_plus_1 >= d),
            ];
            require(T, &c)?;
            let cv = c_constant(d - 1, k_plus_1 - 1)?;
            Ok(report(cv.best_lower(), Quantity::Alpha, T, c, cv.exact.is_some()))
        }
        Scenario::VanKampenFlores { d } => {
            const T: &str = "quantified van Kampen-Flores: alpha^(2)(f) >= r_{2d-1} = arccos(-1/(2d))";
            let c = vec![checked("d >= 1", d >= 1)];
            require(T, &c)?;
            Ok(report((-1.0 / (2.0 * d as f64)).acos(), Quantity::Alpha2, T, c, true))
        }
        Scenario::Tverberg { r, d } => {
            const T: &str = "quantified topological Tverberg: alpha^(r)(f) >= arccos(-1/(d(r-1)))";
            let c = tverberg_conditions(r, d)?;
            require(T, &c)?;
            Ok(report((-1.0 / (d as f64 * (r - 1) as f64)).acos(), Quantity::AlphaR, T, c, true))
        }
        Scenario::TverbergKappaDelta { r, d } => {
            const T: &str = "Tverberg discontinuity-injectivity tradeoff: delta(f) >= kappa^(r)(f) sqrt(1 + 1/(d(r-1)))";
            let c = tverberg_conditions(r, d)?;
            require(T, &c)?;
            Ok(report((1.0 + 1.0 / (d as f64 * (r - 1) as f64)).sqrt(), Quantity::DeltaOverKappaR, T, c, true))
        }
    }
}

fn tverberg_conditions(r: u64, d: usize) -> Result<Vec<Condition>> {
    Ok(vec![
        checked("d >= 1", d >= 1),
        checked("r >= 2", r >= 2),
        checked("r is a prime power", r >= 2 && is_prime_power(r)?),
    ])
}
