//! Constants `r_n`, `c_{n,k}`, projective covering radii and the
//! theorem-backed bound oracle.

mod covering;
mod oracle;

pub use covering::{cov_upper, cov_upper_search, CoveringResult};
pub use oracle::{bound_oracle, BoundReport, Condition, Quantity, Scenario};

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration budget used by [`c_constant`] for covering searches.
pub const COVERING_BUDGET: usize = 40;
/// Seed used by [`c_constant`] for covering searches.
pub const COVERING_SEED: u64 = 0x00c0_ffee;

/// `r_n = arccos(−1/(n+1))`, the geodesic diameter of the vertices of a
/// regular `(n+1)`-simplex inscribed in `S^n`.
pub fn r_constant(n: usize) -> f64 {
    (-1.0 / (n as f64 + 1.0)).acos()
}

/// Known facts about a constant. `provenance` names each fact used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantValue {
    pub exact: Option<f64>,
    pub lower: f64,
    pub upper: Option<f64>,
    pub provenance: Vec<String>,
}

impl ConstantValue {
    fn exact(v: f64, provenance: Vec<String>) -> Self {
        Self { exact: Some(v), lower: v, upper: Some(v), provenance }
    }

    /// The best value known to be a lower bound.
    pub fn best_lower(&self) -> f64 {
        self.exact.unwrap_or(self.lower)
    }
}

/// `c_{n,k}`: the infimal scale admitting an odd map `S^k → VR(S^n; r)`.
///
/// Exact for `k = n`, `k ∈ {n+1, n+2}` and `n = 1`; otherwise a lower bound
/// from monotonicity in `k` and from projective coverings.
pub fn c_constant(n: usize, k: usize) -> Result<ConstantValue> {
    c_constant_with(n, k, COVERING_BUDGET, COVERING_SEED)
}

pub fn c_constant_with(n: usize, k: usize, budget: usize, seed: u64) -> Result<ConstantValue> {
    if k < n {
        return Err(Error::invalid(format!("c_{{n,k}} needs k >= n, got n = {n}, k = {k}")));
    }
    if k == n {
        return Ok(ConstantValue::exact(0.0, vec!["exact: c_{n,n} = 0".into()]));
    }
    if n == 1 {
        let m = (k / 2) as f64;
        let mut prov = vec!["exact: c_{1,2m} = c_{1,2m+1} = 2πm/(2m+1)".to_string()];
        if k <= 3 {
            prov.push("exact: c_{n,n+1} = c_{n,n+2} = r_n".into());
        }
        return Ok(ConstantValue::exact(TAU * m / (2.0 * m + 1.0), prov));
    }
    if k <= n + 2 {
        return Ok(ConstantValue::exact(r_constant(n), vec!["exact: c_{n,n+1} = c_{n,n+2} = r_n".into()]));
    }
    let mono = r_constant(n);
    let cover = PI - 2.0 * cov_upper(n, k, budget, seed)?;
    let mut prov = vec!["lower: monotone in k, c_{n,k} >= c_{n,n+1} = r_n".to_string()];
    prov.push(format!("lower: covering bound pi - 2 cov(RP^{n}, {k}) = {cover:?}"));
    Ok(ConstantValue { exact: None, lower: mono.max(cover), upper: None, provenance: prov })
}

/// `π − 2·cov_upper(n, k)`, the covering lower bound for `c_{n,k}`.
pub fn covering_lower_bound(n: usize, k: usize, budget: usize, seed: u64) -> Result<f64> {
    Ok(PI - 2.0 * cov_upper(n, k, budget, seed)?)
}

/// Whether `r = p^a` for a prime `p` and `a ≥ 1`.
pub fn is_prime_power(r: u64) -> Result<bool> {
    if r < 2 {
        return Err(Error::invalid(format!("is_prime_power needs r >= 2, got {r}")));
    }
    let mut m = r;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return Ok(m == 1);
        }
        p += 1;
    }
    // m itself is prime and r had no smaller factor.
    Ok(true)
}

/// One entry of the constants table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub n: usize,
    pub k: usize,
    #[serde(flatten)]
    pub value: ConstantValue,
}

/// `c_{n,k}` for `k` from `n` to `k_max`.
pub fn constants_table(n: usize, k_max: usize) -> Result<Vec<ConstantRow>> {
    (n..=k_max.max(n)).map(|k| Ok(ConstantRow { n, k, value: c_constant(n, k)? })).collect()
}
