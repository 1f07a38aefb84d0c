use super::{Verification, Witness, WitnessKind, WitnessSpec, CLUSTER_FLOOR};
use crate::bounds::c_constant;
use crate::error::{Error, Result};
use crate::metric::{sphere_angle, FiniteMetricSample, MetricKind};
use crate::moduli::SampledFunction;
use crate::rng::SeededRng;

/// Number of singular-set base points (before adding antipodes) when the
/// singular subsphere has positive dimension.
const SINGULAR_POINTS: usize = 4;
/// Probe points used to estimate the covering radius of the sample.
const PROBES: usize = 256;

/// Odd function `S^k → S^n`: `x ↦` the normalized first `n+1` coordinates.
///
/// On the singular subsphere (first `n+1` coordinates zero) the value is
/// `+e_1` when the first nonzero remaining coordinate is positive and `−e_1`
/// otherwise. The sample has `grid` random antipodal pairs plus rings of
/// geometrically shrinking radius around singular points; ring and singular
/// points are the hot spots. Every sample point comes with its exact
/// negation.
pub fn equatorial_odd(k: usize, n: usize, grid: usize, seed: u64) -> Result<Witness> {
    if n >= k {
        return Err(Error::invalid(format!("need n < k, got n = {n}, k = {k}")));
    }
    if grid == 0 {
        return Err(Error::invalid("grid must be positive"));
    }
    let mut rng = SeededRng::new(seed);
    let mut base: Vec<Vec<f64>> = (0..grid).map(|_| rng.unit_vector(k)).collect();
    let mut hot_base = Vec::new();

    let tail = k - n; // dimension of the subspace holding the singular set
    let singular: Vec<Vec<f64>> = if tail == 1 {
        let mut p = vec![0.0; k + 1];
        p[k] = 1.0;
        vec![p]
    } else {
        (0..SINGULAR_POINTS)
            .map(|_| {
                let mut p = vec![0.0; n + 1];
                p.extend(rng.unit_vector(tail - 1));
                p
            })
            .collect()
    };
    let directions: Vec<Vec<f64>> = if n == 1 {
        (0..8).map(|j| {
            let a = std::f64::consts::TAU * j as f64 / 8.0;
            vec![a.cos(), a.sin()]
        }).collect()
    } else {
        (0..=n).flat_map(|i| [1.0, -1.0].map(|s| {
            let mut u = vec![0.0; n + 1];
            u[i] = s;
            u
        })).collect()
    };
    for s in &singular {
        hot_base.push(base.len());
        base.push(s.clone());
        let mut eps = 0.5;
        while eps >= CLUSTER_FLOOR {
            for u in &directions {
                let mut p: Vec<f64> = s.iter().map(|x| x * eps.cos()).collect();
                for (slot, x) in p.iter_mut().zip(u) {
                    *slot += x * eps.sin();
                }
                hot_base.push(base.len());
                base.push(p);
            }
            eps /= 2.0;
        }
    }
    let half = base.len();
    let mut points = base.clone();
    points.extend(base.iter().map(|p| p.iter().map(|x| -x).collect::<Vec<f64>>()));
    let hot: Vec<usize> = hot_base.iter().copied().chain(hot_base.iter().map(|&i| i + half)).collect();

    let values: Vec<Vec<f64>> = points.iter().map(|p| equatorial_value(p, n)).collect();
    let odd_ok = (0..half).all(|i| values[i].iter().zip(&values[i + half]).all(|(a, b)| *a == -b));
    if !odd_ok {
        return Err(Error::ConstructionFailed("oddness fails on a sampled antipodal pair".into()));
    }

    let mut probe_rng = SeededRng::substream(seed, 1);
    let resolution = (0..PROBES)
        .map(|_| {
            let q = probe_rng.unit_vector(k);
            points.iter().map(|p| sphere_angle(p, &q)).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let domain = FiniteMetricSample::from_points(points, MetricKind::SphereGeodesic)?;
    let f = SampledFunction::new(domain, values, resolution)?.with_hot_spots(hot)?;
    let bound = c_constant(n, k)?.best_lower();
    let mut spec = WitnessSpec::new(
        WitnessKind::EquatorialOdd,
        &[("k", k as f64), ("n", n as f64), ("grid", grid as f64)],
        Some(bound),
        Some("odd maps S^k -> S^n: delta(f) >= c_{n,k}"),
    );
    spec.seed = Some(seed);
    Ok(Witness {
        spec,
        function: f,
        verification: Verification {
            passed: true,
            detail: format!("g(-x) = -g(x) on all {half} sampled antipodal pairs"),
            min_separation: None,
        },
    })
}

fn equatorial_value(p: &[f64], n: usize) -> Vec<f64> {
    let head = &p[..=n];
    let norm = head.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        return head.iter().map(|x| x / norm).collect();
    }
    let sign = p[n + 1..].iter().find(|x| **x != 0.0).map_or(1.0, |x| x.signum());
    let mut e = vec![0.0; n + 1];
    e[0] = sign;
    e
}
