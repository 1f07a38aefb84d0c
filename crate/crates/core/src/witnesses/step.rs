use super::{cluster, MERGE_TOL, Verification, Witness, WitnessKind, WitnessSpec, CLUSTER_FLOOR};
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSample, MetricKind};
use crate::moduli::SampledFunction;

/// Injective step functions on `[0, 1]` with a jump at `1/2`.
///
/// Monotone: `x + [x ≥ 1/2]`. Nonmonotone: `x + 2·[x < 1/2]`, which swaps
/// the order of the two branches. Sampled on `i/grid` plus a cluster around
/// `1/2` (the hot spot).
pub fn step_witnesses(monotone: bool, grid: usize) -> Result<Witness> {
    if grid < 2 {
        return Err(Error::invalid("grid must be at least 2"));
    }
    let h = 1.0 / grid as f64;
    let mut xs: Vec<f64> = (0..=grid).map(|i| i as f64 * h).collect();
    xs.extend(cluster(0.5, h, CLUSTER_FLOOR, 0.0, 1.0));
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() < MERGE_TOL);
    let f = |x: f64| if monotone { x + if x >= 0.5 { 1.0 } else { 0.0 } } else { x + if x < 0.5 { 2.0 } else { 0.0 } };
    let values: Vec<Vec<f64>> = xs.iter().map(|&x| vec![f(x)]).collect();
    let hot = xs.iter().position(|&x| x == 0.5).expect("jump sampled");
    let mut sorted: Vec<f64> = values.iter().map(|v| v[0]).collect();
    sorted.sort_by(f64::total_cmp);
    let min_gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if !(min_gap > 0.0) {
        return Err(Error::ConstructionFailed("step function is not injective on the sample".into()));
    }
    let domain = FiniteMetricSample::from_points(xs.into_iter().map(|x| vec![x]).collect(), MetricKind::Euclidean)?;
    let func = SampledFunction::new(domain, values, 0.5 * h)?.with_hot_spots(vec![hot])?;
    let kind = if monotone { WitnessKind::MonotoneStep } else { WitnessKind::NonmonotoneStep };
    Ok(Witness {
        spec: WitnessSpec::new(
            kind,
            &[("grid", grid as f64), ("step", if monotone { 1.0 } else { 2.0 })],
            Some(if monotone { 0.0 } else { std::f64::consts::PI }),
            Some("monotonicity lemma: alpha(f) = 0 for injective f: R -> R iff f is monotone"),
        ),
        function: func,
        verification: Verification { passed: true, detail: "injective on the sample".into(), min_separation: Some(min_gap) },
    })
}
