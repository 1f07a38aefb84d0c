use super::{cluster, MERGE_TOL, Verification, Witness, WitnessKind, WitnessSpec, CLUSTER_FLOOR};
use crate::error::{Error, Result};
use crate::moduli::{barycentric_grid, edge_point, SampledFunction};

/// Value given to the midpoint of the edge `v0 v2`.
pub const MIDPOINT_VALUE: f64 = 0.95;

/// Almost 2-injective `f: Δ_2 → R`, affine with `f(v_i) = i` except at the
/// midpoint of `v0 v2`, where the affine value `1 = f(v1)` is replaced by
/// [`MIDPOINT_VALUE`].
///
/// The sample is the barycentric lattice with denominator `grid`, the
/// midpoint, and a cluster around it on the edge; the midpoint is the hot
/// spot.
pub fn tverberg_one_point(grid: usize) -> Result<Witness> {
    if grid < 10 {
        return Err(Error::invalid("grid must be at least 10"));
    }
    let mut sample = barycentric_grid(2, grid)?;
    let h = 1.0 / grid as f64;
    let existing: Vec<usize> = (0..sample.points.len()).filter(|&i| sample.carriers[i] == [0, 2]).collect();
    let mut have: Vec<f64> = existing.iter().map(|&i| sample.points[i][2]).collect();
    for t in cluster(0.5, h, CLUSTER_FLOOR, 0.0, 1.0) {
        if t > 0.0 && t < 1.0 && !have.iter().any(|x| (x - t).abs() < MERGE_TOL) {
            sample.push(edge_point(3, 0, 2, t), vec![0, 2]);
            have.push(t);
        }
    }
    let mid = (0..sample.points.len())
        .find(|&i| sample.carriers[i] == [0, 2] && sample.points[i][2] == 0.5)
        .expect("midpoint sampled");
    let values: Vec<Vec<f64>> = sample
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| vec![if i == mid { MIDPOINT_VALUE } else { p[1] + 2.0 * p[2] }])
        .collect();
    let (domain, carriers, resolution) = sample.into_metric()?;
    let f = SampledFunction::new(domain, values, resolution)?.with_carriers(carriers)?.with_hot_spots(vec![mid])?;

    let (sep, pair) = super::k5::sampled_min_separation(&f);
    if !(sep > 0.0) {
        return Err(Error::ConstructionFailed(format!("sample points {pair:?} from disjoint faces share a value")));
    }
    Ok(Witness {
        spec: WitnessSpec::new(
            WitnessKind::TverbergOnePoint,
            &[("grid", grid as f64), ("midpoint_value", MIDPOINT_VALUE)],
            Some(std::f64::consts::PI),
            Some("quantified topological Tverberg: alpha^(r)(f) >= arccos(-1/(d(r-1))), r = 2, d = 1"),
        ),
        function: f,
        verification: Verification {
            passed: true,
            detail: format!("no disjoint-face pair shares a value; closest pair {pair:?}"),
            min_separation: Some(sep),
        },
    })
}
