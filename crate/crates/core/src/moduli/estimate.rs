use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{balls, extend_centered, for_each_product, reach, ConfigSample};
use super::sampled::{CodomainMetric, SampledFunction};
use crate::error::{Error, Result};

/// Estimate at one scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderRung {
    pub rho: f64,
    pub value: f64,
}

/// Result of a discretized modulus computation.
///
/// `ladder` lists the value at each requested scale in the order given;
/// `value` and `rho` repeat the first rung. Values are monotone in `ρ`
/// because balls are nested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    pub value: f64,
    pub rho: f64,
    pub separation: Option<f64>,
    pub ladder: Vec<LadderRung>,
    /// Set when the smallest scale is below the sample's covering radius.
    pub below_resolution: bool,
    /// Sample indices of the center attaining `value` at the first rung.
    pub witness: Option<Vec<usize>>,
}

/// `ρ, ρ/2, ρ/4, ρ/8`.
pub fn default_ladder(rho: f64) -> Vec<f64> {
    (0..4).map(|j| rho / f64::from(1u32 << j)).collect()
}

fn check_rhos(rhos: &[f64]) -> Result<()> {
    if rhos.is_empty() || rhos.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(Error::invalid("scales must be positive and finite"));
    }
    Ok(())
}

fn assemble(rhos: &[f64], sep: Option<f64>, resolution: f64, rungs: Vec<(f64, Option<Vec<usize>>)>) -> ModulusEstimate {
    let ladder: Vec<LadderRung> = rhos.iter().zip(&rungs).map(|(&rho, (value, _))| LadderRung { rho, value: *value }).collect();
    let min_rho = rhos.iter().copied().fold(f64::INFINITY, f64::min);
    ModulusEstimate {
        value: ladder[0].value,
        rho: rhos[0],
        separation: sep,
        below_resolution: min_rho < resolution,
        witness: rungs.into_iter().next().and_then(|(_, w)| w),
        ladder,
    }
}

/// Keeps the larger value; on ties the smaller index, so parallel reductions
/// are deterministic.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

/// Diameter of a set of equal-length vectors stored flat.
fn diameter(flat: &[f64], dim: usize, metric: CodomainMetric) -> f64 {
    let n = flat.len().checked_div(dim).unwrap_or(0);
    if n < 2 {
        return 0.0;
    }
    if dim == 1 && metric == CodomainMetric::Euclidean {
        let (lo, hi) = flat.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        return hi - lo;
    }
    let mut best = (0.0f64, 0usize, 0usize);
    for i in 0..n {
        let u = &flat[i * dim..(i + 1) * dim];
        for j in 0..i {
            let v = &flat[j * dim..(j + 1) * dim];
            let sq: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
            if sq > best.0 {
                best = (sq, i, j);
            }
        }
    }
    let (_, i, j) = best;
    metric.distance(&flat[i * dim..(i + 1) * dim], &flat[j * dim..(j + 1) * dim])
}

/// `δ̂(g)` at scale `ρ`: the largest diameter of the image of a sample ball.
pub fn delta_hat(g: &SampledFunction, rho: f64, metric: CodomainMetric) -> Result<ModulusEstimate> {
    delta_hat_ladder(g, &[rho], metric)
}

pub fn delta_hat_ladder(g: &SampledFunction, rhos: &[f64], metric: CodomainMetric) -> Result<ModulusEstimate> {
    check_rhos(rhos)?;
    if metric == CodomainMetric::Geodesic
        && g.values().iter().any(|v| (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() > 1e-9)
    {
        return Err(Error::invalid("geodesic codomain requires unit-vector values"));
    }
    let dim = g.value_dim();
    let rungs = rhos
        .iter()
        .map(|&rho| {
            let bs = balls(g, rho);
            let best = bs
                .par_iter()
                .enumerate()
                .map_init(Vec::new, |buf, (x, ball)| {
                    buf.clear();
                    for &p in ball {
                        buf.extend_from_slice(g.value(p as usize));
                    }
                    (diameter(buf, dim, metric), x)
                })
                .reduce(|| (0.0, usize::MAX), better);
            (best.0, (best.1 != usize::MAX).then(|| vec![best.1]))
        })
        .collect();
    Ok(assemble(rhos, None, g.resolution(), rungs))
}

/// `Φ_f(x, y) = (f(x) − f(y)) / ‖f(x) − f(y)‖` on the given ordered pairs.
pub fn phi_f(f: &SampledFunction, pairs: &[(usize, usize)]) -> Result<Vec<Vec<f64>>> {
    pairs
        .iter()
        .map(|&(x, y)| {
            if x >= f.len() || y >= f.len() {
                return Err(Error::invalid("configuration index out of range"));
            }
            if x == y {
                return Err(Error::InvalidConfiguration(format!("({x}, {y}) lies on the diagonal")));
            }
            phi(f.value(x), f.value(y)).ok_or(Error::NotInjective { first: x, second: y })
        })
        .collect()
}

fn phi(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let diff: Vec<f64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
    let n = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n > 0.0).then(|| diff.into_iter().map(|x| x / n).collect())
}

fn check_injective(f: &SampledFunction) -> Result<()> {
    // Adding 0.0 folds -0.0 into 0.0 so bitwise keys agree with `==`.
    let mut keys: Vec<(Vec<u64>, usize)> =
        f.values().iter().enumerate().map(|(i, v)| (v.iter().map(|x| (x + 0.0).to_bits()).collect(), i)).collect();
    keys.par_sort();
    match keys.windows(2).find(|w| w[0].0 == w[1].0) {
        Some(w) => Err(Error::NotInjective { first: w[0].1, second: w[1].1 }),
        None => Ok(()),
    }
}

/// `α̂(f)` on `Conf_2` at scale `ρ`: the largest diameter of `Φ_f` over a
/// product ball `B_ρ(x) × B_ρ(y)`, restricted to pairs at distance `≥ sep`.
/// Requires `sep ≥ 2ρ` and an injective `f`.
pub fn alpha_hat(f: &SampledFunction, rho: f64, sep: f64) -> Result<ModulusEstimate> {
    alpha_hat_ladder(f, &[rho], sep)
}

pub fn alpha_hat_ladder(f: &SampledFunction, rhos: &[f64], sep: f64) -> Result<ModulusEstimate> {
    check_rhos(rhos)?;
    let max_rho = rhos.iter().copied().fold(0.0, f64::max);
    if !(sep >= 2.0 * max_rho) {
        return Err(Error::invalid(format!("separation {sep} is smaller than 2ρ = {}", 2.0 * max_rho)));
    }
    if f.value_dim() == 0 {
        return Err(Error::invalid("function has no values"));
    }
    check_injective(f)?;
    let rungs = rhos
        .iter()
        .map(|&rho| if f.value_dim() == 1 { alpha_scalar(f, rho, sep) } else { alpha_general(f, rho, sep) })
        .collect();
    Ok(assemble(rhos, Some(sep), f.resolution(), rungs))
}

/// Members `(x', y')` of the product ball around `(x, y)` in the sample.
fn pair_members<'a>(
    f: &'a SampledFunction,
    bx: &'a [u32],
    by: &'a [u32],
    sep: f64,
) -> impl Iterator<Item = (usize, usize)> + 'a {
    let m = f.domain();
    bx.iter().flat_map(move |&a| {
        by.iter().filter_map(move |&b| {
            let (a, b) = (a as usize, b as usize);
            (a != b && m.dist(a, b) >= sep).then_some((a, b))
        })
    })
}

/// Real-valued case: `Φ_f` takes values in `S^0 = {±1}`, so the diameter
/// over a product ball is `π` exactly when both signs occur and `0` otherwise.
fn alpha_scalar(f: &SampledFunction, rho: f64, sep: f64) -> (f64, Option<Vec<usize>>) {
    let bs = balls(f, rho);
    let m = f.domain();
    let val = |i: u32| f.value(i as usize)[0];
    let range: Vec<(f64, f64)> = bs
        .iter()
        .map(|b| b.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| (lo.min(val(i)), hi.max(val(i)))))
        .collect();
    // Centers sorted by the low end of their value range.
    let mut by_lo: Vec<usize> = (0..f.len()).collect();
    by_lo.sort_by(|&a, &b| range[a].0.total_cmp(&range[b].0).then(a.cmp(&b)));
    let los: Vec<f64> = by_lo.iter().map(|&i| range[i].0).collect();
    let max_len = range.iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max);
    // Try the centers with the widest ranges first; any witness will do.
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| (range[b].1 - range[b].0).total_cmp(&(range[a].1 - range[a].0)).then(a.cmp(&b)));
    let far = sep + 2.0 * reach(rho) + 1e-9;
    let hit = order.par_iter().find_map_first(|&x| {
        let (lo_x, hi_x) = range[x];
        // Candidates y with lo_y < hi_x and hi_y > lo_x, so lo_y > lo_x − max_len.
        let start = los.partition_point(|&l| l < lo_x - max_len);
        let end = los.partition_point(|&l| l < hi_x);
        for &y in &by_lo[start..end] {
            let (lo_y, hi_y) = range[y];
            if !(hi_x > lo_y && lo_x < hi_y) || y == x {
                continue;
            }
            let d = m.dist(x, y);
            if d < sep {
                continue;
            }
            if d >= far {
                return Some(vec![x, y]);
            }
            let (mut pos, mut neg) = (false, false);
            for (a, b) in pair_members(f, &bs[x], &bs[y], sep) {
                let diff = val(a as u32) - val(b as u32);
                pos |= diff > 0.0;
                neg |= diff < 0.0;
                if pos && neg {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    });
    match hit {
        Some(w) => (PI, Some(w)),
        None => (0.0, None),
    }
}

fn alpha_general(f: &SampledFunction, rho: f64, sep: f64) -> (f64, Option<Vec<usize>>) {
    let bs = balls(f, rho);
    let m = f.domain();
    let n = f.len();
    let dim = f.value_dim();
    let best = (0..n)
        .into_par_iter()
        .map_init(Vec::new, |buf, x| {
            let mut best = (0.0f64, usize::MAX);
            for y in 0..n {
                if y == x || m.dist(x, y) < sep {
                    continue;
                }
                buf.clear();
                for (a, b) in pair_members(f, &bs[x], &bs[y], sep) {
                    buf.extend(phi(f.value(a), f.value(b)).expect("injectivity checked"));
                }
                best = better(best, (diameter(buf, dim, CodomainMetric::Geodesic), x * n + y));
            }
            best
        })
        .reduce(|| (0.0, usize::MAX), better);
    (best.0, (best.1 != usize::MAX).then(|| vec![best.1 / n, best.1 % n]))
}

fn check_config(f: &SampledFunction, configs: &ConfigSample) -> Result<()> {
    if configs.iter().flatten().any(|&i| i as usize >= f.len()) {
        return Err(Error::invalid("configuration index out of range"));
    }
    Ok(())
}

/// Rejects configuration samples containing a tuple with all values equal.
fn check_almost_r_injective(f: &SampledFunction, configs: &ConfigSample) -> Result<()> {
    let bad = (0..configs.len()).into_par_iter().find_first(|&i| {
        let t = configs.tuple(i);
        let first = f.value(t[0] as usize);
        t[1..].iter().all(|&j| f.value(j as usize) == first)
    });
    match bad {
        Some(i) => Err(Error::NotAlmostRInjective {
            r: configs.arity(),
            configuration: configs.tuple(i).iter().map(|&x| x as usize).collect(),
        }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ConfMap {
    Centered,
    Normalized,
}

/// Max over centers in `configs` of the diameter of the pushed-forward ball.
/// Diameter of normalized pair tuples `(v, −v)/√2` with `v` in the plane.
/// Each tuple is fixed by the angle of `v`, so the farthest pair is found by
/// sorting angles and looking for the partner nearest the antipode.
fn circle_diameter(flat: &[f64], metric: CodomainMetric) -> f64 {
    let n = flat.len() / 4;
    if n < 2 {
        return 0.0;
    }
    let mut ang: Vec<(f64, usize)> = (0..n).map(|i| (flat[4 * i + 1].atan2(flat[4 * i]), i)).collect();
    ang.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let gap = |a: f64, b: f64| {
        let d = (a - b).abs();
        d.min(2.0 * PI - d)
    };
    let mut best = (-1.0f64, 0usize, 0usize);
    for &(a, i) in &ang {
        let target = if a < 0.0 { a + PI } else { a - PI };
        let k = ang.partition_point(|x| x.0 < target);
        for c in [k + n - 1, k] {
            let (b, j) = ang[c % n];
            let g = gap(a, b);
            if g > best.0 {
                best = (g, i, j);
            }
        }
    }
    let (_, i, j) = best;
    metric.distance(&flat[4 * i..4 * i + 4], &flat[4 * j..4 * j + 4])
}

/// Largest `|f(q) − f(p)|` over `q` in the ball of `p`.
fn spreads(f: &SampledFunction, bs: &[Vec<u32>]) -> Vec<f64> {
    bs.par_iter()
        .enumerate()
        .map(|(p, ball)| {
            let y = f.value(p);
            ball.iter()
                .map(|&q| f.value(q as usize).iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .fold(0.0, f64::max)
                .sqrt()
        })
        .collect()
}

/// Upper bound on the ball diameter at a center. Centering is an orthogonal
/// projection, so members lie within `E = sqrt(Σ spread²)` of the center's
/// tuple; after normalizing they lie within angle `asin(E/|u|)` of it.
fn diameter_bound<'a>(f: &'a SampledFunction, t: &[u32], spread: &[f64], map: ConfMap, vals: &mut Vec<&'a [f64]>, scratch: &mut Vec<f64>) -> f64 {
    let e = t.iter().map(|&p| spread[p as usize].powi(2)).sum::<f64>().sqrt();
    let raw = match map {
        ConfMap::Centered => 2.0 * e,
        ConfMap::Normalized => {
            vals.clear();
            vals.extend(t.iter().map(|&p| f.value(p as usize)));
            scratch.clear();
            extend_centered(vals, false, scratch);
            let u = scratch.iter().map(|x| x * x).sum::<f64>().sqrt();
            if e < u * (1.0 - 1e-9) {
                (2.0 * (e / u).asin()).min(PI)
            } else {
                PI
            }
        }
    };
    raw * (1.0 + 1e-9) + 1e-12
}

fn config_modulus(f: &SampledFunction, configs: &ConfigSample, rho: f64, map: ConfMap) -> Result<(f64, Option<Vec<usize>>)> {
    let tester = configs.tester(f)?;
    let bs = balls(f, rho);
    let spread = spreads(f, &bs);
    let r = configs.arity();
    let dim = r * f.value_dim();
    let metric = match map {
        ConfMap::Centered => CodomainMetric::Euclidean,
        ConfMap::Normalized => CodomainMetric::Geodesic,
    };
    let planar_pairs = map == ConfMap::Normalized && r == 2 && f.value_dim() == 2;
    // Centers in decreasing order of their bound; a center whose bound is
    // below the running maximum cannot attain the maximum and is skipped.
    let mut order: Vec<(f64, usize)> = (0..configs.len())
        .into_par_iter()
        .map_init(|| (Vec::new(), Vec::new()), |(vals, scratch), i| (diameter_bound(f, configs.tuple(i), &spread, map, vals, scratch), i))
        .collect();
    order.par_sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let running = AtomicU64::new(0f64.to_bits());
    let best = order
        .par_iter()
        .with_min_len(64)
        .filter(|(bound, _)| *bound >= f64::from_bits(running.load(AtomicOrdering::Relaxed)))
        .map_init(
            || (Vec::new(), Vec::new()),
            |(buf, vals), &(_, i)| {
                let t = configs.tuple(i);
                let lists: Vec<&[u32]> = t.iter().map(|&p| bs[p as usize].as_slice()).collect();
                buf.clear();
                for_each_product(&lists, |member| {
                    if !tester.contains(member) {
                        return;
                    }
                    vals.clear();
                    vals.extend(member.iter().map(|&p| f.value(p as usize)));
                    let pushed = extend_centered(vals, map == ConfMap::Normalized, buf);
                    assert!(pushed, "almost r-injectivity checked");
                });
                let d = if planar_pairs { circle_diameter(buf, metric) } else { diameter(buf, dim, metric) };
                running.fetch_max(d.to_bits(), AtomicOrdering::Relaxed);
                (d, i)
            },
        )
        .reduce(|| (0.0, usize::MAX), better);
    Ok((best.0, (best.1 != usize::MAX).then(|| configs.tuple(best.1).iter().map(|&p| p as usize).collect())))
}

/// `α̂^{(r)}(f)`: the discretized modulus of `ν ∘ Conf_r^Δ(f)` over the
/// configuration sample, with the max metric on configurations.
pub fn alpha_r_hat(f: &SampledFunction, configs: &ConfigSample, rho: f64) -> Result<ModulusEstimate> {
    alpha_r_hat_ladder(f, configs, &[rho])
}

pub fn alpha_r_hat_ladder(f: &SampledFunction, configs: &ConfigSample, rhos: &[f64]) -> Result<ModulusEstimate> {
    check_rhos(rhos)?;
    check_config(f, configs)?;
    check_almost_r_injective(f, configs)?;
    let rungs = rhos.iter().map(|&rho| config_modulus(f, configs, rho, ConfMap::Normalized)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(rhos, None, f.resolution(), rungs))
}

/// `δ̂(Conf_r^Δ(f))` over the configuration sample, Euclidean in `W_r^{⊕d}`.
pub fn conf_delta_hat(f: &SampledFunction, configs: &ConfigSample, rho: f64) -> Result<ModulusEstimate> {
    check_rhos(&[rho])?;
    check_config(f, configs)?;
    let rung = config_modulus(f, configs, rho, ConfMap::Centered)?;
    Ok(assemble(&[rho], None, f.resolution(), vec![rung]))
}
