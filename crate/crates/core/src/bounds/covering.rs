use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::projective_angle;
use crate::rng::SeededRng;

/// Largest projective sample used by the covering search.
const MAX_SAMPLE: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringResult {
    /// Certified upper bound on `cov_{RP^n}(k)`: `sampled + sample_radius`.
    pub radius_upper: f64,
    /// Largest distance from a sample point to its nearest center.
    pub sampled: f64,
    /// Covering radius of the sample itself in `RP^n`.
    pub sample_radius: f64,
    pub sample_size: usize,
    pub centers: Vec<Vec<f64>>,
}

/// Upper bound on the `k`-point covering radius of `RP^n` with the quotient
/// of the geodesic metric. `RP^0` is a point; for `RP^1` (a circle of length
/// `π`) evenly spaced points are optimal and the value `π/(2k)` is returned.
pub fn cov_upper(n: usize, k: usize, budget: usize, seed: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("covering needs k >= 1"));
    }
    match n {
        0 => Ok(0.0),
        1 => Ok(PI / (2.0 * k as f64)),
        _ => Ok(cov_upper_search(n, k, budget, seed)?.radius_upper),
    }
}

/// Radial projection of a grid on the faces `x_i = +1` of the cube
/// `[−1, 1]^{n+1}`; every line through the origin meets one of these faces.
/// Returns the unit vectors and the grid spacing.
fn cube_face_sample(n: usize) -> (Vec<Vec<f64>>, f64) {
    let faces = n + 1;
    let mut m = 2usize;
    while faces * (m + 2).pow(n as u32) <= MAX_SAMPLE {
        m += 1;
    }
    let h = 2.0 / m as f64;
    let per_face = (m + 1).pow(n as u32);
    let mut pts = Vec::with_capacity(faces * per_face);
    for face in 0..faces {
        for code in 0..per_face {
            let mut c = code;
            let mut p = Vec::with_capacity(n + 1);
            for axis in 0..=n {
                if axis == face {
                    p.push(1.0);
                } else {
                    p.push(-1.0 + h * (c % (m + 1)) as f64);
                    c /= m + 1;
                }
            }
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            pts.push(p.into_iter().map(|x| x / norm).collect());
        }
    }
    (pts, h)
}

/// Nearest center and distance for every sample point.
fn assign(sample: &[Vec<f64>], centers: &[Vec<f64>]) -> Vec<(usize, f64)> {
    sample
        .par_iter()
        .map(|p| {
            centers
                .iter()
                .enumerate()
                .map(|(i, c)| (i, projective_angle(p, c)))
                .fold((usize::MAX, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
        })
        .collect()
}

fn worst(assignment: &[(usize, f64)]) -> (usize, f64) {
    assignment
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |a, (i, &(_, d))| if d > a.1 { (i, d) } else { a })
}

/// Farthest-point seeding plus minimax relaxation over a cube-face sample of
/// `RP^n`. The configuration for `k` extends the best one for `k − 1`, so the
/// result is monotone in `k` for a fixed seed.
pub fn cov_upper_search(n: usize, k: usize, budget: usize, seed: u64) -> Result<CoveringResult> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("covering search needs n >= 1 and k >= 1"));
    }
    let (sample, h) = cube_face_sample(n);
    let chord = (h * (n as f64).sqrt() / 4.0).min(1.0);
    let sample_radius = 2.0 * chord.asin();
    let mut rng = SeededRng::new(seed);
    let mut centers = vec![sample[rng.below(sample.len())].clone()];
    let mut best = centers.clone();
    let mut best_radius = worst(&assign(&sample, &centers)).1;
    for j in 1..=k {
        if j > 1 {
            centers = best.clone();
            let (far, _) = worst(&assign(&sample, &centers));
            centers.push(sample[far].clone());
            best = centers.clone();
            best_radius = worst(&assign(&sample, &centers)).1;
        }
        for it in 0..budget {
            let a = assign(&sample, &centers);
            let step = 0.5 * (1.0 - it as f64 / budget as f64);
            // Move every center toward the farthest point of its cell.
            let mut far: Vec<(usize, f64)> = vec![(usize::MAX, -1.0); centers.len()];
            for (i, &(c, d)) in a.iter().enumerate() {
                if d > far[c].1 {
                    far[c] = (i, d);
                }
            }
            for (c, &(i, d)) in far.iter().enumerate() {
                if i == usize::MAX || d <= 0.0 {
                    continue;
                }
                let p = &sample[i];
                let sign = if p.iter().zip(&centers[c]).map(|(x, y)| x * y).sum::<f64>() >= 0.0 { 1.0 } else { -1.0 };
                let moved: Vec<f64> = centers[c].iter().zip(p).map(|(x, y)| x + step * sign * y).collect();
                let norm = moved.iter().map(|x| x * x).sum::<f64>().sqrt();
                centers[c] = moved.into_iter().map(|x| x / norm).collect();
            }
            let r = worst(&assign(&sample, &centers)).1;
            if r < best_radius {
                best_radius = r;
                best = centers.clone();
            }
        }
    }
    Ok(CoveringResult {
        radius_upper: (best_radius + sample_radius).min(PI / 2.0),
        sampled: best_radius,
        sample_radius,
        sample_size: sample.len(),
        centers: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_analytic() {
        assert_eq!(cov_upper(1, 4, 10, 1).unwrap(), PI / 8.0);
        assert_eq!(PI - 2.0 * cov_upper(1, 4, 10, 1).unwrap(), 3.0 * PI / 4.0);
        assert_eq!(cov_upper(0, 3, 10, 1).unwrap(), 0.0);
    }

    #[test]
    fn search_on_circle_approaches_optimum() {
        for k in 1..=6 {
            let r = cov_upper_search(1, k, 60, 3).unwrap();
            let opt = PI / (2.0 * k as f64);
            assert!(r.radius_upper >= opt - 1e-12, "k = {k}: {} < {opt}", r.radius_upper);
            assert!(r.radius_upper <= opt + 0.1, "k = {k}: {} vs {opt}", r.radius_upper);
        }
    }

    #[test]
    fn search_is_monotone_and_deterministic() {
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let a = cov_upper(2, k, 15, 9).unwrap();
            assert_eq!(a, cov_upper(2, k, 15, 9).unwrap());
            assert!(a <= prev);
            prev = a;
        }
    }

    #[test]
    fn sample_radius_bounds_random_points() {
        let (sample, h) = cube_face_sample(2);
        let bound = 2.0 * (h * 2f64.sqrt() / 4.0).asin();
        let mut rng = SeededRng::new(5);
        for _ in 0..200 {
            let q = rng.unit_vector(2);
            let d = sample.iter().map(|s| projective_angle(s, &q)).fold(f64::INFINITY, f64::min);
            assert!(d <= bound + 1e-12);
        }
    }
}
