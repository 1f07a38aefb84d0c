use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSample, MetricKind};

/// Barycentric sample of a complex on `N+1` vertices, coordinates in `R^{N+1}`.
#[derive(Clone, Debug)]
pub struct ComplexSample {
    pub points: Vec<Vec<f64>>,
    pub carriers: Vec<Face>,
    /// Upper estimate of the covering radius in the barycentric metric.
    pub resolution: f64,
}

impl ComplexSample {
    pub fn push(&mut self, point: Vec<f64>, carrier: Face) -> usize {
        self.points.push(point);
        self.carriers.push(carrier);
        self.points.len() - 1
    }

    pub fn into_metric(self) -> Result<(FiniteMetricSample, Vec<Face>, f64)> {
        Ok((FiniteMetricSample::from_points(self.points, MetricKind::Euclidean)?, self.carriers, self.resolution))
    }
}

/// Point `(1−t)·e_a + t·e_b` in `R^{verts}`.
pub fn edge_point(verts: usize, a: u32, b: u32, t: f64) -> Vec<f64> {
    let mut p = vec![0.0; verts];
    p[a as usize] = 1.0 - t;
    p[b as usize] = t;
    p
}

/// Covering-radius estimate for the denominator-`q` lattice on faces of
/// dimension at most `k`: `(√2/q)·√k/2` (the cube bound; exact for edges).
pub fn lattice_resolution(q: usize, k: usize) -> f64 {
    std::f64::consts::SQRT_2 / q as f64 * (k.max(1) as f64).sqrt() / 2.0
}

/// All lattice points with denominator `q` whose support is a face of `K`,
/// i.e. points of `|K|` inside `Δ_N` with coordinates in `(1/q)·Z`. Each
/// point is produced once, on the face carrying it in its relative interior.
pub fn complex_grid(k: &SimplicialComplex, n: usize, q: usize) -> Result<ComplexSample> {
    if q == 0 {
        return Err(Error::invalid("grid denominator must be positive"));
    }
    if k.vertices().iter().any(|&v| v as usize > n) {
        return Err(Error::invalid("complex has a vertex outside Δ_N"));
    }
    let mut out = ComplexSample {
        points: Vec::new(),
        carriers: Vec::new(),
        resolution: lattice_resolution(q, k.dimension().unwrap_or(0)),
    };
    for face in k.iter_faces() {
        let parts = face.len();
        if parts > q {
            continue;
        }
        // Compositions of q into `parts` positive integers.
        let mut comp = vec![1usize; parts];
        comp[parts - 1] = q - (parts - 1);
        loop {
            let mut p = vec![0.0; n + 1];
            for (&v, &c) in face.iter().zip(&comp) {
                p[v as usize] = c as f64 / q as f64;
            }
            out.push(p, face.clone());
            if !next_composition(&mut comp) {
                break;
            }
        }
    }
    Ok(out)
}

/// Full barycentric lattice of `Δ_N`.
pub fn barycentric_grid(n: usize, q: usize) -> Result<ComplexSample> {
    complex_grid(&crate::complex::simplex_skeleton(n, n)?, n, q)
}

/// Advances a composition (all parts ≥ 1) in colexicographic order.
fn next_composition(c: &mut [usize]) -> bool {
    let k = c.len();
    if k < 2 {
        return false;
    }
    // Find the rightmost position i < k-1 that can take one unit from the tail.
    let tail = c[k - 1];
    if tail > 1 {
        // Move one unit from the last part into position k-2.
        c[k - 2] += 1;
        c[k - 1] -= 1;
        return true;
    }
    // Last part is 1: carry. Find rightmost i < k-1 with c[i] > 1 that has a left neighbour.
    let mut i = k - 2;
    loop {
        if c[i] > 1 && i > 0 {
            let moved = c[i] - 1;
            c[i] = 1;
            c[i - 1] += 1;
            c[k - 1] = moved;
            return true;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex_skeleton;
    use std::collections::HashSet;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn compositions_are_enumerated_once() {
        for (q, parts) in [(5, 3), (6, 2), (7, 4), (4, 4), (3, 1)] {
            let mut comp = vec![1usize; parts];
            comp[parts - 1] = q - (parts - 1);
            let mut seen = HashSet::new();
            loop {
                assert_eq!(comp.iter().sum::<usize>(), q);
                assert!(comp.iter().all(|&c| c >= 1));
                assert!(seen.insert(comp.clone()));
                if !next_composition(&mut comp) {
                    break;
                }
            }
            assert_eq!(seen.len(), binom(q - 1, parts - 1));
        }
    }

    #[test]
    fn full_lattice_point_count() {
        // Lattice points of Δ_N with denominator q: C(q+N, N).
        for (n, q) in [(2, 8), (3, 5), (4, 3)] {
            let g = barycentric_grid(n, q).unwrap();
            assert_eq!(g.points.len(), binom(q + n, n));
            let distinct: HashSet<Vec<u64>> =
                g.points.iter().map(|p| p.iter().map(|x| x.to_bits()).collect()).collect();
            assert_eq!(distinct.len(), g.points.len());
        }
    }

    #[test]
    fn carriers_are_supports() {
        let g = complex_grid(&simplex_skeleton(4, 1).unwrap(), 4, 10).unwrap();
        assert_eq!(g.points.len(), 5 + 10 * 9);
        for (p, c) in g.points.iter().zip(&g.carriers) {
            let support: Vec<u32> = (0..5).filter(|&i| p[i as usize] > 0.0).collect();
            assert_eq!(&support, c);
        }
    }
}
