use crate::error::{Error, Result};
use crate::moduli::{barycentric_grid, SampledFunction};
use crate::rng::SeededRng;

/// Random piecewise-constant `f: Δ_2 → R^2` on the barycentric lattice with
/// denominator `grid`.
///
/// `cells` random sites split `Δ_2` into Voronoi cells; each pair (cell,
/// carrier face) gets an independent Gaussian value, so the function is
/// almost injective with probability one and jumps across cell boundaries
/// and faces.
pub fn random_piecewise_constant(grid: usize, cells: usize, seed: u64) -> Result<SampledFunction> {
    if grid == 0 || cells == 0 {
        return Err(Error::invalid("grid and cell count must be positive"));
    }
    let mut rng = SeededRng::new(seed);
    let sites: Vec<[f64; 3]> = (0..cells)
        .map(|_| {
            // Uniform on the simplex via normalized exponentials.
            let e: [f64; 3] = std::array::from_fn(|_| -(1.0 - rng.uniform()).ln());
            let s: f64 = e.iter().sum();
            [e[0] / s, e[1] / s, e[2] / s]
        })
        .collect();
    let sample = barycentric_grid(2, grid)?;
    let face_id = |c: &[u32]| -> usize {
        // Bitmask of the carrier, 1..=7.
        c.iter().fold(0usize, |m, &v| m | (1 << v))
    };
    let table: Vec<[f64; 2]> = (0..cells * 8).map(|_| [rng.gaussian(), rng.gaussian()]).collect();
    let values: Vec<Vec<f64>> = sample
        .points
        .iter()
        .zip(&sample.carriers)
        .map(|(p, c)| {
            let cell = (0..cells)
                .min_by(|&a, &b| {
                    let da: f64 = (0..3).map(|k| (p[k] - sites[a][k]).powi(2)).sum();
                    let db: f64 = (0..3).map(|k| (p[k] - sites[b][k]).powi(2)).sum();
                    da.total_cmp(&db)
                })
                .expect("at least one cell");
            table[cell * 8 + face_id(c)].to_vec()
        })
        .collect();
    let (domain, carriers, resolution) = sample.into_metric()?;
    SampledFunction::new(domain, values, resolution)?.with_carriers(carriers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_piecewise_constant(6, 4, 11).unwrap();
        let b = random_piecewise_constant(6, 4, 11).unwrap();
        let c = random_piecewise_constant(6, 4, 12).unwrap();
        assert_eq!(a.values(), b.values());
        assert_ne!(a.values(), c.values());
        assert_eq!(a.len(), 28);
    }
}
