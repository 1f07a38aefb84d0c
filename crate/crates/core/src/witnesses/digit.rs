use super::{Verification, Witness, WitnessKind, WitnessSpec};
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSample, MetricKind};
use crate::moduli::SampledFunction;

/// `f(x, y)` on the dyadic grid of `[0,1)²`, reading the binary digits of
/// `y` and `x` alternately (`y` first) as one number in `[0, 1)`.
///
/// Point `(i/grid, j/grid)` has index `i·grid + j`. Injective on the grid,
/// discontinuous at every scale above `1/grid`.
pub fn digit_interleave(bits: u32, grid: usize) -> Result<Witness> {
    if !(1..=10).contains(&bits) {
        return Err(Error::invalid("bits must lie in 1..=10"));
    }
    if grid != 1usize << bits {
        return Err(Error::invalid(format!("grid must equal 2^bits = {}, got {grid}", 1usize << bits)));
    }
    let h = 1.0 / grid as f64;
    let scale = 4f64.powi(bits as i32);
    let mut points = Vec::with_capacity(grid * grid);
    let mut values = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            points.push(vec![i as f64 * h, j as f64 * h]);
            values.push(vec![interleave(i as u64, j as u64, bits) as f64 / scale]);
        }
    }
    let mut sorted: Vec<u64> = (0..grid * grid).map(|k| interleave((k / grid) as u64, (k % grid) as u64, bits)).collect();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    if !distinct {
        return Err(Error::ConstructionFailed("digit interleaving produced a repeated value".into()));
    }
    let domain = FiniteMetricSample::from_points(points, MetricKind::Euclidean)?;
    let f = SampledFunction::new(domain, values, h * std::f64::consts::SQRT_2)?.with_hot_spots((0..grid * grid).collect())?;
    Ok(Witness {
        spec: WitnessSpec::new(
            WitnessKind::DigitInterleave,
            &[("bits", bits as f64), ("grid", grid as f64)],
            Some(std::f64::consts::PI),
            Some("Euclidean spaces R^{k+1} -> R^d with k = 1, d = 1: alpha(f) >= c_{0,1} = pi"),
        ),
        function: f,
        verification: Verification { passed: true, detail: format!("{} distinct values", grid * grid), min_separation: Some(1.0 / scale) },
    })
}

/// Digits `y_1 x_1 y_2 x_2 …` of the `bits`-bit integers `x` and `y`.
fn interleave(x: u64, y: u64, bits: u32) -> u64 {
    let mut z = 0u64;
    for b in (0..bits).rev() {
        z = (z << 2) | (((y >> b) & 1) << 1) | ((x >> b) & 1);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_bit_values() {
        let w = digit_interleave(1, 2).unwrap();
        let f = &w.function;
        // Index i·grid + j for the point (i/2, j/2).
        assert_eq!(f.value(0), &[0.0]);
        assert_eq!(f.value(2), &[0.25]);
        assert_eq!(f.value(1), &[0.5]);
        assert_eq!(f.value(3), &[0.75]);
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(matches!(digit_interleave(3, 6), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn values_are_distinct_up_to_ten_bits() {
        for bits in 1..=10 {
            let g = 1u64 << bits;
            let mut v: Vec<u64> = (0..g * g).map(|k| interleave(k / g, k % g, bits)).collect();
            v.sort_unstable();
            v.dedup();
            assert_eq!(v.len() as u64, g * g);
            // The interleaving is a bijection onto 0..4^bits.
            assert_eq!(*v.last().unwrap(), g * g - 1);
        }
    }
}
