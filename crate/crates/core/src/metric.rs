//! Finite metric samples: n-gons, spheres, projective spaces, grids.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Ball membership is `d ≤ ρ + BALL_SLACK`, absorbing rounding in distances
/// computed from coordinates.
pub const BALL_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    /// Unit vectors, great-circle distance in radians.
    SphereGeodesic,
    /// Unit-vector representatives of lines, `min(∠(x,y), ∠(x,−y))`.
    ProjectiveQuotient,
    Euclidean,
    /// Distance table only.
    Abstract,
}

/// Great-circle distance between unit vectors, `2·atan2(‖u−v‖, ‖u+v‖)`;
/// exact at antipodes, unlike `acos` of the inner product.
pub fn sphere_angle(u: &[f64], v: &[f64]) -> f64 {
    let (minus, plus) = minus_plus(u, v);
    2.0 * minus.atan2(plus)
}

pub fn projective_angle(u: &[f64], v: &[f64]) -> f64 {
    let (minus, plus) = minus_plus(u, v);
    2.0 * minus.min(plus).atan2(minus.max(plus))
}

fn minus_plus(u: &[f64], v: &[f64]) -> (f64, f64) {
    let (mut m, mut p) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        m += (a - b) * (a - b);
        p += (a + b) * (a + b);
    }
    (m.sqrt(), p.sqrt())
}

pub fn euclidean(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// A finite metric space. Points are optional; when a distance table is
/// present it is authoritative and lookups never recompute from coordinates.
#[derive(Clone, Debug)]
pub struct FiniteMetricSample {
    kind: MetricKind,
    len: usize,
    points: Vec<Vec<f64>>,
    table: Option<Vec<f64>>,
}

impl FiniteMetricSample {
    /// Coordinates only; distances are computed on demand.
    pub fn from_points(points: Vec<Vec<f64>>, kind: MetricKind) -> Result<Self> {
        if kind == MetricKind::Abstract {
            return Err(Error::invalid("abstract samples need a distance table"));
        }
        if let Some(first) = points.first() {
            if points.iter().any(|p| p.len() != first.len()) {
                return Err(Error::invalid("points have mixed dimensions"));
            }
        }
        Ok(Self { kind, len: points.len(), points, table: None })
    }

    /// Row-major `n × n` table, validated for zero diagonal and symmetry.
    pub fn from_table(n: usize, table: Vec<f64>, points: Vec<Vec<f64>>, kind: MetricKind) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::invalid(format!("distance table has {} entries, expected {}", table.len(), n * n)));
        }
        if !points.is_empty() && points.len() != n {
            return Err(Error::invalid("point count differs from table size"));
        }
        for i in 0..n {
            if table[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("d({i},{i}) is not zero")));
            }
            for j in 0..i {
                if table[i * n + j] != table[j * n + i] || table[i * n + j].is_nan() {
                    return Err(Error::invalid(format!("table is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { kind, len: n, points, table: Some(table) })
    }

    /// Fills the distance table from coordinates.
    pub fn materialized(mut self) -> Self {
        if self.table.is_none() {
            let n = self.len;
            let mut t = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..i {
                    let d = self.coordinate_distance(i, j);
                    t[i * n + j] = d;
                    t[j * n + i] = d;
                }
            }
            self.table = Some(t);
        }
        self
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.table {
            Some(t) => t[i * self.len + j],
            None => self.coordinate_distance(i, j),
        }
    }

    fn coordinate_distance(&self, i: usize, j: usize) -> f64 {
        let (u, v) = (&self.points[i], &self.points[j]);
        match self.kind {
            MetricKind::SphereGeodesic => sphere_angle(u, v),
            MetricKind::ProjectiveQuotient => projective_angle(u, v),
            MetricKind::Euclidean => euclidean(u, v),
            MetricKind::Abstract => unreachable!("abstract samples always carry a table"),
        }
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.len {
            for j in 0..i {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Checks the metric axioms (triangle inequality up to `tol`) and the
    /// kind-specific diameter caps. Cubic in the sample size.
    pub fn check_metric(&self, tol: f64) -> Result<()> {
        let n = self.len;
        let cap = match self.kind {
            MetricKind::SphereGeodesic => PI,
            MetricKind::ProjectiveQuotient => PI / 2.0,
            _ => f64::INFINITY,
        };
        for i in 0..n {
            if self.dist(i, i) != 0.0 {
                return Err(Error::invalid(format!("d({i},{i}) = {}", self.dist(i, i))));
            }
            for j in 0..n {
                let dij = self.dist(i, j);
                if dij != self.dist(j, i) || dij < 0.0 || dij > cap + tol {
                    return Err(Error::invalid(format!("bad distance d({i},{j}) = {dij}")));
                }
                for k in 0..n {
                    if dij > self.dist(i, k) + self.dist(k, j) + tol {
                        return Err(Error::invalid(format!("triangle inequality fails for ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closed `ρ`-balls (with [`BALL_SLACK`]) around every point, each sorted
    /// ascending and containing its center.
    pub fn balls(&self, rho: f64) -> Vec<Vec<u32>> {
        let reach = rho + BALL_SLACK;
        let dim = self.points.first().map_or(0, Vec::len);
        if self.kind == MetricKind::Euclidean && self.table.is_none() && (1..=3).contains(&dim) && reach > 0.0 {
            return self.grid_balls(reach, dim);
        }
        (0..self.len)
            .map(|i| (0..self.len).filter(|&j| self.dist(i, j) <= reach).map(|j| j as u32).collect())
            .collect()
    }

    /// Bucketed ball search for low-dimensional Euclidean point clouds.
    fn grid_balls(&self, reach: f64, dim: usize) -> Vec<Vec<u32>> {
        let key = |p: &[f64]| -> [i64; 3] {
            let mut k = [0i64; 3];
            for (slot, x) in k.iter_mut().zip(p) {
                *slot = (x / reach).floor() as i64;
            }
            k
        };
        let mut buckets: HashMap<[i64; 3], Vec<u32>> = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            buckets.entry(key(p)).or_default().push(i as u32);
        }
        let offsets: Vec<[i64; 3]> = (0..3i64.pow(dim as u32))
            .map(|code| {
                let mut o = [0i64; 3];
                let mut c = code;
                for slot in o.iter_mut().take(dim) {
                    *slot = c % 3 - 1;
                    c /= 3;
                }
                o
            })
            .collect();
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let base = key(p);
                let mut ball: Vec<u32> = Vec::new();
                for o in &offsets {
                    let cell = [base[0] + o[0], base[1] + o[1], base[2] + o[2]];
                    if let Some(members) = buckets.get(&cell) {
                        ball.extend(members.iter().filter(|&&j| self.dist(i, j as usize) <= reach));
                    }
                }
                ball.sort_unstable();
                ball
            })
            .collect()
    }

    /// CSV with columns `index,x0,x1,…`.
    pub fn write_points_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let dim = self.points.first().map_or(0, Vec::len);
        let mut header = vec!["index".to_string()];
        header.extend((0..dim).map(|k| format!("x{k}")));
        w.write_record(&header)?;
        for (i, p) in self.points.iter().enumerate() {
            let mut rec = vec![i.to_string()];
            rec.extend(p.iter().map(|x| format!("{x:?}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Square CSV distance matrix with an `index` column and one column per point.
    pub fn write_distance_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["index".to_string()];
        header.extend((0..self.len).map(|j| j.to_string()));
        w.write_record(&header)?;
        for i in 0..self.len {
            let mut rec = vec![i.to_string()];
            rec.extend((0..self.len).map(|j| format!("{:?}", self.dist(i, j))));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `n` equally spaced points on the unit circle with geodesic distances
/// `2πk/n`, `k = min(|i−j|, n−|i−j|)`, computed from the integer gap so that
/// ties with thresholds such as `2π/3` are bit-exact.
pub fn ngon_sample(n: usize) -> Result<FiniteMetricSample> {
    if n < 3 {
        return Err(Error::invalid("an n-gon needs n >= 3"));
    }
    let points = (0..n).map(|i| {
        let a = TAU * i as f64 / n as f64;
        vec![a.cos(), a.sin()]
    });
    let mut table = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let gap = i.abs_diff(j);
            let k = gap.min(n - gap);
            table[i * n + j] = TAU * k as f64 / n as f64;
        }
    }
    FiniteMetricSample::from_table(n, table, points.collect(), MetricKind::SphereGeodesic)
}

/// `count` uniform points on `S^n` (normalized Gaussians), geodesic table.
pub fn sphere_sample(n: usize, count: usize, seed: u64) -> Result<FiniteMetricSample> {
    if count < n + 2 {
        return Err(Error::invalid(format!("need at least {} points on S^{n}", n + 2)));
    }
    let mut rng = SeededRng::new(seed);
    let points: Vec<Vec<f64>> = (0..count).map(|_| rng.unit_vector(n)).collect();
    Ok(FiniteMetricSample::from_points(points, MetricKind::SphereGeodesic)?.materialized())
}

/// `pairs` random points on `S^n` followed by their antipodes: point
/// `pairs + i` is exactly `−point(i)`.
pub fn sphere_sample_antipodal(n: usize, pairs: usize, seed: u64) -> Result<FiniteMetricSample> {
    if 2 * pairs < n + 2 {
        return Err(Error::invalid(format!("need at least {} points on S^{n}", n + 2)));
    }
    let mut rng = SeededRng::new(seed);
    let mut points: Vec<Vec<f64>> = (0..pairs).map(|_| rng.unit_vector(n)).collect();
    let negated: Vec<Vec<f64>> = points.iter().map(|p| p.iter().map(|x| -x).collect()).collect();
    points.extend(negated);
    Ok(FiniteMetricSample::from_points(points, MetricKind::SphereGeodesic)?.materialized())
}

/// `count` uniform lines in `R^{n+1}` with the quotient metric on `RP^n`.
pub fn projective_sample(n: usize, count: usize, seed: u64) -> Result<FiniteMetricSample> {
    if count < n + 2 {
        return Err(Error::invalid(format!("need at least {} points on RP^{n}", n + 2)));
    }
    let mut rng = SeededRng::new(seed);
    let points: Vec<Vec<f64>> = (0..count).map(|_| rng.unit_vector(n)).collect();
    Ok(FiniteMetricSample::from_points(points, MetricKind::ProjectiveQuotient)?.materialized())
}

/// `RP^1` as the circle of circumference `π`: representatives at angles
/// `πi/count`, distances `π·min(k, count−k)/count`.
pub fn projective_circle(count: usize) -> Result<FiniteMetricSample> {
    if count < 3 {
        return Err(Error::invalid("need at least 3 points on RP^1"));
    }
    let points: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let a = PI * i as f64 / count as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let mut table = vec![0.0; count * count];
    for i in 0..count {
        for j in 0..count {
            let gap = i.abs_diff(j);
            table[i * count + j] = PI * gap.min(count - gap) as f64 / count as f64;
        }
    }
    FiniteMetricSample::from_table(count, table, points, MetricKind::ProjectiveQuotient)
}

/// Grid `{i/q : 0 ≤ i ≤ q}` on `[0, 1]` with distances `|i−j|/q`.
pub fn unit_interval_grid(q: usize) -> Result<FiniteMetricSample> {
    if q == 0 {
        return Err(Error::invalid("grid needs at least one interval"));
    }
    let n = q + 1;
    let points = (0..n).map(|i| vec![i as f64 / q as f64]).collect();
    let mut table = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = i.abs_diff(j) as f64 / q as f64;
        }
    }
    FiniteMetricSample::from_table(n, table, points, MetricKind::Euclidean)
}
