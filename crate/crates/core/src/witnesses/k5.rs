use std::f64::consts::TAU;

use rayon::prelude::*;

use super::{cluster, MERGE_TOL, Verification, Witness, WitnessKind, WitnessSpec, CLUSTER_FLOOR};
use crate::complex::Face;
use crate::error::{Error, Result};
use crate::moduli::{edge_point, lattice_resolution, ComplexSample, SampledFunction};

type P2 = [f64; 2];

fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn add(a: P2, b: P2) -> P2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn scale(a: P2, s: f64) -> P2 {
    [a[0] * s, a[1] * s]
}

fn cross(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: P2) -> f64 {
    a[0].hypot(a[1])
}

fn lerp(a: P2, b: P2, t: f64) -> P2 {
    [(1.0 - t) * a[0] + t * b[0], (1.0 - t) * a[1] + t * b[1]]
}

/// Parameters `(t, s)` where `a + t(b−a) = c + s(d−c)`, if the lines meet.
fn line_params(a: P2, b: P2, c: P2, d: P2) -> Option<(f64, f64)> {
    let (r, q) = (sub(b, a), sub(d, c));
    let den = cross(r, q);
    if den == 0.0 {
        return None;
    }
    let ac = sub(c, a);
    Some((cross(ac, q) / den, cross(ac, r) / den))
}

fn point_segment(p: P2, a: P2, b: P2) -> f64 {
    let ab = sub(b, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 == 0.0 { 0.0 } else { ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2 };
    norm(sub(p, lerp(a, b, t.clamp(0.0, 1.0))))
}

/// Distance between closed segments.
fn segment_distance(a: P2, b: P2, c: P2, d: P2) -> f64 {
    if let Some((t, s)) = line_params(a, b, c, d) {
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s) {
            return 0.0;
        }
    }
    point_segment(a, c, d).min(point_segment(b, c, d)).min(point_segment(c, a, b)).min(point_segment(d, a, b))
}

/// A displaced sub-interval `[lo, hi)` of one diagonal.
#[derive(Clone, Debug)]
pub struct Jump {
    pub edge: (u32, u32),
    pub lo: f64,
    pub hi: f64,
    pub shift: P2,
    /// The diagonal that crossed this one, and its parameter where it now
    /// passes between the two one-sided limits of the jump.
    pub partner: (u32, u32),
    pub partner_param: f64,
}

/// Straight-line pentagram drawing of `K_5` with each of the five crossings
/// removed by a jump on one of the two crossing diagonals.
#[derive(Clone, Debug)]
pub struct K5Drawing {
    pub vertices: [P2; 5],
    pub jumps: Vec<Jump>,
    pub offset: f64,
}

fn edge_key(a: usize, b: usize) -> (u32, u32) {
    (a.min(b) as u32, a.max(b) as u32)
}

impl K5Drawing {
    pub fn new(offset: f64) -> Result<Self> {
        if !(offset > 0.0 && offset < 0.05) {
            return Err(Error::invalid("offset must lie in (0, 0.05)"));
        }
        let vertices: [P2; 5] = std::array::from_fn(|k| {
            let a = TAU * k as f64 / 5.0;
            [a.cos(), a.sin()]
        });
        let mut jumps = Vec::with_capacity(5);
        for i in 0..5 {
            // Diagonal i joins i and i+2; it crosses diagonal i+1 and is displaced there.
            let e = edge_key(i, (i + 2) % 5);
            let g = edge_key((i + 1) % 5, (i + 3) % 5);
            let (a, b) = (vertices[e.0 as usize], vertices[e.1 as usize]);
            let (c, d) = (vertices[g.0 as usize], vertices[g.1 as usize]);
            let (tc, _) = line_params(a, b, c, d).ok_or_else(|| Error::ConstructionFailed("parallel diagonals".into()))?;
            let (u, v) = (sub(b, a), sub(d, c));
            let (lu, lv) = (norm(u), norm(v));
            let cos = (u[0] * v[0] + u[1] * v[1]) / (lu * lv);
            let sin = cross(u, v).abs() / (lu * lv);
            // Along the displaced line the other diagonal sits offset·|cot θ| away
            // from the crossing; the jump interval stays strictly inside that gap.
            let half = 0.5 * offset * (cos / sin).abs() / lu;
            let mid = lerp(a, b, 0.5);
            let shift = scale(mid, offset / norm(mid));
            let (lo, hi) = (tc - half, tc + half);
            let partner_param = [lo, hi]
                .iter()
                .find_map(|&t| {
                    let p = lerp(a, b, t);
                    line_params(p, add(p, shift), c, d)
                        .filter(|(s, w)| (0.0..=1.0).contains(s) && (0.0..=1.0).contains(w))
                        .map(|(_, w)| w)
                })
                .ok_or_else(|| Error::ConstructionFailed(format!("diagonal {g:?} misses the jump on {e:?}")))?;
            jumps.push(Jump { edge: e, lo, hi, shift, partner: g, partner_param });
        }
        Ok(Self { vertices, jumps, offset })
    }

    /// Image of the point with parameter `t` on edge `(a, b)`, `a < b`.
    pub fn eval(&self, a: u32, b: u32, t: f64) -> P2 {
        let p = lerp(self.vertices[a as usize], self.vertices[b as usize], t);
        match self.jumps.iter().find(|j| j.edge == (a, b) && t >= j.lo && t < j.hi) {
            Some(j) => add(p, j.shift),
            None => p,
        }
    }

    /// Closed segments covering the image of each edge.
    pub fn pieces(&self, a: u32, b: u32) -> Vec<(P2, P2)> {
        let (pa, pb) = (self.vertices[a as usize], self.vertices[b as usize]);
        match self.jumps.iter().find(|j| j.edge == (a, b)) {
            None => vec![(pa, pb)],
            Some(j) => {
                let (l, h) = (lerp(pa, pb, j.lo), lerp(pa, pb, j.hi));
                vec![(pa, l), (add(l, j.shift), add(h, j.shift)), (h, pb)]
            }
        }
    }

    /// Smallest distance between images of disjoint faces, computed on
    /// closed segments.
    pub fn exact_min_separation(&self) -> (f64, String) {
        let edges: Vec<(u32, u32)> = (0..5u32).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut best = (f64::INFINITY, String::new());
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                for (p, q) in self.pieces(a, b) {
                    for (r, s) in self.pieces(c, d) {
                        let dist = segment_distance(p, q, r, s);
                        if dist < best.0 {
                            best = (dist, format!("edges {a}{b} and {c}{d}"));
                        }
                    }
                }
            }
            for v in 0..5u32 {
                if v == a || v == b {
                    continue;
                }
                for (p, q) in self.pieces(a, b) {
                    let dist = point_segment(self.vertices[v as usize], p, q);
                    if dist < best.0 {
                        best = (dist, format!("vertex {v} and edge {a}{b}"));
                    }
                }
            }
        }
        best
    }
}

/// Almost injective, discontinuous function `sk_1(Δ_4) → R²`.
///
/// Vertices go to the fifth roots of unity; each pentagram crossing is
/// removed by pushing a short left-closed interval of one diagonal outward
/// by `offset`. The sample has `grid` intervals per edge plus clusters around
/// the ten jump parameters (the hot spots) and around the points where the
/// crossing diagonals pass between the one-sided limits.
pub fn k5_jump_drawing(offset: f64, grid: usize) -> Result<Witness> {
    if grid < 4 {
        return Err(Error::invalid("grid must be at least 4"));
    }
    let drawing = K5Drawing::new(offset)?;
    let h = 1.0 / grid as f64;
    let mut sample = ComplexSample { points: Vec::new(), carriers: Vec::new(), resolution: lattice_resolution(grid, 1) };
    let mut values: Vec<Vec<f64>> = Vec::new();
    for v in 0..5u32 {
        let mut p = vec![0.0; 5];
        p[v as usize] = 1.0;
        sample.push(p, vec![v]);
        values.push(drawing.vertices[v as usize].to_vec());
    }
    let mut hot = Vec::new();
    for a in 0..5u32 {
        for b in a + 1..5 {
            let mut ts: Vec<f64> = (1..grid).map(|j| j as f64 * h).collect();
            let mut marks = Vec::new();
            for j in drawing.jumps.iter().filter(|j| j.edge == (a, b)) {
                ts.extend(cluster(j.lo, h, CLUSTER_FLOOR, 0.0, 1.0));
                ts.extend(cluster(j.hi, h, CLUSTER_FLOOR, 0.0, 1.0));
                marks.extend([j.lo, j.hi]);
            }
            for j in drawing.jumps.iter().filter(|j| j.partner == (a, b)) {
                ts.extend(cluster(j.partner_param, h, CLUSTER_FLOOR, 0.0, 1.0));
            }
            ts.retain(|&t| t > 0.0 && t < 1.0);
            ts.sort_by(f64::total_cmp);
            ts.dedup_by(|a, b| (*a - *b).abs() < MERGE_TOL);
            for t in ts {
                let idx = sample.push(edge_point(5, a, b, t), vec![a, b]);
                values.push(drawing.eval(a, b, t).to_vec());
                if marks.contains(&t) {
                    hot.push(idx);
                }
            }
        }
    }
    let (domain, carriers, resolution) = sample.into_metric()?;
    let f = SampledFunction::new(domain, values, resolution)?.with_carriers(carriers)?.with_hot_spots(hot)?;

    let (sampled, pair) = sampled_min_separation(&f);
    let (exact, where_) = drawing.exact_min_separation();
    if !(sampled > 0.0) {
        return Err(Error::ConstructionFailed(format!("sample points {pair:?} from disjoint faces share an image")));
    }
    if !(exact > 0.0) {
        return Err(Error::ConstructionFailed(format!("images of {where_} intersect")));
    }
    Ok(Witness {
        spec: WitnessSpec::new(
            WitnessKind::K5Jump,
            &[("offset", offset), ("grid", grid as f64)],
            Some((-0.5f64).acos()),
            Some("quantified van Kampen-Flores: alpha^(2)(f) >= r_{2d-1} = arccos(-1/(2d)), d = 1"),
        ),
        function: f,
        verification: Verification {
            passed: true,
            detail: format!(
                "disjoint-face image distance: sampled {sampled:.3e}, closed segments {exact:.3e} ({where_})"
            ),
            min_separation: Some(sampled),
        },
    })
}

/// Smallest image distance over sample pairs with disjoint carriers.
pub(crate) fn sampled_min_separation(f: &SampledFunction) -> (f64, (usize, usize)) {
    let carriers: &[Face] = f.carriers().expect("carriers present");
    (0..f.len())
        .into_par_iter()
        .map(|x| {
            let mut best = (f64::INFINITY, (x, x));
            for y in x + 1..f.len() {
                if !crate::complex::disjoint(&carriers[x], &carriers[y]) {
                    continue;
                }
                let d = crate::metric::euclidean(f.value(x), f.value(y));
                if d < best.0 {
                    best = (d, (x, y));
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, (0, 0)), |a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_pentagram_has_five_crossings() {
        let d = K5Drawing { vertices: K5Drawing::new(0.01).unwrap().vertices, jumps: Vec::new(), offset: 0.0 };
        let mut crossings = 0;
        let edges: Vec<(u32, u32)> = (0..5u32).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, e) in &edges[i + 1..] {
                if [a, b].iter().any(|v| *v == c || *v == e) {
                    continue;
                }
                let (p, q) = d.pieces(a, b)[0];
                let (r, s) = d.pieces(c, e)[0];
                if segment_distance(p, q, r, s) == 0.0 {
                    crossings += 1;
                }
            }
        }
        assert_eq!(crossings, 5);
    }

    #[test]
    fn jumps_remove_all_crossings() {
        let d = K5Drawing::new(0.01).unwrap();
        assert_eq!(d.jumps.len(), 5);
        let (sep, _) = d.exact_min_separation();
        assert!(sep > 0.0);
        // Each diagonal is displaced exactly once.
        let mut edges: Vec<_> = d.jumps.iter().map(|j| j.edge).collect();
        edges.sort();
        edges.dedup();
        assert_eq!(edges.len(), 5);
    }

    #[test]
    fn jump_is_left_closed() {
        let d = K5Drawing::new(0.01).unwrap();
        let j = &d.jumps[0];
        let (a, b) = j.edge;
        let base = lerp(d.vertices[a as usize], d.vertices[b as usize], j.lo);
        assert_ne!(d.eval(a, b, j.lo), base);
        let end = lerp(d.vertices[a as usize], d.vertices[b as usize], j.hi);
        assert_eq!(d.eval(a, b, j.hi), end);
    }

    #[test]
    fn rejects_large_offset() {
        assert!(matches!(K5Drawing::new(0.2), Err(Error::InvalidArgument(_))));
    }
}
