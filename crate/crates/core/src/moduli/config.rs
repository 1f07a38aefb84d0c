use std::collections::HashSet;

use rayon::prelude::*;

use super::sampled::SampledFunction;
use crate::complex::Face;
use crate::error::{Error, Result};
use crate::metric::BALL_SLACK;

/// Which tuples of sample points belong to a configuration sample.
#[derive(Clone, Debug)]
pub enum Membership {
    /// Ordered pairs `(x, y)`, `x ≠ y`, with `d(x, y) ≥ sep`.
    Separated(f64),
    /// Tuples whose carrier faces are pairwise disjoint.
    DisjointCarriers,
    /// An explicit list.
    Listed(HashSet<Vec<u32>>),
}

/// A finite set of `r`-tuples of sample indices, closed under the membership
/// predicate it was built from.
#[derive(Clone, Debug)]
pub struct ConfigSample {
    arity: usize,
    tuples: Vec<u32>,
    membership: Membership,
}

impl ConfigSample {
    /// All ordered pairs at distance at least `sep`.
    pub fn conf2(f: &SampledFunction, sep: f64) -> Result<Self> {
        if !(sep > 0.0) {
            return Err(Error::invalid("separation must be positive"));
        }
        let n = f.len();
        let m = f.domain();
        let tuples: Vec<u32> = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                (0..n).filter(move |&y| y != x && m.dist(x, y) >= sep).flat_map(move |y| [x as u32, y as u32])
            })
            .collect();
        Ok(Self { arity: 2, tuples, membership: Membership::Separated(sep) })
    }

    /// All `r`-tuples of sample points with pairwise disjoint carriers: the
    /// sample of the deleted product `K^{×r}_Δ`.
    pub fn deleted_product(f: &SampledFunction, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::invalid("arity must be at least 2"));
        }
        let carriers = f.carriers().ok_or_else(|| Error::invalid("function has no carrier faces"))?;
        let (ids, faces) = carrier_ids(carriers);
        let mut by_face: Vec<Vec<u32>> = vec![Vec::new(); faces.len()];
        for (i, &c) in ids.iter().enumerate() {
            by_face[c].push(i as u32);
        }
        let table = disjointness_table(&faces);
        // Face tuples with pairwise disjoint members.
        let mut face_tuples = Vec::new();
        let mut cur = Vec::with_capacity(r);
        collect_face_tuples(&table, faces.len(), r, &mut cur, &mut face_tuples);
        let tuples: Vec<u32> = face_tuples
            .par_iter()
            .flat_map_iter(|ft: &Vec<usize>| {
                let lists: Vec<&[u32]> = ft.iter().map(|&c| by_face[c].as_slice()).collect();
                let mut out = Vec::new();
                for_each_product(&lists, |t| out.extend_from_slice(t));
                out
            })
            .collect();
        let mut s = Self { arity: r, tuples, membership: Membership::DisjointCarriers };
        s.sort();
        Ok(s)
    }

    /// An explicit list of tuples.
    pub fn from_tuples(arity: usize, tuples: Vec<Vec<u32>>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::invalid("arity must be at least 2"));
        }
        if tuples.iter().any(|t| t.len() != arity) {
            return Err(Error::invalid("tuple of the wrong arity"));
        }
        let set: HashSet<Vec<u32>> = tuples.iter().cloned().collect();
        let mut flat: Vec<u32> = Vec::with_capacity(set.len() * arity);
        let mut sorted: Vec<&Vec<u32>> = set.iter().collect();
        sorted.sort();
        for t in sorted {
            flat.extend_from_slice(t);
        }
        Ok(Self { arity, tuples: flat, membership: Membership::Listed(set) })
    }

    fn sort(&mut self) {
        let r = self.arity;
        let mut rows: Vec<&[u32]> = self.tuples.chunks_exact(r).collect();
        rows.par_sort_unstable();
        self.tuples = rows.concat();
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        &self.tuples[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.tuples.chunks_exact(self.arity)
    }

    pub fn membership(&self) -> &Membership {
        &self.membership
    }

    /// Checks that every tuple lies in `Conf_r^Δ` (pairwise disjoint carriers).
    pub fn validate_disjoint(&self, f: &SampledFunction) -> Result<()> {
        let carriers = f.carriers().ok_or_else(|| Error::invalid("function has no carrier faces"))?;
        for t in self.iter() {
            if t.iter().any(|&i| i as usize >= f.len()) {
                return Err(Error::invalid("tuple index out of range"));
            }
            if !pairwise_disjoint(carriers, t) {
                return Err(Error::InvalidConfiguration(format!("carriers of {t:?} are not pairwise disjoint")));
            }
        }
        Ok(())
    }

    /// Returns a tester deciding membership for arbitrary tuples.
    pub(crate) fn tester<'a>(&'a self, f: &'a SampledFunction) -> Result<MembershipTest<'a>> {
        Ok(match &self.membership {
            Membership::Separated(sep) => MembershipTest::Separated(f, *sep),
            Membership::DisjointCarriers => {
                let carriers = f.carriers().ok_or_else(|| Error::invalid("function has no carrier faces"))?;
                let (ids, faces) = carrier_ids(carriers);
                MembershipTest::Disjoint { ids, table: disjointness_table(&faces), faces: faces.len() }
            }
            Membership::Listed(set) => MembershipTest::Listed(set),
        })
    }
}

pub(crate) enum MembershipTest<'a> {
    Separated(&'a SampledFunction, f64),
    Disjoint { ids: Vec<usize>, table: Vec<bool>, faces: usize },
    Listed(&'a HashSet<Vec<u32>>),
}

impl MembershipTest<'_> {
    pub(crate) fn contains(&self, t: &[u32]) -> bool {
        match self {
            MembershipTest::Separated(f, sep) => t[0] != t[1] && f.domain().dist(t[0] as usize, t[1] as usize) >= *sep,
            MembershipTest::Disjoint { ids, table, faces } => {
                for i in 0..t.len() {
                    for j in i + 1..t.len() {
                        if !table[ids[t[i] as usize] * faces + ids[t[j] as usize]] {
                            return false;
                        }
                    }
                }
                true
            }
            MembershipTest::Listed(set) => set.contains(t),
        }
    }
}

fn carrier_ids(carriers: &[Face]) -> (Vec<usize>, Vec<Face>) {
    let mut faces: Vec<Face> = carriers.to_vec();
    faces.sort();
    faces.dedup();
    let ids = carriers.iter().map(|c| faces.binary_search(c).expect("carrier listed")).collect();
    (ids, faces)
}

fn disjointness_table(faces: &[Face]) -> Vec<bool> {
    let n = faces.len();
    let mut t = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = crate::complex::disjoint(&faces[i], &faces[j]);
        }
    }
    t
}

fn collect_face_tuples(table: &[bool], n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for c in 0..n {
        if cur.iter().all(|&p| table[p * n + c]) {
            cur.push(c);
            collect_face_tuples(table, n, r, cur, out);
            cur.pop();
        }
    }
}

/// Calls `visit` on every element of the Cartesian product of `lists`.
pub(crate) fn for_each_product(lists: &[&[u32]], mut visit: impl FnMut(&[u32])) {
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    let mut t: Vec<u32> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&t);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                t[k] = lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            t[k] = lists[k][0];
        }
    }
}

fn pairwise_disjoint(carriers: &[Face], t: &[u32]) -> bool {
    (0..t.len()).all(|i| {
        (i + 1..t.len()).all(|j| crate::complex::disjoint(&carriers[t[i] as usize], &carriers[t[j] as usize]))
    })
}

/// A configuration pushed forward and centered: `(y_i − ȳ)_i` in `W_r^{⊕d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredTuple {
    pub components: Vec<Vec<f64>>,
}

impl CenteredTuple {
    pub fn from_values(values: &[&[f64]]) -> Self {
        let r = values.len() as f64;
        let d = values.first().map_or(0, |v| v.len());
        let mean: Vec<f64> = (0..d).map(|k| values.iter().map(|v| v[k]).sum::<f64>() / r).collect();
        Self { components: values.iter().map(|v| v.iter().zip(&mean).map(|(a, m)| a - m).collect()).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn flatten(&self) -> Vec<f64> {
        self.components.iter().flatten().copied().collect()
    }

    /// `ν(C)`, the point on the unit sphere of `W_r^{⊕d}`; `None` on the diagonal.
    pub fn normalized(&self) -> Option<Vec<f64>> {
        let n = self.norm();
        (n > 0.0).then(|| self.flatten().into_iter().map(|x| x / n).collect())
    }

    /// Sum of the components; zero up to rounding by construction.
    pub fn component_sum(&self) -> Vec<f64> {
        let d = self.components.first().map_or(0, Vec::len);
        (0..d).map(|k| self.components.iter().map(|c| c[k]).sum()).collect()
    }
}

/// Appends the flattened centered tuple of `values` to `out`, normalized to
/// the unit sphere if asked. Same arithmetic as [`CenteredTuple`] without
/// allocating. Returns `false` (leaving `out` unchanged) for a zero tuple
/// that cannot be normalized.
pub(crate) fn extend_centered(values: &[&[f64]], normalize: bool, out: &mut Vec<f64>) -> bool {
    let r = values.len() as f64;
    let d = values.first().map_or(0, |v| v.len());
    let start = out.len();
    for v in values {
        for k in 0..d {
            let mean = values.iter().map(|w| w[k]).sum::<f64>() / r;
            out.push(v[k] - mean);
        }
    }
    if normalize {
        let n = out[start..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0) {
            out.truncate(start);
            return false;
        }
        for x in &mut out[start..] {
            *x /= n;
        }
    }
    true
}

/// `Conf_r^Δ(f)` at one configuration of sample points with disjoint carriers.
pub fn conf_r_map(f: &SampledFunction, tuple: &[usize]) -> Result<CenteredTuple> {
    let carriers = f.carriers().ok_or_else(|| Error::invalid("function has no carrier faces"))?;
    if tuple.len() < 2 || tuple.iter().any(|&i| i >= f.len()) {
        return Err(Error::invalid("configuration must have at least two valid indices"));
    }
    let t: Vec<u32> = tuple.iter().map(|&i| i as u32).collect();
    if !pairwise_disjoint(carriers, &t) {
        return Err(Error::InvalidConfiguration(format!("carriers of {tuple:?} are not pairwise disjoint")));
    }
    let values: Vec<&[f64]> = tuple.iter().map(|&i| f.value(i)).collect();
    Ok(CenteredTuple::from_values(&values))
}

/// Indices of the sample points inside each closed ball of radius `rho`.
pub(crate) fn balls(f: &SampledFunction, rho: f64) -> Vec<Vec<u32>> {
    f.domain().balls(rho)
}

/// Reach used by triangle-inequality shortcuts.
pub(crate) fn reach(rho: f64) -> f64 {
    rho + BALL_SLACK
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{FiniteMetricSample, MetricKind};

    fn segment_function() -> SampledFunction {
        // Three points on each of the edges 01, 12, 23 of a path, plus vertices.
        let mut pts = Vec::new();
        let mut carriers = Vec::new();
        for v in 0..4u32 {
            pts.push(vec![v as f64]);
            carriers.push(vec![v]);
        }
        for e in 0..3u32 {
            for k in 1..3 {
                pts.push(vec![e as f64 + k as f64 / 3.0]);
                carriers.push(vec![e, e + 1]);
            }
        }
        let values = pts.clone();
        let m = FiniteMetricSample::from_points(pts, MetricKind::Euclidean).unwrap();
        SampledFunction::new(m, values, 0.2).unwrap().with_carriers(carriers).unwrap()
    }

    #[test]
    fn deleted_product_matches_brute_force() {
        let f = segment_function();
        let carriers = f.carriers().unwrap();
        for r in 2..=3 {
            let s = ConfigSample::deleted_product(&f, r).unwrap();
            let mut brute = 0usize;
            let n = f.len() as u32;
            let mut t = vec![0u32; r];
            let total = (n as usize).pow(r as u32);
            for code in 0..total {
                let mut c = code;
                for slot in t.iter_mut() {
                    *slot = (c % n as usize) as u32;
                    c /= n as usize;
                }
                if pairwise_disjoint(carriers, &t) {
                    brute += 1;
                }
            }
            assert_eq!(s.len(), brute);
            s.validate_disjoint(&f).unwrap();
            let tester = s.tester(&f).unwrap();
            assert!(s.iter().all(|t| tester.contains(t)));
        }
    }

    #[test]
    fn centered_tuple_sums_to_zero() {
        let a = [1.0, 2.0];
        let b = [-3.0, 0.5];
        let c = [0.25, 7.0];
        let ct = CenteredTuple::from_values(&[&a, &b, &c]);
        for s in ct.component_sum() {
            assert!(s.abs() < 1e-12);
        }
        let u = ct.normalized().unwrap();
        assert!((u.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conf_r_map_rejects_shared_vertex() {
        let f = segment_function();
        // Points 4 and 6 lie on edges 01 and 12, which share vertex 1.
        assert!(matches!(conf_r_map(&f, &[4, 6]), Err(Error::InvalidConfiguration(_))));
        assert!(conf_r_map(&f, &[4, 8]).is_ok());
    }

    #[test]
    fn product_enumeration() {
        let a = [1u32, 2];
        let b = [5u32];
        let c = [7u32, 8, 9];
        let mut seen = Vec::new();
        for_each_product(&[&a, &b, &c], |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 5, 7]);
        assert_eq!(seen[5], vec![2, 5, 9]);
    }

    #[test]
    fn extend_centered_matches_centered_tuple() {
        let a = [0.3, -1.25];
        let b = [2.0, 0.125];
        let c = [-0.7, 4.5];
        let vals: Vec<&[f64]> = vec![&a, &b, &c];
        let t = CenteredTuple::from_values(&vals);
        let mut out = vec![9.0];
        assert!(extend_centered(&vals, false, &mut out));
        assert_eq!(out[1..], t.flatten()[..]);
        out.truncate(1);
        assert!(extend_centered(&vals, true, &mut out));
        assert_eq!(out[1..], t.normalized().unwrap()[..]);
        let same: Vec<&[f64]> = vec![&a, &a];
        assert!(!extend_centered(&same, true, &mut out));
        assert_eq!(out.len(), 1 + 6);
    }
}
