use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

/// A face as a strictly increasing list of vertex labels.
pub type Face = Vec<u32>;

/// Immutable finite abstract simplicial complex.
///
/// Faces are grouped by dimension and sorted lexicographically inside each
/// group, so two complexes with the same face set compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    faces: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self { vertices: Vec::new(), faces: Vec::new() }
    }

    /// Builds a complex from an explicit face list, validating downward
    /// closure and rejecting duplicates.
    pub fn from_faces<I>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        let mut by_dim: Vec<Vec<Face>> = Vec::new();
        let mut seen: HashSet<Face> = HashSet::new();
        for mut face in faces {
            if face.is_empty() {
                return Err(Error::malformed("empty face in face list"));
            }
            face.sort_unstable();
            if face.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::malformed(format!("face {face:?} repeats a vertex")));
            }
            if !seen.insert(face.clone()) {
                return Err(Error::malformed(format!("duplicate face {face:?}")));
            }
            let dim = face.len() - 1;
            if by_dim.len() <= dim {
                by_dim.resize(dim + 1, Vec::new());
            }
            by_dim[dim].push(face);
        }
        // Codimension-one closure at every level implies full downward closure.
        for group in by_dim.iter().skip(1) {
            for face in group {
                for skip in 0..face.len() {
                    let facet = drop_index(face, skip);
                    if !seen.contains(&facet) {
                        return Err(Error::malformed(format!(
                            "face {face:?} present but its facet {facet:?} is missing"
                        )));
                    }
                }
            }
        }
        for group in &mut by_dim {
            group.sort();
        }
        let vertices = by_dim.first().map(|v| v.iter().map(|f| f[0]).collect()).unwrap_or_default();
        Ok(Self { vertices, faces: by_dim })
    }

    /// The smallest complex containing every listed face.
    pub fn closure_of<I>(generators: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut all: BTreeSet<Face> = BTreeSet::new();
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() || all.contains(&g) {
                continue;
            }
            let n = g.len();
            for mask in 1u64..(1u64 << n) {
                all.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| g[i]).collect());
            }
        }
        Self::from_faces(all).expect("closure is downward closed")
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// Faces of dimension `dim` in lexicographic order.
    pub fn faces(&self, dim: usize) -> &[Face] {
        self.faces.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        face.len()
            .checked_sub(1)
            .and_then(|d| self.faces.get(d))
            .is_some_and(|g| g.binary_search_by(|f| f.as_slice().cmp(face)).is_ok())
    }

    /// Applies an injective vertex relabeling.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<Self> {
        let images: BTreeSet<u32> = self.vertices.iter().map(|&v| map(v)).collect();
        if images.len() != self.vertices.len() {
            return Err(Error::invalid("relabeling is not injective on the vertex set"));
        }
        Self::from_faces(self.iter_faces().map(|f| f.iter().map(|&v| map(v)).collect()))
    }

    /// Every face plus the empty face, as used by joins.
    fn faces_with_empty(&self) -> Vec<Face> {
        std::iter::once(Vec::new()).chain(self.iter_faces().cloned()).collect()
    }
}

fn drop_index(face: &[u32], skip: usize) -> Face {
    face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
}

/// `sk_d(Δ_N)`: all subsets of `{0..=N}` with at most `d + 1` elements.
pub fn simplex_skeleton(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d > n {
        return Err(Error::invalid(format!("skeleton dimension {d} exceeds simplex dimension {n}")));
    }
    if n >= 63 {
        return Err(Error::invalid("simplex dimension must be below 63"));
    }
    let verts = n + 1;
    let mut faces = Vec::new();
    for mask in 1u64..(1u64 << verts) {
        if mask.count_ones() as usize <= d + 1 {
            faces.push((0..verts as u32).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    SimplicialComplex::from_faces(faces)
}

/// Label offset of the second copy in [`deleted_join2`]: one more than the largest vertex label.
pub fn deleted_join_shift(k: &SimplicialComplex) -> u32 {
    k.vertices().last().map_or(0, |&v| v + 1)
}

/// 2-fold deleted join. Vertex `v` of the first copy keeps label `v`; in the
/// second copy it becomes `v + deleted_join_shift(K)`. A face is `σ₁ ⊎ σ₂`
/// with `σ₁, σ₂` faces of `K` (either may be empty) that share no vertex.
pub fn deleted_join2(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    if k.vertices().is_empty() {
        return Err(Error::invalid("deleted join of the empty complex"));
    }
    let shift = deleted_join_shift(k);
    let faces = k.faces_with_empty();
    let mut out = Vec::new();
    for a in &faces {
        for b in &faces {
            if (a.is_empty() && b.is_empty()) || !disjoint(a, b) {
                continue;
            }
            let mut joined = a.clone();
            joined.extend(b.iter().map(|&v| v + shift));
            out.push(joined);
        }
    }
    SimplicialComplex::from_faces(out)
}

/// Both slices must be sorted.
pub(crate) fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}
