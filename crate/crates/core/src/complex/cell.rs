use std::collections::HashMap;

use super::simplicial::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// A product cell `σ₁ × … × σ_r` of nonempty faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCell {
    pub factors: Vec<Face>,
}

impl ProductCell {
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.len() - 1).sum()
    }
}

/// Immutable cell complex whose cells are products of simplices.
///
/// Boundaries follow the Leibniz rule factorwise; over GF(2) the signs drop
/// out, so `boundary(k)[i]` simply lists the `(k-1)`-cells in the boundary of
/// cell `i` of dimension `k`.
#[derive(Clone, Debug)]
pub struct CellComplex {
    arity: usize,
    cells: Vec<Vec<ProductCell>>,
    boundaries: Vec<Vec<Vec<usize>>>,
    swap_actions: Vec<Vec<Vec<usize>>>,
    underpopulated: bool,
}

impl CellComplex {
    /// Number of factors per cell.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, dim: usize) -> &[ProductCell] {
        self.cells.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Indices of the `(dim-1)`-cells in the boundary of each `dim`-cell.
    pub fn boundary(&self, dim: usize) -> &[Vec<usize>] {
        self.boundaries.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when the base complex had fewer vertices than factors, so the
    /// deleted product is empty.
    pub fn is_underpopulated(&self) -> bool {
        self.underpopulated
    }

    /// Cell permutation induced by swapping coordinates `i` and `i + 1`,
    /// one index vector per dimension.
    pub fn swap_action(&self, i: usize) -> &[Vec<usize>] {
        &self.swap_actions[i]
    }

    /// Cell permutation induced by an arbitrary coordinate permutation:
    /// factor `j` of the image is factor `perm[j]` of the source.
    pub fn coordinate_action(&self, perm: &[usize]) -> Result<Vec<Vec<usize>>> {
        if perm.len() != self.arity || !is_permutation(perm) {
            return Err(Error::invalid(format!("{perm:?} is not a permutation of {} coordinates", self.arity)));
        }
        let index = self.index();
        self.cells
            .iter()
            .enumerate()
            .map(|(dim, group)| {
                group
                    .iter()
                    .map(|cell| {
                        let image = ProductCell { factors: perm.iter().map(|&p| cell.factors[p].clone()).collect() };
                        index[dim].get(&image).copied().ok_or_else(|| {
                            Error::malformed(format!("cell set not closed under {perm:?}: {image:?}"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn index(&self) -> Vec<HashMap<ProductCell, usize>> {
        self.cells
            .iter()
            .map(|g| g.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect()
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// `r`-fold deleted product: ordered `r`-tuples of nonempty, pairwise
/// vertex-disjoint faces of `K`.
///
/// A base with fewer than `r` vertices yields the empty complex with
/// [`CellComplex::is_underpopulated`] set.
pub fn deleted_product(k: &SimplicialComplex, r: usize) -> Result<CellComplex> {
    if r < 2 {
        return Err(Error::invalid("deleted products need at least two factors"));
    }
    let verts = k.vertices();
    if verts.len() > 128 {
        return Err(Error::invalid("deleted products support at most 128 base vertices"));
    }
    if verts.len() < r {
        return Ok(CellComplex {
            arity: r,
            cells: Vec::new(),
            boundaries: Vec::new(),
            swap_actions: vec![Vec::new(); r - 1],
            underpopulated: true,
        });
    }
    let position: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let faces: Vec<(&Face, u128)> = k
        .iter_faces()
        .map(|f| (f, f.iter().fold(0u128, |m, v| m | 1u128 << position[v])))
        .collect();

    let mut cells: Vec<Vec<ProductCell>> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(r);
    collect_tuples(&faces, r, 0, &mut stack, &mut |chosen: &[usize]| {
        let cell = ProductCell { factors: chosen.iter().map(|&i| faces[i].0.clone()).collect() };
        let dim = cell.dimension();
        if cells.len() <= dim {
            cells.resize(dim + 1, Vec::new());
        }
        cells[dim].push(cell);
    });
    for group in &mut cells {
        group.sort();
    }

    let index: Vec<HashMap<&ProductCell, usize>> =
        cells.iter().map(|g| g.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    let mut boundaries: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); cells.first().map_or(0, Vec::len)]];
    for dim in 1..cells.len() {
        let mut group_boundaries = Vec::with_capacity(cells[dim].len());
        for cell in &cells[dim] {
            let mut out = Vec::new();
            for (slot, factor) in cell.factors.iter().enumerate() {
                if factor.len() < 2 {
                    continue;
                }
                for skip in 0..factor.len() {
                    let mut f = cell.clone();
                    f.factors[slot].remove(skip);
                    out.push(index[dim - 1][&f]);
                }
            }
            out.sort_unstable();
            group_boundaries.push(out);
        }
        boundaries.push(group_boundaries);
    }

    let mut complex = CellComplex { arity: r, cells, boundaries, swap_actions: Vec::new(), underpopulated: false };
    complex.swap_actions = (0..r - 1)
        .map(|i| {
            let mut perm: Vec<usize> = (0..r).collect();
            perm.swap(i, i + 1);
            complex.coordinate_action(&perm)
        })
        .collect::<Result<_>>()?;
    Ok(complex)
}

fn collect_tuples(
    faces: &[(&Face, u128)],
    r: usize,
    used: u128,
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if stack.len() == r {
        emit(stack);
        return;
    }
    for (i, &(_, mask)) in faces.iter().enumerate() {
        if mask & used == 0 {
            stack.push(i);
            collect_tuples(faces, r, used | mask, stack, emit);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex_skeleton;

    /// Independent count: ordered r-tuples of nonempty disjoint faces of a given total dimension.
    fn brute_force_counts(k: &SimplicialComplex, r: usize) -> Vec<usize> {
        let faces: Vec<&Face> = k.iter_faces().collect();
        let mut counts = Vec::new();
        let total = faces.len().pow(r as u32);
        for code in 0..total {
            let mut c = code;
            let pick: Vec<&Face> = (0..r)
                .map(|_| {
                    let f = faces[c % faces.len()];
                    c /= faces.len();
                    f
                })
                .collect();
            let mut all: Vec<u32> = pick.iter().flat_map(|f| f.iter().copied()).collect();
            let n = all.len();
            all.sort_unstable();
            all.dedup();
            if all.len() != n {
                continue;
            }
            let dim: usize = pick.iter().map(|f| f.len() - 1).sum();
            if counts.len() <= dim {
                counts.resize(dim + 1, 0);
            }
            counts[dim] += 1;
        }
        counts
    }

    #[test]
    fn conf2_of_edge_is_two_points() {
        let c = deleted_product(&simplex_skeleton(1, 1).unwrap(), 2).unwrap();
        assert_eq!(c.cell_counts(), vec![2]);
    }

    #[test]
    fn conf2_of_k5_cell_counts() {
        let k5 = simplex_skeleton(4, 1).unwrap();
        let c = deleted_product(&k5, 2).unwrap();
        assert_eq!(c.cell_counts(), vec![20, 60, 30]);
        assert_eq!(c.cell_counts(), brute_force_counts(&k5, 2));
    }

    #[test]
    fn counts_match_brute_force_for_small_simplices() {
        for (n, r) in [(2, 2), (3, 2), (4, 3), (3, 3)] {
            let k = simplex_skeleton(n, n).unwrap();
            let c = deleted_product(&k, r).unwrap();
            assert_eq!(c.cell_counts(), brute_force_counts(&k, r), "N={n} r={r}");
        }
    }

    #[test]
    fn top_dimension_of_tverberg_domain() {
        for (r, d) in [(2usize, 1usize), (2, 2), (3, 1), (2, 3)] {
            let n = (r - 1) * (d + 1);
            let c = deleted_product(&simplex_skeleton(n, n).unwrap(), r).unwrap();
            assert_eq!(c.dimension(), Some((r - 1) * d), "r={r} d={d}");
        }
    }

    #[test]
    fn too_few_vertices_is_flagged_not_an_error() {
        let c = deleted_product(&simplex_skeleton(1, 1).unwrap(), 3).unwrap();
        assert!(c.is_underpopulated());
        assert_eq!(c.num_cells(), 0);
        assert!(deleted_product(&simplex_skeleton(1, 1).unwrap(), 1).is_err());
    }

    #[test]
    fn swap_actions_are_bijections() {
        let c = deleted_product(&simplex_skeleton(4, 4).unwrap(), 3).unwrap();
        for i in 0..2 {
            for (dim, perm) in c.swap_action(i).iter().enumerate() {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..c.cells(dim).len()).collect::<Vec<_>>());
                // Involution, and free: no cell is fixed by a transposition.
                for (a, &b) in perm.iter().enumerate() {
                    assert_eq!(perm[b], a);
                    assert_ne!(a, b);
                }
            }
        }
        let cyc = c.coordinate_action(&[1, 2, 0]).unwrap();
        assert_eq!(cyc.len(), c.dimension().unwrap() + 1);
        assert!(c.coordinate_action(&[0, 0, 1]).is_err());
    }

    #[test]
    fn factors_are_disjoint_and_dimensions_add_up() {
        let c = deleted_product(&simplex_skeleton(4, 2).unwrap(), 2).unwrap();
        for dim in 0..=c.dimension().unwrap() {
            for cell in c.cells(dim) {
                assert_eq!(cell.dimension(), dim);
                assert!(crate::complex::simplicial::disjoint(&cell.factors[0], &cell.factors[1]));
            }
        }
    }
}
