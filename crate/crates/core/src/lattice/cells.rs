//! Coordinate convex hulls, integer cells and integer boxes of finite sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::point_set::{project, IntegerPointSet};
use crate::error::{check_dim, Error, Result};
use crate::index_set::IndexSet;

/// `∏_{i∈over} {base_i, base_i + 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerCell {
    pub over: IndexSet,
    pub base: Vec<i64>,
}

/// `∏_{i∈over} {lo_i, hi_i}` with `lo_i < hi_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerBox {
    pub over: IndexSet,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl IntegerBox {
    pub fn new(over: IndexSet, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != over.len() || hi.len() != over.len() {
            return Err(Error::DimensionMismatch {
                expected: over.len(),
                got: lo.len().max(hi.len()),
            });
        }
        let (lo, hi): (Vec<i64>, Vec<i64>) =
            lo.iter().zip(&hi).map(|(&a, &b)| (a.min(b), a.max(b))).unzip();
        if lo.iter().zip(&hi).any(|(a, b)| a == b) {
            return Err(Error::Input("integer box needs two distinct levels per coordinate".into()));
        }
        Ok(Self { over, lo, hi })
    }

    pub fn corners(&self) -> Vec<Vec<i64>> {
        let d = self.lo.len();
        (0..1u64 << d)
            .map(|s| {
                (0..d)
                    .map(|i| if s >> i & 1 == 1 { self.hi[i] } else { self.lo[i] })
                    .collect()
            })
            .collect()
    }
}

impl From<IntegerCell> for IntegerBox {
    fn from(c: IntegerCell) -> Self {
        let hi = c.base.iter().map(|v| v + 1).collect();
        IntegerBox {
            over: c.over,
            lo: c.base,
            hi,
        }
    }
}

/// Coordinate convex hull membership: every sign pattern θ needs a point
/// `y ∈ A` with `y(i) ≥ x(i)` where θ(i)=+1 and `y(i) ≤ x(i)` where θ(i)=−1.
pub fn cconv_contains(a: &IntegerPointSet, x: &[i64]) -> Result<bool> {
    check_dim(a.dim(), x.len())?;
    Ok(cconv_contains_slice(a.points(), x))
}

/// Raw variant over a slice of equal-length points.
///
/// A point `y` serves exactly the patterns whose plus-set contains
/// `{i : y_i > x_i}` and avoids `{i : y_i < x_i}`, so the patterns it serves
/// are the supersets of the first set inside the complement of the second.
pub(crate) fn cconv_contains_slice(points: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    if points.is_empty() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut covered = vec![false; 1usize << n];
    let mut remaining = covered.len();
    for y in points {
        let (mut above, mut below) = (0u64, 0u64);
        for i in 0..n {
            if y[i] > x[i] {
                above |= 1 << i;
            } else if y[i] < x[i] {
                below |= 1 << i;
            }
        }
        let free = full & !above & !below;
        // enumerate submasks of `free`
        let mut sub = free;
        loop {
            let pattern = (above | sub) as usize;
            if !covered[pattern] {
                covered[pattern] = true;
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    false
}

/// Lattice points of a box `∏[lo_i, hi_i]`, flattened in row-major order
/// (last coordinate fastest).
struct Grid {
    lo: Vec<i64>,
    extent: Vec<usize>,
}

impl Grid {
    fn len(&self) -> usize {
        self.extent.iter().product()
    }

    fn point(&self, mut flat: usize) -> Vec<i64> {
        let mut p = vec![0; self.lo.len()];
        for i in (0..self.lo.len()).rev() {
            p[i] = self.lo[i] + (flat % self.extent[i]) as i64;
            flat /= self.extent[i];
        }
        p
    }

    fn index(&self, p: &[i64]) -> usize {
        p.iter()
            .zip(&self.lo)
            .zip(&self.extent)
            .fold(0, |acc, ((&v, &l), &e)| acc * e + (v - l) as usize)
    }
}

/// Cells contained in `cconv(P_I A)`, in lexicographic order of their bases.
///
/// Corner containment is enough: a coordinate convex set containing all
/// corners of a box contains the box.
pub fn integer_cells_in_cconv(a: &IntegerPointSet, i: &IndexSet) -> Result<Vec<IntegerCell>> {
    let proj = project(a, i)?;
    let bases = cells_in_cconv_of(&proj);
    Ok(bases
        .into_iter()
        .map(|base| IntegerCell { over: *i, base })
        .collect())
}

/// Bases of the integer cells inside `cconv(B)` for a set `B` in its own coordinates.
pub(crate) fn cells_in_cconv_of(b: &IntegerPointSet) -> Vec<Vec<i64>> {
    let Some(bounds) = b.bounding_box() else {
        return Vec::new();
    };
    if bounds.iter().any(|(lo, hi)| lo == hi) {
        return Vec::new();
    }
    let grid = Grid {
        lo: bounds.iter().map(|b| b.0).collect(),
        extent: bounds.iter().map(|b| (b.1 - b.0 + 1) as usize).collect(),
    };
    let inside: Vec<bool> = (0..grid.len())
        .map(|f| cconv_contains_slice(b.points(), &grid.point(f)))
        .collect();
    let d = b.dim();
    let mut out = Vec::new();
    let cell_grid = Grid {
        lo: grid.lo.clone(),
        extent: grid.extent.iter().map(|e| e - 1).collect(),
    };
    'cells: for f in 0..cell_grid.len() {
        let base = cell_grid.point(f);
        for s in 0..1u64 << d {
            let corner: Vec<i64> = (0..d).map(|k| base[k] + (s >> k & 1) as i64).collect();
            if !inside[grid.index(&corner)] {
                continue 'cells;
            }
        }
        out.push(base);
    }
    out
}

/// Number of integer boxes all of whose corners lie in `P_I B` (no hull taken).
pub fn integer_boxes_in(b: &IntegerPointSet, i: &IndexSet) -> Result<u64> {
    let proj = project(b, i)?;
    Ok(count_boxes(proj.points()))
}

/// Counts boxes by fixing the pair of levels in the first coordinate and
/// recursing on the intersection of the two fibres.
fn count_boxes(points: &[Vec<i64>]) -> u64 {
    if points.is_empty() {
        return 0;
    }
    if points[0].is_empty() {
        return 1;
    }
    let fibres = fibres_by_first(points);
    let levels: Vec<&Vec<Vec<i64>>> = fibres.values().collect();
    let mut total = 0;
    for (x, lower) in levels.iter().enumerate() {
        for upper in &levels[x + 1..] {
            let common = intersect_sorted(lower, upper);
            total += count_boxes(&common);
        }
    }
    total
}

pub(crate) fn has_box(points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    if points[0].is_empty() {
        return true;
    }
    let fibres = fibres_by_first(points);
    let levels: Vec<&Vec<Vec<i64>>> = fibres.values().collect();
    for (x, lower) in levels.iter().enumerate() {
        for upper in &levels[x + 1..] {
            if has_box(&intersect_sorted(lower, upper)) {
                return true;
            }
        }
    }
    false
}

fn fibres_by_first(points: &[Vec<i64>]) -> BTreeMap<i64, Vec<Vec<i64>>> {
    let mut fibres: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for p in points {
        fibres.entry(p[0]).or_default().push(p[1..].to_vec());
    }
    for tails in fibres.values_mut() {
        tails.sort();
        tails.dedup();
    }
    fibres
}

fn intersect_sorted(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Per-projection terms of the cell content.
#[derive(Clone, Debug, Serialize)]
pub struct ContentTerm {
    pub projection: IndexSet,
    pub count: u64,
}

/// Cell content `Σ(A)`: cells in `cconv(P_I A)` summed over all nonempty `I`,
/// plus one for the 0-dimensional projection when `A` is nonempty.
pub fn cell_content(a: &IntegerPointSet) -> u64 {
    if a.is_empty() {
        return 0;
    }
    1 + cell_content_terms(a).iter().map(|t| t.count).sum::<u64>()
}

pub fn cell_content_terms(a: &IntegerPointSet) -> Vec<ContentTerm> {
    IndexSet::all_nonempty(a.dim())
        .into_iter()
        .map(|projection| {
            let proj = project(a, &projection).expect("index set matches dimension");
            ContentTerm {
                projection,
                count: cells_in_cconv_of(&proj).len() as u64,
            }
        })
        .collect()
}

/// Boxes in `P_I A` summed over all nonempty `I` (no trivial term).
pub fn box_content(a: &IntegerPointSet) -> u64 {
    IndexSet::all_nonempty(a.dim())
        .into_iter()
        .map(|i| integer_boxes_in(a, &i).expect("index set matches dimension"))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, pts: &[&[i64]]) -> IntegerPointSet {
        IntegerPointSet::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn grid(n: usize, m: i64) -> IntegerPointSet {
        let mut pts = vec![vec![]];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..=m).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        IntegerPointSet::new(n, pts).unwrap()
    }

    #[test]
    fn cconv_examples() {
        let a = set(2, &[&[0, 1], &[1, 0]]);
        assert!(!cconv_contains(&a, &[0, 0]).unwrap());
        // the mixed patterns (+,-) and (-,+) have no dominating point
        let b = set(2, &[&[0, 0], &[2, 2]]);
        assert!(!cconv_contains(&b, &[1, 1]).unwrap());
        let corners = set(2, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0]]);
        assert!(cconv_contains(&corners, &[1, 1]).unwrap());
        for p in a.points() {
            assert!(cconv_contains(&a, p).unwrap());
        }
        assert!(cconv_contains(&a, &[0]).is_err());
        assert!(!cconv_contains(&IntegerPointSet::empty(2), &[0, 0]).unwrap());
    }

    #[test]
    fn cross_is_coordinate_convex_but_not_convex() {
        // the cross {x = 0 or y = 0} restricted to a window
        let a = set(2, &[&[-1, 0], &[1, 0], &[0, -1], &[0, 1], &[0, 0]]);
        assert!(!cconv_contains(&a, &[1, 1]).unwrap());
        assert!(cconv_contains(&a, &[0, 0]).unwrap());
    }

    #[test]
    fn cells_of_boolean_square() {
        let a = grid(2, 1);
        let cells = integer_cells_in_cconv(&a, &IndexSet::full(2)).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].base, vec![0, 0]);
    }

    #[test]
    fn cells_of_full_grid() {
        let a = grid(2, 3);
        assert_eq!(integer_cells_in_cconv(&a, &IndexSet::full(2)).unwrap().len(), 9);
    }

    #[test]
    fn cells_of_diagonal_pair_and_of_box_corners() {
        let a = set(2, &[&[0, 0], &[2, 2]]);
        assert!(integer_cells_in_cconv(&a, &IndexSet::full(2)).unwrap().is_empty());
        let corners = set(2, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0]]);
        let cells = integer_cells_in_cconv(&corners, &IndexSet::full(2)).unwrap();
        assert_eq!(cells.len(), 4);
    }

    #[test]
    fn box_counts() {
        assert_eq!(integer_boxes_in(&grid(2, 3), &IndexSet::full(2)).unwrap(), 36);
        assert_eq!(integer_boxes_in(&set(2, &[&[4, 4]]), &IndexSet::full(2)).unwrap(), 0);
        let b = grid(3, 1);
        let i = IndexSet::from_one_based(3, &[1, 2]).unwrap();
        assert_eq!(integer_boxes_in(&b, &i).unwrap(), 1);
    }

    #[test]
    fn contents() {
        assert_eq!(cell_content(&IntegerPointSet::empty(3)), 0);
        assert_eq!(cell_content(&set(2, &[&[5, -2]])), 1);
        assert_eq!(cell_content(&grid(2, 1)), 4);
        assert_eq!(box_content(&grid(2, 1)), 3);
        assert_eq!(box_content(&set(3, &[&[1, 2, 3]])), 0);
        assert_eq!(box_content(&grid(2, 3)), 48);
    }

    #[test]
    fn box_corners_and_validation() {
        let i = IndexSet::full(2);
        assert!(IntegerBox::new(i, vec![0, 1], vec![0, 2]).is_err());
        let b = IntegerBox::new(i, vec![3, 1], vec![0, 2]).unwrap();
        assert_eq!(b.lo, vec![0, 1]);
        assert_eq!(b.corners().len(), 4);
        let from_cell: IntegerBox = IntegerCell { over: i, base: vec![2, 2] }.into();
        assert_eq!(from_cell.hi, vec![3, 3]);
    }
}
