//! Integer cells inside coordinate projections of polytopes.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::index_set::IndexSet;
use crate::lattice::IntegerCell;
use crate::polytope::{project_polytope, RationalPolytope};
use crate::rational::{ceil, floor, Rational};

/// Largest lattice grid scanned for one projection.
const MAX_GRID: u128 = 1 << 27;

/// Lattice-point membership for a full-dimensional polytope: `a·y ≤ ⌊b⌋`
/// with primitive integer normals.
struct LatticeGrid {
    lo: Vec<i64>,
    extent: Vec<usize>,
    member: Vec<bool>,
}

impl LatticeGrid {
    fn build(q: &RationalPolytope) -> Result<Option<Self>> {
        let Some(bb) = q.bounding_box() else { return Ok(None) };
        let to_i64 = |v: num_bigint::BigInt| {
            v.to_i64().ok_or_else(|| Error::Input("polytope coordinates too large for lattice scan".into()))
        };
        let mut lo = Vec::with_capacity(bb.len());
        let mut extent = Vec::with_capacity(bb.len());
        for (a, b) in &bb {
            let l = to_i64(ceil(a))?;
            let h = to_i64(floor(b))?;
            if h < l {
                return Ok(None);
            }
            lo.push(l);
            extent.push((h - l + 1) as usize);
        }
        let total: u128 = extent.iter().map(|&e| e as u128).product();
        if total > MAX_GRID {
            return Err(Error::Input(format!("lattice scan of {total} points exceeds the limit")));
        }
        let rows: Vec<(Vec<i128>, i128)> = q
            .facets()
            .iter()
            .map(|f| {
                let a: Option<Vec<i128>> = f.normal.iter().map(|x| x.to_integer().to_i128()).collect();
                let b = floor(&f.offset).to_i128();
                a.zip(b).ok_or_else(|| Error::Input("facet data too large for lattice scan".into()))
            })
            .collect::<Result<_>>()?;
        let d = lo.len();
        let total = total as usize;
        let member: Vec<bool> = (0..total)
            .into_par_iter()
            .with_min_len(4096)
            .map(|idx| {
                let mut y = [0i128; 64];
                let mut r = idx;
                for j in (0..d).rev() {
                    y[j] = lo[j] as i128 + (r % extent[j]) as i128;
                    r /= extent[j];
                }
                rows.iter().all(|(a, b)| a.iter().zip(&y[..d]).map(|(x, v)| x * v).sum::<i128>() <= *b)
            })
            .collect();
        Ok(Some(LatticeGrid { lo, extent, member }))
    }

    /// Bases of all cells whose corners are members, in lexicographic order.
    fn cells(&self) -> Vec<Vec<i64>> {
        let d = self.lo.len();
        let mut strides = vec![1usize; d];
        for j in (0..d.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.extent[j + 1];
        }
        let offsets: Vec<usize> = (0..1usize << d)
            .map(|s| (0..d).filter(|j| s >> j & 1 == 1).map(|j| strides[j]).sum())
            .collect();
        if self.extent.iter().any(|&e| e < 2) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut base = vec![0usize; d];
        loop {
            let idx: usize = base.iter().zip(&strides).map(|(b, s)| b * s).sum();
            if offsets.iter().all(|o| self.member[idx + o]) {
                out.push(base.iter().zip(&self.lo).map(|(&b, l)| l + b as i64).collect());
            }
            let mut j = d;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                base[j] += 1;
                if base[j] + 1 < self.extent[j] {
                    break;
                }
                base[j] = 0;
            }
        }
    }
}

/// Cells of `P_I Z^n` contained in `P_I K`, as coordinates in `R^I`.
pub fn integer_cells_body(k: &RationalPolytope, i: &IndexSet) -> Result<Vec<IntegerCell>> {
    let q = project_polytope(k, i)?;
    Ok(cell_bases(&q)?.into_iter().map(|base| IntegerCell { over: *i, base }).collect())
}

pub fn count_integer_cells_body(k: &RationalPolytope, i: &IndexSet) -> Result<u64> {
    let q = project_polytope(k, i)?;
    Ok(cell_bases(&q)?.len() as u64)
}

/// Cells `[a, a+1]^d` inside a polytope of `R^d`.
pub fn cells_in_polytope(q: &RationalPolytope) -> Result<u64> {
    Ok(cell_bases(q)?.len() as u64)
}

fn cell_bases(q: &RationalPolytope) -> Result<Vec<Vec<i64>>> {
    if !q.is_full_dimensional() {
        return Ok(Vec::new());
    }
    Ok(LatticeGrid::build(q)?.map(|g| g.cells()).unwrap_or_default())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BestProjection {
    pub projection: IndexSet,
    pub count: u64,
    /// Cell counts of every nonempty projection, in enumeration order.
    pub counts: Vec<(IndexSet, u64)>,
}

/// The projection with the most cells (ties: smaller rank, then lexicographic).
pub fn best_cell_projection(k: &RationalPolytope) -> Result<BestProjection> {
    let n = k.dim();
    if n > crate::index_set::MAX_AMBIENT {
        return Err(Error::Input(format!("dimension {n} too large")));
    }
    let sets = IndexSet::all_nonempty(n);
    let counts: Vec<(IndexSet, u64)> = sets
        .par_iter()
        .map(|i| count_integer_cells_body(k, i).map(|c| (*i, c)))
        .collect::<Result<_>>()?;
    let (projection, count) = counts
        .iter()
        .fold((sets[0], counts[0].1), |best, &(i, c)| if c > best.1 { (i, c) } else { best });
    Ok(BestProjection { projection, count, counts })
}

/// Cells of `Z^n` inside the translate `x + K`.
pub fn cells_in_translate(k: &RationalPolytope, x: &[Rational]) -> Result<u64> {
    check_dim(k.dim(), x.len())?;
    cells_in_polytope(&k.translate(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn boxed(lo: &[Rational], hi: &[Rational]) -> RationalPolytope {
        let n = lo.len();
        let pts = (0..1u64 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect())
            .collect();
        RationalPolytope::from_points(n, pts).unwrap()
    }

    #[test]
    fn square_counts() {
        let k = boxed(&[int(0), int(0)], &[int(3), int(3)]);
        assert_eq!(count_integer_cells_body(&k, &IndexSet::full(2)).unwrap(), 9);
        let thin = boxed(&[int(0), int(0)], &[rat(9, 10), rat(9, 10)]);
        assert_eq!(count_integer_cells_body(&thin, &IndexSet::full(2)).unwrap(), 0);
    }

    #[test]
    fn pancake_best_projection() {
        let k = boxed(&[int(0), int(0)], &[int(72), rat(9, 10)]);
        let best = best_cell_projection(&k).unwrap();
        assert_eq!(best.projection, IndexSet::from_one_based(2, &[1]).unwrap());
        assert_eq!(best.count, 72);
        assert_eq!(best.counts.len(), 3);
    }

    #[test]
    fn cells_listed_with_bases() {
        let tri = RationalPolytope::from_integer_points(2, &[vec![0, 0], vec![4, 0], vec![0, 4]]).unwrap();
        let cells = integer_cells_body(&tri, &IndexSet::full(2)).unwrap();
        // bases (a,b) with a+b+2 ≤ 4
        assert_eq!(cells.len(), 6);
        assert!(cells.iter().all(|c| c.base[0] + c.base[1] <= 2));
    }

    #[test]
    fn translates_shift_the_count() {
        let k = boxed(&[int(0), int(0)], &[int(2), int(2)]);
        assert_eq!(cells_in_translate(&k, &[int(0), int(0)]).unwrap(), 4);
        assert_eq!(cells_in_translate(&k, &[rat(1, 2), int(0)]).unwrap(), 2);
    }
}
