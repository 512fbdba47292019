//! Double description: extreme rays of a pointed cone `{x : a·x ≥ 0}`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::linalg::{int_dot, inverse, rref};
use crate::rational::{make_primitive, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[cfg(test)]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b & !a == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

/// Extreme rays (primitive integer vectors) of `{x ∈ R^d : a·x ≥ 0 ∀ rows}`.
/// Rows are processed in the given order after an initial basis.
/// Returns `None` when the rows have rank below `d` (cone with lineality).
pub(crate) fn extreme_rays(d: usize, rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let m = rows.len();
    // greedy basis of d independent rows, keeping the original order
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        let mut trial = echelon.clone();
        trial.push(row.iter().map(|x| Rational::from_integer(x.clone())).collect());
        let (red, _) = rref(trial);
        if red.len() > echelon.len() {
            echelon = red;
            basis.push(i);
        }
    }
    if basis.len() < d {
        return None;
    }
    let b: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&i| rows[i].iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let inv = inverse(&b)?;
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| inv[i][j].clone()).collect();
            let mut zeros = Bits::new(m);
            for (t, &row) in basis.iter().enumerate() {
                if t != j {
                    zeros.set(row);
                }
            }
            Ray { v: crate::rational::primitive_integer_vector(&col), zeros }
        })
        .collect();

    let mut in_basis = vec![false; m];
    for &i in &basis {
        in_basis[i] = true;
    }
    for (i, a) in rows.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.sign() == num_bigint::Sign::NoSign {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !r.zeros.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[q] * y)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray { v: make_primitive(v), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if !v.is_positive() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    Some(rays.into_iter().map(|r| r.v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sorted(mut v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        v.sort();
        v
    }

    #[test]
    fn positive_orthant() {
        let rows = vec![big(&[1, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])];
        let rays = sorted(extreme_rays(3, &rows).unwrap());
        assert_eq!(rays, vec![big(&[0, 0, 1]), big(&[0, 1, 0]), big(&[1, 0, 0])]);
    }

    #[test]
    fn homogenized_square() {
        // x0 ≥ 0, x0 ± x1 ≥ 0, x0 ± x2 ≥ 0: the square [-1,1]^2 lifted
        let rows = vec![
            big(&[1, 0, 0]),
            big(&[1, 1, 0]),
            big(&[1, -1, 0]),
            big(&[1, 0, 1]),
            big(&[1, 0, -1]),
        ];
        let rays = sorted(extreme_rays(3, &rows).unwrap());
        assert_eq!(
            rays,
            vec![big(&[1, -1, -1]), big(&[1, -1, 1]), big(&[1, 1, -1]), big(&[1, 1, 1])]
        );
    }

    #[test]
    fn lineality_is_reported() {
        assert!(extreme_rays(2, &[big(&[1, 0])]).is_none());
    }

    #[test]
    fn bitset_ops() {
        let mut a = Bits::new(70);
        let mut b = Bits::new(70);
        a.set(3);
        a.set(68);
        b.set(68);
        assert!(a.contains_all(&b));
        assert!(!b.contains_all(&a));
        assert_eq!(a.and(&b).count(), 1);
        assert!(a.get(3) && !a.get(4));
    }
}
