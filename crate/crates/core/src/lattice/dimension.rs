//! VC, Natarajan and combinatorial (scale-sensitive) dimensions of finite
//! subsets of `Z^n`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::cells::has_box;
use super::point_set::{attained_values, project, IntegerPointSet};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::rational::Rational;

/// Certificate that `indices` is `scale`-shattered at `level`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShatterWitness {
    pub indices: IndexSet,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub level: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub scale: Rational,
}

impl ShatterWitness {
    /// Exhaustive check over all `2^|I|` partitions `I = I⁻ ∪ I⁺`.
    pub fn verify(&self, a: &IntegerPointSet) -> bool {
        let idx = self.indices.indices();
        let d = idx.len();
        (0..1u64 << d).all(|plus| {
            a.points().iter().any(|x| {
                (0..d).all(|k| {
                    let v = Rational::from_integer(BigInt::from(x[idx[k]]));
                    if plus >> k & 1 == 1 {
                        v >= &self.level[k] + &self.scale
                    } else {
                        v <= self.level[k]
                    }
                })
            })
        })
    }
}

/// Largest `|I|` with `P_I A = {0,1}^I`; requires `A ⊆ {0,1}^n`.
pub fn vc_dimension(a: &IntegerPointSet) -> Result<usize> {
    if !a.is_boolean() {
        return Err(Error::Input("VC dimension needs a subset of {0,1}^n".into()));
    }
    for k in (1..=a.dim()).rev() {
        if a.len() < 1 << k {
            continue;
        }
        for i in IndexSet::of_size(a.dim(), k) {
            if project(a, &i)?.len() == 1 << k {
                return Ok(k);
            }
        }
    }
    Ok(0)
}

/// Index sets `I` (nonempty) with `P_I A = {0,1}^I`.
pub fn shattered_projections(a: &IntegerPointSet) -> Result<Vec<IndexSet>> {
    if !a.is_boolean() {
        return Err(Error::Input("shattered projections need a subset of {0,1}^n".into()));
    }
    let mut out = Vec::new();
    for i in IndexSet::all_nonempty(a.dim()) {
        if project(a, &i)?.len() == 1 << i.len() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Largest rank of a coordinate projection containing an integer box.
pub fn natarajan_dimension(a: &IntegerPointSet) -> usize {
    natarajan_witness(a).map_or(0, |i| i.len())
}

pub fn natarajan_witness(a: &IntegerPointSet) -> Option<IndexSet> {
    for k in (1..=a.dim()).rev() {
        for i in IndexSet::of_size(a.dim(), k) {
            let proj = project(a, &i).expect("index set matches dimension");
            if has_box(proj.points()) {
                return Some(i);
            }
        }
    }
    None
}

/// `v(A, t)`: the largest cardinality of a `t`-shattered index set, with a
/// witness when it is positive.
///
/// For each coordinate the level `h(i)` only needs to range over attained
/// values and attained values minus `t`: the constraints on `h(i)` are
/// `h(i) ≥ x(i)` and `h(i) ≤ x(i) − t`, so any feasible level can be moved to
/// the largest lower constraint (or the smallest upper one) without breaking
/// a partition.
pub fn shattering_dimension_discrete(
    a: &IntegerPointSet,
    t: &Rational,
) -> Result<(usize, Option<ShatterWitness>)> {
    if !t.is_positive() {
        return Err(Error::Input(format!("scale t must be positive, got {t}")));
    }
    // Scale by the denominator of t so that all thresholds are integers.
    let den = t.denom().clone();
    let scaled_t = t.numer().to_i128().ok_or_else(|| Error::Input("scale too large".into()))?;
    let den_i = den.to_i128().ok_or_else(|| Error::Input("scale too large".into()))?;
    let n = a.dim();
    let candidates: Vec<Vec<i128>> = (0..n)
        .map(|c| {
            let mut v: Vec<i128> = attained_values(a, c)
                .into_iter()
                .flat_map(|x| [x as i128 * den_i, x as i128 * den_i - scaled_t])
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let scaled: Vec<Vec<i128>> = a
        .points()
        .iter()
        .map(|p| p.iter().map(|&x| x as i128 * den_i).collect())
        .collect();

    for k in (1..=n).rev() {
        if a.len() < 1 << k {
            continue;
        }
        for i in IndexSet::of_size(n, k) {
            if let Some(level) = find_level(&scaled, &i, &candidates, scaled_t) {
                let level = level
                    .into_iter()
                    .map(|h| Rational::new(BigInt::from(h), den.clone()))
                    .collect();
                return Ok((
                    k,
                    Some(ShatterWitness {
                        indices: i,
                        level,
                        scale: t.clone(),
                    }),
                ));
            }
        }
    }
    Ok((0, None))
}

fn find_level(
    points: &[Vec<i128>],
    i: &IndexSet,
    candidates: &[Vec<i128>],
    t: i128,
) -> Option<Vec<i128>> {
    let idx = i.indices();
    let d = idx.len();
    let lists: Vec<&Vec<i128>> = idx.iter().map(|&c| &candidates[c]).collect();
    let mut choice = vec![0usize; d];
    let needed = 1usize << d;
    loop {
        let h: Vec<i128> = (0..d).map(|k| lists[k][choice[k]]).collect();
        let mut patterns: HashSet<u64> = HashSet::with_capacity(needed);
        for x in points {
            let mut plus = 0u64;
            let mut ok = true;
            for k in 0..d {
                let v = x[idx[k]];
                if v >= h[k] + t {
                    plus |= 1 << k;
                } else if v > h[k] {
                    ok = false;
                    break;
                }
            }
            if ok {
                patterns.insert(plus);
                if patterns.len() == needed {
                    return Some(h);
                }
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == d {
                return None;
            }
            choice[pos] += 1;
            if choice[pos] < lists[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn set(dim: usize, pts: &[&[i64]]) -> IntegerPointSet {
        IntegerPointSet::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn cube(n: usize) -> IntegerPointSet {
        let pts = (0..1u32 << n)
            .map(|m| (0..n).map(|i| (m >> i & 1) as i64).collect())
            .collect();
        IntegerPointSet::new(n, pts).unwrap()
    }

    #[test]
    fn vc_examples() {
        assert_eq!(vc_dimension(&cube(4)).unwrap(), 4);
        let a = set(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(vc_dimension(&a).unwrap(), 1);
        assert_eq!(vc_dimension(&set(3, &[&[1, 0, 1]])).unwrap(), 0);
        assert!(vc_dimension(&set(1, &[&[2]])).is_err());
    }

    #[test]
    fn natarajan_examples() {
        assert_eq!(natarajan_dimension(&cube(3)), 3);
        let g: Vec<Vec<i64>> = (0..4).flat_map(|x| (0..4).map(move |y| vec![x, y])).collect();
        assert_eq!(natarajan_dimension(&IntegerPointSet::new(2, g).unwrap()), 2);
        let diag: Vec<Vec<i64>> = (0..5).map(|k| vec![k, k]).collect();
        assert_eq!(natarajan_dimension(&IntegerPointSet::new(2, diag).unwrap()), 1);
        assert_eq!(natarajan_dimension(&set(2, &[&[1, 1]])), 0);
    }

    #[test]
    fn shattering_examples() {
        let (d, w) = shattering_dimension_discrete(&cube(3), &int(1)).unwrap();
        assert_eq!(d, 3);
        assert!(w.unwrap().verify(&cube(3)));
        let (d, w) = shattering_dimension_discrete(&cube(3), &int(2)).unwrap();
        assert_eq!(d, 0);
        assert!(w.is_none());
        assert!(shattering_dimension_discrete(&cube(2), &int(0)).is_err());
        assert!(shattering_dimension_discrete(&cube(2), &rat(-1, 2)).is_err());
    }

    #[test]
    fn fractional_scales() {
        let a = set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let (d, w) = shattering_dimension_discrete(&a, &rat(1, 3)).unwrap();
        assert_eq!(d, 2);
        assert!(w.unwrap().verify(&a));
        let (d, _) = shattering_dimension_discrete(&a, &rat(4, 3)).unwrap();
        assert_eq!(d, 0);
    }

    #[test]
    fn witness_verification_rejects_bad_levels() {
        let a = cube(2);
        let w = ShatterWitness {
            indices: IndexSet::full(2),
            level: vec![int(1), int(0)],
            scale: int(1),
        };
        assert!(!w.verify(&a));
    }
}
