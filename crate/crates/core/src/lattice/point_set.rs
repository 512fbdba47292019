use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::index_set::IndexSet;

/// A finite subset of `Z^n` with explicit ambient dimension.
///
/// Points are kept sorted lexicographically, so two sets with the same
/// elements compare equal and serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntegerPointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl IntegerPointSet {
    /// Strict constructor: rejects duplicates, naming the offending index.
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("point sets need a positive dimension".into()));
        }
        let mut seen: HashMap<&[i64], usize> = HashMap::with_capacity(points.len());
        for (index, p) in points.iter().enumerate() {
            check_dim(dim, p.len())?;
            if let Some(&first) = seen.get(p.as_slice()) {
                return Err(Error::DuplicatePoint { index, first });
            }
            seen.insert(p, index);
        }
        let mut points = points;
        points.sort();
        Ok(Self { dim, points })
    }

    /// Builds a set from a point list, merging duplicates.
    pub fn from_points_merged(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("point sets need a positive dimension".into()));
        }
        for p in &points {
            check_dim(dim, p.len())?;
        }
        points.sort();
        points.dedup();
        Ok(Self { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }

    pub fn is_boolean(&self) -> bool {
        self.points.iter().flatten().all(|&v| v == 0 || v == 1)
    }

    /// Per-coordinate `(min, max)`; `None` for the empty set.
    pub fn bounding_box(&self) -> Option<Vec<(i64, i64)>> {
        let first = self.points.first()?;
        let mut bounds: Vec<(i64, i64)> = first.iter().map(|&v| (v, v)).collect();
        for p in &self.points[1..] {
            for (b, &v) in bounds.iter_mut().zip(p) {
                b.0 = b.0.min(v);
                b.1 = b.1.max(v);
            }
        }
        Some(bounds)
    }

    pub fn translate(&self, v: &[i64]) -> Result<Self> {
        check_dim(self.dim, v.len())?;
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        Self::from_points_merged(self.dim, points)
    }

    /// Relabels coordinates: output coordinate `i` is input coordinate `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_dim(self.dim, perm.len())?;
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.dim).collect::<Vec<_>>() {
            return Err(Error::Input("not a permutation".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| perm.iter().map(|&j| p[j]).collect())
            .collect();
        Self::from_points_merged(self.dim, points)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Self::from_points_merged(self.dim, points)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawPointSet = serde_json::from_str(s)?;
        Self::new(raw.dim, raw.points)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("point sets always serialize")
    }
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for IntegerPointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPointSet::deserialize(d)?;
        Self::new(raw.dim, raw.points).map_err(serde::de::Error::custom)
    }
}

/// `P_I A`: restriction of every point to the coordinates in `I`, duplicates merged.
pub fn project(a: &IntegerPointSet, i: &IndexSet) -> Result<IntegerPointSet> {
    check_dim(a.dim(), i.ambient())?;
    if i.is_empty() {
        return Err(Error::Input("projection needs a nonempty index set".into()));
    }
    let idx = i.indices();
    let points = a
        .points()
        .iter()
        .map(|p| idx.iter().map(|&j| p[j]).collect())
        .collect();
    IntegerPointSet::from_points_merged(idx.len(), points)
}

/// `{x ∈ A : x(coord) = value}` in the same ambient dimension; `coord` is zero-based.
pub fn slice(a: &IntegerPointSet, coord: usize, value: i64) -> Result<IntegerPointSet> {
    if coord >= a.dim() {
        return Err(Error::Input(format!(
            "slice coordinate {} outside 1..={}",
            coord + 1,
            a.dim()
        )));
    }
    Ok(IntegerPointSet {
        dim: a.dim(),
        points: a
            .points()
            .iter()
            .filter(|p| p[coord] == value)
            .cloned()
            .collect(),
    })
}

/// The values attained by coordinate `coord`, sorted.
pub fn attained_values(a: &IntegerPointSet, coord: usize) -> Vec<i64> {
    let mut vals: Vec<i64> = a.points().iter().map(|p| p[coord]).collect();
    vals.sort_unstable();
    vals.dedup();
    vals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, pts: &[&[i64]]) -> IntegerPointSet {
        IntegerPointSet::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn duplicates_are_rejected_with_index() {
        let err = IntegerPointSet::new(2, vec![vec![0, 1], vec![1, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint { index: 2, first: 0 }));
        let err = IntegerPointSet::from_json(r#"{"dim":1,"points":[[3],[3]]}"#).unwrap_err();
        assert!(err.to_string().contains("index 1"));
    }

    #[test]
    fn wrong_length_points_are_rejected() {
        assert!(matches!(
            IntegerPointSet::new(2, vec![vec![0, 1, 2]]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn projection_merges_duplicates() {
        let a = set(2, &[&[0, 1], &[1, 1]]);
        let p = project(&a, &IndexSet::from_one_based(2, &[2]).unwrap()).unwrap();
        assert_eq!(p, set(1, &[&[1]]));
    }

    #[test]
    fn projection_of_boolean_square() {
        let a = set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let p = project(&a, &IndexSet::from_one_based(2, &[1]).unwrap()).unwrap();
        assert_eq!(p, set(1, &[&[0], &[1]]));
    }

    #[test]
    fn projection_dimension_mismatch() {
        let a = set(2, &[&[0, 0]]);
        assert!(project(&a, &IndexSet::full(3)).is_err());
    }

    #[test]
    fn slices_partition_the_set() {
        let a = set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1], &[3, 2]]);
        assert_eq!(slice(&a, 0, 0).unwrap(), set(2, &[&[0, 0], &[0, 1]]));
        assert!(slice(&a, 0, 2).unwrap().is_empty());
        let mut total = 0;
        for v in attained_values(&a, 0) {
            total += slice(&a, 0, v).unwrap().len();
        }
        assert_eq!(total, a.len());
        assert!(slice(&a, 2, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = set(3, &[&[1, 2, 3], &[-1, 0, 5]]);
        let back = IntegerPointSet::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
    }
}
