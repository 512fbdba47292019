//! Coordinate index sets `I ⊆ {1..n}` naming coordinate projections and
//! coordinate subspaces.
//!
//! Indices are stored zero-based in a bit mask; everything user-facing
//! (display, JSON) is one-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ambient dimension (bit-mask width).
pub const MAX_AMBIENT: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet {
    ambient: usize,
    mask: u64,
}

impl IndexSet {
    pub fn from_mask(ambient: usize, mask: u64) -> Result<Self> {
        if ambient == 0 || ambient > MAX_AMBIENT {
            return Err(Error::Input(format!(
                "ambient dimension {ambient} out of range 1..={MAX_AMBIENT}"
            )));
        }
        if mask >> ambient != 0 {
            return Err(Error::Input(format!(
                "index mask {mask:#b} exceeds ambient dimension {ambient}"
            )));
        }
        Ok(Self { ambient, mask })
    }

    /// Build from zero-based indices.
    pub fn from_zero_based(ambient: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= ambient {
                return Err(Error::Input(format!(
                    "index {} outside 1..={ambient}",
                    i + 1
                )));
            }
            mask |= 1 << i;
        }
        Self::from_mask(ambient, mask)
    }

    /// Build from one-based indices, as written by users.
    pub fn from_one_based(ambient: usize, indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Input("coordinate indices are one-based".into()));
        }
        let zero: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        Self::from_zero_based(ambient, &zero)
    }

    pub fn full(ambient: usize) -> Self {
        let mask = if ambient == 64 { u64::MAX } else { (1u64 << ambient) - 1 };
        Self::from_mask(ambient, mask).expect("valid ambient dimension")
    }

    /// The 0-dimensional projection marker (only meaningful for cell content).
    pub fn trivial(ambient: usize) -> Self {
        Self { ambient, mask: 0 }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.ambient && self.mask >> i & 1 == 1
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            ambient: self.ambient,
            mask: IndexSet::full(self.ambient).mask & !self.mask,
        }
    }

    /// Zero-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&i| self.contains(i)).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    /// Restriction of a vector to the coordinates in the set.
    pub fn restrict<T: Clone>(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.ambient);
        self.indices().into_iter().map(|i| x[i].clone()).collect()
    }

    /// All nonempty index sets of `{1..n}`, ordered by cardinality and then
    /// lexicographically.
    pub fn all_nonempty(ambient: usize) -> Vec<IndexSet> {
        (1..=ambient)
            .flat_map(|k| IndexSet::of_size(ambient, k))
            .collect()
    }

    /// All index sets of cardinality `k`, in lexicographic order.
    pub fn of_size(ambient: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > ambient {
            return out;
        }
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            out.push(IndexSet { ambient, mask });
            // advance to the next combination
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if combo[pos] < ambient - k + pos {
                    combo[pos] += 1;
                    for j in pos + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl Ord for IndexSet {
    /// Cardinality first, then lexicographic on the sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct IndexSetRepr {
    ambient: usize,
    indices: Vec<usize>,
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IndexSetRepr {
            ambient: self.ambient,
            indices: self.one_based(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = IndexSetRepr::deserialize(d)?;
        if repr.indices.is_empty() {
            return Ok(IndexSet::trivial(repr.ambient));
        }
        IndexSet::from_one_based(repr.ambient, &repr.indices).map_err(serde::de::Error::custom)
    }
}

/// A choice of signs `θ ∈ {−1,+1}^I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignPattern {
    over: IndexSet,
    /// coordinates carrying `+1`; a subset of `over`
    plus: u64,
}

impl SignPattern {
    pub fn new(over: IndexSet, plus: u64) -> Result<Self> {
        if plus & !over.mask() != 0 {
            return Err(Error::Input("sign pattern outside its index set".into()));
        }
        Ok(Self { over, plus })
    }

    pub fn over(&self) -> IndexSet {
        self.over
    }

    pub fn sign(&self, i: usize) -> Option<i8> {
        if !self.over.contains(i) {
            None
        } else if self.plus >> i & 1 == 1 {
            Some(1)
        } else {
            Some(-1)
        }
    }

    pub fn plus_mask(&self) -> u64 {
        self.plus
    }

    /// All `2^|I|` sign patterns over `over`.
    pub fn all(over: IndexSet) -> impl Iterator<Item = SignPattern> {
        let mask = over.mask();
        let mut sub = Some(0u64);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(SignPattern { over, plus: cur })
        })
    }
}
