//! Checks of the Sauer–Shelah type inequalities on concrete point sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cells::{box_content, cell_content, cell_content_terms};
use super::dimension::{
    natarajan_dimension, natarajan_witness, shattered_projections, shattering_dimension_discrete,
    vc_dimension,
};
use super::point_set::{attained_values, slice, IntegerPointSet};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::rational::{int, Rational};
use crate::report::{digest_of, Provenance, Quantity, Relation, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiscreteClaim {
    /// `#A ≤ 1 + Σ_P #(integer boxes in PA)`
    #[serde(rename = "THM_2_2")]
    BoxBound,
    /// `#A ≤ Σ(A)` (cell content)
    #[serde(rename = "THM_2_4")]
    CellBound,
    /// `Σ(A) ≥ Σ_k Σ(A_k)` for slices along one coordinate
    #[serde(rename = "LEM_2_7")]
    SliceSuperadditivity,
    #[serde(rename = "SAUER_SHELAH")]
    SauerShelah,
    /// `#A ≤ 1 + #{P : PA = P{0,1}^n}`
    #[serde(rename = "PAJOR_1")]
    Pajor,
    #[serde(rename = "HL_I")]
    HausslerLongI,
    #[serde(rename = "HL_II")]
    HausslerLongII,
    #[serde(rename = "HL_III")]
    HausslerLongIII,
}

impl DiscreteClaim {
    pub const ALL: [DiscreteClaim; 8] = [
        DiscreteClaim::BoxBound,
        DiscreteClaim::CellBound,
        DiscreteClaim::SliceSuperadditivity,
        DiscreteClaim::SauerShelah,
        DiscreteClaim::Pajor,
        DiscreteClaim::HausslerLongI,
        DiscreteClaim::HausslerLongII,
        DiscreteClaim::HausslerLongIII,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            DiscreteClaim::BoxBound => "THM_2_2",
            DiscreteClaim::CellBound => "THM_2_4",
            DiscreteClaim::SliceSuperadditivity => "LEM_2_7",
            DiscreteClaim::SauerShelah => "SAUER_SHELAH",
            DiscreteClaim::Pajor => "PAJOR_1",
            DiscreteClaim::HausslerLongI => "HL_I",
            DiscreteClaim::HausslerLongII => "HL_II",
            DiscreteClaim::HausslerLongIII => "HL_III",
        }
    }

    pub fn needs_boolean(&self) -> bool {
        matches!(self, DiscreteClaim::SauerShelah | DiscreteClaim::Pajor)
    }
}

impl fmt::Display for DiscreteClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DiscreteClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DiscreteClaim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DiscreteParams {
    /// Slicing coordinate for LEM_2_7 (zero-based, default 0).
    pub coord: Option<usize>,
    /// Box bounds `N_i` for the HL claims; default: per-coordinate maxima.
    pub bounds: Option<Vec<i64>>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn verify_discrete(
    claim: DiscreteClaim,
    a: &IntegerPointSet,
    params: &DiscreteParams,
) -> Result<VerificationReport> {
    let digest = digest_of(a);
    let size = Quantity::count(a.len() as u64);
    let report = match claim {
        DiscreteClaim::BoxBound => {
            let boxes = box_content(a);
            VerificationReport::new(
                claim.id(),
                digest,
                size,
                Relation::Le,
                Quantity::count(1 + boxes),
                Provenance::Exact,
            )
            .with_details(json!({ "box_content": boxes }))
        }
        DiscreteClaim::CellBound => {
            let terms = cell_content_terms(a);
            let nontrivial: u64 = terms.iter().map(|t| t.count).sum();
            let content = cell_content(a);
            VerificationReport::new(
                claim.id(),
                digest,
                size,
                Relation::Le,
                Quantity::count(content),
                Provenance::Exact,
            )
            .with_details(json!({
                "cell_content": content,
                "statement_rhs": 1 + nontrivial,
                "terms": terms,
            }))
        }
        DiscreteClaim::SliceSuperadditivity => {
            let coord = params.coord.unwrap_or(0);
            if coord >= a.dim() {
                return Err(Error::Input(format!(
                    "slicing coordinate {} outside 1..={}",
                    coord + 1,
                    a.dim()
                )));
            }
            let whole = cell_content(a);
            let mut parts = Vec::new();
            for k in attained_values(a, coord) {
                parts.push((k, cell_content(&slice(a, coord, k)?)));
            }
            let sum: u64 = parts.iter().map(|p| p.1).sum();
            VerificationReport::new(
                claim.id(),
                digest,
                Quantity::count(whole),
                Relation::Ge,
                Quantity::count(sum),
                Provenance::Exact,
            )
            .with_details(json!({ "coord": coord + 1, "slices": parts }))
        }
        DiscreteClaim::SauerShelah => {
            let vc = vc_dimension(a)? as u64;
            let n = a.dim() as u64;
            let threshold: u128 = (0..=vc).map(|i| binomial(n, i)).sum();
            // contrapositive for every d: #A > Σ_{i≤d} C(n,i) ⇒ vc > d
            let per_d: Vec<bool> = (0..=n)
                .map(|d| {
                    let s: u128 = (0..=d).map(|i| binomial(n, i)).sum();
                    !(a.len() as u128 > s) || vc > d
                })
                .collect();
            VerificationReport::new(
                claim.id(),
                digest,
                size,
                Relation::Le,
                Quantity::exact(Rational::from_integer(threshold.into())),
                Provenance::Exact,
            )
            .and_also(per_d.iter().all(|&b| b))
            .with_witness(json!({ "vc_dimension": vc }))
            .with_details(json!({ "contrapositive_by_d": per_d }))
        }
        DiscreteClaim::Pajor => {
            let shattered = shattered_projections(a)?;
            VerificationReport::new(
                claim.id(),
                digest,
                size,
                Relation::Le,
                Quantity::count(1 + shattered.len() as u64),
                Provenance::Exact,
            )
            .with_witness(&shattered)
        }
        DiscreteClaim::HausslerLongI | DiscreteClaim::HausslerLongII | DiscreteClaim::HausslerLongIII => {
            let bounds = box_bounds(a, params)?;
            let n = a.dim();
            let (rhs, witness) = match claim {
                DiscreteClaim::HausslerLongI => {
                    let (v, w) = shattering_dimension_discrete(a, &int(1))?;
                    (sum_over_small_sets(n, v, |i| bounds[i] as u128), json!({ "v": v, "witness": w }))
                }
                DiscreteClaim::HausslerLongII => {
                    let (v, w) = shattering_dimension_discrete(a, &int(1))?;
                    let big_n = bounds.iter().copied().max().unwrap_or(0) as u128;
                    let s: u128 = (0..=v as u64)
                        .map(|i| binomial(n as u64, i) * big_n.pow(i as u32))
                        .sum();
                    (s, json!({ "v": v, "N": big_n as u64, "witness": w }))
                }
                _ => {
                    let nat = natarajan_dimension(a);
                    (
                        sum_over_small_sets(n, nat, |i| binomial(bounds[i] as u64 + 1, 2)),
                        json!({ "natarajan": nat, "witness": natarajan_witness(a) }),
                    )
                }
            };
            VerificationReport::new(
                claim.id(),
                digest,
                size,
                Relation::Le,
                Quantity::exact(Rational::from_integer(rhs.into())),
                Provenance::Exact,
            )
            .with_witness(witness)
            .with_details(json!({ "bounds": bounds }))
        }
    };
    Ok(report)
}

/// `Σ_{#I ≤ max} ∏_{i∈I} weight(i)`, the empty set contributing 1.
fn sum_over_small_sets(n: usize, max: usize, weight: impl Fn(usize) -> u128) -> u128 {
    let mut total = 1u128;
    for k in 1..=max.min(n) {
        for i in IndexSet::of_size(n, k) {
            total += i.indices().into_iter().map(&weight).product::<u128>();
        }
    }
    total
}

fn box_bounds(a: &IntegerPointSet, params: &DiscreteParams) -> Result<Vec<i64>> {
    let bounds = match &params.bounds {
        Some(b) => {
            if b.len() != a.dim() {
                return Err(Error::Input(format!(
                    "expected {} box bounds, got {}",
                    a.dim(),
                    b.len()
                )));
            }
            b.clone()
        }
        None => match a.bounding_box() {
            Some(bb) => bb.iter().map(|b| b.1.max(0)).collect(),
            None => vec![0; a.dim()],
        },
    };
    for p in a.points() {
        for (v, n) in p.iter().zip(&bounds) {
            if *v < 0 || v > n {
                return Err(Error::Input(format!(
                    "point {p:?} is outside the box prod {{0..N_i}} with N = {bounds:?}"
                )));
            }
        }
    }
    Ok(bounds)
}
