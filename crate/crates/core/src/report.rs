//! Structured outcomes of claim checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::rational::{to_f64, Rational};

/// A reported number: exact rational or floating point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Exact(#[serde(with = "crate::rational::serde_str")] Rational),
    Float(f64),
}

impl Quantity {
    pub fn as_f64(&self) -> f64 {
        match self {
            Quantity::Exact(q) => to_f64(q),
            Quantity::Float(x) => *x,
        }
    }

    pub fn exact(q: Rational) -> Self {
        Quantity::Exact(q)
    }

    pub fn count(n: u64) -> Self {
        Quantity::Exact(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(q) => write!(f, "{q}"),
            Quantity::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Float,
    Mc,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Float => "float",
            Provenance::Mc => "mc",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn holds(&self, lhs: &Quantity, rhs: &Quantity) -> bool {
        match (lhs, rhs) {
            (Quantity::Exact(a), Quantity::Exact(b)) => match self {
                Relation::Le => a <= b,
                Relation::Ge => a >= b,
                Relation::Eq => a == b,
            },
            _ => {
                let (a, b) = (lhs.as_f64(), rhs.as_f64());
                match self {
                    Relation::Le => a <= b,
                    Relation::Ge => a >= b,
                    Relation::Eq => a == b,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub input_digest: String,
    pub lhs: Quantity,
    pub relation: Relation,
    pub rhs: Quantity,
    pub provenance: Provenance,
    /// 95% confidence half-width for Monte Carlo quantities.
    pub ci: Option<f64>,
    pub witness: serde_json::Value,
    pub pass: bool,
    pub measured_constant: Option<f64>,
    /// Claim-specific extra numbers.
    #[serde(default)]
    pub details: serde_json::Value,
}

impl VerificationReport {
    /// `pass` is derived from the recorded sides, never passed in.
    pub fn new(
        claim: impl Into<String>,
        input_digest: impl Into<String>,
        lhs: Quantity,
        relation: Relation,
        rhs: Quantity,
        provenance: Provenance,
    ) -> Self {
        let pass = relation.holds(&lhs, &rhs);
        Self {
            claim: claim.into(),
            input_digest: input_digest.into(),
            lhs,
            relation,
            rhs,
            provenance,
            ci: None,
            witness: serde_json::Value::Null,
            pass,
            measured_constant: None,
            details: serde_json::Value::Null,
        }
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = serde_json::to_value(witness).unwrap_or(serde_json::Value::Null);
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.measured_constant = Some(c);
        self
    }

    pub fn with_ci(mut self, half_width: f64) -> Self {
        self.ci = Some(half_width);
        self
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }

    /// Marks a composite check (several sub-inequalities) as failed even if
    /// the recorded pair holds. The recorded pair must then be the violated one.
    pub fn and_also(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            claim: self.claim.clone(),
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            pass: self.pass,
            witness: self.witness.to_string(),
            constant: self.measured_constant.map(|c| c.to_string()).unwrap_or_default(),
            provenance: self.provenance.to_string(),
            ci: self.ci.map(|c| c.to_string()).unwrap_or_default(),
            relation: match self.relation {
                Relation::Le => "<=".into(),
                Relation::Ge => ">=".into(),
                Relation::Eq => "==".into(),
            },
            input_digest: self.input_digest.clone(),
            details: self.details.to_string(),
        }
    }
}

/// Flat CSV view of a report; field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub witness: String,
    pub constant: String,
    #[serde(rename = "exact|mc")]
    pub provenance: String,
    pub ci: String,
    pub relation: String,
    pub input_digest: String,
    pub details: String,
}

/// SHA-256 of the compact JSON serialization.
pub fn digest_of(value: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable input");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn pass_follows_the_relation() {
        let r = VerificationReport::new(
            "X",
            "d",
            Quantity::count(4),
            Relation::Le,
            Quantity::count(4),
            Provenance::Exact,
        );
        assert!(r.pass);
        let r = VerificationReport::new(
            "X",
            "d",
            Quantity::Exact(rat(9, 2)),
            Relation::Ge,
            Quantity::Float(4.6),
            Provenance::Float,
        );
        assert!(!r.pass);
    }

    #[test]
    fn json_keeps_exact_values_as_strings() {
        let r = VerificationReport::new(
            "X",
            "d",
            Quantity::Exact(rat(-3, 4)),
            Relation::Le,
            Quantity::Float(0.5),
            Provenance::Exact,
        );
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""lhs":"-3/4""#));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
