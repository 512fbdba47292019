//! The coordinate volume-ratio quantities
//! `a_k(K) = min (|cK| / |P_E K|)^{1/codim E}` and
//! `A_k(K) = max (|CK| / |K ∩ E|)^{1/codim E}`,
//! both over coordinate subspaces with `k ≤ codim E ≤ n − 1`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{project_polytope, section, CoordSubspace, RationalPolytope};
use crate::rational::{ln_abs, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioTerm {
    pub subspace: CoordSubspace,
    pub codim: usize,
    /// Exact volume ratio; `None` when the section/projection has volume 0.
    #[serde(with = "opt_str")]
    pub ratio: Option<Rational>,
}

mod opt_str {
    use crate::rational::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        use serde::de::Error as _;
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}

impl RatioTerm {
    /// `ratio^{1/codim}`; `+∞` for a degenerate term.
    pub fn root(&self) -> f64 {
        match &self.ratio {
            Some(r) if r.is_zero() => 0.0,
            Some(r) => (ln_abs(r) / self.codim as f64).exp(),
            None => f64::INFINITY,
        }
    }
}

/// `a_k` or `A_k` together with every term of the optimization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumeRatio {
    pub kind: Extremum,
    pub k: usize,
    pub value: f64,
    /// Index of the optimal term in `terms`.
    pub argopt: Option<usize>,
    pub terms: Vec<RatioTerm>,
    /// Subspaces with a zero-volume section/projection.
    pub degenerate: Vec<CoordSubspace>,
}

impl VolumeRatio {
    pub fn optimal(&self) -> Option<&RatioTerm> {
        self.argopt.map(|i| &self.terms[i])
    }

    /// Exact test `value ≥ x` for `x ≥ 0`.
    pub fn at_least(&self, x: &Rational) -> bool {
        let pass = |t: &RatioTerm| match &t.ratio {
            Some(r) => *r >= num_traits::pow(x.clone(), t.codim),
            None => true,
        };
        match self.kind {
            Extremum::Min => self.terms.iter().filter(|t| t.ratio.is_some()).all(pass),
            Extremum::Max => self.terms.iter().any(pass),
        }
    }

    /// Exact test `value ≤ x` for `x ≥ 0`.
    pub fn at_most(&self, x: &Rational) -> bool {
        let pass = |t: &RatioTerm| match &t.ratio {
            Some(r) => *r <= num_traits::pow(x.clone(), t.codim),
            None => false,
        };
        match self.kind {
            Extremum::Min => self.terms.iter().any(pass),
            Extremum::Max => self.terms.iter().all(pass),
        }
    }
}

fn check_k(k: &RationalPolytope, kk: usize) -> Result<()> {
    let n = k.dim();
    if kk == 0 || kk >= n {
        return Err(Error::Input(format!("k must satisfy 0 < k < n = {n}, got {kk}")));
    }
    Ok(())
}

fn assemble(kind: Extremum, kk: usize, terms: Vec<RatioTerm>) -> VolumeRatio {
    let degenerate = terms.iter().filter(|t| t.ratio.is_none()).map(|t| t.subspace).collect();
    let mut argopt: Option<usize> = None;
    for (i, t) in terms.iter().enumerate() {
        let better = match argopt {
            None => kind == Extremum::Max || t.ratio.is_some(),
            Some(j) => match kind {
                Extremum::Min => t.ratio.is_some() && t.root() < terms[j].root(),
                Extremum::Max => t.root() > terms[j].root(),
            },
        };
        if better {
            argopt = Some(i);
        }
    }
    let value = argopt.map_or(f64::INFINITY, |i| terms[i].root());
    VolumeRatio { kind, k: kk, value, argopt, terms, degenerate }
}

/// `a_k(K)` with constant `c`; degenerate projections are skipped.
pub fn a_k(k: &RationalPolytope, kk: usize, c: &Rational) -> Result<VolumeRatio> {
    check_k(k, kk)?;
    let n = k.dim();
    let scaled = num_traits::pow(c.clone(), n) * k.volume()?;
    let subspaces = CoordSubspace::with_codim_between(n, kk, n - 1);
    let terms = subspaces
        .par_iter()
        .map(|e| {
            let v = project_polytope(k, &e.kept)?.volume()?;
            let ratio = (!v.is_zero()).then(|| &scaled / &v);
            Ok(RatioTerm { subspace: *e, codim: e.codim(), ratio })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(Extremum::Min, kk, terms))
}

/// `A_k(K)` with constant `C`; a zero-volume section makes the value `+∞`.
pub fn big_a_k(k: &RationalPolytope, kk: usize, big_c: &Rational) -> Result<VolumeRatio> {
    check_k(k, kk)?;
    let n = k.dim();
    let scaled = num_traits::pow(big_c.clone(), n) * k.volume()?;
    let subspaces = CoordSubspace::with_codim_between(n, kk, n - 1);
    let terms = subspaces
        .par_iter()
        .map(|e| {
            let v = section(k, e)?.volume()?;
            let ratio = (!v.is_zero()).then(|| &scaled / &v);
            Ok(RatioTerm { subspace: *e, codim: e.codim(), ratio })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(Extremum::Max, kk, terms))
}

/// The ratio for a larger `kk`, from the terms of one computed at a smaller `k`.
pub fn restrict(r: &VolumeRatio, kk: usize) -> VolumeRatio {
    assert!(kk >= r.k, "cannot restrict from k = {} to {kk}", r.k);
    let terms = r.terms.iter().filter(|t| t.codim >= kk).cloned().collect();
    assemble(r.kind, kk, terms)
}

/// Rescales the terms of a ratio computed with constant `from` to constant
/// `to` (`|cK|` is `c^n |K|`), avoiding recomputation of volumes.
pub fn with_constant(r: &VolumeRatio, n: usize, from: &Rational, to: &Rational) -> VolumeRatio {
    let f = num_traits::pow(to / from, n);
    let terms = r
        .terms
        .iter()
        .map(|t| RatioTerm { subspace: t.subspace, codim: t.codim, ratio: t.ratio.as_ref().map(|q| q * &f) })
        .collect();
    assemble(r.kind, r.k, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::lp_ball::cube;
    use crate::rational::{int, rat};

    fn parallelepiped(a: &[Rational]) -> RationalPolytope {
        let n = a.len();
        let pts = (0..1u64 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { a[i].clone() } else { -&a[i] }).collect())
            .collect();
        RationalPolytope::from_points(n, pts).unwrap()
    }

    #[test]
    fn restriction_matches_direct_computation() {
        let k = parallelepiped(&[int(3), rat(1, 2), int(2), int(1)]);
        let c = rat(1, 4);
        let wide = a_k(&k, 1, &c).unwrap();
        let wide_big = big_a_k(&k, 1, &int(6)).unwrap();
        for kk in 1..4 {
            let direct = a_k(&k, kk, &c).unwrap();
            let r = restrict(&wide, kk);
            assert_eq!(r.terms.len(), direct.terms.len());
            assert_eq!(r.value, direct.value);
            assert_eq!(restrict(&wide_big, kk).value, big_a_k(&k, kk, &int(6)).unwrap().value);
        }
    }

    #[test]
    fn cube_big_a_k() {
        // A_k([-1,1]^n)^k = C^n 2^k
        let c = int(6);
        for n in 2..=4 {
            for kk in 1..n {
                let r = big_a_k(&cube(n, &int(1)), kk, &c).unwrap();
                let best = r.optimal().unwrap();
                assert_eq!(best.codim, kk);
                assert_eq!(best.ratio.clone().unwrap(), num_traits::pow(c.clone(), n) * num_traits::pow(int(2), kk));
            }
        }
    }

    #[test]
    fn parallelepiped_geometric_mean() {
        let a = [int(3), int(2), rat(1, 2)];
        let k = parallelepiped(&a);
        let c = rat(3, 2);
        let r = big_a_k(&k, 1, &c).unwrap();
        let best = r.optimal().unwrap();
        assert_eq!(best.ratio.clone().unwrap(), num_traits::pow(c.clone(), 3) * int(2) * int(3));
        assert!((r.value - 2.0 * 1.5f64.powi(3) * 3.0).abs() < 1e-9);
        assert!(r.at_least(&int(20)) && !r.at_least(&int(21)));
    }

    #[test]
    fn small_a_k_and_constant_rescaling() {
        let k = cube(3, &int(1));
        let r = a_k(&k, 1, &rat(1, 4)).unwrap();
        // (|K/4| / |P_E K|)^{1/l} = ((1/64)·8 / 2^{3-l})^{1/l} = (2^{l-3}/8)^{1/l}... minimum at l = 1
        assert_eq!(r.optimal().unwrap().codim, 1);
        assert_eq!(r.optimal().unwrap().ratio.clone().unwrap(), rat(1, 32));
        let r2 = with_constant(&r, 3, &rat(1, 4), &rat(1, 2));
        assert_eq!(r2.optimal().unwrap().ratio.clone().unwrap(), rat(1, 4));
        assert!(r.at_most(&rat(1, 32)) && !r.at_most(&rat(1, 33)));
        assert!(a_k(&k, 3, &int(1)).is_err());
    }

    #[test]
    fn degenerate_sections_dominate() {
        // a box not containing the origin: sections through 0 are empty
        let k = RationalPolytope::from_integer_points(2, &[vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2]]).unwrap();
        let r = big_a_k(&k, 1, &int(1)).unwrap();
        assert_eq!(r.value, f64::INFINITY);
        assert_eq!(r.degenerate.len(), 2);
    }
}
