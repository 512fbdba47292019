//! Largest coordinate cubes in projections and the combinatorial dimension
//! `v(K, t)` of a polytope.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::lp::{Cmp, LinearProgram, LpOutcome};
use crate::polytope::{project_polytope, RationalPolytope};
use crate::rational::{serde_str, serde_str_vec, Rational};

/// A placement `h + t·{0,1}^I` inside `P_I K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubeFit {
    pub projection: IndexSet,
    #[serde(with = "serde_str")]
    pub side: Rational,
    #[serde(with = "serde_str_vec")]
    pub corner: Vec<Rational>,
}

/// The exact largest `t ≥ 0` such that some translate of `t·[0,1]^I` lies in
/// `P_I K`, from one linear program in `(h, t)`.
pub fn max_cube_side(k: &RationalPolytope, i: &IndexSet) -> Result<CubeFit> {
    if k.is_empty() {
        return Err(Error::Input("empty polytope has no cubes".into()));
    }
    let q = project_polytope(k, i)?;
    if !q.is_full_dimensional() {
        return Ok(CubeFit { projection: *i, side: Rational::zero(), corner: q.vertices()[0].clone() });
    }
    let m = i.len();
    let mut lp = LinearProgram::new(m + 1);
    lp.set_nonnegative(m);
    for f in q.facets() {
        // max over the cube corners of a·(h + t·s) is a·h + t·Σ max(a_j, 0)
        let mut row = f.normal.clone();
        let pos: Rational = f.normal.iter().filter(|a| a.is_positive()).sum();
        row.push(pos);
        lp.add_row(row, Cmp::Le, f.offset.clone());
    }
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = Rational::from_integer(1.into());
    match lp.maximize(&c) {
        LpOutcome::Optimal { value, mut x } => {
            x.truncate(m);
            Ok(CubeFit { projection: *i, side: value, corner: x })
        }
        other => Err(Error::Input(format!("cube program did not solve: {other:?}"))),
    }
}

/// `s_d = max_{|I|=d} max_cube_side(K, I)` for `d = 1..=n`, with witnesses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeProfile {
    pub best: Vec<CubeFit>,
}

impl CubeProfile {
    pub fn side(&self, d: usize) -> &Rational {
        &self.best[d - 1].side
    }

    /// `v(K, t) = max{d : s_d ≥ t}` (0 if none).
    pub fn dimension(&self, t: &Rational) -> usize {
        (1..=self.best.len()).rev().find(|&d| self.side(d) >= t).unwrap_or(0)
    }

    /// Witness projection for `v(K, t)`.
    pub fn witness(&self, t: &Rational) -> Option<&CubeFit> {
        let d = self.dimension(t);
        (d > 0).then(|| &self.best[d - 1])
    }
}

pub fn cube_profile(k: &RationalPolytope) -> Result<CubeProfile> {
    let n = k.dim();
    let best = (1..=n)
        .map(|d| {
            let fits: Vec<CubeFit> = IndexSet::of_size(n, d)
                .par_iter()
                .map(|i| max_cube_side(k, i))
                .collect::<Result<_>>()?;
            // first maximum in enumeration order
            Ok(fits.into_iter().fold(None::<CubeFit>, |acc, f| match acc {
                Some(a) if a.side >= f.side => Some(a),
                _ => Some(f),
            }).expect("at least one index set"))
        })
        .collect::<Result<_>>()?;
    Ok(CubeProfile { best })
}

/// `v(K, t)`: the largest `|I|` with a translate of `t·[0,1]^I` in `P_I K`.
pub fn comb_dimension_body(k: &RationalPolytope, t: &Rational) -> Result<usize> {
    if !t.is_positive() {
        return Err(Error::Input(format!("scale t must be positive, got {t}")));
    }
    let n = k.dim();
    // side lengths only shrink as I grows, so scan ranks downward
    for d in (1..=n).rev() {
        for i in IndexSet::of_size(n, d) {
            if &max_cube_side(k, &i)?.side >= t {
                return Ok(d);
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::lp_ball::{cross, cube};
    use crate::rational::{int, rat};

    #[test]
    fn cube_sides() {
        let k = cube(3, &rat(3, 2));
        for i in IndexSet::all_nonempty(3) {
            let fit = max_cube_side(&k, &i).unwrap();
            assert_eq!(fit.side, int(3));
        }
        assert_eq!(comb_dimension_body(&k, &int(3)).unwrap(), 3);
        assert_eq!(comb_dimension_body(&k, &rat(31, 10)).unwrap(), 0);
    }

    #[test]
    fn cross_polytope_square() {
        let k = cross(2, &int(2));
        let fit = max_cube_side(&k, &IndexSet::full(2)).unwrap();
        assert_eq!(fit.side, int(2));
        assert_eq!(fit.corner, vec![int(-1), int(-1)]);
        // one coordinate: the full segment [-2, 2]
        assert_eq!(max_cube_side(&k, &IndexSet::from_one_based(2, &[1]).unwrap()).unwrap().side, int(4));
    }

    #[test]
    fn profile_and_scaling_rule() {
        let k = RationalPolytope::from_integer_points(2, &[vec![0, 0], vec![6, 0], vec![0, 3]]).unwrap();
        let prof = cube_profile(&k).unwrap();
        assert_eq!(prof.side(1), &int(6));
        assert_eq!(prof.side(2), &int(2));
        let s = rat(5, 3);
        let prof_s = cube_profile(&k.scale(&s).unwrap()).unwrap();
        for t in [int(1), int(2), rat(5, 2), int(7)] {
            assert_eq!(prof.dimension(&t), prof_s.dimension(&(&t * &s)));
            assert_eq!(prof.dimension(&t), comb_dimension_body(&k, &t).unwrap());
        }
    }

    #[test]
    fn flat_projection_has_zero_side() {
        let seg = RationalPolytope::from_integer_points(2, &[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(max_cube_side(&seg, &IndexSet::full(2)).unwrap().side, int(0));
    }
}
