//! Projections, sections, polarity, hulls and intersections.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Halfspace, RationalPolytope};
use crate::error::{check_dim, Error, Result};
use crate::index_set::IndexSet;
use crate::rational::to_string_vec;

/// The coordinate subspace `E = R^kept` (coordinates outside `kept` are 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordSubspace {
    pub kept: IndexSet,
}

impl CoordSubspace {
    pub fn new(kept: IndexSet) -> Result<Self> {
        if kept.is_empty() {
            return Err(Error::Input("a coordinate subspace needs at least one coordinate".into()));
        }
        Ok(CoordSubspace { kept })
    }

    pub fn ambient(&self) -> usize {
        self.kept.ambient()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.kept.len()
    }

    /// All coordinate subspaces with codimension in `lo..=hi` (nonzero dimension).
    pub fn with_codim_between(ambient: usize, lo: usize, hi: usize) -> Vec<CoordSubspace> {
        IndexSet::all_nonempty(ambient)
            .into_iter()
            .map(|kept| CoordSubspace { kept })
            .filter(|e| (lo..=hi).contains(&e.codim()))
            .collect()
    }
}

/// `P_I K` in the coordinates of `I`.
pub fn project_polytope(k: &RationalPolytope, i: &IndexSet) -> Result<RationalPolytope> {
    check_dim(k.dim(), i.ambient())?;
    if i.is_empty() {
        return Err(Error::Input("projection onto an empty index set".into()));
    }
    let points = k.vertices().iter().map(|v| i.restrict(v)).collect();
    RationalPolytope::from_points(i.len(), points)
}

/// `K ∩ E` in the coordinates of `E`; empty when `E` misses `K`.
pub fn section(k: &RationalPolytope, e: &CoordSubspace) -> Result<RationalPolytope> {
    check_dim(k.dim(), e.ambient())?;
    let m = e.kept.len();
    if k.is_empty() {
        return Ok(RationalPolytope::empty(m));
    }
    let restrict = |h: &Halfspace| Halfspace::new(e.kept.restrict(&h.normal), h.offset.clone());
    let ineq: Vec<Halfspace> = k.facets().iter().map(restrict).collect();
    let eq: Vec<Halfspace> = k.equalities().iter().map(restrict).collect();
    RationalPolytope::from_halfspaces(m, &ineq, &eq)
}

/// `K° = {y : ⟨x,y⟩ ≤ 1 ∀x ∈ K}`, for `K` with the origin in its interior.
pub fn polar(k: &RationalPolytope) -> Result<RationalPolytope> {
    if k.is_empty() {
        return Err(Error::Precondition("polar of the empty set is unbounded".into()));
    }
    if let Some(e) = k.equalities().first() {
        // K lies in a hyperplane; the polar contains the whole normal line
        return Err(Error::OriginNotInterior {
            normal: to_string_vec(&e.normal),
            offset: e.offset.to_string(),
        });
    }
    if let Some(f) = k.facets().iter().find(|f| !f.offset.is_positive()) {
        return Err(Error::OriginNotInterior {
            normal: to_string_vec(&f.normal),
            offset: f.offset.to_string(),
        });
    }
    let points = k
        .facets()
        .iter()
        .map(|f| f.normal.iter().map(|a| a / &f.offset).collect())
        .collect();
    RationalPolytope::from_points(k.dim(), points)
}

pub fn hull_of_union(k: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    check_dim(k.dim(), q.dim())?;
    let points = k.vertices().iter().chain(q.vertices()).cloned().collect();
    RationalPolytope::from_points(k.dim(), points)
}

pub fn intersection(k: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    check_dim(k.dim(), q.dim())?;
    if k.is_empty() || q.is_empty() {
        return Ok(RationalPolytope::empty(k.dim()));
    }
    let ineq: Vec<Halfspace> = k.facets().iter().chain(q.facets()).cloned().collect();
    let eq: Vec<Halfspace> = k.equalities().iter().chain(q.equalities()).cloned().collect();
    RationalPolytope::from_halfspaces(k.dim(), &ineq, &eq)
}

impl Halfspace {
    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    fn poly(n: usize, pts: &[&[i64]]) -> RationalPolytope {
        RationalPolytope::from_integer_points(n, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn cube(n: usize, lo: i64, hi: i64) -> RationalPolytope {
        let pts: Vec<Vec<i64>> = (0..1u32 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { hi } else { lo }).collect())
            .collect();
        RationalPolytope::from_integer_points(n, &pts).unwrap()
    }

    fn cross(n: usize, r: i64) -> RationalPolytope {
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [-r, r] {
                let mut p = vec![0; n];
                p[i] = s;
                pts.push(p);
            }
        }
        RationalPolytope::from_integer_points(n, &pts).unwrap()
    }

    #[test]
    fn projection_of_cube() {
        let i = IndexSet::from_one_based(3, &[1, 2]).unwrap();
        assert_eq!(project_polytope(&cube(3, 0, 1), &i).unwrap(), cube(2, 0, 1));
    }

    #[test]
    fn cross_polytope_axis_sections() {
        let k = cross(3, 3);
        for axis in 1..=3 {
            let e = CoordSubspace::new(IndexSet::from_one_based(3, &[axis]).unwrap()).unwrap();
            assert_eq!(e.codim(), 2);
            let s = section(&k, &e).unwrap();
            assert_eq!(s.vertices(), &[vec![int(-3)], vec![int(3)]]);
        }
    }

    #[test]
    fn section_missing_the_body_is_empty() {
        let k = cube(2, 1, 2);
        let e = CoordSubspace::new(IndexSet::from_one_based(2, &[1]).unwrap()).unwrap();
        assert!(section(&k, &e).unwrap().is_empty());
    }

    #[test]
    fn polarity() {
        let sq = poly(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(polar(&sq).unwrap(), cube(2, -1, 1));
        assert_eq!(polar(&cube(3, -1, 1)).unwrap(), cross(3, 1));
        let k = poly(2, &[&[2, 1], &[-1, 3], &[-2, -2], &[3, -1]]);
        assert_eq!(polar(&polar(&k).unwrap()).unwrap(), k);
        assert!(matches!(polar(&cube(2, 0, 1)), Err(Error::OriginNotInterior { .. })));
    }

    #[test]
    fn hull_and_intersection() {
        let c = cube(3, 0, 1);
        assert_eq!(hull_of_union(&c, &c).unwrap(), c);
        let big = cube(3, -1, 2);
        assert_eq!(intersection(&c, &big).unwrap(), c);
        assert_eq!(hull_of_union(&c, &big).unwrap(), big);
        let mixed = intersection(&cube(3, -1, 1), &cross(3, 2)).unwrap();
        assert!(mixed.is_symmetric());
        assert_eq!(mixed.facets().len(), 6 + 8);
        let vol: Rational = mixed.volume().unwrap();
        // cube minus 8 corner tetrahedra with legs 1
        assert_eq!(vol, int(8) - rat(8, 6));
    }
}
