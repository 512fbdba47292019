//! Conversions between vertex and halfspace descriptions.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd::extreme_rays;
use super::linalg::{rank, rref};
use super::Halfspace;
use crate::error::{Error, Result};
use crate::lp::{Cmp, LinearProgram};
use crate::rational::{dot, primitive_integer_vector, Rational};

pub(crate) struct HullData {
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
    pub incidence: Vec<Vec<usize>>,
    pub affine_dim: Option<usize>,
}

pub(crate) fn hull_of_points(dim: usize, points: Vec<Vec<Rational>>) -> HullData {
    // dedupe but keep the caller's order: it is the insertion order of the
    // double description
    let mut seen = std::collections::BTreeSet::new();
    let points: Vec<Vec<Rational>> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
    if points.is_empty() {
        return HullData {
            vertices: Vec::new(),
            facets: Vec::new(),
            equalities: Vec::new(),
            incidence: Vec::new(),
            affine_dim: None,
        };
    }
    let p0 = points[0].clone();
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect())
        .collect();
    let (basis, pivots) = if diffs.is_empty() { (Vec::new(), Vec::new()) } else { rref(diffs) };
    let k = pivots.len();

    let mut equalities = Vec::new();
    for j in (0..dim).filter(|j| !pivots.contains(j)) {
        let mut e = vec![Rational::zero(); dim];
        e[j] = Rational::from_integer(1.into());
        for (t, &pj) in pivots.iter().enumerate() {
            e[pj] = -&basis[t][j];
        }
        let offset = dot(&e, &p0);
        equalities.push(Halfspace::normalized_equality(e, offset));
    }
    equalities.sort();

    if k == 0 {
        return HullData {
            vertices: vec![p0],
            facets: Vec::new(),
            equalities,
            incidence: Vec::new(),
            affine_dim: Some(0),
        };
    }

    let projected: Vec<Vec<Rational>> =
        points.iter().map(|p| pivots.iter().map(|&j| p[j].clone()).collect()).collect();
    let rows: Vec<Vec<BigInt>> = projected
        .iter()
        .map(|q| {
            let mut row = vec![Rational::from_integer(1.into())];
            row.extend(q.iter().map(|x| -x));
            primitive_integer_vector(&row)
        })
        .collect();
    let rays = extreme_rays(k + 1, &rows).expect("affinely spanning point set yields a pointed cone");

    let mut facets: Vec<Halfspace> = rays
        .into_iter()
        .filter(|r| r[1..].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut normal = vec![Rational::zero(); dim];
            for (t, &pj) in pivots.iter().enumerate() {
                normal[pj] = Rational::from_integer(r[t + 1].clone());
            }
            Halfspace::normalized(normal, Rational::from_integer(r[0].clone()))
        })
        .collect();
    facets.sort();
    facets.dedup();

    let int_normals: Vec<Vec<BigInt>> = facets
        .iter()
        .map(|f| pivots.iter().map(|&j| f.normal[j].to_integer()).collect())
        .collect();
    let mut vertices: Vec<Vec<Rational>> = points
        .into_iter()
        .filter(|p| {
            let tight = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.is_tight(p))
                .map(|(i, _)| &int_normals[i]);
            rank(tight) == k
        })
        .collect();
    vertices.sort();
    let incidence = facets
        .iter()
        .map(|f| (0..vertices.len()).filter(|&v| f.is_tight(&vertices[v])).collect())
        .collect();
    HullData { vertices, facets, equalities, incidence, affine_dim: Some(k) }
}

/// Vertices of the bounded polyhedron `{a·x ≤ b} ∩ {e·x = f}`.
pub(crate) fn vertices_of_halfspaces(
    dim: usize,
    inequalities: &[Halfspace],
    equalities: &[Halfspace],
) -> Result<Vec<Vec<Rational>>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut x0 = vec![BigInt::zero(); dim + 1];
    x0[0] = BigInt::from(1);
    rows.push(x0);
    let lift = |h: &Halfspace, sign: i64| -> Vec<BigInt> {
        let s = Rational::from_integer(sign.into());
        let mut row = vec![&h.offset * &s];
        row.extend(h.normal.iter().map(|a| -(a * &s)));
        primitive_integer_vector(&row)
    };
    for h in inequalities {
        rows.push(lift(h, 1));
    }
    for h in equalities {
        rows.push(lift(h, 1));
        rows.push(lift(h, -1));
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows.sort();
    rows.dedup();
    // keep x0 ≥ 0 in front so it joins the initial basis
    let x0_pos = rows
        .iter()
        .position(|r| r[0] == BigInt::from(1) && r[1..].iter().all(Zero::is_zero))
        .unwrap();
    let first = rows.remove(x0_pos);
    rows.insert(0, first);
    if rows.iter().any(|r| r[1..].iter().all(Zero::is_zero) && r[0].is_negative()) {
        return Ok(Vec::new());
    }

    let Some(rays) = extreme_rays(dim + 1, &rows) else {
        return if feasible(dim, inequalities, equalities) {
            Err(Error::Unbounded)
        } else {
            Ok(Vec::new())
        };
    };
    let mut points = Vec::new();
    let mut recession = false;
    for r in rays {
        if r[0].is_zero() {
            recession = true;
        } else {
            let w = Rational::from_integer(r[0].clone());
            points.push(r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &w).collect());
        }
    }
    if recession && !points.is_empty() {
        return Err(Error::Unbounded);
    }
    points.sort();
    points.dedup();
    Ok(points)
}

fn feasible(dim: usize, inequalities: &[Halfspace], equalities: &[Halfspace]) -> bool {
    let mut lp = LinearProgram::new(dim);
    for h in inequalities {
        lp.add_row(h.normal.clone(), Cmp::Le, h.offset.clone());
    }
    for h in equalities {
        lp.add_row(h.normal.clone(), Cmp::Eq, h.offset.clone());
    }
    lp.is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_with_interior_point() {
        let h = hull_of_points(
            2,
            vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2]), pt(&[1, 1]), pt(&[1, 0])],
        );
        assert_eq!(h.vertices, vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0]), pt(&[2, 2])]);
        assert_eq!(h.facets.len(), 4);
        assert!(h.equalities.is_empty());
        assert_eq!(h.affine_dim, Some(2));
        assert!(h.incidence.iter().all(|i| i.len() == 2));
    }

    #[test]
    fn segment_in_the_plane() {
        let h = hull_of_points(2, vec![pt(&[0, 0]), pt(&[2, 2]), pt(&[1, 1])]);
        assert_eq!(h.vertices, vec![pt(&[0, 0]), pt(&[2, 2])]);
        assert_eq!(h.affine_dim, Some(1));
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.facets.len(), 2);
    }

    #[test]
    fn halfspaces_to_triangle() {
        let ineq = vec![
            Halfspace::normalized(pt(&[-1, 0]), int(0)),
            Halfspace::normalized(pt(&[0, -1]), int(0)),
            Halfspace::normalized(pt(&[1, 1]), rat(3, 2)),
        ];
        let v = vertices_of_halfspaces(2, &ineq, &[]).unwrap();
        assert_eq!(v, vec![vec![int(0), int(0)], vec![int(0), rat(3, 2)], vec![rat(3, 2), int(0)]]);
    }

    #[test]
    fn unbounded_and_empty() {
        let ineq = vec![Halfspace::normalized(pt(&[-1, 0]), int(0))];
        assert!(matches!(vertices_of_halfspaces(2, &ineq, &[]), Err(Error::Unbounded)));
        let ineq = vec![
            Halfspace::normalized(pt(&[1, 0]), int(-1)),
            Halfspace::normalized(pt(&[-1, 0]), int(0)),
            Halfspace::normalized(pt(&[0, 1]), int(1)),
            Halfspace::normalized(pt(&[0, -1]), int(1)),
        ];
        assert!(vertices_of_halfspaces(2, &ineq, &[]).unwrap().is_empty());
    }
}
