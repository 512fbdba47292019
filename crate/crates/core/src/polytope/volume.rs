//! Exact volume by pulling triangulation over the face lattice.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::det;
use crate::rational::{common_denominator, Rational};

type Simplices = Rc<Vec<Vec<usize>>>;

struct Triangulator<'a> {
    facet_sets: &'a [Vec<usize>],
    memo: HashMap<Vec<usize>, Simplices>,
}

impl Triangulator<'_> {
    /// Facets of the face with vertex set `face`: the inclusion-maximal proper
    /// intersections with facets of the whole polytope.
    fn subfaces(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let mut cands: Vec<Vec<usize>> = self
            .facet_sets
            .iter()
            .map(|g| face.iter().copied().filter(|v| g.binary_search(v).is_ok()).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| !s.is_empty() && s.len() < face.len())
            .collect();
        cands.sort();
        cands.dedup();
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        cands
            .iter()
            .filter(|s| !cands.iter().any(|t| t.len() > s.len() && subset(s, t)))
            .cloned()
            .collect()
    }

    fn triangulate(&mut self, face: &[usize], k: usize) -> Simplices {
        if let Some(s) = self.memo.get(face) {
            return s.clone();
        }
        let apex = face[0];
        let result: Vec<Vec<usize>> = if k == 0 {
            vec![vec![apex]]
        } else if face.len() == k + 1 {
            vec![face.to_vec()]
        } else {
            let mut out = Vec::new();
            for sub in self.subfaces(face) {
                if sub.binary_search(&apex).is_ok() {
                    continue;
                }
                for s in self.triangulate(&sub, k - 1).iter() {
                    let mut simplex = Vec::with_capacity(k + 1);
                    simplex.push(apex);
                    simplex.extend_from_slice(s);
                    out.push(simplex);
                }
            }
            out
        };
        let rc = Rc::new(result);
        self.memo.insert(face.to_vec(), rc.clone());
        rc
    }
}

/// Triangulation of a full-dimensional polytope into `dim`-simplices given
/// by vertex indices. `incidence[f]` lists the (sorted) vertices of facet `f`.
pub(crate) fn triangulation(
    dim: usize,
    n_vertices: usize,
    incidence: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    let mut t = Triangulator { facet_sets: incidence, memo: HashMap::new() };
    let all: Vec<usize> = (0..n_vertices).collect();
    t.triangulate(&all, dim).as_ref().clone()
}

/// Volume of a full-dimensional polytope in `R^dim`.
pub(crate) fn volume_full_dim(
    dim: usize,
    vertices: &[Vec<Rational>],
    incidence: &[Vec<usize>],
) -> Rational {
    let den = common_denominator(vertices.iter().flatten());
    let ints: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| v.iter().map(|x| (x * &den).to_integer()).collect())
        .collect();
    let mut total = BigInt::zero();
    for s in triangulation(dim, vertices.len(), incidence) {
        let base = &ints[s[0]];
        let m: Vec<Vec<BigInt>> = s[1..]
            .iter()
            .map(|&i| ints[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += det(m).abs();
    }
    let factorial: BigInt = (1..=dim).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    Rational::new(total, factorial * num_traits::pow(den, dim))
}
