//! Exact rational polytopes with both vertex and halfspace descriptions.

mod dd;
mod hull;
pub(crate) mod linalg;
mod ops;
mod volume;

use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::rational::{dot, primitive_integer_vector, serde_str, serde_str_vec, Rational};

pub use ops::{hull_of_union, intersection, polar, project_polytope, section, CoordSubspace};

/// Largest ambient dimension for which exact volumes are computed.
pub const MAX_EXACT_DIM: usize = 7;

/// The halfspace `normal · x ≤ offset` (or the hyperplane `=` when used as
/// an equality).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "serde_str_vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// Rescales by a positive factor so that the normal is a primitive
    /// integer vector.
    pub fn normalized(normal: Vec<Rational>, offset: Rational) -> Self {
        if normal.iter().all(Zero::is_zero) {
            return Halfspace { normal, offset };
        }
        let prim = primitive_integer_vector(&normal);
        let (i, p) = prim.iter().enumerate().find(|(_, x)| !x.is_zero()).unwrap();
        let factor = Rational::from_integer(p.clone()) / &normal[i];
        Halfspace {
            normal: prim.into_iter().map(Rational::from_integer).collect(),
            offset: offset * factor,
        }
    }

    /// Like [`Halfspace::normalized`], also fixing the sign so that the first
    /// nonzero normal entry is positive.
    pub fn normalized_equality(normal: Vec<Rational>, offset: Rational) -> Self {
        let h = Self::normalized(normal, offset);
        match h.normal.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => Halfspace {
                normal: h.normal.iter().map(|x| -x).collect(),
                offset: -h.offset,
            },
            _ => h,
        }
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.offset
    }
}

/// A bounded convex polytope in `R^dim` with exact rational data.
///
/// Vertices are exactly the extreme points, sorted lexicographically. Facets
/// (primitive integer normals) and the equalities of the affine hull are
/// derived on construction and kept with the value.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Halfspace>,
    equalities: Vec<Halfspace>,
    incidence: Vec<Vec<usize>>,
    affine_dim: Option<usize>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for RationalPolytope {}

impl RationalPolytope {
    /// Convex hull of a finite point list (non-extreme points are dropped).
    pub fn from_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("polytopes need a positive dimension".into()));
        }
        for p in &points {
            check_dim(dim, p.len())?;
        }
        let h = hull::hull_of_points(dim, points);
        Ok(RationalPolytope {
            dim,
            vertices: h.vertices,
            facets: h.facets,
            equalities: h.equalities,
            incidence: h.incidence,
            affine_dim: h.affine_dim,
        })
    }

    pub fn from_integer_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::from_points(
            dim,
            points.iter().map(|p| p.iter().map(|&x| crate::rational::int(x)).collect()).collect(),
        )
    }

    /// The bounded set `{a·x ≤ b} ∩ {e·x = f}`; errors if it is unbounded.
    pub fn from_halfspaces(
        dim: usize,
        inequalities: &[Halfspace],
        equalities: &[Halfspace],
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("polytopes need a positive dimension".into()));
        }
        let mut ineq = Vec::with_capacity(inequalities.len());
        for h in inequalities {
            check_dim(dim, h.normal.len())?;
            if h.normal.iter().all(Zero::is_zero) {
                if h.offset.is_negative() {
                    return Ok(Self::empty(dim));
                }
                continue;
            }
            ineq.push(Halfspace::normalized(h.normal.clone(), h.offset.clone()));
        }
        let mut eq = Vec::with_capacity(equalities.len());
        for h in equalities {
            check_dim(dim, h.normal.len())?;
            if h.normal.iter().all(Zero::is_zero) {
                if !h.offset.is_zero() {
                    return Ok(Self::empty(dim));
                }
                continue;
            }
            eq.push(Halfspace::normalized_equality(h.normal.clone(), h.offset.clone()));
        }
        let points = hull::vertices_of_halfspaces(dim, &ineq, &eq)?;
        Self::from_points(dim, points)
    }

    pub fn empty(dim: usize) -> Self {
        RationalPolytope {
            dim,
            vertices: Vec::new(),
            facets: Vec::new(),
            equalities: Vec::new(),
            incidence: Vec::new(),
            affine_dim: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Equalities cutting out the affine hull (empty when full-dimensional).
    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    /// For each facet, the sorted indices of the vertices lying on it.
    pub fn facet_incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    /// Exact Lebesgue volume in `R^dim`; zero for lower-dimensional bodies.
    pub fn volume(&self) -> Result<Rational> {
        if self.dim > MAX_EXACT_DIM {
            return Err(Error::DimensionTooLarge { dim: self.dim, max: MAX_EXACT_DIM });
        }
        if !self.is_full_dimensional() {
            return Ok(Rational::zero());
        }
        Ok(volume::volume_full_dim(self.dim, &self.vertices, &self.incidence))
    }

    /// Triangulation into full-dimensional simplices (vertex index lists).
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        volume::triangulation(self.dim, self.vertices.len(), &self.incidence)
    }

    /// Exact membership; the boundary counts as inside.
    pub fn contains_point(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.equalities.iter().all(|e| e.is_tight(x)) && self.facets.iter().all(|f| f.contains(x)))
    }

    pub fn vertex_centroid(&self) -> Option<Vec<Rational>> {
        if self.is_empty() {
            return None;
        }
        let n = Rational::from_integer(self.vertices.len().into());
        Some(
            (0..self.dim)
                .map(|j| self.vertices.iter().map(|v| &v[j]).sum::<Rational>() / &n)
                .collect(),
        )
    }

    pub fn bounding_box(&self) -> Option<Vec<(Rational, Rational)>> {
        if self.is_empty() {
            return None;
        }
        Some(
            (0..self.dim)
                .map(|j| {
                    let lo = self.vertices.iter().map(|v| &v[j]).min().unwrap().clone();
                    let hi = self.vertices.iter().map(|v| &v[j]).max().unwrap().clone();
                    (lo, hi)
                })
                .collect(),
        )
    }

    /// `s·K` for `s > 0`.
    pub fn scale(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::Input(format!("scale factor must be positive, got {s}")));
        }
        let mut out = self.clone();
        for v in &mut out.vertices {
            for x in v.iter_mut() {
                *x *= s;
            }
        }
        for h in out.facets.iter_mut().chain(out.equalities.iter_mut()) {
            h.offset *= s;
        }
        Ok(out)
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Self> {
        check_dim(self.dim, t.len())?;
        let mut out = self.clone();
        for v in &mut out.vertices {
            for (x, d) in v.iter_mut().zip(t) {
                *x += d;
            }
        }
        for h in out.facets.iter_mut().chain(out.equalities.iter_mut()) {
            h.offset += dot(&h.normal, t);
        }
        Ok(out)
    }

    /// `−K`.
    pub fn negate(&self) -> Self {
        let points = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        Self::from_points(self.dim, points).expect("same dimension")
    }

    /// Whether the vertex set is closed under `x ↦ −x`.
    pub fn is_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            self.vertices.binary_search(&neg).is_ok()
        })
    }

    /// Whether the origin is an interior point.
    pub fn has_origin_in_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_positive())
    }

    pub fn is_subset_of(&self, other: &RationalPolytope) -> Result<bool> {
        check_dim(other.dim, self.dim)?;
        for v in &self.vertices {
            if !other.contains_point(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polytopes serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Row(#[serde(with = "serde_str_vec")] Vec<Rational>);

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    dim: usize,
    #[serde(default)]
    vertices: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Halfspace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    equalities: Option<Vec<Halfspace>>,
}

impl Serialize for RationalPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeFile {
            dim: self.dim,
            vertices: self.vertices.iter().cloned().map(Row).collect(),
            facets: Some(self.facets.clone()),
            equalities: if self.equalities.is_empty() { None } else { Some(self.equalities.clone()) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = PolytopeFile::deserialize(d)?;
        from_file_repr(file).map_err(D::Error::custom)
    }
}

fn from_file_repr(file: PolytopeFile) -> Result<RationalPolytope> {
    let equalities = file.equalities.unwrap_or_default();
    if file.vertices.is_empty() {
        return match file.facets {
            Some(f) if !f.is_empty() => RationalPolytope::from_halfspaces(file.dim, &f, &equalities),
            _ => Ok(RationalPolytope::empty(file.dim)),
        };
    }
    let k = RationalPolytope::from_points(file.dim, file.vertices.into_iter().map(|r| r.0).collect())?;
    // a supplied H-rep must describe the same set
    let supplied: Vec<Halfspace> = file.facets.unwrap_or_default();
    for h in &supplied {
        check_dim(file.dim, h.normal.len())?;
        if !k.vertices.iter().all(|v| h.contains(v)) {
            return Err(Error::Input(format!("facet {h:?} cuts off a vertex")));
        }
        if !k.vertices.iter().any(|v| h.is_tight(v)) {
            return Err(Error::Input(format!("facet {h:?} does not support the polytope")));
        }
    }
    for h in &equalities {
        check_dim(file.dim, h.normal.len())?;
        if !k.vertices.iter().all(|v| h.is_tight(v)) {
            return Err(Error::Input(format!("equality {h:?} fails at a vertex")));
        }
    }
    if !supplied.is_empty() {
        let rebuilt = RationalPolytope::from_halfspaces(file.dim, &supplied, &equalities)?;
        if rebuilt != k {
            return Err(Error::Input("vertices and facets describe different sets".into()));
        }
    }
    Ok(k)
}
