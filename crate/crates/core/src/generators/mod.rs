//! Seeded instance families: discrete sets, polytopes and the coordinate
//! convex body with small measure and no large projected cubes.

mod discrete;
mod polytopes;
mod sharpness;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use discrete::{boolean_random, box_random, diagonal, full_grid, MAX_BOOLEAN_DIM, MAX_GENERAL_DIM};
pub use polytopes::{cross_polytope, cube, lp_ball, pancake, parallelepiped, random_hull, random_symmetric, DENOMINATOR};
pub use sharpness::{CubeTest, MeasureBand, OracleBody};

use crate::error::{Error, Result};
use crate::lattice::IntegerPointSet;
use crate::polytope::RationalPolytope;
use crate::rational::{serde_str, serde_str_vec, Rational};

/// A family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    BooleanRandom { n: usize, density: f64 },
    BoxRandom { bounds: Vec<i64>, density: f64 },
    Diagonal { n: usize, m: i64 },
    FullGrid { n: usize, m: i64 },
    Cube { n: usize, #[serde(with = "serde_str")] s: Rational },
    Parallelepiped { #[serde(with = "serde_str_vec")] a: Vec<Rational> },
    Cross { n: usize, #[serde(with = "serde_str")] r: Rational },
    RandomHull { n: usize, m: usize, scale: i64 },
    RandomSymmetric { n: usize, m: usize, scale: i64 },
    Pancake { #[serde(with = "serde_str_vec")] lengths: Vec<Rational> },
    LpBall { #[serde(with = "crate::convex::serde_p")] p: f64, n: usize },
    Sharpness { n: usize, k: usize, #[serde(with = "crate::convex::serde_p")] p: f64, #[serde(with = "serde_str")] eps: Rational },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    PointSet(IntegerPointSet),
    Polytope(RationalPolytope),
    Oracle(OracleBody),
}

impl Instance {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn generate(&self) -> Result<Instance> {
        match &self.family {
            Family::Sharpness { n, k, p, eps } => Ok(Instance::Oracle(OracleBody::sharpness(*n, *k, *p, eps.clone())?)),
            Family::BooleanRandom { .. } | Family::BoxRandom { .. } | Family::Diagonal { .. } | Family::FullGrid { .. } => {
                gen_discrete(self).map(Instance::PointSet)
            }
            _ => gen_polytope(self).map(Instance::Polytope),
        }
    }
}

pub fn gen_discrete(spec: &GenSpec) -> Result<IntegerPointSet> {
    let mut rng = spec.rng();
    match &spec.family {
        Family::BooleanRandom { n, density } => boolean_random(*n, *density, &mut rng),
        Family::BoxRandom { bounds, density } => box_random(bounds, *density, &mut rng),
        Family::Diagonal { n, m } => diagonal(*n, *m),
        Family::FullGrid { n, m } => full_grid(*n, *m),
        other => Err(Error::Input(format!("{other:?} is not a discrete family"))),
    }
}

pub fn gen_polytope(spec: &GenSpec) -> Result<RationalPolytope> {
    let mut rng = spec.rng();
    match &spec.family {
        Family::Cube { n, s } => cube(*n, s),
        Family::Parallelepiped { a } => parallelepiped(a),
        Family::Cross { n, r } => cross_polytope(*n, r),
        Family::RandomHull { n, m, scale } => random_hull(*n, *m, *scale, &mut rng),
        Family::RandomSymmetric { n, m, scale } => random_symmetric(*n, *m, *scale, &mut rng),
        Family::Pancake { lengths } => pancake(lengths),
        Family::LpBall { p, n } => lp_ball(*p, *n),
        other => Err(Error::Input(format!("{other:?} is not a polytope family"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::report::digest_of;

    #[test]
    fn infinite_p_round_trips() {
        let spec: GenSpec = serde_json::from_str(r#"{"family":"sharpness","n":4,"k":2,"p":"inf","eps":"1/10"}"#).unwrap();
        let Instance::Oracle(body) = spec.generate().unwrap() else { panic!("oracle body expected") };
        assert!(body.p.is_infinite());
        let json = serde_json::to_string(&body).unwrap();
        assert!(json.contains(r#""p":"inf""#));
        assert_eq!(serde_json::from_str::<OracleBody>(&json).unwrap(), body);
        let spec: GenSpec = serde_json::from_str(r#"{"family":"lp_ball","n":2,"p":1}"#).unwrap();
        assert_eq!(serde_json::from_str::<GenSpec>(&serde_json::to_string(&spec).unwrap()).unwrap(), spec);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = GenSpec::new(Family::Pancake { lengths: vec![int(72), rat(9, 10)] }, 0);
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains(r#""family":"pancake""#));
        assert_eq!(serde_json::from_str::<GenSpec>(&s).unwrap(), spec);
        let parsed: GenSpec = serde_json::from_str(r#"{"family":"full_grid","n":2,"m":3}"#).unwrap();
        assert!(matches!(parsed.generate().unwrap(), Instance::PointSet(a) if a.len() == 16));
    }

    #[test]
    fn identical_specs_give_identical_bytes() {
        let spec = GenSpec::new(Family::RandomHull { n: 3, m: 20, scale: 5 }, 7);
        assert_eq!(spec.generate().unwrap().to_json(), spec.generate().unwrap().to_json());
        let a = gen_discrete(&GenSpec::new(Family::BooleanRandom { n: 8, density: 0.5 }, 1)).unwrap();
        assert_eq!(digest_of(&a), digest_of(&gen_discrete(&GenSpec::new(Family::BooleanRandom { n: 8, density: 0.5 }, 1)).unwrap()));
        assert!(gen_polytope(&GenSpec::new(Family::FullGrid { n: 2, m: 1 }, 0)).is_err());
    }
}
