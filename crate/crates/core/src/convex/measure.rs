//! The normalized measure `μ_p(K) = |K ∩ B_p^n| / |B_p^n|`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ConstantsConfig;
use super::lp_ball::{in_lp_ball, lp_ball, lp_ball_volume, lp_ball_volume_exact, LpBallSpec};
use crate::error::Result;
use crate::polytope::{intersection, RationalPolytope};
use crate::rational::{to_f64, Rational};
use crate::report::Provenance;

const SHARDS: u64 = 16;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMethod {
    /// exact volume of `K ∩ B_p^n`
    Intersection,
    /// `K ⊆ B_p^n` by vertex check, so `μ = |K| / w_p(n)`
    Containment,
    MonteCarlo,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Measure {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_exact", default)]
    pub exact: Option<Rational>,
    /// 95% confidence half-width for Monte Carlo estimates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub half_width: Option<f64>,
    pub provenance: Provenance,
    pub method: MeasureMethod,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Set when no sample hit the body (the interval is widened).
    #[serde(default)]
    pub flagged: bool,
}

mod opt_exact {
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

/// Monte Carlo estimate of the fraction of `B_p^n` (uniform measure) where
/// `member` holds. Samples are drawn uniformly from the bounding cube
/// `[−n^{1/p}, n^{1/p}]^n` and rejected outside the ball until `samples`
/// points of the ball have been collected.
pub fn mc_fraction_of_lp_ball<F>(n: usize, p: f64, member: F, samples: u64, seed: u64) -> Measure
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let half = if p.is_infinite() { 1.0 } else { (n as f64).powf(1.0 / p) };
    let per_shard = samples.div_ceil(SHARDS);
    let hits: u64 = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut x = vec![0.0; n];
            let (mut accepted, mut hits) = (0u64, 0u64);
            while accepted < per_shard {
                for v in x.iter_mut() {
                    *v = rng.random_range(-half..=half);
                }
                if !in_lp_ball(p, &x) {
                    continue;
                }
                accepted += 1;
                if member(&x) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let total = per_shard * SHARDS;
    let value = hits as f64 / total as f64;
    let (half_width, flagged) = if hits == 0 {
        (3.0 / total as f64, true)
    } else {
        (1.96 * (value * (1.0 - value) / total as f64).sqrt(), false)
    };
    Measure {
        value,
        exact: None,
        half_width: Some(half_width),
        provenance: Provenance::Mc,
        method: MeasureMethod::MonteCarlo,
        samples: Some(total),
        seed: Some(seed),
        flagged,
    }
}

/// Float membership test for a polytope (boundary tolerance 1e-12).
pub fn float_membership(k: &RationalPolytope) -> impl Fn(&[f64]) -> bool + Sync {
    let rows: Vec<(Vec<f64>, f64)> = k
        .facets()
        .iter()
        .map(|f| (f.normal.iter().map(to_f64).collect(), to_f64(&f.offset)))
        .collect();
    let eqs: Vec<(Vec<f64>, f64)> = k
        .equalities()
        .iter()
        .map(|f| (f.normal.iter().map(to_f64).collect(), to_f64(&f.offset)))
        .collect();
    let empty = k.is_empty();
    move |x: &[f64]| {
        let dot = |a: &[f64]| a.iter().zip(x).map(|(u, v)| u * v).sum::<f64>();
        !empty
            && eqs.iter().all(|(a, b)| (dot(a) - b).abs() <= 1e-12 * (1.0 + b.abs()))
            && rows.iter().all(|(a, b)| dot(a) <= b + 1e-12 * (1.0 + b.abs()))
    }
}

/// Whether every vertex of `K` lies in `B_p^n`; exact for `p ∈ {1, 2, ∞}`.
pub fn contained_in_lp_ball(k: &RationalPolytope, p: f64) -> bool {
    use num_traits::Signed;
    let n = Rational::from_integer(k.dim().into());
    k.vertices().iter().all(|v| {
        if p.is_infinite() {
            v.iter().all(|x| x.abs() <= Rational::from_integer(1.into()))
        } else if p == 1.0 {
            v.iter().map(|x| x.abs()).sum::<Rational>() <= n
        } else if p == 2.0 {
            v.iter().map(|x| x * x).sum::<Rational>() <= n
        } else {
            let s: f64 = v.iter().map(|x| to_f64(x).abs().powf(p)).sum();
            s <= k.dim() as f64
        }
    })
}

pub fn mu_p(k: &RationalPolytope, p: f64, cfg: &ConstantsConfig) -> Result<Measure> {
    let spec = LpBallSpec::new(p, k.dim())?;
    let n = k.dim();
    if p.is_infinite() || p == 1.0 {
        let ball = lp_ball(&spec)?;
        let inter = intersection(k, &ball)?;
        let exact = inter.volume()? / lp_ball_volume_exact(p, n)?;
        return Ok(Measure {
            value: to_f64(&exact),
            exact: Some(exact),
            half_width: None,
            provenance: Provenance::Exact,
            method: MeasureMethod::Intersection,
            samples: None,
            seed: None,
            flagged: false,
        });
    }
    if contained_in_lp_ball(k, p) {
        let value = to_f64(&k.volume()?) / lp_ball_volume(p, n)?;
        return Ok(Measure {
            value,
            exact: None,
            half_width: None,
            provenance: Provenance::Float,
            method: MeasureMethod::Containment,
            samples: None,
            seed: None,
            flagged: false,
        });
    }
    Ok(mc_fraction_of_lp_ball(n, p, float_membership(k), cfg.mc_samples, cfg.mc_seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::lp_ball::cube;
    use crate::rational::{int, rat};

    #[test]
    fn cube_in_cube() {
        let cfg = ConstantsConfig::default();
        let m = mu_p(&cube(3, &int(1)), f64::INFINITY, &cfg).unwrap();
        assert_eq!(m.exact, Some(int(1)));
        let big = mu_p(&cube(2, &int(5)), 1.0, &cfg).unwrap();
        assert_eq!(big.exact, Some(int(1)));
    }

    #[test]
    fn half_cube_exact_and_mc() {
        let cfg = ConstantsConfig { mc_samples: 40_000, ..Default::default() };
        let k = RationalPolytope::from_integer_points(2, &[vec![0, -1], vec![1, -1], vec![0, 1], vec![1, 1]]).unwrap();
        let m = mu_p(&k, f64::INFINITY, &cfg).unwrap();
        assert_eq!(m.exact, Some(rat(1, 2)));
        let mc = mc_fraction_of_lp_ball(2, f64::INFINITY, float_membership(&k), 40_000, 0x5EED);
        assert!((mc.value - 0.5).abs() <= mc.half_width.unwrap() * 1.5);
        // reproducible
        let again = mc_fraction_of_lp_ball(2, f64::INFINITY, float_membership(&k), 40_000, 0x5EED);
        assert_eq!(mc.value, again.value);
    }

    #[test]
    fn containment_shortcut_for_p2() {
        let cfg = ConstantsConfig::default();
        let k = cube(2, &rat(1, 2));
        let m = mu_p(&k, 2.0, &cfg).unwrap();
        assert!(matches!(m.method, MeasureMethod::Containment));
        assert!((m.value - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
        let outside = mu_p(&cube(2, &int(2)), 2.0, &ConstantsConfig { mc_samples: 20_000, ..cfg }).unwrap();
        assert!(matches!(outside.method, MeasureMethod::MonteCarlo));
        // the disc of radius √2 lies inside [-2,2]^2
        assert!(outside.value > 0.999);
    }
}
