//! The normalized `L_p^n` balls `{x : Σ|x(i)|^p ≤ n}` and their volumes.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpBallSpec {
    /// `p ∈ [1, ∞]`; `f64::INFINITY` for the cube.
    #[serde(with = "serde_p")]
    pub p: f64,
    pub n: usize,
}

impl LpBallSpec {
    pub fn new(p: f64, n: usize) -> Result<Self> {
        check_p(p)?;
        if n == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        Ok(LpBallSpec { p, n })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        in_lp_ball(self.p, x)
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Input(format!("p must lie in [1, inf], got {p}")));
    }
    Ok(())
}

/// Parses `"inf"`/`"infinity"`, integers, decimals and `"p/q"`.
pub fn parse_p(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    let p = if t == "inf" || t == "infinity" || t == "∞" {
        f64::INFINITY
    } else {
        crate::rational::to_f64(&crate::rational::parse_rational(&t)?)
    };
    check_p(p)?;
    Ok(p)
}

/// serde adapter for `p`: `∞` travels as `"inf"`; numbers and strings such
/// as `"3/2"` are accepted on input.
pub mod serde_p {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(p) => super::check_p(p).map(|_| p).map_err(D::Error::custom),
            Raw::Str(s) => super::parse_p(&s).map_err(D::Error::custom),
        }
    }
}

/// Membership in the normalized ball, `x` of any length `n`.
pub fn in_lp_ball(p: f64, x: &[f64]) -> bool {
    if p.is_infinite() {
        x.iter().all(|v| v.abs() <= 1.0)
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>() <= x.len() as f64
    }
}

/// `B_∞^n = [−1,1]^n` or `B_1^n = conv{±n e_i}`.
pub fn lp_ball(spec: &LpBallSpec) -> Result<RationalPolytope> {
    let n = spec.n;
    if spec.p.is_infinite() {
        Ok(cube(n, &int(1)))
    } else if spec.p == 1.0 {
        Ok(cross(n, &int(n as i64)))
    } else {
        Err(Error::Input(format!("B_p is a polytope only for p in {{1, inf}}, got p = {}", spec.p)))
    }
}

/// `[−s, s]^n`.
pub fn cube(n: usize, s: &Rational) -> RationalPolytope {
    let pts = (0..1u64 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { s.clone() } else { -s }).collect())
        .collect();
    RationalPolytope::from_points(n, pts).expect("cube")
}

/// `conv{±r e_i}`.
pub fn cross(n: usize, r: &Rational) -> RationalPolytope {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [r.clone(), -r] {
            let mut p = vec![int(0); n];
            p[i] = s;
            pts.push(p);
        }
    }
    RationalPolytope::from_points(n, pts).expect("cross-polytope")
}

/// `ln w_p(k)` with `w_p(k) = k^{k/p} (2Γ(1+1/p))^k / Γ(1+k/p)`.
pub fn ln_lp_ball_volume(p: f64, k: usize) -> Result<f64> {
    check_p(p)?;
    let kf = k as f64;
    if k == 0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(kf * std::f64::consts::LN_2);
    }
    Ok(kf / p * kf.ln() + kf * (2f64.ln() + ln_gamma(1.0 + 1.0 / p)) - ln_gamma(1.0 + kf / p))
}

pub fn lp_ball_volume(p: f64, k: usize) -> Result<f64> {
    Ok(ln_lp_ball_volume(p, k)?.exp())
}

/// Exact `w_p(k)` for `p ∈ {1, ∞}`: `k^k 2^k / k!` and `2^k`.
pub fn lp_ball_volume_exact(p: f64, k: usize) -> Result<Rational> {
    check_p(p)?;
    let two_k = num_traits::pow(BigInt::from(2), k);
    if p.is_infinite() {
        Ok(Rational::from_integer(two_k))
    } else if p == 1.0 {
        let fact = (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        Ok(Rational::new(num_traits::pow(BigInt::from(k), k) * two_k, fact))
    } else {
        Err(Error::Input(format!("no exact volume for p = {p}")))
    }
}

/// Volume of the standard Euclidean unit ball in `R^n`.
pub fn euclidean_unit_ball_volume(n: usize) -> f64 {
    let nf = n as f64;
    (nf / 2.0 * std::f64::consts::PI.ln() - ln_gamma(nf / 2.0 + 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_anchors() {
        assert!((lp_ball_volume(1.0, 2).unwrap() - 8.0).abs() < 1e-12);
        for k in 1..=6 {
            assert!((lp_ball_volume(f64::INFINITY, k).unwrap() - 2f64.powi(k as i32)).abs() < 1e-9);
        }
        // p = 2, k = 2: disc of radius √2
        assert!((lp_ball_volume(2.0, 2).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(lp_ball_volume(0.5, 2).is_err());
    }

    #[test]
    fn exact_polytope_volumes_match() {
        for k in 1..=5 {
            let b1 = lp_ball(&LpBallSpec::new(1.0, k).unwrap()).unwrap();
            assert_eq!(b1.volume().unwrap(), lp_ball_volume_exact(1.0, k).unwrap());
            let binf = lp_ball(&LpBallSpec::new(f64::INFINITY, k).unwrap()).unwrap();
            assert_eq!(binf.volume().unwrap(), lp_ball_volume_exact(f64::INFINITY, k).unwrap());
        }
        assert!(lp_ball(&LpBallSpec::new(2.0, 2).unwrap()).is_err());
    }

    #[test]
    fn parse_and_membership() {
        assert_eq!(parse_p("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_p("3/2").unwrap(), 1.5);
        assert!(parse_p("0.9").is_err());
        assert!(in_lp_ball(2.0, &[1.0, 1.0]));
        assert!(!in_lp_ball(2.0, &[1.2, 1.0]));
        assert!(in_lp_ball(f64::INFINITY, &[1.0, -1.0]));
        assert!((euclidean_unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-12);
    }
}
