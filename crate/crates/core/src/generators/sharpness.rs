use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex::{in_lp_ball, lp_ball_volume, mc_fraction_of_lp_ball, Measure};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::lattice::binomial;
use crate::rational::{serde_str, to_f64, Rational};

/// `K = {x ∈ B_p^n : |x(i)| ≤ ε for at least k coordinates}`, a coordinate
/// convex body given by its membership rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBody {
    pub dim: usize,
    #[serde(with = "crate::convex::serde_p")]
    pub p: f64,
    #[serde(with = "serde_str")]
    pub eps: Rational,
    pub k: usize,
}

/// The bracket `C(n,k) ε^k ρ ≤ μ_p(K) ≤ C(n,k) (2ε)^k ρ` with
/// `ρ = (n/(n−k))^{(n−k)/p} w_p(n−k) / w_p(n)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureBand {
    pub lower: f64,
    pub upper: f64,
    pub rho: f64,
}

/// Result of the randomized cube test on rank-`r` projections.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeTest {
    pub rank: usize,
    pub trials: usize,
    /// Large cubes (side > 2ε) found inside a projection; must be 0.
    pub large_cubes_inside: usize,
    /// Small centered cubes (side 1.8ε) found inside, out of `trials`.
    pub small_cubes_inside: usize,
}

impl OracleBody {
    /// Requires `n/2 ≤ k < n` and `0 < ε < 1`.
    pub fn sharpness(n: usize, k: usize, p: f64, eps: Rational) -> Result<Self> {
        crate::convex::LpBallSpec::new(p, n)?;
        if 2 * k < n || k >= n {
            return Err(Error::Input(format!("need n/2 ≤ k < n, got n = {n}, k = {k}")));
        }
        if eps <= Rational::from_integer(0.into()) || eps >= Rational::from_integer(1.into()) {
            return Err(Error::Input(format!("need 0 < eps < 1, got {eps}")));
        }
        Ok(OracleBody { dim: n, p, eps, k })
    }

    fn small(&self, v: f64) -> bool {
        v.abs() <= to_f64(&self.eps)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim && in_lp_ball(self.p, x) && x.iter().filter(|&&v| self.small(v)).count() >= self.k
    }

    /// Membership of `y ∈ R^I` in `P_I K`: the free coordinates can be set to
    /// 0, which is small and costs nothing in the `L_p` sum.
    pub fn projection_contains(&self, i: &IndexSet, y: &[f64]) -> bool {
        let idx = i.indices();
        if y.len() != idx.len() {
            return false;
        }
        let in_ball = if self.p.is_infinite() {
            y.iter().all(|v| v.abs() <= 1.0)
        } else {
            y.iter().map(|v| v.abs().powf(self.p)).sum::<f64>() <= self.dim as f64
        };
        let small = y.iter().filter(|&&v| self.small(v)).count();
        in_ball && small + (self.dim - idx.len()) >= self.k
    }

    /// Monte Carlo `μ_p(K)`.
    pub fn mu_p(&self, samples: u64, seed: u64) -> Measure {
        mc_fraction_of_lp_ball(self.dim, self.p, |x| self.contains(x), samples, seed)
    }

    pub fn measure_band(&self) -> Result<MeasureBand> {
        let (n, k) = (self.dim, self.k);
        let l = (n - k) as f64;
        let scale = if self.p.is_infinite() { 1.0 } else { (n as f64 / l).powf(l / self.p) };
        let rho = scale * lp_ball_volume(self.p, n - k)? / lp_ball_volume(self.p, n)?;
        let c = binomial(n as u64, k as u64) as f64;
        let e = to_f64(&self.eps);
        Ok(MeasureBand { lower: c * e.powi(k as i32) * rho, upper: c * (2.0 * e).powi(k as i32) * rho, rho })
    }

    /// Samples cubes `h + t[0,1]^I` with `t > 2ε` in projections of rank
    /// `rank > n − k` and exhibits, for each, the corner farthest from 0
    /// (every coordinate of it exceeds ε in absolute value, so it lies
    /// outside `P_I K`). Also places centered cubes of side `1.8ε`, whose
    /// points all have small coordinates.
    pub fn cube_test(&self, rank: usize, trials: usize, seed: u64) -> Result<CubeTest> {
        if rank + self.k <= self.dim || rank > self.dim {
            return Err(Error::Input(format!("rank must exceed n − k = {}", self.dim - self.k)));
        }
        let e = to_f64(&self.eps);
        let sets = IndexSet::of_size(self.dim, rank);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let reach = if self.p.is_infinite() { 1.0 } else { (self.dim as f64).powf(1.0 / self.p) };
        let (mut large, mut small) = (0, 0);
        for _ in 0..trials {
            let i = &sets[rng.random_range(0..sets.len())];
            let t = 2.0 * e * (1.0 + rng.random_range(1e-6..1.0));
            let h: Vec<f64> = (0..rank).map(|_| rng.random_range(-reach - t..reach)).collect();
            let far: Vec<f64> = h.iter().map(|&a| if (a + t).abs() >= a.abs() { a + t } else { a }).collect();
            if self.projection_contains(i, &far) {
                large += 1;
            }
            // a centered cube of side 1.8ε: all of its points have small coordinates
            let s = 0.9 * e;
            let inside = (0..8).all(|_| {
                let y: Vec<f64> = (0..rank).map(|_| rng.random_range(-s..=s)).collect();
                self.projection_contains(i, &y)
            });
            if inside {
                small += 1;
            }
        }
        Ok(CubeTest { rank, trials, large_cubes_inside: large, small_cubes_inside: small })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn body() -> OracleBody {
        OracleBody::sharpness(6, 3, 2.0, rat(1, 10)).unwrap()
    }

    #[test]
    fn membership() {
        let b = body();
        assert!(b.contains(&[0.0; 6]));
        assert!(!b.contains(&[1.0; 6]));
        assert!(b.contains(&[0.05, -0.1, 0.0, 1.0, -1.0, 1.0]));
        assert!(!b.contains(&[0.05, -0.11, 0.0, 1.0, -1.0, 1.0]));
        assert!(OracleBody::sharpness(6, 2, 2.0, rat(1, 10)).is_err());
        assert!(OracleBody::sharpness(6, 6, 2.0, rat(1, 10)).is_err());
    }

    #[test]
    fn projections_and_cubes() {
        let b = body();
        let i = IndexSet::from_one_based(6, &[1, 2, 3, 4]).unwrap();
        // one small coordinate plus two free ones reach k = 3
        assert!(b.projection_contains(&i, &[0.0, 1.0, 1.0, 1.0]));
        assert!(!b.projection_contains(&i, &[0.5, 1.0, 1.0, 1.0]));
        let t = b.cube_test(4, 200, 1).unwrap();
        assert_eq!(t.large_cubes_inside, 0);
        assert_eq!(t.small_cubes_inside, 200);
        assert!(b.cube_test(3, 10, 1).is_err());
    }
}
