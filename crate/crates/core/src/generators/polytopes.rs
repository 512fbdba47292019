use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::convex::{cross, lp_ball as ball, LpBallSpec};
use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;
use crate::rational::{int, rat, Rational};

/// Random vertices are lattice points of `(1/DENOMINATOR) Z^n`.
pub const DENOMINATOR: i64 = 4;

const MAX_ATTEMPTS: usize = 64;

fn positive(name: &str, q: &Rational) -> Result<()> {
    if !q.is_positive() {
        return Err(Error::Input(format!("{name} must be positive, got {q}")));
    }
    Ok(())
}

/// `[−s, s]^n`.
pub fn cube(n: usize, s: &Rational) -> Result<RationalPolytope> {
    positive("half-side", s)?;
    parallelepiped(&vec![s.clone(); n])
}

/// `∏[−a_i, a_i]`.
pub fn parallelepiped(a: &[Rational]) -> Result<RationalPolytope> {
    let n = a.len();
    if n == 0 || n > crate::polytope::MAX_EXACT_DIM {
        return Err(Error::Input(format!("parallelepiped dimension {n} out of range")));
    }
    for x in a {
        positive("semiaxis", x)?;
    }
    let pts = (0..1u64 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { a[i].clone() } else { -&a[i] }).collect())
        .collect();
    RationalPolytope::from_points(n, pts)
}

/// `conv{±r e_i}`.
pub fn cross_polytope(n: usize, r: &Rational) -> Result<RationalPolytope> {
    positive("radius", r)?;
    if n == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    Ok(cross(n, r))
}

/// `∏[0, ℓ_i]`, a thin box when some lengths are below 1.
pub fn pancake(lengths: &[Rational]) -> Result<RationalPolytope> {
    let n = lengths.len();
    if n == 0 {
        return Err(Error::Input("pancake needs at least one length".into()));
    }
    for l in lengths {
        positive("length", l)?;
    }
    let pts = (0..1u64 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { lengths[i].clone() } else { int(0) }).collect())
        .collect();
    RationalPolytope::from_points(n, pts)
}

pub fn lp_ball(p: f64, n: usize) -> Result<RationalPolytope> {
    ball(&LpBallSpec::new(p, n)?)
}

fn random_point(n: usize, scale: i64, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let r = scale * DENOMINATOR;
    (0..n).map(|_| rat(rng.random_range(-r..=r), DENOMINATOR)).collect()
}

fn check_random(n: usize, m: usize, scale: i64, min_points: usize) -> Result<()> {
    if n == 0 || n > crate::polytope::MAX_EXACT_DIM {
        return Err(Error::Input(format!("random polytopes need 1 ≤ n ≤ {}", crate::polytope::MAX_EXACT_DIM)));
    }
    if m < min_points {
        return Err(Error::Input(format!("need at least {min_points} points for a full-dimensional hull, got {m}")));
    }
    if scale <= 0 {
        return Err(Error::Input(format!("scale must be positive, got {scale}")));
    }
    Ok(())
}

/// Hull of `m` random points of `[−scale, scale]^n ∩ (1/4)Z^n`; draws are
/// repeated (deterministically) until the hull is full-dimensional.
pub fn random_hull(n: usize, m: usize, scale: i64, rng: &mut ChaCha8Rng) -> Result<RationalPolytope> {
    check_random(n, m, scale, n + 1)?;
    for _ in 0..MAX_ATTEMPTS {
        let pts = (0..m).map(|_| random_point(n, scale, rng)).collect();
        let k = RationalPolytope::from_points(n, pts)?;
        if k.is_full_dimensional() {
            return Ok(k);
        }
    }
    Err(Error::Input("could not draw a full-dimensional hull; increase m or scale".into()))
}

/// Hull of `m` random points and their negatives.
pub fn random_symmetric(n: usize, m: usize, scale: i64, rng: &mut ChaCha8Rng) -> Result<RationalPolytope> {
    check_random(n, m, scale, n)?;
    for _ in 0..MAX_ATTEMPTS {
        let half: Vec<Vec<Rational>> = (0..m).map(|_| random_point(n, scale, rng)).collect();
        let pts = half.iter().cloned().chain(half.iter().map(|p| p.iter().map(|x| -x).collect())).collect();
        let k = RationalPolytope::from_points(n, pts)?;
        if k.is_full_dimensional() {
            return Ok(k);
        }
    }
    Err(Error::Input("could not draw a full-dimensional symmetric body; increase m or scale".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn box_families() {
        let p = parallelepiped(&[int(2), int(1)]).unwrap();
        assert_eq!(p.volume().unwrap(), int(8));
        assert!(p.is_symmetric());
        let pan = pancake(&[int(72), rat(9, 10)]).unwrap();
        assert_eq!(pan.volume().unwrap(), rat(324, 5));
        assert!(cube(2, &int(0)).is_err());
        assert_eq!(lp_ball(1.0, 2).unwrap().volume().unwrap(), int(8));
    }

    #[test]
    fn random_families() {
        let a = random_hull(3, 20, 5, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_hull(3, 20, 5, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.is_full_dimensional());
        let s = random_symmetric(4, 5, 3, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(s.is_symmetric() && s.has_origin_in_interior());
        assert!(random_hull(3, 3, 5, &mut ChaCha8Rng::seed_from_u64(7)).is_err());
    }
}
