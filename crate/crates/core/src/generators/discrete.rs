use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::IntegerPointSet;

pub const MAX_BOOLEAN_DIM: usize = 12;
pub const MAX_GENERAL_DIM: usize = 5;

fn check_density(density: f64) -> Result<()> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Input(format!("density must lie in (0, 1], got {density}")));
    }
    Ok(())
}

/// Each point of `{0,1}^n` kept independently with probability `density`.
pub fn boolean_random(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<IntegerPointSet> {
    if n == 0 || n > MAX_BOOLEAN_DIM {
        return Err(Error::Input(format!("boolean sets need 1 ≤ n ≤ {MAX_BOOLEAN_DIM}, got {n}")));
    }
    box_random(&vec![1; n], density, rng)
}

/// Each point of `∏{0..N_i}` kept independently with probability `density`.
pub fn box_random(bounds: &[i64], density: f64, rng: &mut ChaCha8Rng) -> Result<IntegerPointSet> {
    check_density(density)?;
    let n = bounds.len();
    let boolean = bounds.iter().all(|&b| b == 1);
    let max = if boolean { MAX_BOOLEAN_DIM } else { MAX_GENERAL_DIM };
    if n == 0 || n > max {
        return Err(Error::Input(format!("need 1 ≤ n ≤ {max}, got {n}")));
    }
    if let Some(b) = bounds.iter().find(|&&b| b < 0) {
        return Err(Error::Input(format!("box bounds must be nonnegative, got {b}")));
    }
    let points = grid_points(bounds).into_iter().filter(|_| rng.random_bool(density)).collect();
    IntegerPointSet::new(n, points)
}

/// `{(j, ..., j) : 0 ≤ j ≤ m}`.
pub fn diagonal(n: usize, m: i64) -> Result<IntegerPointSet> {
    if n == 0 || m < 0 {
        return Err(Error::Input("diagonal needs n ≥ 1 and m ≥ 0".into()));
    }
    IntegerPointSet::new(n, (0..=m).map(|j| vec![j; n]).collect())
}

/// `{0..m}^n`.
pub fn full_grid(n: usize, m: i64) -> Result<IntegerPointSet> {
    if n == 0 || n > MAX_GENERAL_DIM || m < 0 {
        return Err(Error::Input(format!("full grid needs 1 ≤ n ≤ {MAX_GENERAL_DIM} and m ≥ 0")));
    }
    IntegerPointSet::new(n, grid_points(&vec![m; n]))
}

fn grid_points(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn structured_families() {
        assert_eq!(full_grid(2, 3).unwrap().len(), 16);
        assert_eq!(diagonal(3, 4).unwrap().len(), 5);
        assert!(full_grid(6, 1).is_err());
    }

    #[test]
    fn random_families_are_seeded() {
        let a = boolean_random(8, 0.5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = boolean_random(8, 0.5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_boolean());
        let full = box_random(&[2, 1, 3], 1.0, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(full.len(), 3 * 2 * 4);
        assert!(boolean_random(4, 0.0, &mut ChaCha8Rng::seed_from_u64(1)).is_err());
        assert!(boolean_random(13, 0.5, &mut ChaCha8Rng::seed_from_u64(1)).is_err());
    }
}
