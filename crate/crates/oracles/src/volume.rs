use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_SAMPLES: u64 = 100_000;
const SHARDS: u64 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub half_width_95: f64,
    pub samples: u64,
    pub seed: u64,
    /// No sample hit the body; the half-width is widened to `3·box/N`.
    pub zero_hits: bool,
}

impl McEstimate {
    pub fn brackets(&self, exact: f64) -> bool {
        (self.value - exact).abs() <= self.half_width_95
    }
}

/// Hit-or-miss volume inside the box `∏[lo_i, hi_i]`: independent seeded
/// shards, merged by summing hit counts.
pub fn mc_volume<F>(member: F, lo: &[f64], hi: &[f64], samples: u64, seed: u64) -> McEstimate
where
    F: Fn(&[f64]) -> bool,
{
    assert_eq!(lo.len(), hi.len());
    let box_volume: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    let per_shard = samples.div_ceil(SHARDS);
    let mut hits = 0u64;
    let mut x = vec![0.0; lo.len()];
    for shard in 0..SHARDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        for _ in 0..per_shard {
            for (i, v) in x.iter_mut().enumerate() {
                *v = if hi[i] > lo[i] { rng.random_range(lo[i]..hi[i]) } else { lo[i] };
            }
            if member(&x) {
                hits += 1;
            }
        }
    }
    let n = per_shard * SHARDS;
    let p = hits as f64 / n as f64;
    let value = p * box_volume;
    let (half_width_95, zero_hits) = if hits == 0 {
        (3.0 * box_volume / n as f64, true)
    } else {
        // unbiased sample variance of the Bernoulli indicator
        let var = p * (1.0 - p) * n as f64 / (n as f64 - 1.0);
        (1.96 * box_volume * (var / n as f64).sqrt(), false)
    };
    McEstimate { value, half_width_95, samples: n, seed, zero_hits }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cube_and_cross() {
        let est = mc_volume(|x| x.iter().all(|v| (0.0..=1.0).contains(v)), &[0.0; 3], &[1.0; 3], 10_000, DEFAULT_SEED);
        assert_eq!(est.value, 1.0);
        let cross = mc_volume(|x| x[0].abs() + x[1].abs() <= 2.0, &[-2.0, -2.0], &[2.0, 2.0], DEFAULT_SAMPLES, DEFAULT_SEED);
        assert!(cross.brackets(8.0), "{cross:?}");
        let again = mc_volume(|x| x[0].abs() + x[1].abs() <= 2.0, &[-2.0, -2.0], &[2.0, 2.0], DEFAULT_SAMPLES, DEFAULT_SEED);
        assert_eq!(cross, again);
        let miss = mc_volume(|_| false, &[0.0], &[1.0], 1000, 1);
        assert!(miss.zero_hits && miss.value == 0.0 && miss.half_width_95 > 0.0);
    }
}
