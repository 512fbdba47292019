//! `r_k(K) = (2/√n) min_{|I|=k} max_{x∈K} Σ_{i∈I} |x(i)|` and the
//! coordinate duality experiment for `r_k(K) r_m(K°)`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp_ball::{cross, cube};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::polytope::{hull_of_union, intersection, polar, RationalPolytope};
use crate::rational::{approximate, int, serde_str, to_f64, Rational};
use crate::report::{digest_of, Provenance, Quantity, Relation, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    /// Grows `I` one coordinate at a time; not guaranteed optimal.
    Greedy,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoordDiameter {
    pub k: usize,
    pub witness: IndexSet,
    /// `max_{x∈K} Σ_{i∈I} |x(i)|` for the witness `I`.
    #[serde(with = "serde_str")]
    pub mass: Rational,
    pub value: f64,
    pub heuristic: bool,
}

/// `max_{x∈K} Σ_{i∈I}|x(i)|`, attained at a vertex.
pub fn l1_mass(k: &RationalPolytope, i: &IndexSet) -> Rational {
    let idx = i.indices();
    k.vertices()
        .iter()
        .map(|v| idx.iter().map(|&j| v[j].abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
}

pub fn r_k(k: &RationalPolytope, kk: usize) -> Result<CoordDiameter> {
    r_k_with(k, kk, SearchMode::Exhaustive)
}

pub fn r_k_with(k: &RationalPolytope, kk: usize, mode: SearchMode) -> Result<CoordDiameter> {
    let n = k.dim();
    if kk == 0 || kk > n {
        return Err(Error::Input(format!("k must satisfy 1 ≤ k ≤ n = {n}, got {kk}")));
    }
    if !k.is_symmetric() {
        return Err(Error::Precondition("r_k needs a symmetric body".into()));
    }
    let (witness, mass) = match mode {
        SearchMode::Exhaustive => {
            let mut best: Option<(IndexSet, Rational)> = None;
            for i in IndexSet::of_size(n, kk) {
                let m = l1_mass(k, &i);
                if best.as_ref().is_none_or(|b| m < b.1) {
                    best = Some((i, m));
                }
            }
            best.expect("k ≤ n")
        }
        SearchMode::Greedy => {
            let mut chosen: Vec<usize> = Vec::with_capacity(kk);
            for _ in 0..kk {
                let next = (0..n)
                    .filter(|j| !chosen.contains(j))
                    .min_by_key(|&j| {
                        let mut c = chosen.clone();
                        c.push(j);
                        l1_mass(k, &IndexSet::from_zero_based(n, &c).unwrap())
                    })
                    .unwrap();
                chosen.push(next);
            }
            let i = IndexSet::from_zero_based(n, &chosen)?;
            (i, l1_mass(k, &i))
        }
    };
    let value = 2.0 / (n as f64).sqrt() * to_f64(&mass);
    Ok(CoordDiameter { k: kk, witness, mass, value, heuristic: mode == SearchMode::Greedy })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityCase {
    /// `|K₁| ≤ |n^{-1/2} B_∞^n|`: a bounded coordinate section of `K`.
    Primal,
    /// `|K₁| > |n^{-1/2} B_∞^n|`: a bounded coordinate section of `K°`.
    Dual,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityOutcome {
    pub case: DualityCase,
    /// Coordinates of the bounded section (size `k` in the primal case,
    /// `m` in the dual case).
    pub witness: IndexSet,
    pub r_k: CoordDiameter,
    pub r_m_polar: CoordDiameter,
    pub product: f64,
    /// `mass_k(K) · mass_m(K°)`; the product equals `(4/n)` times this.
    #[serde(with = "serde_str")]
    pub mass_product: Rational,
    pub bound: f64,
    pub t1: f64,
    pub t2: f64,
    /// Rational stand-ins for `t₁ n^{-1/2}` and `n^{1/2} / t₂`.
    #[serde(with = "serde_str")]
    pub cube_half_side: Rational,
    #[serde(with = "serde_str")]
    pub cross_radius: Rational,
    #[serde(with = "serde_str")]
    pub k1_volume: Rational,
    pub threshold: f64,
    pub pass: bool,
}

/// Denominator bound for the rational stand-ins of irrational scalings.
const MAX_DEN: u64 = 1_000_000;

/// Runs the construction `K₁ = conv(K ∪ t₁n^{-1/2}B_∞^n) ∩ t₂^{-1}n^{-1/2}B_1^n`
/// with `t₁, t₂` from the closed forms for constant `c_try`, decides the
/// volume case split and measures `r_k(K) r_m(K°)` against `c_try^{1/ε}`.
pub fn duality_experiment(
    k: &RationalPolytope,
    kk: usize,
    m: usize,
    eps: &Rational,
    c_try: &Rational,
) -> Result<DualityOutcome> {
    let n = k.dim();
    if n > 6 {
        return Err(Error::DimensionTooLarge { dim: n, max: 6 });
    }
    if !eps.is_positive() || kk == 0 || m == 0 {
        return Err(Error::Input("need ε > 0 and positive k, m".into()));
    }
    let nr = int(n as i64);
    if int((kk + m) as i64) > (int(1) - eps) * &nr {
        return Err(Error::Precondition(format!("k + m = {} exceeds (1 − ε)n", kk + m)));
    }
    if !k.is_symmetric() || !k.has_origin_in_interior() {
        return Err(Error::Precondition("duality experiment needs a symmetric body with 0 in its interior".into()));
    }
    if !c_try.is_positive() {
        return Err(Error::Input("C must be positive".into()));
    }
    let nf = n as f64;
    let delta = 1.0 - kk as f64 / nf;
    let lambda = 1.0 - m as f64 / nf;
    let s = delta + lambda - 1.0;
    let c = to_f64(c_try);
    let r1 = c.powf((delta - lambda + 1.0) / s) / 2f64.sqrt();
    let r2 = c.powf((lambda - delta + 1.0) / s) / 2f64.sqrt();
    let (t1, t2) = (1.0 / (2.0 * r1), 1.0 / (2.0 * r2));
    let cube_half_side = approximate(t1 / nf.sqrt(), MAX_DEN);
    let cross_radius = approximate(nf.sqrt() / t2, MAX_DEN);
    if !cube_half_side.is_positive() || !cross_radius.is_positive() {
        return Err(Error::Input("scalings underflow; choose a smaller C".into()));
    }
    let k1 = intersection(&hull_of_union(k, &cube(n, &cube_half_side))?, &cross(n, &cross_radius))?;
    let k1_volume = k1.volume()?;
    // |n^{-1/2} B_∞^n| = (4/n)^{n/2}
    let (primal, threshold) = if n.is_multiple_of(2) {
        let t = num_traits::pow(Rational::new(4.into(), n.into()), n / 2);
        (k1_volume <= t, to_f64(&t))
    } else {
        let t = (4.0 / nf).powf(nf / 2.0);
        (to_f64(&k1_volume) <= t, t)
    };
    let k_polar = polar(k)?;
    let rk = r_k(k, kk)?;
    let rm = r_k(&k_polar, m)?;
    let product = rk.value * rm.value;
    let bound = c.powf(1.0 / to_f64(eps));
    let case = if primal { DualityCase::Primal } else { DualityCase::Dual };
    let witness = if primal { rk.witness } else { rm.witness };
    Ok(DualityOutcome {
        case,
        witness,
        mass_product: &rk.mass * &rm.mass,
        r_k: rk,
        r_m_polar: rm,
        product,
        bound,
        t1,
        t2,
        cube_half_side,
        cross_radius,
        k1_volume,
        threshold,
        pass: product <= bound,
    })
}

impl DualityOutcome {
    pub fn to_report(&self, k: &RationalPolytope) -> VerificationReport {
        VerificationReport::new(
            "THM_5_1",
            digest_of(k),
            Quantity::Float(self.product),
            Relation::Le,
            Quantity::Float(self.bound),
            Provenance::Float,
        )
        .with_witness(serde_json::json!({ "case": self.case, "coordinates": self.witness }))
        .with_constant(self.product)
        .with_details(serde_json::to_value(self).expect("serializable"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn cube_and_cross_diameters() {
        let n = 4;
        let b_inf = cube(n, &int(1));
        let b_1 = cross(n, &int(n as i64));
        for kk in 1..=n {
            let r = r_k(&b_inf, kk).unwrap();
            assert_eq!(r.mass, int(kk as i64));
            assert!((r.value - 2.0 * kk as f64 / 2.0).abs() < 1e-12);
            let r1 = r_k(&b_1, kk).unwrap();
            assert_eq!(r1.mass, int(n as i64));
            assert!((r1.value - 2.0 * 2.0).abs() < 1e-12);
        }
        assert!(r_k(&RationalPolytope::from_integer_points(1, &[vec![0], vec![1]]).unwrap(), 1).is_err());
    }

    #[test]
    fn greedy_is_flagged() {
        let r = r_k_with(&cube(3, &int(1)), 2, SearchMode::Greedy).unwrap();
        assert!(r.heuristic);
        assert_eq!(r.mass, int(2));
    }

    #[test]
    fn cube_duality_product() {
        let out = duality_experiment(&cube(6, &int(1)), 2, 2, &rat(1, 3), &int(2)).unwrap();
        // r_2(B_∞) r_2(conv ±e_i) = (4/√6)(2/√6)
        assert_eq!(out.mass_product, int(2));
        assert!((out.product - 8.0 / 6.0).abs() < 1e-12);
        assert!(out.pass);
        let scaled = duality_experiment(&cube(6, &int(2)), 2, 2, &rat(1, 3), &int(2)).unwrap();
        assert_eq!(scaled.mass_product, out.mass_product);
    }

    #[test]
    fn preconditions() {
        let k = cube(6, &int(1));
        assert!(duality_experiment(&k, 3, 2, &rat(1, 3), &int(2)).is_err());
        let shifted = k.translate(&vec![rat(1, 2); 6]).unwrap();
        assert!(duality_experiment(&shifted, 2, 2, &rat(1, 3), &int(2)).is_err());
    }
}
