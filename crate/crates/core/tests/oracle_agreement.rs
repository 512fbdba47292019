//! Main-module results against the independent brute-force oracles.

use intcells_core::convex::{count_integer_cells_body, float_membership};
use intcells_core::generators::{box_random, random_hull, random_symmetric};
use intcells_core::lattice::{
    cconv_contains, integer_boxes_in, integer_cells_in_cconv, natarajan_dimension, shattering_dimension_discrete,
    IntegerPointSet,
};
use intcells_core::polytope::RationalPolytope;
use intcells_core::rational::{rat, to_f64};
use intcells_core::IndexSet;
use intcells_oracles::{
    exhaustive_cell_count, grid_shatter_search, hull_facets, mc_volume, oracle_box_count, oracle_cconv,
    oracle_cconv_cells, oracle_natarajan,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> IntegerPointSet {
    let density = rng.random_range(0.05..0.6);
    box_random(&vec![4; n], density, rng).unwrap()
}

fn small_corpus() -> Vec<RationalPolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for n in 1..=4 {
        for _ in 0..5 {
            out.push(random_hull(n, n + 3, 4, &mut rng).unwrap());
            out.push(random_symmetric(n, n + 1, 3, &mut rng).unwrap());
        }
    }
    for _ in 0..3 {
        out.push(random_hull(5, 8, 3, &mut rng).unwrap());
    }
    out
}

#[test]
fn cconv_agrees_on_random_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..10_000 {
        let n = 1 + trial % 3;
        let a = random_set(&mut rng, n);
        let x: Vec<i64> = (0..n).map(|_| rng.random_range(-1..=5)).collect();
        assert_eq!(cconv_contains(&a, &x).unwrap(), oracle_cconv(a.points(), &x), "A = {a:?}, x = {x:?}");
    }
}

#[test]
fn shattering_dimension_agrees_with_fine_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let scales = [(1, 1), (2, 1), (3, 2), (5, 2), (1, 2)];
    for trial in 0..200 {
        let n = 1 + trial % 3;
        let a = random_set(&mut rng, n);
        let (tn, td) = scales[trial % scales.len()];
        let (v, witness) = shattering_dimension_discrete(&a, &rat(tn, td)).unwrap();
        let oracle = grid_shatter_search(a.points(), (tn, td), (1, 4));
        assert!(!oracle.coarse);
        assert_eq!(v, oracle.dimension, "A = {a:?}, t = {tn}/{td}");
        if let Some(w) = witness {
            assert!(w.verify(&a));
        }
    }
}

#[test]
fn cell_counts_agree_on_every_projection() {
    for k in small_corpus() {
        for i in IndexSet::all_nonempty(k.dim()) {
            let main = count_integer_cells_body(&k, &i).unwrap();
            let oracle = exhaustive_cell_count(k.vertices(), &i.indices());
            assert_eq!(main, oracle, "K = {}, I = {i}", k.to_json());
        }
    }
}

#[test]
fn facets_agree_with_brute_force_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in small_corpus() {
        let brute = hull_facets(k.vertices());
        assert!(brute.full_dimensional);
        assert_eq!(brute.facets.len(), k.facets().len(), "K = {}", k.to_json());
        let (lo, hi): (Vec<_>, Vec<_>) = k.bounding_box().unwrap().into_iter().unzip();
        for _ in 0..50 {
            let x: Vec<_> = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| a + (b - a) * rat(rng.random_range(-2..=10), 8))
                .collect();
            assert_eq!(k.contains_point(&x).unwrap(), brute.contains(&x));
        }
    }
}

#[test]
fn monte_carlo_brackets_exact_volumes() {
    let corpus = small_corpus();
    let mut bracketed = 0;
    for (j, k) in corpus.iter().enumerate() {
        let exact = to_f64(&k.volume().unwrap());
        let (lo, hi): (Vec<f64>, Vec<f64>) =
            k.bounding_box().unwrap().iter().map(|(a, b)| (to_f64(a), to_f64(b))).unzip();
        let est = mc_volume(float_membership(k), &lo, &hi, 20_000, 0x5EED + j as u64);
        if est.brackets(exact) {
            bracketed += 1;
        }
        assert!((est.value - exact).abs() <= 5.0 * est.half_width_95, "{est:?} vs {exact}");
    }
    // 95% intervals: at least 90% of the corpus
    assert!(bracketed * 10 >= corpus.len() * 9, "{bracketed}/{}", corpus.len());
}

#[test]
fn lattice_cells_boxes_and_natarajan_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..150 {
        let n = 1 + trial % 3;
        let a = random_set(&mut rng, n);
        for i in IndexSet::all_nonempty(n) {
            let idx = i.indices();
            assert_eq!(integer_cells_in_cconv(&a, &i).unwrap().len() as u64, oracle_cconv_cells(a.points(), &idx));
            assert_eq!(integer_boxes_in(&a, &i).unwrap(), oracle_box_count(a.points(), &idx));
        }
        assert_eq!(natarajan_dimension(&a), oracle_natarajan(a.points(), n));
    }
}
