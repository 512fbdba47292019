//! `--oracle`: recompute through `intcells-oracles` and record agreement.

use intcells_core::convex::count_integer_cells_body;
use intcells_core::lattice::{integer_boxes_in, integer_cells_in_cconv, natarajan_dimension, IntegerPointSet};
use intcells_core::polytope::RationalPolytope;
use intcells_core::rational::{to_f64, Rational};
use intcells_core::IndexSet;
use intcells_oracles::{
    bounding_box_f64, exhaustive_cell_count, grid_shatter_search, hull_facets, mc_volume, oracle_box_count,
    oracle_cconv_cells, oracle_natarajan,
};
use num_traits::ToPrimitive;

use crate::io::OracleCheck;
use crate::CliError;

/// Largest dimension for which every projection is recounted.
const EXHAUSTIVE_DIM: usize = 5;

pub fn point_set_cells(a: &IntegerPointSet, pairs: &[(IndexSet, u64)]) -> OracleCheck {
    let mut check = OracleCheck::default();
    for (i, main) in pairs {
        let oracle = oracle_cconv_cells(a.points(), &i.indices());
        check.push(format!("cells {i}"), main, oracle, *main == oracle);
    }
    check.finish()
}

pub fn point_set_boxes(a: &IntegerPointSet, pairs: &[(IndexSet, u64)]) -> OracleCheck {
    let mut check = OracleCheck::default();
    for (i, main) in pairs {
        let oracle = oracle_box_count(a.points(), &i.indices());
        check.push(format!("boxes {i}"), main, oracle, *main == oracle);
    }
    check.finish()
}

pub fn content(a: &IntegerPointSet, main: u64) -> OracleCheck {
    let mut check = OracleCheck::default();
    let oracle = if a.is_empty() {
        0
    } else {
        1 + IndexSet::all_nonempty(a.dim()).iter().map(|i| oracle_cconv_cells(a.points(), &i.indices())).sum::<u64>()
    };
    check.push("cell content", main, oracle, main == oracle);
    check.finish()
}

pub fn natarajan(a: &IntegerPointSet, main: usize) -> OracleCheck {
    let mut check = OracleCheck::default();
    let oracle = oracle_natarajan(a.points(), a.dim());
    check.push("natarajan dimension", main, oracle, main == oracle);
    check.finish()
}

/// Fine-grid search for shattered coordinate sets; inconclusive (coarse)
/// searches are reported but not counted as disagreement.
pub fn shattering(a: &IntegerPointSet, t: &Rational, main: usize) -> OracleCheck {
    let mut check = OracleCheck::default();
    match (t.numer().to_i64(), t.denom().to_i64()) {
        (Some(tn), Some(td)) => {
            let g = grid_shatter_search(a.points(), (tn, td), (1, 4));
            if g.coarse {
                check.push("shattering dimension (grid too coarse, skipped)", main, g.dimension, true);
            } else {
                check.push("shattering dimension", main, g.dimension, main == g.dimension);
            }
        }
        _ => check.push("shattering dimension (scale out of range, skipped)", main, (), true),
    }
    check.finish()
}

/// Cells, boxes and dimensions of a point set, for `verify`.
pub fn point_set_input(a: &IntegerPointSet) -> OracleCheck {
    let mut check = OracleCheck::default();
    for i in IndexSet::all_nonempty(a.dim()) {
        let idx = i.indices();
        if let Ok(cells) = integer_cells_in_cconv(a, &i) {
            let oracle = oracle_cconv_cells(a.points(), &idx);
            check.push(format!("cells {i}"), cells.len(), oracle, cells.len() as u64 == oracle);
        }
        if let Ok(boxes) = integer_boxes_in(a, &i) {
            let oracle = oracle_box_count(a.points(), &idx);
            check.push(format!("boxes {i}"), boxes, oracle, boxes == oracle);
        }
    }
    let nat = natarajan_dimension(a);
    let oracle = oracle_natarajan(a.points(), a.dim());
    check.push("natarajan dimension", nat, oracle, nat == oracle);
    check.finish()
}

pub fn polytope_cells(k: &RationalPolytope, pairs: &[(IndexSet, u64)]) -> OracleCheck {
    let mut check = OracleCheck::default();
    for (i, main) in pairs {
        let oracle = exhaustive_cell_count(k.vertices(), &i.indices());
        check.push(format!("cells {i}"), main, oracle, *main == oracle);
    }
    check.finish()
}

fn mc_check(check: &mut OracleCheck, k: &RationalPolytope, exact: &Rational, samples: u64, seed: u64) {
    let hull = hull_facets(k.vertices());
    let (lo, hi) = bounding_box_f64(k.vertices());
    let est = mc_volume(|x| hull.contains_f64(x), &lo, &hi, samples, seed);
    let exact = to_f64(exact);
    let agree = (est.value - exact).abs() <= 2.0 * est.half_width_95 + 1e-12 * exact.abs();
    let oracle = serde_json::json!({ "value": est.value, "half_width_95": est.half_width_95, "samples": est.samples });
    check.push("volume (Monte Carlo, 2 half-widths)", exact, oracle, agree);
}

pub fn volume(k: &RationalPolytope, exact: &Rational, samples: u64, seed: u64) -> OracleCheck {
    let mut check = OracleCheck::default();
    mc_check(&mut check, k, exact, samples, seed);
    check.finish()
}

/// Facets, volume and (in low dimension) every projection's cell count.
pub fn polytope_input(k: &RationalPolytope, samples: u64, seed: u64) -> Result<OracleCheck, CliError> {
    let mut check = OracleCheck::default();
    let hull = hull_facets(k.vertices());
    let facets = k.facets().len();
    check.push("facet count", facets, hull.facets.len(), facets == hull.facets.len());
    mc_check(&mut check, k, &k.volume()?, samples, seed);
    if k.dim() <= EXHAUSTIVE_DIM {
        for i in IndexSet::all_nonempty(k.dim()) {
            let main = count_integer_cells_body(k, &i)?;
            let oracle = exhaustive_cell_count(k.vertices(), &i.indices());
            check.push(format!("cells {i}"), main, oracle, main == oracle);
        }
    }
    Ok(check.finish())
}

/// Vertices of `K°` are the facets of `K` and vice versa, and `⟨x, y⟩ ≤ 1`
/// for every pair of vertices.
pub fn polar(k: &RationalPolytope, p: &RationalPolytope) -> OracleCheck {
    let mut check = OracleCheck::default();
    let k_facets = hull_facets(k.vertices()).facets.len();
    let p_facets = hull_facets(p.vertices()).facets.len();
    check.push("facets of K vs vertices of K°", k_facets, p.vertices().len(), k_facets == p.vertices().len());
    check.push("vertices of K vs facets of K°", k.vertices().len(), p_facets, k.vertices().len() == p_facets);
    let one = Rational::from_integer(1.into());
    let bounded = k.vertices().iter().all(|x| {
        p.vertices().iter().all(|y| x.iter().zip(y).map(|(a, b)| a * b).sum::<Rational>() <= one)
    });
    check.push("pairings bounded by 1", true, bounded, bounded);
    check.finish()
}
