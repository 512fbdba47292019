//! Seeded generators must reproduce the stored instance digests bit for bit.
//! Run with `INTCELLS_BLESS=1` to rewrite `tests/goldens/generators.json`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use intcells_core::generators::{Family, GenSpec, Instance};
use intcells_core::report::digest_of;

fn specs() -> Vec<(&'static str, GenSpec)> {
    vec![
        ("boolean_random_8_0.5_seed1", GenSpec::new(Family::BooleanRandom { n: 8, density: 0.5 }, 1)),
        ("random_hull_3_20_5_seed7", GenSpec::new(Family::RandomHull { n: 3, m: 20, scale: 5 }, 7)),
        ("random_symmetric_4_6_3_seed11", GenSpec::new(Family::RandomSymmetric { n: 4, m: 6, scale: 3 }, 11)),
        ("box_random_3_4_2_seed5", GenSpec::new(Family::BoxRandom { bounds: vec![3, 4, 2], density: 0.3 }, 5)),
    ]
}

fn digest(instance: &Instance) -> String {
    match instance {
        Instance::PointSet(a) => digest_of(a),
        Instance::Polytope(k) => digest_of(k),
        Instance::Oracle(o) => digest_of(o),
    }
}

#[test]
fn generator_digests_match_goldens() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/goldens/generators.json");
    let measured: BTreeMap<String, String> =
        specs().into_iter().map(|(name, spec)| (name.to_string(), digest(&spec.generate().unwrap()))).collect();
    if std::env::var("INTCELLS_BLESS").is_ok_and(|v| v == "1") {
        std::fs::write(&path, serde_json::to_string_pretty(&measured).unwrap() + "\n").unwrap();
        return;
    }
    let stored: BTreeMap<String, String> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(measured, stored);
}

#[test]
fn same_seed_same_instance() {
    for (_, spec) in specs() {
        assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
    }
}
