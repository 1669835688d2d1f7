#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use toric_ml::input::MonoidInputDocument;
use toric_ml::invariants::{analyze, InvariantReport};
use toric_ml::lattice::LatticePoint;
use toric_ml::monoid::{AffineMonoid, Bounds};

pub const FIXTURES: [&str; 11] = [
    "example1", "example2", "example3", "example4", "example5", "a1", "a2", "a3", "cusp", "product", "units",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn load(name: &str) -> MonoidInputDocument {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    MonoidInputDocument::parse(&text).unwrap()
}

pub struct Loaded {
    pub input: MonoidInputDocument,
    pub monoid: AffineMonoid,
    pub bounds: Bounds,
    pub report: InvariantReport,
}

pub fn analyzed(name: &str) -> Loaded {
    let input = load(name);
    let monoid = input.monoid().unwrap();
    let bounds = input.bounds_override().resolve(&monoid);
    let report = analyze(&monoid, &bounds, false).unwrap();
    Loaded {
        input,
        monoid,
        bounds,
        report,
    }
}

pub fn p(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64s(c)
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> LatticePoint {
    LatticePoint::from_i64s(&(0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=4);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
