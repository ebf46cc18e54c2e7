//! Fixtures shared by the benchmarks in `benches/`.

use symbern_core::characters::primitive_characters;
use symbern_core::{DirichletChar, Rational, Theorem, TheoremInstance, Weights};

/// The first primitive character of modulus `d`.
pub fn primitive(d: u64) -> DirichletChar {
    primitive_characters(d).expect("positive modulus").remove(0)
}

pub fn ys() -> [Rational; 3] {
    [Rational::new(0.into(), 1.into()), Rational::new(1.into(), 2.into()), Rational::new(2.into(), 3.into())]
}

/// One instance per theorem at the heaviest acceptance weights.
pub fn heavy_instances(d: u64, n: usize) -> Vec<TheoremInstance> {
    let w = Weights::new(3, 4, 7).expect("positive");
    let chi = primitive(d);
    Theorem::ALL.iter().map(|&t| TheoremInstance::new(t, n, w, &ys(), chi.id())).collect()
}
