//! Seeded fixtures shared by the benchmarks.

use octonion_core::{Octonion, OctonionAlgebra, RingContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn zorn(spec: &str) -> OctonionAlgebra {
    OctonionAlgebra::zorn(&RingContext::parse(spec).expect("valid ring spec"))
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0)
}

/// Two unit-norm elements of `alg`.
pub fn sphere_pair(alg: &OctonionAlgebra) -> (Octonion, Octonion) {
    let mut rng = rng();
    let a = alg.random_sphere(&mut rng).expect("sphere sampler");
    let b = alg.random_sphere(&mut rng).expect("sphere sampler");
    (a, b)
}
