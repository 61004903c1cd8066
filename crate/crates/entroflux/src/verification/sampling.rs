//! Seeded random-state generators shared by the property sweeps and the
//! flux micro-benchmark: density and pressure log-uniform in [0.1, 10],
//! velocity components uniform in [-5, 5].

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gas::{Primitive1, Primitive2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state_1d(rng: &mut ChaCha8Rng) -> Primitive1 {
    Primitive1::new(
        10.0f64.powf(rng.random_range(-1.0..1.0)),
        rng.random_range(-5.0..5.0),
        10.0f64.powf(rng.random_range(-1.0..1.0)),
    )
}

pub fn random_state_2d(rng: &mut ChaCha8Rng) -> Primitive2 {
    Primitive2::new(
        10.0f64.powf(rng.random_range(-1.0..1.0)),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        10.0f64.powf(rng.random_range(-1.0..1.0)),
    )
}

pub fn random_face_1d(rng: &mut ChaCha8Rng) -> (Primitive1, Primitive1) {
    (random_state_1d(rng), random_state_1d(rng))
}
