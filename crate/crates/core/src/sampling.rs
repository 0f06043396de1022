//! Seeded random cochains for the randomized identity suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::models::{Cochain, CochainModel};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cochain with independent entries drawn uniformly from `-2..=2`, about
/// a third of them zero.
pub fn random_cochain<R: Rng>(model: &CochainModel, degree: usize, rng: &mut R) -> Cochain {
    let field = model.field();
    let data = (0..model.cochain_dim(degree))
        .map(|_| {
            if rng.gen_bool(1.0 / 3.0) {
                field.zero()
            } else {
                field.from_i64(rng.gen_range(-2..=2))
            }
        })
        .collect();
    model
        .cochain_from_vector(degree, data)
        .expect("sampled vector has the cochain length")
}

/// A random element of the span of `basis`, coefficients in `-2..=2`.
pub fn random_combination<R: Rng>(
    model: &CochainModel,
    degree: usize,
    basis: &[Cochain],
    rng: &mut R,
) -> Cochain {
    let mut acc = model.zero(degree);
    for b in basis {
        acc.axpy(&model.field().from_i64(rng.gen_range(-2..=2)), b);
    }
    acc
}
