//! Polynomials, rational functions with linear-form denominators, truncated
//! power series and Laurent generating functions over Q.

mod laurent;
mod polynomial;
mod rational;
mod series;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{rat, Rat};

pub use laurent::{LaurentGF, LaurentTerm, MAX_ORDER};
pub use polynomial::{variable_name, Exponents, Polynomial};
pub use rational::{LinearForm, RationalFunctionLF};
pub use series::{char_series, TruncatedSeries};

/// Seed used for equality testing by evaluation unless overridden.
pub const DEFAULT_SEED: u64 = 0x746f_726c_6f63;

/// Deterministic source of rational evaluation points.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn point(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| rat(self.rng.gen_range(-97..=97), self.rng.gen_range(1..=31))).collect()
    }
}
