//! Seeded random instances shared by the property and acceptance tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torloc::lattice::{Int, LatticeVector};
use torloc::localization::{PiecewisePolynomial, PpSpace};
use torloc::polyhedra::{normal_fan, Cone, Fan, LatticePolytope};

pub const SEED: u64 = 20_260_101;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> LatticeVector {
    LatticeVector((0..n).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())
}

/// A full-dimensional pointed cone on `n` to `n + extra` random generators.
pub fn random_cone(rng: &mut ChaCha8Rng, n: usize, bound: i64, extra: usize) -> Cone {
    loop {
        let k = n + rng.gen_range(0..=extra);
        let gens: Vec<LatticeVector> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
        if let Ok(c) = Cone::new(n, &gens) {
            if c.is_full_dimensional() {
                return c;
            }
        }
    }
}

/// A random lattice polytope with `k` random points (it may be lower dimensional).
pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize, bound: i64, k: usize) -> LatticePolytope {
    let pts: Vec<LatticeVector> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
    LatticePolytope::from_points(n, &pts).expect("points have the right length")
}

/// Normal fan of a random full-dimensional polytope: complete, often singular and
/// sometimes not simplicial.
pub fn random_complete_fan(rng: &mut ChaCha8Rng, n: usize, max_cones: usize) -> Fan {
    loop {
        let k = rng.gen_range(n + 1..=n + 3);
        let p = random_polytope(rng, n, 2, k);
        if !p.is_full_dimensional() {
            continue;
        }
        let fan = normal_fan(&[p]).expect("full-dimensional polytope");
        if fan.maximal_cones().len() <= max_cones {
            return fan;
        }
    }
}

/// `n` random polytopes in rank `n` whose Minkowski sum is full dimensional.
pub fn random_polytope_system(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<LatticePolytope> {
    loop {
        let ps: Vec<LatticePolytope> = (0..n)
            .map(|_| {
                let k = rng.gen_range(2..=n + 2);
                random_polytope(rng, n, bound, k)
            })
            .collect();
        if torloc::polyhedra::minkowski_sum_all(&ps).map(|s| s.is_full_dimensional()).unwrap_or(false) {
            return ps;
        }
    }
}

/// A random integer combination of the integral basis of `PP^k`.
pub fn random_integral_pp(rng: &mut ChaCha8Rng, fan: &Fan, k: u32) -> PiecewisePolynomial {
    let basis = PpSpace::new(fan, k).basis_z();
    let mut f = PiecewisePolynomial::new(
        fan,
        k,
        vec![torloc::polyalg::Polynomial::zero(fan.ambient()); fan.maximal_cones().len()],
    )
    .expect("zero is piecewise polynomial");
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(4) {
        let c = rng.gen_range(-3i64..=3);
        f = f.add(&basis[i].scale(&torloc::lattice::rat(c, 1))).expect("same fan and degree");
    }
    f
}
pub mod props;
