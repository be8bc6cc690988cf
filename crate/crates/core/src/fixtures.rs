//! Fans used throughout the examples and tests.

use std::collections::BTreeMap;

use crate::applications::{Filtration, ToricVectorBundle};
use crate::lattice::{rat_from_int, LatticeVector, Subspace};
use crate::polyhedra::Fan;

fn fan_from(rays: &[[i64; 3]], cones: &[[usize; 4]]) -> Fan {
    let gens: Vec<Vec<LatticeVector>> =
        cones.iter().map(|c| c.iter().map(|&i| LatticeVector::from_i64(&rays[i])).collect()).collect();
    Fan::from_generators(3, &gens).expect("fixture fan is valid")
}

/// Rays `v_1..v_8` of the fan over the faces of the cube `[-1,1]^3`.
pub const CUBE_RAYS: [[i64; 3]; 8] =
    [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1], [-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]];

/// Maximal cones of the cube fan as 0-based indices into [`CUBE_RAYS`].
pub const CUBE_CONES: [[usize; 4]; 6] =
    [[0, 1, 2, 3], [0, 1, 4, 5], [0, 2, 4, 6], [1, 3, 5, 7], [2, 3, 6, 7], [4, 5, 6, 7]];

/// Complete fan in rank 2 with rays `(1,1), (1,-1), (-1,-1), (-1,1)`.
pub fn mod_z2() -> Fan {
    Fan::from_i64(&[&[&[1, 1], &[1, -1]], &[&[1, -1], &[-1, -1]], &[&[-1, -1], &[-1, 1]], &[&[1, 1], &[-1, 1]]])
        .expect("fixture fan is valid")
}

/// The fan over the faces of the cube.
pub fn cube() -> Fan {
    fan_from(&CUBE_RAYS, &CUBE_CONES)
}

/// The cube fan with the ray `(1,1,1)` moved to `(1,2,3)`.
pub fn fulton() -> Fan {
    let mut rays = CUBE_RAYS;
    rays[0] = [1, 2, 3];
    fan_from(&rays, &CUBE_CONES)
}

/// The cube fan with `(1,1,1)` moved to `(1,1,2)` and `(1,-1,1)` moved to `(1,-1,2)`.
pub fn final_threefold() -> Fan {
    let mut rays = CUBE_RAYS;
    rays[0] = [1, 1, 2];
    rays[2] = [1, -1, 2];
    fan_from(&rays, &CUBE_CONES)
}

/// The fan of the projective plane.
pub fn p2() -> Fan {
    Fan::from_i64(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]]).expect("fixture fan is valid")
}

/// The fan of the projective line.
pub fn p1() -> Fan {
    Fan::from_i64(&[&[&[1]], &[&[-1]]]).expect("fixture fan is valid")
}

/// The fan of `P^1 x P^1` (four quadrants).
pub fn square() -> Fan {
    Fan::from_i64(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, 0]], &[&[-1, 0], &[0, -1]], &[&[0, -1], &[1, 0]]])
        .expect("fixture fan is valid")
}

/// Rank 2 bundle on the cube fan with a line `L_i` at weight 0 on rays 1, 4, 6, 7
/// (1-based) and the split filtration with a single jump at 1 on the other rays.
pub fn cube_bundle() -> ToricVectorBundle {
    let lines: [(usize, [i64; 2]); 4] = [(0, [1, 0]), (3, [0, 1]), (5, [1, 1]), (6, [1, 2])];
    let mut filtrations = BTreeMap::new();
    for r in 0..8 {
        let steps = match lines.iter().find(|(i, _)| *i == r) {
            Some((_, l)) => {
                let row = vec![l.iter().map(|&x| rat_from_int(&x.into())).collect()];
                vec![(0, Subspace::new(2, &row)), (4, Subspace::zero(2))]
            }
            None => vec![(2, Subspace::zero(2))],
        };
        filtrations.insert(r, Filtration::new(2, steps).expect("fixture filtration is valid"));
    }
    ToricVectorBundle::new(2, filtrations, BTreeMap::new()).expect("fixture bundle is valid")
}
