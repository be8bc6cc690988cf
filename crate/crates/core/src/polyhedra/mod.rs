//! Rational cones, fans, unimodular resolution and lattice polytopes.

mod cone;
mod dd;
mod fan;
mod polytope;
mod resolve;

pub use cone::{dual_cone, is_unimodular, Cone};
pub use dd::{independent_subset, polar_rays};
pub use fan::{check_common_face, intersect, ConeKey, Fan};
pub use polytope::{minkowski_sum_all, normal_fan, LatticePolytope};
pub use resolve::{
    all_unimodular, parallelepiped_points, total_multiplicity, triangulate, unimodular_resolve,
    unimodular_resolve_with, Strategy,
};
