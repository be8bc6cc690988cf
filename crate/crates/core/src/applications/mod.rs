//! Mixed volumes and Chern numbers of toric vector bundles.

mod bundle;
mod mixed;

pub use bundle::{
    calibrate_split_sign, chern_number, elementary_symmetric, eps_lambda, picard_degree_check, resolve_klyachko,
    split_bundle, ConsistencyReport, Filtration, Partition, ToricVectorBundle, MAX_SOLVED_RANK, SPLIT_SIGN,
};
pub use mixed::{mixed_volume_fit, mixed_volume_lattice_points, mixed_volume_loc, MixedVolume, PolytopeSystem};
