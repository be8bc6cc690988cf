//! Hilbert series, equivariant multiplicities, piecewise polynomials and the
//! localization map to Minkowski weights.

mod multiplicity;
mod piecewise;
mod weights;

pub use multiplicity::{
    e_sigma, e_sigma_principal, e_sigma_tau, e_sigma_tau_quotient, e_sigma_with, embed, hilbert_series,
    hilbert_series_with, quotient_cone, simplicial_multiplicity, unimodular_multiplicity,
};
pub use piecewise::{monomials, pp_basis, psi_tau, restrict_to_span, PiecewisePolynomial, PpSpace, Ring};
pub use weights::{
    balancing_matrix, iota_star, iota_star_image, iota_star_with, is_balanced, localize_at, picard_rank,
    pushforward_polynomial, ranks_table, relative_generator, ImageReport, MinkowskiWeight, RankRow, Restriction,
};
