use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::lattice::{primitive_from_rational, rat_from_int, solve_rational, Int, LatticeVector, QuotientMap, Rat};
use crate::polyalg::{LaurentGF, RationalFunctionLF};
use crate::polyhedra::{triangulate, unimodular_resolve_with, Cone, Strategy};

fn require_full(sigma: &Cone) -> Result<()> {
    if !sigma.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    Ok(())
}

/// Hilbert series of a full-dimensional cone as a sum over unimodular pieces of
/// `1 / prod (1 - x^{e_i^*})`.
pub fn hilbert_series_with(sigma: &Cone, strategy: Strategy) -> Result<LaurentGF> {
    require_full(sigma)?;
    let n = sigma.ambient();
    let mut gf = LaurentGF::zero(n);
    for piece in unimodular_resolve_with(sigma, strategy)? {
        let dual: Vec<Vec<Int>> = piece.dual_basis()?.into_iter().map(|v| v.0).collect();
        gf = gf.add(&LaurentGF::inverse_binomials(n, dual)?);
    }
    Ok(gf)
}

pub fn hilbert_series(sigma: &Cone) -> Result<LaurentGF> {
    hilbert_series_with(sigma, Strategy::Forward)
}

/// Equivariant multiplicity of a full-dimensional cone: the sum over the pieces
/// of a unimodular subdivision of `1 / (e_1^* ... e_n^*)`.
pub fn e_sigma_with(sigma: &Cone, strategy: Strategy) -> Result<RationalFunctionLF> {
    require_full(sigma)?;
    let n = sigma.ambient();
    let pieces = unimodular_resolve_with(sigma, strategy)?;
    let terms = pieces
        .iter()
        .map(|p| {
            let dual: Vec<Vec<Int>> = p.dual_basis()?.into_iter().map(|v| v.0).collect();
            RationalFunctionLF::inverse_product(n, &dual)
        })
        .collect::<Result<Vec<_>>>()?;
    let e = RationalFunctionLF::sum(n, terms);
    if e.degree() != Some(-(n as i64)) {
        return Err(Error::Internal(format!("multiplicity {e} is not homogeneous of degree -{n}")));
    }
    Ok(e)
}

/// Equivariant multiplicity of a full-dimensional cone, summed over a triangulation
/// without new rays with [`simplicial_multiplicity`] on each piece. Agrees with
/// [`e_sigma_with`] by additivity and needs far fewer pieces on singular cones.
pub fn e_sigma(sigma: &Cone) -> Result<RationalFunctionLF> {
    require_full(sigma)?;
    let n = sigma.ambient();
    let terms =
        triangulate(sigma, Strategy::Forward).iter().map(simplicial_multiplicity).collect::<Result<Vec<_>>>()?;
    let e = RationalFunctionLF::sum(n, terms);
    if e.degree() != Some(-(n as i64)) {
        return Err(Error::Internal(format!("multiplicity {e} is not homogeneous of degree -{n}")));
    }
    Ok(e)
}

/// `1 / (mult(sigma) w_1 ... w_n)` for a full-dimensional simplicial cone, where
/// `w_i` is the rational basis dual to the rays.
pub fn simplicial_multiplicity(sigma: &Cone) -> Result<RationalFunctionLF> {
    require_full(sigma)?;
    if !sigma.is_simplicial() {
        return Err(Error::Validation(format!("{sigma} is not simplicial")));
    }
    let n = sigma.ambient();
    let rows: Vec<Vec<Rat>> = sigma.rays().iter().map(|v| v.0.iter().map(rat_from_int).collect()).collect();
    let mut forms = Vec::with_capacity(n);
    let mut scale = Rat::from_integer(sigma.multiplicity());
    for i in 0..n {
        let unit: Vec<Rat> = (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect();
        let w = solve_rational(&rows, &unit, n).ok_or_else(|| Error::Internal("rays are not a basis".into()))?;
        let m = primitive_from_rational(&w)?;
        let j = m.0.iter().position(|x| !x.is_zero()).expect("primitive vector is nonzero");
        scale *= &w[j] / rat_from_int(&m.0[j]);
        forms.push(m.0);
    }
    Ok(RationalFunctionLF::inverse_product(n, &forms)?.scale(&scale.recip()))
}

/// `(-1)^n` times the principal part of the Hilbert series at the identity.
pub fn e_sigma_principal(sigma: &Cone) -> Result<RationalFunctionLF> {
    let (pp, degree) = hilbert_series(sigma)?.principal_part()?;
    let n = sigma.ambient();
    if degree != -(n as i64) {
        return Err(Error::Internal(format!("principal part has degree {degree}, expected -{n}")));
    }
    Ok(if n.is_multiple_of(2) { pp } else { pp.neg() })
}

/// Image of `sigma` in `N / (N ∩ span tau)`.
pub fn quotient_cone(sigma: &Cone, q: &QuotientMap) -> Result<Cone> {
    let gens: Vec<LatticeVector> = sigma.rays().iter().map(|v| q.project(v)).filter(|v| !v.is_zero()).collect();
    Cone::new(q.quotient_rank(), &gens)
}

/// `e_{sigma,tau}` in the variables of the quotient lattice's dual `tau^perp ∩ M`
/// (the rows of the quotient projection).
pub fn e_sigma_tau_quotient(sigma: &Cone, tau: &Cone) -> Result<(RationalFunctionLF, QuotientMap)> {
    if !tau.is_face_of(sigma) {
        return Err(Error::NotAFace(format!("{tau} is not a face of {sigma}")));
    }
    require_full(sigma)?;
    let q = QuotientMap::build(sigma.ambient(), tau.rays());
    let image = quotient_cone(sigma, &q)?;
    let e = if q.quotient_rank() == 0 { RationalFunctionLF::one(0) } else { e_sigma(&image)? };
    Ok((e, q))
}

/// `e_{sigma,tau}` as an element of `Sym^±(M)`, of degree `dim tau - n`.
pub fn e_sigma_tau(sigma: &Cone, tau: &Cone) -> Result<RationalFunctionLF> {
    let (e, q) = e_sigma_tau_quotient(sigma, tau)?;
    embed(&e, &q)
}

/// Embeds a rational function of the quotient characters into `Sym^±(M)`.
pub fn embed(e: &RationalFunctionLF, q: &QuotientMap) -> Result<RationalFunctionLF> {
    e.substitute_linear_forms(q.projection().rows(), q.source_rank())
}

/// `1 / prod` of the dual basis forms of a full-dimensional unimodular cone.
pub fn unimodular_multiplicity(sigma: &Cone) -> Result<RationalFunctionLF> {
    let dual: Vec<Vec<Int>> = sigma.dual_basis()?.into_iter().map(|v| v.0).collect();
    RationalFunctionLF::inverse_product(sigma.ambient(), &dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};
    use crate::polyalg::{Polynomial, DEFAULT_SEED};

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unimodular_cone() {
        let c = Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(e_sigma(&c).unwrap().to_string(), "1/(a b)");
        assert_eq!(e_sigma_principal(&c).unwrap(), e_sigma(&c).unwrap());
    }

    #[test]
    fn mod_z2_cone() {
        let c = Cone::from_i64(&[&[1, 1], &[1, -1]]).unwrap();
        let e = e_sigma(&c).unwrap();
        assert_eq!(e.to_string(), "2/((a-b)(a+b))");
        assert_eq!(e_sigma_principal(&c).unwrap(), e);
        assert_eq!(e_sigma_with(&c, Strategy::Reverse).unwrap(), e);
    }

    #[test]
    fn cube_cone_multiplicity() {
        let c = Cone::from_i64(&[&[1, 1, 1], &[1, 1, -1], &[1, -1, 1], &[1, -1, -1]]).unwrap();
        let e = e_sigma(&c).unwrap();
        let num = Polynomial::linear(&iv(&[4, 0, 0]));
        let expect = RationalFunctionLF::new(
            num,
            &[(iv(&[-1, 1, 0]), 1), (iv(&[1, 1, 0]), 1), (iv(&[-1, 0, 1]), 1), (iv(&[1, 0, 1]), 1)],
        )
        .unwrap();
        assert_eq!(e, expect);
        assert_eq!(e.to_string(), "4a/((a-b)(a+b)(a-c)(a+c))");
        assert!(e_sigma_principal(&c).unwrap().equals_by_evaluation(&e, DEFAULT_SEED, 5));
    }

    #[test]
    fn relative_multiplicities() {
        let s = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let t = Cone::from_i64(&[&[1, 0, 0]]).unwrap();
        assert_eq!(e_sigma_tau(&s, &t).unwrap().to_string(), "1/(b c)");
        assert_eq!(e_sigma_tau(&s, &s).unwrap(), RationalFunctionLF::one(3));
        assert_eq!(e_sigma_tau(&s, &Cone::zero(3)).unwrap(), e_sigma(&s).unwrap());
        let not_face = Cone::from_i64(&[&[1, 1, 0]]).unwrap();
        assert!(matches!(e_sigma_tau(&s, &not_face), Err(Error::NotAFace(_))));
        assert_eq!(e_sigma_tau(&s, &t).unwrap().eval(&[rat(5, 1), rat(2, 1), rat(3, 1)]).unwrap(), rat(1, 6));
    }
}
