use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{
    integer_kernel_basis, primitive_of, rank_int, right_inverse, subgroup_index, Index, Int, IntMatrix, LatticeVector,
    QuotientMap,
};
use crate::localization::multiplicity::{e_sigma, e_sigma_tau, e_sigma_tau_quotient};
use crate::localization::piecewise::{PiecewisePolynomial, PpSpace};
use crate::polyalg::{Polynomial, RationalFunctionLF};
use crate::polyhedra::{ConeKey, Fan};

/// An integer function on the codimension-`k` cones of a complete fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiWeight {
    codim: usize,
    cones: Vec<ConeKey>,
    values: Vec<Int>,
}

impl MinkowskiWeight {
    pub fn new(fan: &Fan, codim: usize, values: Vec<Int>) -> Result<Self> {
        let cones = fan.cones_of_codim(codim);
        if cones.len() != values.len() {
            return Err(Error::Validation(format!("expected {} values, got {}", cones.len(), values.len())));
        }
        Ok(MinkowskiWeight { codim, cones, values })
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    /// Codimension-`k` cones in canonical order.
    pub fn cones(&self) -> &[ConeKey] {
        &self.cones
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn value(&self, key: &[usize]) -> Option<&Int> {
        self.cones.iter().position(|c| c == key).map(|i| &self.values[i])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cones, other.cones);
        MinkowskiWeight { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for MinkowskiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.cones.iter().zip(&self.values) {
            writeln!(f, "c({k:?}) = {v}")?;
        }
        Ok(())
    }
}

/// `v_{tau/gamma}`: primitive generator of the image of `tau` in `N / (N ∩ span gamma)`.
pub fn relative_generator(fan: &Fan, tau: &[usize], q: &QuotientMap) -> Result<LatticeVector> {
    let cone = fan.cone(tau).ok_or_else(|| Error::NotAFace(format!("{tau:?}")))?;
    let image = cone
        .rays()
        .iter()
        .map(|v| q.project(v))
        .find(|v| !v.is_zero())
        .ok_or(Error::Internal("cone does not extend its face".into()))?;
    primitive_of(&image)
}

/// Rows of the balancing conditions on codimension-`k` weights: one row per
/// codimension-`(k+1)` cone and quotient coordinate.
pub fn balancing_matrix(fan: &Fan, k: usize) -> Result<IntMatrix> {
    let cones = fan.cones_of_codim(k);
    let mut rows = Vec::new();
    for gamma in fan.cones_of_codim(k + 1) {
        let q = QuotientMap::build(fan.ambient(), fan.cone(&gamma).unwrap().rays());
        let mut block = vec![vec![Int::zero(); cones.len()]; q.quotient_rank()];
        for (j, tau) in cones.iter().enumerate() {
            if gamma.iter().all(|i| tau.contains(i)) {
                let v = relative_generator(fan, tau, &q)?;
                for (r, x) in v.iter().enumerate() {
                    block[r][j] = x.clone();
                }
            }
        }
        rows.extend(block);
    }
    Ok(IntMatrix::new(rows, cones.len()))
}

/// Balancing check; returns the violating codimension-`(k+1)` cones with their sums.
pub fn is_balanced(fan: &Fan, w: &MinkowskiWeight) -> Result<(bool, Vec<(ConeKey, LatticeVector)>)> {
    let mut witnesses = Vec::new();
    for gamma in fan.cones_of_codim(w.codim() + 1) {
        let q = QuotientMap::build(fan.ambient(), fan.cone(&gamma).unwrap().rays());
        let mut sum = LatticeVector::zero(q.quotient_rank());
        for (tau, c) in w.cones().iter().zip(w.values()) {
            if gamma.iter().all(|i| tau.contains(i)) {
                sum = sum.add(&relative_generator(fan, tau, &q)?.scale(c));
            }
        }
        if !sum.is_zero() {
            witnesses.push((gamma, sum));
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// How `f_sigma` is moved into the quotient coordinates when evaluating `iota^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Restriction {
    /// Pull back along the canonical section of the quotient map.
    #[default]
    Section,
    /// Pull back along a section shifted by a seeded random element of the kernel.
    ShiftedSection(u64),
    /// Multiply by `e_{sigma,tau}` embedded in `Sym^±(M)` without restricting.
    Ambient,
}

fn require_complete(fan: &Fan) -> Result<()> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(())
}

fn constant_integer(e: &RationalFunctionLF) -> Result<Int> {
    let p = e.to_polynomial()?;
    let c = if p.is_zero() {
        Zero::zero()
    } else {
        p.as_constant().ok_or_else(|| Error::Internal(format!("{p} is not a constant")))?
    };
    let c: crate::lattice::Rat = c;
    if !c.is_integer() {
        return Err(Error::Internal(format!("localization sum {c} is not an integer")));
    }
    Ok(c.to_integer())
}

/// The value `c(tau) = sum_{sigma ⊇ tau} e_{sigma,tau} f_sigma`.
pub fn localize_at(fan: &Fan, f: &PiecewisePolynomial, tau: &[usize], how: Restriction) -> Result<Int> {
    let t = fan.cone(tau).ok_or_else(|| Error::NotAFace(format!("{tau:?}")))?;
    let mut terms = Vec::new();
    let mut nvars = fan.ambient();
    for &m in fan.maximal_containing(tau) {
        let sigma = &fan.maximal_cones()[m];
        let f_sigma = f.piece(m);
        match how {
            Restriction::Ambient => {
                terms.push(e_sigma_tau(sigma, t)?.mul_polynomial(f_sigma));
            }
            Restriction::Section | Restriction::ShiftedSection(_) => {
                let (e, q) = e_sigma_tau_quotient(sigma, t)?;
                let q = match how {
                    Restriction::ShiftedSection(seed) => shifted(&q, seed, tau),
                    _ => q,
                };
                nvars = q.quotient_rank();
                let restricted = f_sigma.substitute_linear(q.section().rows(), nvars)?;
                terms.push(e.mul_polynomial(&restricted));
            }
        }
    }
    constant_integer(&RationalFunctionLF::sum(nvars, terms))
}

fn shifted(q: &QuotientMap, seed: u64, tau: &[usize]) -> QuotientMap {
    let salt = tau.iter().fold(seed, |acc, &i| acc.wrapping_mul(31).wrapping_add(i as u64 + 1));
    let mut rng = ChaCha8Rng::seed_from_u64(salt);
    let rows = (0..q.sublattice().len())
        .map(|_| (0..q.quotient_rank()).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect())
        .collect();
    q.with_section_shift(&IntMatrix::new(rows, q.quotient_rank()))
}

/// The localization map from integral piecewise polynomials of degree `k <= n`
/// to Minkowski weights of codimension `k`.
pub fn iota_star_with(fan: &Fan, f: &PiecewisePolynomial, how: Restriction) -> Result<MinkowskiWeight> {
    require_complete(fan)?;
    if !f.is_integral() {
        return Err(Error::NonIntegral);
    }
    let k = f.degree() as usize;
    if k > fan.ambient() {
        return Err(Error::DegreeMismatch(format!("degree {k} exceeds the dimension {}", fan.ambient())));
    }
    if f.pieces().len() != fan.maximal_cones().len() {
        return Err(Error::Validation("piecewise polynomial belongs to another fan".into()));
    }
    let cones = fan.cones_of_codim(k);
    let values = cones.iter().map(|tau| localize_at(fan, f, tau, how)).collect::<Result<Vec<_>>>()?;
    MinkowskiWeight::new(fan, k, values)
}

pub fn iota_star(fan: &Fan, f: &PiecewisePolynomial) -> Result<MinkowskiWeight> {
    iota_star_with(fan, f, Restriction::Section)
}

/// `sum_sigma e_sigma f_sigma`, a polynomial of degree `k - n`.
pub fn pushforward_polynomial(fan: &Fan, f: &PiecewisePolynomial) -> Result<Polynomial> {
    require_complete(fan)?;
    let n = fan.ambient();
    let terms = fan
        .maximal_cones()
        .iter()
        .zip(f.pieces())
        .map(|(s, p)| Ok(e_sigma(s)?.mul_polynomial(p)))
        .collect::<Result<Vec<_>>>()?;
    RationalFunctionLF::sum(n, terms).to_polynomial()
}

/// One row of the rank table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub degree: usize,
    pub pp: usize,
    pub m_pp: usize,
    pub mw: usize,
}

/// Ranks of `PP^k`, of `M * PP^{k-1}` inside it, and of the codimension-`k`
/// Minkowski weights, for `k = 0..=k_max`.
pub fn ranks_table(fan: &Fan, k_max: usize) -> Result<Vec<RankRow>> {
    require_complete(fan)?;
    let n = fan.ambient();
    let mut rows = Vec::new();
    let mut prev_basis: Vec<PiecewisePolynomial> = Vec::new();
    for k in 0..=k_max {
        let space = PpSpace::new(fan, k as u32);
        let basis = space.basis_q();
        let m_pp = if k == 0 {
            0
        } else {
            let vecs: Vec<Vec<crate::lattice::Rat>> = prev_basis
                .iter()
                .flat_map(|g| (0..n).map(move |j| g.mul_polynomial(&Polynomial::var(n, j))))
                .map(|p| p.map(|p| space.to_vector(&p)))
                .collect::<Result<_>>()?;
            crate::lattice::rank_q(&vecs, space.num_unknowns())
        };
        let mw = if k > n {
            0
        } else {
            let b = balancing_matrix(fan, k)?;
            b.ncols() - rank_int(&b)
        };
        rows.push(RankRow { degree: k, pp: basis.len(), m_pp, mw });
        prev_basis = basis;
    }
    Ok(rows)
}

/// Image of `iota^*` on integral piecewise polynomials of degree `k`, as a subgroup
/// of the group of codimension-`k` Minkowski weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub degree: usize,
    /// Rank of the Minkowski weight group.
    pub weight_rank: usize,
    /// Z-basis of the weight group, as weight vectors on codimension-`k` cones.
    pub weight_basis: Vec<LatticeVector>,
    /// Hermite basis of the image in coordinates of `weight_basis`.
    pub image_basis: IntMatrix,
    pub index: Index,
}

pub fn iota_star_image(fan: &Fan, k: usize) -> Result<ImageReport> {
    require_complete(fan)?;
    if k > fan.ambient() {
        return Err(Error::DegreeMismatch(format!("degree {k} exceeds the dimension {}", fan.ambient())));
    }
    let weights = integer_kernel_basis(&balancing_matrix(fan, k)?);
    let ncones = fan.cones_of_codim(k).len();
    let wb = IntMatrix::from_vectors(&weights, ncones);
    let coords = right_inverse(&wb)?;
    let basis = PpSpace::new(fan, k as u32).basis_z();
    let mut image = Vec::new();
    for g in &basis {
        let w = iota_star(fan, g)?;
        let c = coords.apply_left(w.values());
        if wb.apply_left(&c) != w.values() {
            return Err(Error::Internal("image of iota^* is not balanced".into()));
        }
        image.push(LatticeVector(c));
    }
    let (h, index) = subgroup_index(&image, weights.len());
    Ok(ImageReport { degree: k, weight_rank: weights.len(), weight_basis: weights, image_basis: h, index })
}

/// `rk PP^1 - n`, the rank of the Picard group.
pub fn picard_rank(fan: &Fan) -> Result<usize> {
    if !fan.support_spans() {
        return Err(Error::Validation("support of the fan does not span".into()));
    }
    Ok(PpSpace::new(fan, 1).rank() - fan.ambient())
}
