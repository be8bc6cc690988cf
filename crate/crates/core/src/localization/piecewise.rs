use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel_basis, rank_q, rat_from_int, rational_kernel, Int, IntMatrix, Rat};
use crate::polyalg::{Exponents, Polynomial};
use crate::polyhedra::{Cone, ConeKey, Fan};

/// Exponent vectors of the degree-`k` monomials in `n` variables, in descending
/// lexicographic order.
pub fn monomials(n: usize, k: u32) -> Vec<Exponents> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Restriction of a polynomial to the span of a cone, in the cone's local coordinates.
pub fn restrict_to_span(p: &Polynomial, cone: &Cone) -> Polynomial {
    let b = cone.span_basis().transpose();
    p.substitute_linear(b.rows(), cone.dim()).expect("span basis has matching width")
}

/// A continuous function on the support of a fan that is a homogeneous polynomial
/// of fixed degree on each maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    nvars: usize,
    degree: u32,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    /// Validates homogeneity and agreement on shared faces.
    pub fn new(fan: &Fan, degree: u32, pieces: Vec<Polynomial>) -> Result<Self> {
        let n = fan.ambient();
        if pieces.len() != fan.maximal_cones().len() {
            return Err(Error::Validation(format!(
                "expected {} pieces, got {}",
                fan.maximal_cones().len(),
                pieces.len()
            )));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.nvars() != n {
                return Err(Error::VariableMismatch(p.nvars(), n));
            }
            if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(degree)) {
                return Err(Error::DegreeMismatch(format!("piece {i} is not homogeneous of degree {degree}")));
            }
        }
        let keys = fan.maximal_keys();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let common: ConeKey = keys[i].iter().copied().filter(|x| keys[j].contains(x)).collect();
                let face = fan.cone(&common).expect("fans are closed under intersection");
                if restrict_to_span(&pieces[i], face) != restrict_to_span(&pieces[j], face) {
                    return Err(Error::Validation(format!("pieces {i} and {j} disagree on their common face")));
                }
            }
        }
        Ok(PiecewisePolynomial { nvars: n, degree, pieces })
    }

    /// The global polynomial `p` restricted to every cone.
    pub fn global(fan: &Fan, p: &Polynomial) -> Result<Self> {
        let degree = p.degree().unwrap_or(0);
        Self::new(fan, degree, vec![p.clone(); fan.maximal_cones().len()])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &Polynomial {
        &self.pieces[i]
    }

    /// Integer coefficients in the monomial basis on every cone.
    pub fn is_integral(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree || self.pieces.len() != other.pieces.len() {
            return Err(Error::DegreeMismatch("summands have different degrees".into()));
        }
        let pieces = self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Ok(PiecewisePolynomial { pieces, ..self.clone() })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PiecewisePolynomial { pieces: self.pieces.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    /// Product with a global homogeneous polynomial.
    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<Self> {
        let pieces = self.pieces.iter().map(|q| q.checked_mul(p)).collect::<Result<Vec<_>>>()?;
        let degree = if p.is_zero() { self.degree } else { self.degree + p.degree().unwrap() };
        Ok(PiecewisePolynomial { pieces, degree, nvars: self.nvars })
    }

    /// Pointwise product of two piecewise polynomials on the same fan.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let pieces = self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.checked_mul(b)).collect::<Result<_>>()?;
        Ok(PiecewisePolynomial { pieces, degree: self.degree + other.degree, nvars: self.nvars })
    }
}

/// `Psi_tau`: on each maximal cone containing `tau`, the product of the dual basis
/// elements of the rays of `tau`; zero elsewhere. Requires a unimodular fan.
pub fn psi_tau(fan: &Fan, tau: &[usize]) -> Result<PiecewisePolynomial> {
    if !fan.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    if fan.cone(tau).is_none() {
        return Err(Error::NotAFace(format!("{tau:?} is not a cone of the fan")));
    }
    let n = fan.ambient();
    let mut pieces = Vec::new();
    for (sigma, key) in fan.maximal_cones().iter().zip(fan.maximal_keys()) {
        if !tau.iter().all(|i| key.contains(i)) {
            pieces.push(Polynomial::zero(n));
            continue;
        }
        let dual = sigma.dual_basis()?;
        let mut p = Polynomial::one(n);
        for &i in tau {
            let pos = sigma.rays().iter().position(|r| r == &fan.rays()[i]).unwrap();
            p = &p * &Polynomial::linear(&dual[pos]);
        }
        pieces.push(p);
    }
    PiecewisePolynomial::new(fan, tau.len() as u32, pieces)
}

/// The linear constraints cutting out degree-`k` piecewise polynomials inside the
/// space of per-cone coefficient vectors.
#[derive(Clone, Debug)]
pub struct PpSpace<'a> {
    fan: &'a Fan,
    degree: u32,
    monomials: Vec<Exponents>,
    constraints: Vec<Vec<Rat>>,
}

impl<'a> PpSpace<'a> {
    pub fn new(fan: &'a Fan, degree: u32) -> Self {
        let n = fan.ambient();
        let monos = monomials(n, degree);
        let m = monos.len();
        let ncones = fan.maximal_cones().len();
        let mut cache: BTreeMap<ConeKey, Vec<BTreeMap<Exponents, Rat>>> = BTreeMap::new();
        let mut constraints = Vec::new();
        let keys = fan.maximal_keys();
        for i in 0..ncones {
            for j in i + 1..ncones {
                let common: ConeKey = keys[i].iter().copied().filter(|x| keys[j].contains(x)).collect();
                let restricted = cache.entry(common.clone()).or_insert_with(|| {
                    let face = fan.cone(&common).expect("common face");
                    monos
                        .iter()
                        .map(|e| {
                            let p = Polynomial::from_terms(n, [(e.clone(), Rat::one())]);
                            restrict_to_span(&p, face).terms().map(|(z, c)| (z.clone(), c.clone())).collect()
                        })
                        .collect()
                });
                let mut zs: Vec<&Exponents> = restricted.iter().flat_map(|r| r.keys()).collect();
                zs.sort();
                zs.dedup();
                for z in zs {
                    let mut row = vec![Rat::zero(); ncones * m];
                    for (t, r) in restricted.iter().enumerate() {
                        if let Some(c) = r.get(z) {
                            row[i * m + t] = c.clone();
                            row[j * m + t] = -c.clone();
                        }
                    }
                    constraints.push(row);
                }
            }
        }
        PpSpace { fan, degree, monomials: monos, constraints }
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn num_unknowns(&self) -> usize {
        self.monomials.len() * self.fan.maximal_cones().len()
    }

    pub fn to_vector(&self, f: &PiecewisePolynomial) -> Vec<Rat> {
        f.pieces().iter().flat_map(|p| self.monomials.iter().map(move |e| p.coefficient(e))).collect()
    }

    pub fn from_vector(&self, v: &[Rat]) -> PiecewisePolynomial {
        let n = self.fan.ambient();
        let m = self.monomials.len();
        let pieces = (0..self.fan.maximal_cones().len())
            .map(|i| {
                Polynomial::from_terms(n, self.monomials.iter().cloned().zip(v[i * m..(i + 1) * m].iter().cloned()))
            })
            .collect();
        PiecewisePolynomial { nvars: n, degree: self.degree, pieces }
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        self.num_unknowns() - rank_q(&self.constraints, self.num_unknowns())
    }

    /// A basis over Q.
    pub fn basis_q(&self) -> Vec<PiecewisePolynomial> {
        rational_kernel(&self.constraints, self.num_unknowns()).iter().map(|v| self.from_vector(v)).collect()
    }

    /// A Z-basis of the integral piecewise polynomials.
    pub fn basis_z(&self) -> Vec<PiecewisePolynomial> {
        let rows: Vec<Vec<Int>> = self
            .constraints
            .iter()
            .map(|r| {
                let l = r.iter().fold(Int::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
                r.iter().map(|x| (x * rat_from_int(&l)).to_integer()).collect()
            })
            .collect();
        let m = IntMatrix::new(rows, self.num_unknowns());
        integer_kernel_basis(&m)
            .iter()
            .map(|v| self.from_vector(&v.iter().map(rat_from_int).collect::<Vec<_>>()))
            .collect()
    }
}

/// Ring over which a basis of piecewise polynomials is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z,
    Q,
}

pub fn pp_basis(fan: &Fan, k: u32, ring: Ring) -> Vec<PiecewisePolynomial> {
    let space = PpSpace::new(fan, k);
    match ring {
        Ring::Q => space.basis_q(),
        Ring::Z => space.basis_z(),
    }
}
