use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Int, LatticeVector, Rat};
use crate::localization::e_sigma;
use crate::polyalg::{Polynomial, RationalFunctionLF};
use crate::polyhedra::{minkowski_sum_all, normal_fan, Fan, LatticePolytope};

/// `n` lattice polytopes in a rank-`n` lattice together with the normal fan of
/// their sum and the vertices `u_i(sigma)` minimal on each maximal cone.
#[derive(Clone, Debug)]
pub struct PolytopeSystem {
    polytopes: Vec<LatticePolytope>,
    fan: Fan,
    min_vertices: Vec<Vec<LatticeVector>>,
}

/// `n! * V` together with `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolume {
    pub normalized: Int,
    pub volume: Rat,
}

impl MixedVolume {
    fn from_normalized(normalized: Int, n: usize) -> Self {
        let fact: Int = (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k));
        let volume = Rat::new(normalized.clone(), fact);
        MixedVolume { normalized, volume }
    }
}

impl PolytopeSystem {
    pub fn new(polytopes: Vec<LatticePolytope>) -> Result<Self> {
        let n = polytopes.len();
        if n == 0 {
            return Err(Error::Validation("empty polytope system".into()));
        }
        if let Some(p) = polytopes.iter().find(|p| p.ambient() != n) {
            return Err(Error::Validation(format!("{n} polytopes must live in rank {n}, found rank {}", p.ambient())));
        }
        let fan = normal_fan(&polytopes)?;
        let min_vertices = fan
            .maximal_cones()
            .iter()
            .map(|s| polytopes.iter().map(|p| p.min_vertex(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolytopeSystem { polytopes, fan, min_vertices })
    }

    pub fn from_i64(polytopes: &[&[&[i64]]]) -> Result<Self> {
        Self::new(polytopes.iter().map(|p| LatticePolytope::from_i64(p)).collect::<Result<Vec<_>>>()?)
    }

    pub fn rank(&self) -> usize {
        self.polytopes.len()
    }

    pub fn polytopes(&self) -> &[LatticePolytope] {
        &self.polytopes
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// `u_i(sigma)` for every maximal cone (outer index) and polytope (inner index).
    pub fn min_vertices(&self) -> &[Vec<LatticeVector>] {
        &self.min_vertices
    }
}

/// `n! V = (-1)^n sum_sigma e_sigma u_1(sigma) ... u_n(sigma)`.
pub fn mixed_volume_loc(sys: &PolytopeSystem) -> Result<MixedVolume> {
    let n = sys.rank();
    let terms = sys
        .fan()
        .maximal_cones()
        .iter()
        .zip(sys.min_vertices())
        .map(|(s, us)| {
            let prod = us.iter().fold(Polynomial::one(n), |acc, u| &acc * &Polynomial::linear(u));
            Ok(e_sigma(s)?.mul_polynomial(&prod))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = RationalFunctionLF::sum(n, terms).to_polynomial()?;
    let c = total.as_constant().unwrap_or_else(Rat::zero);
    let c = if n.is_multiple_of(2) { c } else { -c };
    if !c.is_integer() {
        return Err(Error::Internal(format!("localization sum {c} is not an integer")));
    }
    Ok(MixedVolume::from_normalized(c.to_integer(), n))
}

fn subset_sum(polytopes: &[LatticePolytope], mask: usize) -> Result<Option<LatticePolytope>> {
    let chosen: Vec<LatticePolytope> =
        polytopes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
    if chosen.is_empty() {
        return Ok(None);
    }
    minkowski_sum_all(&chosen).map(Some)
}

/// Alternating sum of lattice-point counts of partial Minkowski sums; the empty
/// sum is the origin and contributes `(-1)^n`.
pub fn mixed_volume_lattice_points(polytopes: &[LatticePolytope]) -> Result<MixedVolume> {
    let n = polytopes.len();
    let mut total = Int::zero();
    for mask in 0..(1usize << n) {
        let k = mask.count_ones() as usize;
        let count = match subset_sum(polytopes, mask)? {
            Some(p) => Int::from(p.num_lattice_points()),
            None => Int::one(),
        };
        if (n - k).is_multiple_of(2) {
            total += count;
        } else {
            total -= count;
        }
    }
    Ok(MixedVolume::from_normalized(total, n))
}

fn dilated_sum(polytopes: &[LatticePolytope], a: &[u32]) -> Result<LatticePolytope> {
    let parts: Vec<LatticePolytope> = polytopes.iter().zip(a).map(|(p, &k)| p.dilate(k)).collect();
    minkowski_sum_all(&parts)
}

/// All `m` in `N^n` with `|m| <= d`.
fn simplex_grid(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for x in 0..=d - used {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `binom(x - 1, m)` as a polynomial in `x` (variable `i` of `n`).
fn shifted_binomial(n: usize, i: usize, m: u32) -> Polynomial {
    let mut p = Polynomial::one(n);
    for j in 0..m {
        let factor = &Polynomial::var(n, i) - &Polynomial::constant(n, Rat::from_integer(Int::from(j + 1)));
        p = &p * &factor;
    }
    let fact: Int = (1..=m).fold(Int::one(), |acc, k| acc * Int::from(k));
    p.scale(&Rat::new(Int::one(), fact))
}

/// Coefficient of `a_1 ... a_n` in the polynomial `#(a_1 P_1 + ... + a_n P_n) ∩ M`.
///
/// The polynomial is interpolated from dilations with every `a_i >= 1` only, and the
/// coefficient is then read off by inclusion-exclusion of the fit over the 0/1 vectors.
pub fn mixed_volume_fit(polytopes: &[LatticePolytope]) -> Result<MixedVolume> {
    let n = polytopes.len();
    let d = n as u32;
    let grid = simplex_grid(n, d);
    let count = |m: &[u32]| -> Result<Int> {
        let a: Vec<u32> = m.iter().map(|x| x + 1).collect();
        Ok(Int::from(dilated_sum(polytopes, &a)?.num_lattice_points()))
    };
    let values: std::collections::BTreeMap<Vec<u32>, Int> =
        grid.iter().map(|m| Ok((m.clone(), count(m)?))).collect::<Result<_>>()?;
    // Newton forward differences at (1, ..., 1) in the binomial basis.
    let mut fit = Polynomial::zero(n);
    for m in &grid {
        let mut delta = Int::zero();
        for s in simplex_box(m) {
            let sign_odd = m.iter().zip(&s).map(|(a, b)| a - b).sum::<u32>() % 2 == 1;
            let coeff: Int = m
                .iter()
                .zip(&s)
                .fold(Int::one(), |acc, (&mi, &si)| acc * num_integer::binomial(Int::from(mi), Int::from(si)));
            let term = coeff * &values[&s];
            if sign_odd {
                delta -= term;
            } else {
                delta += term;
            }
        }
        if delta.is_zero() {
            continue;
        }
        let basis = (0..n).fold(Polynomial::one(n), |acc, i| &acc * &shifted_binomial(n, i, m[i]));
        fit = &fit + &basis.scale(&Rat::from_integer(delta));
    }
    // The fit must reproduce a count outside the interpolation grid.
    let probe: Vec<u32> = (0..n).map(|i| if i == 0 { d + 2 } else { 2 }).collect();
    let expect = Int::from(dilated_sum(polytopes, &probe)?.num_lattice_points());
    let at: Vec<Rat> = probe.iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
    if fit.eval(&at) != Rat::from_integer(expect) {
        return Err(Error::Internal("lattice point count is not a polynomial of degree n".into()));
    }
    // Inclusion-exclusion of the fitted polynomial over the 0/1 vectors.
    let mut c = Rat::zero();
    for mask in 0u32..(1 << n) {
        let at: Vec<Rat> = (0..n).map(|i| Rat::from_integer(Int::from((mask >> i) & 1))).collect();
        let v = fit.eval(&at);
        if (n as u32 - mask.count_ones()) % 2 == 1 {
            c -= v;
        } else {
            c += v;
        }
    }
    if c != fit.coefficient(&vec![1; n]) {
        return Err(Error::Internal("fitted polynomial has degree above n".into()));
    }
    if !c.is_integer() {
        return Err(Error::Internal(format!("fitted coefficient {c} is not an integer")));
    }
    Ok(MixedVolume::from_normalized(c.to_integer(), n))
}

/// All `s <= m` componentwise.
fn simplex_box(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &x in m {
        let mut next = Vec::new();
        for v in &out {
            for y in 0..=x {
                let mut w = v.clone();
                w.push(y);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn check(sys: &[&[&[i64]]], normalized: i64) {
        let s = PolytopeSystem::from_i64(sys).unwrap();
        let loc = mixed_volume_loc(&s).unwrap();
        let pts = mixed_volume_lattice_points(s.polytopes()).unwrap();
        let fit = mixed_volume_fit(s.polytopes()).unwrap();
        assert_eq!(loc.normalized, Int::from(normalized));
        assert_eq!(pts, loc);
        assert_eq!(fit, loc);
    }

    #[test]
    fn unit_segments() {
        check(&[&[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 1]]], 1);
        check(&[&[&[0, 0, 0], &[1, 0, 0]], &[&[0, 0, 0], &[0, 1, 0]], &[&[0, 0, 0], &[0, 0, 1]]], 1);
    }

    #[test]
    fn two_unit_squares() {
        let sq: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]];
        check(&[sq, sq], 2);
        let s = PolytopeSystem::from_i64(&[sq, sq]).unwrap();
        assert_eq!(mixed_volume_loc(&s).unwrap().volume, rat(1, 1));
    }

    #[test]
    fn two_standard_triangles() {
        let t: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1]];
        check(&[t, t], 1);
    }

    #[test]
    fn one_dimensional_length() {
        let seg = LatticePolytope::from_i64(&[&[0], &[3]]).unwrap();
        assert_eq!(mixed_volume_lattice_points(std::slice::from_ref(&seg)).unwrap().normalized, Int::from(3));
        assert_eq!(mixed_volume_fit(std::slice::from_ref(&seg)).unwrap().normalized, Int::from(3));
        let s = PolytopeSystem::new(vec![seg]).unwrap();
        assert_eq!(mixed_volume_loc(&s).unwrap().normalized, Int::from(3));
    }
}
