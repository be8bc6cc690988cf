use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, Int, Rat};
use crate::polyalg::polynomial::Polynomial;
use crate::polyalg::rational::RationalFunctionLF;

/// One summand `coeff * x^w / prod (1 - x^u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: Rat,
    pub numerator: Vec<Int>,
    pub denominators: Vec<Vec<Int>>,
}

/// A finite sum of Laurent monomials over products of binomials `1 - x^u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentGF {
    nvars: usize,
    terms: Vec<LaurentTerm>,
}

/// Largest order tried before giving up on a principal part.
pub const MAX_ORDER: u32 = 64;

impl LaurentGF {
    pub fn zero(nvars: usize) -> Self {
        LaurentGF { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, Rat::one(), vec![Int::zero(); nvars])
    }

    pub fn monomial(nvars: usize, coeff: Rat, w: Vec<Int>) -> Self {
        LaurentGF { nvars, terms: vec![LaurentTerm { coeff, numerator: w, denominators: Vec::new() }] }
    }

    /// `1 / prod (1 - x^u)`.
    pub fn inverse_binomials(nvars: usize, us: Vec<Vec<Int>>) -> Result<Self> {
        let mut gf = Self::zero(nvars);
        gf.push_term(Rat::one(), vec![Int::zero(); nvars], us)?;
        Ok(gf)
    }

    pub fn push_term(&mut self, coeff: Rat, numerator: Vec<Int>, denominators: Vec<Vec<Int>>) -> Result<()> {
        if numerator.len() != self.nvars {
            return Err(Error::VariableMismatch(numerator.len(), self.nvars));
        }
        for u in &denominators {
            if u.len() != self.nvars {
                return Err(Error::VariableMismatch(u.len(), self.nvars));
            }
            if u.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector);
            }
        }
        if !coeff.is_zero() {
            self.terms.push(LaurentTerm { coeff, numerator, denominators });
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LaurentGF { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|t| LaurentTerm { coeff: &t.coeff * c, ..t.clone() }).collect();
        LaurentGF { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::new();
        for s in &self.terms {
            for t in &other.terms {
                let mut den = s.denominators.clone();
                den.extend(t.denominators.iter().cloned());
                terms.push(LaurentTerm {
                    coeff: &s.coeff * &t.coeff,
                    numerator: s.numerator.iter().zip(&t.numerator).map(|(a, b)| a + b).collect(),
                    denominators: den,
                });
            }
        }
        LaurentGF { nvars: self.nvars, terms }
    }

    /// Common denominator (as a multiset of exponent vectors) and the Laurent
    /// polynomial numerator over it.
    fn over_common_denominator(&self) -> (Vec<Vec<Int>>, BTreeMap<Vec<Int>, Rat>) {
        let mut common: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
        for t in &self.terms {
            let mut counts: BTreeMap<&Vec<Int>, usize> = BTreeMap::new();
            for u in &t.denominators {
                *counts.entry(u).or_insert(0) += 1;
            }
            for (u, m) in counts {
                let e = common.entry(u.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut numerator: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
        for t in &self.terms {
            let mut missing = common.clone();
            for u in &t.denominators {
                *missing.get_mut(u).unwrap() -= 1;
            }
            let mut poly: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
            poly.insert(t.numerator.clone(), t.coeff.clone());
            for (u, m) in missing {
                for _ in 0..m {
                    let mut next = poly.clone();
                    for (w, c) in &poly {
                        let shifted: Vec<Int> = w.iter().zip(&u).map(|(a, b)| a + b).collect();
                        *next.entry(shifted).or_insert_with(Rat::zero) -= c;
                    }
                    next.retain(|_, c| !c.is_zero());
                    poly = next;
                }
            }
            for (w, c) in poly {
                *numerator.entry(w).or_insert_with(Rat::zero) += c;
            }
        }
        numerator.retain(|_, c| !c.is_zero());
        let den = common.into_iter().flat_map(|(u, m)| std::iter::repeat_n(u, m)).collect();
        (den, numerator)
    }

    pub fn is_zero(&self) -> bool {
        self.over_common_denominator().1.is_empty()
    }

    /// Principal part at the identity of the torus, scanning degrees up to `order`
    /// above the most singular summand.
    ///
    /// With `x = exp(z)` a summand is `c exp(<w,z>) prod Td(<u,z>) / (-<u,z>)`, where
    /// `Td(s) = s / (e^s - 1)`. Homogeneous components are summed one degree at a
    /// time over linear-form denominators; the lowest form in `z` equals the lowest
    /// form in the local parameters `x_i - 1`.
    pub fn principal_part_with_order(&self, order: u32) -> Result<(RationalFunctionLF, i64)> {
        let kmax = self.terms.iter().map(|t| t.denominators.len()).max().unwrap_or(0) as i64;
        let mut cap = order.min(2);
        loop {
            let expansions: Vec<Polynomial> = self.terms.iter().map(|t| self.term_expansion(t, cap)).collect();
            for j in 0..=cap as i64 {
                let degree = j - kmax;
                let mut parts = Vec::new();
                for (t, p) in self.terms.iter().zip(&expansions) {
                    let k = t.denominators.len() as i64;
                    if degree + k < 0 {
                        continue;
                    }
                    let numerator = p.homogeneous_part((degree + k) as u32);
                    if numerator.is_zero() {
                        continue;
                    }
                    let factors: Vec<(Vec<Int>, u32)> =
                        t.denominators.iter().map(|u| (u.iter().map(|x| -x).collect(), 1)).collect();
                    parts.push(RationalFunctionLF::new(numerator, &factors)?);
                }
                let component = RationalFunctionLF::sum(self.nvars, parts);
                if !component.is_zero() {
                    return Ok((component, degree));
                }
            }
            if cap >= order {
                return Err(if self.is_zero() {
                    Error::ZeroFunction
                } else {
                    Error::OrderBudgetExceeded(order as usize)
                });
            }
            cap = (2 * cap).min(order);
        }
    }

    /// Principal part at the identity.
    pub fn principal_part(&self) -> Result<(RationalFunctionLF, i64)> {
        self.principal_part_with_order(MAX_ORDER)
    }

    /// `c exp(<w,z>) prod Td(<u,z>)` truncated above total degree `cap`.
    fn term_expansion(&self, t: &LaurentTerm, cap: u32) -> Polynomial {
        let exp: Vec<Rat> = (0..=cap).map(|k| Rat::one() / factorial(k)).collect();
        let todd: Vec<Rat> = bernoulli(cap).into_iter().zip(&exp).map(|(b, f)| b * f).collect();
        let mut out = series_in_form(&t.numerator, &exp, cap).scale(&t.coeff);
        for u in &t.denominators {
            out = truncate(&(&out * &series_in_form(u, &todd, cap)), cap);
        }
        out
    }

    /// Expansion as a formal series in the direction of `grading`, keeping the terms
    /// `x^w` with `<w, grading> <= max_degree`.
    ///
    /// Binomials with `<u, grading> < 0` are rewritten as `-x^{-u} / (1 - x^{-u})`
    /// first, so that every summand expands in the same direction.
    pub fn graded_expansion(&self, grading: &[Int], max_degree: i64) -> Result<BTreeMap<Vec<Int>, Rat>> {
        let max = Int::from(max_degree);
        let mut out: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
        for t in &self.terms {
            let mut coeff = t.coeff.clone();
            let mut start = t.numerator.clone();
            let mut steps = Vec::new();
            for u in &t.denominators {
                let g = dot(u, grading);
                if g.is_zero() {
                    return Err(Error::Validation("grading vanishes on a denominator exponent".into()));
                }
                if g.is_negative() {
                    coeff = -coeff;
                    let flipped: Vec<Int> = u.iter().map(|x| -x).collect();
                    start = start.iter().zip(&flipped).map(|(a, b)| a + b).collect();
                    steps.push((flipped, -g));
                } else {
                    steps.push((u.clone(), g));
                }
            }
            let mut frontier: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
            frontier.insert(start, coeff);
            for (u, g) in &steps {
                let mut next: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
                for (w, c) in frontier {
                    let mut w = w;
                    let mut deg = dot(&w, grading);
                    while deg <= max {
                        *next.entry(w.clone()).or_insert_with(Rat::zero) += &c;
                        w = w.iter().zip(u).map(|(a, b)| a + b).collect();
                        deg += g;
                    }
                }
                frontier = next;
            }
            for (w, c) in frontier {
                if dot(&w, grading) <= max {
                    *out.entry(w).or_insert_with(Rat::zero) += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

fn factorial(k: u32) -> Rat {
    Rat::from_integer((1..=k).map(Int::from).product())
}

/// Bernoulli numbers `B_0..B_m` with `B_1 = -1/2`, the coefficients of `s / (e^s - 1)`.
fn bernoulli(m: u32) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for n in 1..=m {
        let s: Rat = (0..n)
            .map(|j| Rat::from_integer(num_integer::binomial(Int::from(n + 1), Int::from(j))) * &b[j as usize])
            .sum();
        b.push(-s / Rat::from_integer(Int::from(n + 1)));
    }
    b
}

/// `sum_k coeffs[k] <form, z>^k` up to degree `cap`.
fn series_in_form(form: &[Int], coeffs: &[Rat], cap: u32) -> Polynomial {
    let l = Polynomial::linear(form);
    let mut power = Polynomial::one(form.len());
    let mut out = Polynomial::zero(form.len());
    for c in coeffs.iter().take(cap as usize + 1) {
        out = &out + &power.scale(c);
        power = &power * &l;
    }
    out
}

fn truncate(p: &Polynomial, cap: u32) -> Polynomial {
    Polynomial::from_terms(
        p.nvars(),
        p.terms().filter(|(e, _)| e.iter().sum::<u32>() <= cap).map(|(e, c)| (e.clone(), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};
    use crate::polyalg::Polynomial;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unimodular_cone_principal_part() {
        let gf = LaurentGF::inverse_binomials(2, vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let (pp, d) = gf.principal_part().unwrap();
        assert_eq!(d, -2);
        assert_eq!(pp.to_string(), "1/(a b)");
    }

    #[test]
    fn principal_parts_of_binomial_numerators() {
        let u = iv(&[1, 0, 0]);
        let two_u = iv(&[2, 0, 0]);
        let mut gf = LaurentGF::one(3);
        gf.push_term(rat(1, 1), u.clone(), vec![]).unwrap();
        let (pp, d) = gf.principal_part().unwrap();
        assert_eq!((pp.to_string(), d), ("2".to_string(), 0));

        let mut gf = LaurentGF::one(3);
        gf.push_term(rat(-1, 1), two_u, vec![]).unwrap();
        let (pp, d) = gf.principal_part().unwrap();
        assert_eq!(d, 1);
        assert_eq!(pp.to_polynomial().unwrap(), Polynomial::linear(&iv(&[-2, 0, 0])));
    }

    #[test]
    fn zero_function_is_rejected() {
        let mut gf = LaurentGF::one(1);
        gf.push_term(rat(-1, 1), iv(&[0]), vec![]).unwrap();
        assert_eq!(gf.principal_part(), Err(Error::ZeroFunction));
        // 1/(1-x) + x^{-1}/(1-x^{-1}) = 0
        let mut gf = LaurentGF::inverse_binomials(1, vec![iv(&[1])]).unwrap();
        gf.push_term(rat(1, 1), iv(&[-1]), vec![iv(&[-1])]).unwrap();
        assert_eq!(gf.principal_part(), Err(Error::ZeroFunction));
    }

    #[test]
    fn small_budget_is_reported() {
        let mut gf = LaurentGF::one(1);
        for k in 1..=4 {
            let c = if k % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            gf.push_term(c * Rat::from_integer(num_integer::binomial(int(4), int(k))), iv(&[k]), vec![]).unwrap();
        }
        // (1 - x)^4 vanishes to order 4
        assert_eq!(gf.principal_part_with_order(3), Err(Error::OrderBudgetExceeded(3)));
        assert_eq!(gf.principal_part().unwrap().1, 4);
    }

    #[test]
    fn graded_expansion_of_flipped_terms() {
        // x^{-1}/(1-x^{-1}) expands as -(1 + x + x^2 + ...)
        let gf = {
            let mut g = LaurentGF::zero(1);
            g.push_term(rat(1, 1), iv(&[-1]), vec![iv(&[-1])]).unwrap();
            g
        };
        let s = gf.graded_expansion(&iv(&[1]), 2).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.values().all(|c| *c == rat(-1, 1)));
    }
}
