use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lattice::{Int, Rat};
use crate::polyalg::polynomial::{Exponents, Polynomial};

/// A power series in `t_1..t_n` truncated above total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Exponents, Rat>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        TruncatedSeries { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, Rat::one())
    }

    pub fn constant(nvars: usize, order: u32, c: Rat) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn from_polynomial(p: &Polynomial, order: u32) -> Self {
        let mut s = Self::zero(p.nvars(), order);
        for (e, c) in p.terms() {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() || e.iter().sum::<u32>() > self.order {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = TruncatedSeries { order: self.order.min(other.order), ..self.clone() };
        out.terms.retain(|e, _| e.iter().sum::<u32>() <= out.order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        TruncatedSeries { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.order.min(other.order));
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > out.order {
                    continue;
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Lowest nonvanishing homogeneous component and its degree.
    pub fn lowest_form(&self) -> Option<(u32, Polynomial)> {
        let d = self.terms.keys().map(|e| e.iter().sum::<u32>()).min()?;
        let p = Polynomial::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())),
        );
        Some((d, p))
    }
}

/// `binom(u, k)` for an arbitrary integer `u`.
fn generalized_binomial(u: &Int, k: u32) -> Rat {
    let mut out = Rat::one();
    for j in 0..k {
        out = out * Rat::from_integer(u - Int::from(j)) / Rat::from_integer(Int::from(j + 1));
    }
    out
}

/// Expansion of `x^u = prod (1 + t_i)^{u_i}` in the local parameters `t_i = x^{e_i} - 1`.
pub fn char_series(u: &[Int], order: u32) -> TruncatedSeries {
    let n = u.len();
    let mut out = TruncatedSeries::one(n, order);
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let mut factor = TruncatedSeries::zero(n, order);
        for k in 0..=order {
            let mut e = vec![0; n];
            e[i] = k;
            factor.add_term(e, generalized_binomial(ui, k));
        }
        out = out.mul(&factor);
    }
    out
}
