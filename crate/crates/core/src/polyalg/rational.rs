use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{content, dot, rat_from_int, Int, Rat};
use crate::polyalg::polynomial::{variable_name, Polynomial};
use crate::polyalg::PointSampler;

/// A nonzero primitive integer linear form whose first nonzero coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<Int>);

impl LinearForm {
    /// Normalizes `v` and drops the scalar; fails on the zero vector.
    pub fn new(v: Vec<Int>) -> Result<Self> {
        Ok(Self::normalize(&v)?.0)
    }

    /// Writes `v = scalar * form` with `form` normalized.
    pub fn normalize(v: &[Int]) -> Result<(LinearForm, Int)> {
        let g = content(v);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let first = v.iter().find(|c| !c.is_zero()).unwrap();
        let scalar = if first.is_negative() { -g } else { g };
        Ok((LinearForm(v.iter().map(|c| c / &scalar).collect()), scalar))
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::linear(&self.0)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.0.iter().zip(point).map(|(c, x)| rat_from_int(c) * x).sum()
    }

    pub fn eval_int(&self, v: &[Int]) -> Int {
        dot(&self.0, v)
    }

    fn is_single_variable(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1 && self.0.iter().all(|c| c.abs() <= Int::one())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial().to_string().replace(' ', ""))
    }
}

/// A quotient of a polynomial by a product of linear forms (with multiplicities).
///
/// Kept reduced: no denominator factor divides the numerator. Since linear
/// forms are pairwise coprime irreducibles, this representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionLF {
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
}

impl RationalFunctionLF {
    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunctionLF { numerator: p, denominator: BTreeMap::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    /// `numerator / prod(factor^mult)`; factors need not be normalized.
    pub fn new(numerator: Polynomial, factors: &[(Vec<Int>, u32)]) -> Result<Self> {
        let n = numerator.nvars();
        let mut scalar = Rat::one();
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (v, m) in factors {
            if v.len() != n {
                return Err(Error::VariableMismatch(v.len(), n));
            }
            let (form, c) = LinearForm::normalize(v)?;
            scalar *= num_traits::pow(rat_from_int(&c), *m as usize);
            *den.entry(form).or_insert(0) += m;
        }
        den.retain(|_, m| *m > 0);
        let mut out = RationalFunctionLF { numerator: numerator.scale(&scalar.recip()), denominator: den };
        out.reduce();
        Ok(out)
    }

    /// `1 / prod(forms)`.
    pub fn inverse_product(nvars: usize, forms: &[Vec<Int>]) -> Result<Self> {
        let factors: Vec<(Vec<Int>, u32)> = forms.iter().map(|f| (f.clone(), 1)).collect();
        Self::new(Polynomial::one(nvars), &factors)
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.denominator
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Degree `deg(numerator) - deg(denominator)` when the numerator is homogeneous.
    pub fn degree(&self) -> Option<i64> {
        if self.numerator.is_zero() || !self.numerator.is_homogeneous() {
            return None;
        }
        Some(self.numerator.degree().unwrap() as i64 - self.denominator_degree() as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.numerator.is_zero() || self.numerator.is_homogeneous()
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let forms: Vec<LinearForm> = self.denominator.keys().cloned().collect();
        for form in forms {
            let m = self.denominator[&form];
            let mut left = m;
            while left > 0 {
                match self.numerator.divide_by_linear_form_exact(&form) {
                    Ok(q) => {
                        self.numerator = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left == 0 {
                self.denominator.remove(&form);
            } else {
                self.denominator.insert(form, left);
            }
        }
    }

    fn numerator_over(&self, den: &BTreeMap<LinearForm, u32>) -> Polynomial {
        let mut num = self.numerator.clone();
        for (form, &m) in den {
            let have = self.denominator.get(form).copied().unwrap_or(0);
            if m > have {
                num = &num * &form.to_polynomial().pow(m - have);
            }
        }
        num
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch(self.nvars(), other.nvars()));
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut den = self.denominator.clone();
        for (form, &m) in &other.denominator {
            let e = den.entry(form.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let num = &self.numerator_over(&den) + &other.numerator_over(&den);
        let mut out = RationalFunctionLF { numerator: num, denominator: den };
        out.reduce();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("variable count mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunctionLF { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunctionLF { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.denominator.clone();
        for (form, &m) in &other.denominator {
            *den.entry(form.clone()).or_insert(0) += m;
        }
        let mut out = RationalFunctionLF { numerator: &self.numerator * &other.numerator, denominator: den };
        out.reduce();
        out
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        self.mul(&Self::from_polynomial(p.clone()))
    }

    /// Sum of many terms, combined pairwise in a balanced tree so that
    /// neighbouring terms cancel early.
    pub fn sum(nvars: usize, items: Vec<RationalFunctionLF>) -> Self {
        let mut layer = items;
        if layer.is_empty() {
            return Self::zero(nvars);
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(x) = it.next() {
                match it.next() {
                    Some(y) => next.push(x.add(&y)),
                    None => next.push(x),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    /// Exact value at a point; `PoleAtPoint` if a denominator factor vanishes there.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars() {
            return Err(Error::VariableMismatch(point.len(), self.nvars()));
        }
        let mut den = Rat::one();
        for (form, &m) in &self.denominator {
            let v = form.eval(point);
            if v.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            den *= num_traits::pow(v, m as usize);
        }
        Ok(self.numerator.eval(point) / den)
    }

    /// Clears every denominator factor by exact division.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let mut num = self.numerator.clone();
        for (form, &m) in &self.denominator {
            for _ in 0..m {
                num = num.divide_by_linear_form_exact(form).map_err(|_| Error::NotPolynomial(self.to_string()))?;
            }
        }
        Ok(num)
    }

    /// Pulls back along the linear map sending variable `j` of `self` to the linear
    /// form `rows[j]` in `target_nvars` variables (rows must be linearly independent).
    pub fn substitute_linear_forms(&self, rows: &[Vec<Int>], target_nvars: usize) -> Result<Self> {
        if rows.len() != self.nvars() {
            return Err(Error::VariableMismatch(rows.len(), self.nvars()));
        }
        let images: Vec<Polynomial> = rows.iter().map(|r| Polynomial::linear(r)).collect();
        let numerator = self.numerator.substitute(&images, target_nvars)?;
        let mut factors = Vec::new();
        for (form, &m) in &self.denominator {
            let mut v = vec![Int::zero(); target_nvars];
            for (c, row) in form.coeffs().iter().zip(rows) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x += c * r;
                }
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::Internal("denominator form collapsed under substitution".into()));
            }
            factors.push((v, m));
        }
        Self::new(numerator, &factors)
    }

    /// Equality decided by exact evaluation at seeded pseudo-random points.
    pub fn equals_by_evaluation(&self, other: &Self, seed: u64, points: usize) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let mut sampler = PointSampler::new(seed);
        let mut checked = 0;
        let mut attempts = 0;
        while checked < points && attempts < 100 * points.max(1) {
            attempts += 1;
            let p = sampler.point(self.nvars());
            match (self.eval(&p), other.eval(&p)) {
                (Ok(x), Ok(y)) => {
                    if x != y {
                        return false;
                    }
                    checked += 1;
                }
                _ => continue,
            }
        }
        checked == points
    }

    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        let num = self.numerator.display_with(names);
        if self.denominator.is_empty() {
            return num;
        }
        let mut forms: Vec<(&LinearForm, u32)> = self.denominator.iter().map(|(f, &m)| (f, m)).collect();
        forms.sort_by_key(|(f, _)| {
            let support: Vec<usize> = (0..f.nvars()).filter(|&i| !f.coeffs()[i].is_zero()).collect();
            (support, f.coeffs().to_vec())
        });
        let mut factors: Vec<(String, bool)> = Vec::new();
        for (form, m) in forms {
            let text = form.to_polynomial().display_with(names).replace(' ', "");
            let bare = form.is_single_variable();
            let body = if bare { text } else { format!("({text})") };
            let body = if m > 1 { format!("{body}^{m}") } else { body };
            factors.push((body, bare && m == 1));
        }
        let mut den = String::new();
        for (i, (f, bare)) in factors.iter().enumerate() {
            if i > 0 && *bare && factors[i - 1].1 {
                den.push(' ');
            }
            den.push_str(f);
        }
        let num = if self.numerator.num_terms() > 1 { format!("({num})") } else { num };
        if factors.len() == 1 {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

impl fmt::Display for RationalFunctionLF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&variable_name))
    }
}
