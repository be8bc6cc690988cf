use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{rat_from_int, Int, Rat};
use crate::polyalg::LinearForm;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial over Q in a fixed number of variables.
///
/// Variables are the coordinate functions of `M`, printed as `a, b, c, ...`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

pub fn variable_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    /// The linear polynomial `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Int]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, rat_from_int(c));
        }
        p
    }

    pub fn linear_rat(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// The degree-`d` graded piece.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.coefficient(&vec![0; self.nvars])),
            _ => None,
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += m;
        }
        total
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(images.len(), self.nvars));
        }
        if let Some(bad) = images.iter().find(|p| p.nvars != target_nvars) {
            return Err(Error::VariableMismatch(bad.nvars, target_nvars));
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target_nvars), p.clone()]).collect();
        let mut out = Polynomial::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut m = Polynomial::constant(target_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                m = &m * &powers[i][k as usize];
            }
            out = &out + &m;
        }
        Ok(out)
    }

    /// Linear change of variables: `x_i -> sum_j matrix[i][j] * y_j` with `y` having
    /// `target_nvars` variables.
    pub fn substitute_linear(&self, matrix: &[Vec<Int>], target_nvars: usize) -> Result<Polynomial> {
        let images: Vec<Polynomial> = matrix
            .iter()
            .map(|row| {
                if row.len() != target_nvars {
                    return Err(Error::VariableMismatch(row.len(), target_nvars));
                }
                Ok(Polynomial::linear(row))
            })
            .collect::<Result<_>>()?;
        self.substitute(&images, target_nvars)
    }

    /// Splits into pieces by the exponent of variable `j`; keys are that exponent and
    /// the pieces have exponent 0 in `j`.
    fn split_by_var(&self, j: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e0 = e.clone();
            let d = e0[j];
            e0[j] = 0;
            out.entry(d).or_insert_with(|| Polynomial::zero(self.nvars)).add_term(e0, c.clone());
        }
        out
    }

    fn shift_var(&self, j: usize, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[j] += d;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / form`; fails with `NotDivisible` when the division
    /// leaves a remainder.
    pub fn divide_by_linear_form_exact(&self, form: &LinearForm) -> Result<Polynomial> {
        let coeffs = form.coeffs();
        if coeffs.len() != self.nvars {
            return Err(Error::VariableMismatch(coeffs.len(), self.nvars));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let j = coeffs.iter().position(|c| !c.is_zero()).expect("linear forms are nonzero");
        let lead = rat_from_int(&coeffs[j]);
        let mut rest_coeffs = coeffs.to_vec();
        rest_coeffs[j] = Int::zero();
        let rest = Polynomial::linear(&rest_coeffs);

        // self = (lead x_j + rest) * q, q = sum_d x_j^d Q_d
        let pieces = self.split_by_var(j);
        let top = *pieces.keys().next_back().unwrap();
        let piece = |d: u32| pieces.get(&d).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars));
        let inv = lead.recip();
        let mut quotient = Polynomial::zero(self.nvars);
        let mut q_next = Polynomial::zero(self.nvars);
        for d in (1..=top).rev() {
            // P_d = lead * Q_{d-1} + rest * Q_d
            let q = (&piece(d) - &(&rest * &q_next)).scale(&inv);
            quotient = &quotient + &q.shift_var(j, d - 1);
            q_next = q;
        }
        let remainder = &piece(0) - &(&rest * &q_next);
        if !remainder.is_zero() {
            return Err(Error::NotDivisible(form.to_string()));
        }
        Ok(quotient)
    }

    /// Content-style helper: lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> Int {
        use num_integer::Integer;
        self.terms.values().fold(Int::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Terms in display order: higher total degree first, then lexicographically
    /// descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names(i) } else { format!("{}^{}", names(i), p) })
                .collect::<Vec<_>>()
                .join(" ");
            let coef = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({mag})") };
            if mono.is_empty() {
                s.push_str(&coef);
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&coef);
                s.push_str(&mono);
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&variable_name))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("variable count mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self.checked_add(&-other).expect("variable count mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("variable count mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    fn a() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn b() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn ring_basics() {
        let p = &(&a() + &b()) * &(&a() - &b());
        let expect = &a().pow(2) - &b().pow(2);
        assert_eq!(p, expect);
        assert_eq!(&p + &Polynomial::zero(2), p);
        // a -> a, b -> a kills a^2 - b^2
        let images = [Polynomial::var(2, 0), Polynomial::var(2, 0)];
        assert!(expect.substitute(&images, 2).unwrap().is_zero());
        assert!(matches!(a().checked_add(&Polynomial::var(3, 0)), Err(Error::VariableMismatch(2, 3))));
    }

    #[test]
    fn exact_division_examples() {
        let diff = LinearForm::new(vec![int(1), int(-1)]).unwrap();
        let sum = LinearForm::new(vec![int(1), int(1)]).unwrap();
        let p = &a().pow(2) - &b().pow(2);
        assert_eq!(p.divide_by_linear_form_exact(&diff).unwrap(), &a() + &b());
        assert!(Polynomial::zero(2).divide_by_linear_form_exact(&diff).unwrap().is_zero());
        let q = &(&a().pow(2) * &b()) + &(&a() * &b().pow(2));
        let quotient = q.divide_by_linear_form_exact(&sum).unwrap();
        assert_eq!(quotient, &a() * &b());
        assert_eq!(&quotient * &sum.to_polynomial(), q);
        assert!(matches!(a().divide_by_linear_form_exact(&diff), Err(Error::NotDivisible(_))));
        assert!(matches!(Polynomial::one(2).divide_by_linear_form_exact(&diff), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn division_by_form_with_later_leading_variable() {
        let form = LinearForm::new(vec![int(0), int(2), int(-3)]).unwrap();
        let g = Polynomial::from_terms(
            3,
            [(vec![2, 0, 1], rat(1, 2)), (vec![0, 1, 1], rat(-7, 1)), (vec![1, 1, 0], rat(3, 1))],
        );
        let p = &g * &form.to_polynomial();
        assert_eq!(p.divide_by_linear_form_exact(&form).unwrap(), g);
    }

    #[test]
    fn homogeneous_parts() {
        let p = Polynomial::from_terms(2, [(vec![2, 0], rat(1, 1)), (vec![0, 1], rat(-1, 1)), (vec![0, 0], rat(1, 1))]);
        assert_eq!(p.homogeneous_part(1), -&b());
        assert_eq!(p.homogeneous_part(0), Polynomial::one(2));
        assert!(p.homogeneous_part(3).is_zero());
    }

    #[test]
    fn display() {
        let p = &a().pow(2) - &b().pow(2);
        assert_eq!(p.to_string(), "a^2 - b^2");
        assert_eq!(a().scale(&rat(4, 1)).to_string(), "4a");
        assert_eq!(Polynomial::constant(2, rat(-2, 1)).to_string(), "-2");
        assert_eq!((&a() * &b()).to_string(), "a b");
    }
}
