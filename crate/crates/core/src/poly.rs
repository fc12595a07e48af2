//! Exact multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor is not a linear form")]
    NotLinear,
    #[error("variable counts differ: {0} vs {1}")]
    VariableMismatch(usize, usize),
}

/// Exponent vectors are compared by total degree, then lexicographically from the last variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in a fixed number of variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * c);
        }
        p
    }

    /// For a linear form, the index of its last variable with nonzero coefficient.
    fn pivot(&self) -> Result<(usize, BigRational), PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.terms.keys().any(|m| m.degree() != 1) {
            return Err(PolyError::NotLinear);
        }
        let (m, c) = self
            .terms
            .iter()
            .max_by_key(|(m, _)| m.0.iter().position(|&x| x == 1))
            .expect("nonzero");
        Ok((m.0.iter().position(|&x| x == 1).expect("linear"), c.clone()))
    }

    /// Division by a linear form: `(quotient, remainder)` with `self = alpha * quotient + remainder`
    /// and the remainder free of the pivot variable of `alpha`.
    pub fn divide_linear(&self, alpha: &Poly) -> Result<(Poly, Poly), PolyError> {
        if self.nvars != alpha.nvars {
            return Err(PolyError::VariableMismatch(self.nvars, alpha.nvars));
        }
        let (v, cv) = alpha.pivot()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        loop {
            let next = rem.terms.iter().filter(|(m, _)| m.0[v] > 0).max_by_key(|(m, _)| (m.0[v], (*m).clone()));
            let Some((m, c)) = next else { break };
            let mut e = m.0.clone();
            e[v] -= 1;
            let coef = c / &cv;
            let step = Poly::from_terms(self.nvars, [(e, coef)]);
            rem = &rem - &(&step * alpha);
            quot = &quot + &step;
        }
        Ok((quot, rem))
    }

    /// `Some(q)` with `self = alpha * q`, or `None` when `alpha` does not divide.
    pub fn exact_divide_linear(&self, alpha: &Poly) -> Result<Option<Poly>, PolyError> {
        let (q, r) = self.divide_linear(alpha)?;
        Ok(r.is_zero().then_some(q))
    }

    /// The image modulo `alpha`, written without its pivot variable.
    pub fn reduce_mod_linear(&self, alpha: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divide_linear(alpha)?.1)
    }

    /// Renders with the given variable names, highest monomial first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { names[k].clone() } else { format!("{}^{}", names[k], e) })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        // Monomials multiply by adding exponent vectors.
        let add = |a: &u32, b: &u32| a.checked_add(*b).expect("exponent overflow");
        let mut p = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| add(a, b)).collect();
                p.add_term(Monomial(e), c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["e1".into(), "e2".into(), "d1".into()]
    }

    #[test]
    fn difference_of_squares() {
        let a = Poly::linear(&[-1, 1, 0]);
        let b = Poly::linear(&[1, 1, 0]);
        let prod = &a * &b;
        assert_eq!(prod.render(&names()), "e2^2 - e1^2");
        assert_eq!(prod.exact_divide_linear(&a).unwrap(), Some(b.clone()));
        assert_eq!(prod.exact_divide_linear(&b).unwrap(), Some(a));
    }

    #[test]
    fn non_divisible_and_zero_divisor() {
        let e1d1 = &Poly::linear(&[1, 0, 0]) * &Poly::linear(&[0, 0, 1]);
        let alpha = Poly::linear(&[-1, 1, 0]);
        assert_eq!(e1d1.exact_divide_linear(&alpha).unwrap(), None);
        assert_eq!(e1d1.exact_divide_linear(&Poly::zero(3)).unwrap_err(), PolyError::DivisionByZero);
        assert_eq!(e1d1.exact_divide_linear(&e1d1).unwrap_err(), PolyError::NotLinear);
    }

    #[test]
    fn rational_coefficients_render() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let p = Poly::linear(&[3, 0, -1]).scale(&half);
        assert_eq!(p.render(&names()), "-1/2*d1 + 3/2*e1");
        assert_eq!(Poly::one(3).render(&names()), "1");
    }
}
