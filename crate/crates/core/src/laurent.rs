//! Laurent polynomials in several variables with rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{fmt_q, q, Q};

pub type Exponent = Vec<Q>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<Exponent, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: Exponent, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_ints(exp: &[i64], coeff: i64) -> Self {
        Self::monomial(exp.iter().map(|&x| q(x)).collect(), coeff)
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: i64) {
        use std::collections::btree_map::Entry;
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Laurent, factor: i64) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_assign_scaled(other, 1);
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_assign_scaled(other, -1);
        out
    }

    pub fn scale(&self, factor: i64) -> Laurent {
        let mut out = Laurent::zero();
        out.add_assign_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Product of (1 - t^v) over the given vectors.
    pub fn one_minus_product(vs: &[Vec<Q>], dim: usize) -> Laurent {
        let mut out = Laurent::monomial(vec![Q::zero(); dim], 1);
        for v in vs {
            let f = Laurent::monomial(vec![Q::zero(); dim], 1).sub(&Laurent::monomial(v.clone(), 1));
            out = out.mul(&f);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[Q]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// Value at t = 1.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Terms whose exponents satisfy the predicate.
    pub fn filter(&self, keep: impl Fn(&Exponent) -> bool) -> Laurent {
        Laurent { terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), *c)).collect() }
    }

    /// Terms with every coordinate at most `bound`.
    pub fn truncate(&self, bound: i64) -> Laurent {
        let b = q(bound);
        self.filter(|e| e.iter().all(|x| *x <= b))
    }

    pub fn shift(&self, by: &[Q]) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), *c))
                .collect(),
        }
    }
}

impl FromIterator<(Exponent, i64)> for Laurent {
    fn from_iter<T: IntoIterator<Item = (Exponent, i64)>>(iter: T) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }
}

pub fn fmt_exponent(e: &[Q]) -> String {
    let parts: Vec<String> = e
        .iter()
        .map(|x| if x.denom() == &1 { x.numer().to_string() } else { fmt_q(x) })
        .collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{}{}t^{}", sign, coef, fmt_exponent(e))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Laurent::from_ints(&[1, 0], 2);
        let b = Laurent::from_ints(&[1, 0], -2);
        assert!(a.add(&b).is_zero());
        let p = Laurent::one_minus_product(&[vec![q(1), q(0)], vec![q(0), q(1)]], 2);
        assert_eq!(p.len(), 4);
        assert_eq!(p.eval_one(), 0);
        assert_eq!(p.coeff(&[q(1), q(1)]), 1);
    }
}
