//! Finite linear combinations of basis diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::basis::BasisDiagram;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// Sum of basis diagrams from one block with nonzero coefficients, kept in
/// canonical basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<C: Coefficient> {
    terms: BTreeMap<BasisDiagram, C>,
}

impl<C: Coefficient> Default for Element<C> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> Element<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_basis(x: BasisDiagram) -> Self {
        Self::term(x, C::one())
    }

    pub fn term(x: BasisDiagram, coefficient: C) -> Self {
        let mut e = Self::zero();
        if !coefficient.is_zero() {
            e.terms.insert(x, coefficient);
        }
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisDiagram, C)>) -> Result<Self> {
        let mut e = Self::zero();
        for (x, c) in terms {
            e.add_term(x, c)?;
        }
        Ok(e)
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisDiagram, &C)> {
        self.terms.iter()
    }

    pub fn basis(&self) -> impl Iterator<Item = &BasisDiagram> {
        self.terms.keys()
    }

    pub fn coefficient(&self, x: &BasisDiagram) -> C {
        self.terms.get(x).cloned().unwrap_or_else(C::zero)
    }

    /// Any key, used to read off the block of a nonzero element.
    pub fn representative(&self) -> Option<&BasisDiagram> {
        self.terms.keys().next()
    }

    pub fn add_term(&mut self, x: BasisDiagram, coefficient: C) -> Result<()> {
        if coefficient.is_zero() {
            return Ok(());
        }
        if let Some(r) = self.representative() {
            if !r.weight().same_block(x.weight()) {
                return Err(Error::BlockMismatch(r.weight().to_string(), x.weight().to_string()));
            }
        }
        match self.terms.get_mut(&x) {
            Some(c) => {
                let sum = c.checked_add(&coefficient).ok_or(Error::Overflow)?;
                if sum.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(x, coefficient);
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_scale(&C::zero().checked_sub(&C::one()).ok_or(Error::Overflow)?)?)
    }

    pub fn checked_scale(&self, k: &C) -> Result<Self> {
        let mut out = Self::zero();
        for (x, c) in self.terms() {
            out.add_term(x.clone(), c.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// Applies a linear map defined on basis diagrams.
    pub fn map_basis(&self, f: impl Fn(&BasisDiagram) -> BasisDiagram) -> Result<Self> {
        Self::from_terms(self.terms().map(|(x, c)| (f(x), c.clone())))
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&BasisDiagram) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(x, _)| keep(x)).map(|(x, c)| (x.clone(), c.clone())).collect() }
    }

    /// Sum of the coefficients, e.g. to read off a scalar.
    pub fn coefficient_sum(&self) -> Result<C> {
        self.terms.values().try_fold(C::zero(), |acc, c| acc.checked_add(c).ok_or(Error::Overflow))
    }
}

impl<C: Coefficient> From<BasisDiagram> for Element<C> {
    fn from(x: BasisDiagram) -> Self {
        Element::from_basis(x)
    }
}

impl<C: Coefficient> fmt::Display for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if c.is_negative() {
                write!(f, "{c}·({x})")?;
            } else {
                write!(f, "+{c}·({x})")?;
            }
        }
        Ok(())
    }
}

/// Accepts the printed form, `0`, and bare diagrams (coefficient 1).
impl<C: Coefficient> FromStr for Element<C> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map(|p| p + offset).unwrap_or(offset) + 1;
            offset = position - 1 + token.len();
            let (coefficient, diagram) = match token.split_once('·') {
                Some((k, body)) => {
                    let k = k.strip_prefix('+').unwrap_or(k);
                    let value: i64 =
                        k.parse().map_err(|_| Error::parse(position, format!("bad coefficient {k:?}")))?;
                    let body = body
                        .strip_prefix('(')
                        .and_then(|b| b.strip_suffix(')'))
                        .ok_or_else(|| Error::parse(position, "expected (diagram) after ·"))?;
                    (C::from_i64(value), body)
                }
                None => (C::one(), token),
            };
            out.add_term(diagram.parse()?, coefficient)?;
        }
        Ok(out)
    }
}
