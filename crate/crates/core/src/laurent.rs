//! Laurent polynomials in `q` and square matrices of them indexed by a block.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::weight::Weight;

/// Finite sum `Σ c_k q^k`, stored without zero coefficients.
///
/// The operator impls panic on coefficient overflow; use the `checked_*`
/// methods to get an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C: Coefficient> {
    terms: BTreeMap<i32, C>,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn q() -> Self {
        Self::monomial(1, C::one())
    }

    /// `c q^k`.
    pub fn monomial(k: i32, c: C) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(k, c);
        }
        p
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(k, C::one())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: i32) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_monomial(&mut self, k: i32, c: C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let sum = self.coefficient(k).checked_add(&c).ok_or(Error::Overflow)?;
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_monomial(k, c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            out.add_monomial(k, C::zero().checked_sub(c).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let k = i.checked_add(j).ok_or(Error::Overflow)?;
                out.add_monomial(k, a.checked_mul(b).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Result<C> {
        self.terms.values().try_fold(C::zero(), |acc, c| acc.checked_add(c).ok_or(Error::Overflow))
    }

    /// `p(q^{-1})`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("coefficient overflow")
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("coefficient overflow")
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("coefficient overflow")
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        self.checked_neg().expect("coefficient overflow")
    }
}

/// Ascending exponents: `0`, `1`, `q`, `1+q^2`, `2q^-1-q^3`.
impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { C::zero().checked_sub(c).expect("negation") } else { c.clone() };
            if negative {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let unit = magnitude.is_one();
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for LaurentPoly<C> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: Vec<char> = text.trim().chars().collect();
        if s.is_empty() {
            return Err(Error::parse(1, "empty polynomial"));
        }
        let mut out = Self::zero();
        let mut i = 0;
        while i < s.len() {
            let start = i;
            let mut sign = 1i64;
            if s[i] == '+' || s[i] == '-' {
                if s[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if start > 0 {
                return Err(Error::parse(i + 1, "expected + or -"));
            }
            let digits_start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = s[digits_start..i].iter().collect();
            let mut exponent = 0i32;
            let has_q = i < s.len() && s[i] == 'q';
            if has_q {
                i += 1;
                exponent = 1;
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    let e_start = i;
                    if i < s.len() && s[i] == '-' {
                        i += 1;
                    }
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    let e: String = s[e_start..i].iter().collect();
                    exponent = e.parse().map_err(|_| Error::parse(e_start + 1, "bad exponent"))?;
                }
            }
            if digits.is_empty() && !has_q {
                return Err(Error::parse(digits_start + 1, "expected a term"));
            }
            let magnitude: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| Error::parse(digits_start + 1, "bad coefficient"))?
            };
            out.add_monomial(exponent, C::from_i64(sign * magnitude))?;
        }
        Ok(out)
    }
}

/// Square matrix of Laurent polynomials whose rows and columns are indexed
/// by the members of a block, in block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<C: Coefficient> {
    index: Vec<Weight>,
    entries: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Coefficient> PolyMatrix<C> {
    pub fn zeros(index: Vec<Weight>) -> Self {
        let n = index.len();
        PolyMatrix { index, entries: vec![vec![LaurentPoly::zero(); n]; n] }
    }

    pub fn from_fn(index: Vec<Weight>, mut f: impl FnMut(usize, usize) -> Result<LaurentPoly<C>>) -> Result<Self> {
        let n = index.len();
        let entries = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(PolyMatrix { index, entries })
    }

    pub fn index(&self) -> &[Weight] {
        &self.index
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<C> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly<C>) {
        self.entries[i][j] = value;
    }

    /// Entry by row and column weight.
    pub fn entry(&self, row: &Weight, col: &Weight) -> Option<&LaurentPoly<C>> {
        let i = self.index.iter().position(|w| w == row)?;
        let j = self.index.iter().position(|w| w == col)?;
        Some(&self.entries[i][j])
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly<C>>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut out = Self::zeros(self.index.clone());
        for i in 0..n {
            for j in 0..n {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.index != other.index {
            return Err(Error::Precondition("matrices are indexed by different blocks".into()));
        }
        let n = self.size();
        Self::from_fn(self.index.clone(), |i, j| {
            (0..n).try_fold(LaurentPoly::zero(), |acc, k| acc.checked_add(&self.entries[i][k].checked_mul(&other.entries[k][j])?))
        })
    }

    /// Zero strictly below the diagonal and `1` on it.
    pub fn is_upper_unitriangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| self.entries[i][i] == LaurentPoly::one() && (0..i).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = LaurentPoly<i64>;

    #[test]
    fn canonical_text() {
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::one().to_string(), "1");
        assert_eq!(P::q().to_string(), "q");
        assert_eq!((P::one() + P::q_pow(2)).to_string(), "1+q^2");
        let p = P::monomial(-1, 2) - P::q_pow(3) + P::monomial(0, -3);
        assert_eq!(p.to_string(), "2q^-1-3-q^3");
        for s in ["0", "1", "q", "1+q^2", "2q^-1-3-q^3", "-q", "5q^4"] {
            assert_eq!(P::parse(s).unwrap().to_string(), s);
        }
        assert!(P::parse("1+").is_err());
        assert!(P::parse("q^x").is_err());
        assert!(P::parse("").is_err());
    }

    #[test]
    fn evaluation_and_bar() {
        let p = P::parse("1+2q+q^2").unwrap();
        assert_eq!(p.at_one().unwrap(), 4);
        assert_eq!(p.bar().to_string(), "q^-2+2q^-1+1");
    }

    #[test]
    fn overflow_is_reported() {
        let p = P::monomial(0, i64::MAX);
        assert!(matches!(p.checked_add(&P::one()), Err(Error::Overflow)));
        assert!(matches!(p.checked_mul(&P::monomial(1, 2)), Err(Error::Overflow)));
    }

    #[test]
    fn matrix_product() {
        let idx = vec![Weight::parse("v^").unwrap(), Weight::parse("^v").unwrap()];
        let d = PolyMatrix::from_fn(idx, |i, j| {
            Ok(match (i, j) {
                (0, 0) | (1, 1) => P::one(),
                (0, 1) => P::q(),
                _ => P::zero(),
            })
        })
        .unwrap();
        assert!(d.is_upper_unitriangular());
        let c = d.checked_mul(&d.transpose()).unwrap();
        assert_eq!(c.get(0, 0).to_string(), "1+q^2");
        assert_eq!(c.get(0, 1).to_string(), "q");
        assert!(c.is_symmetric());
    }

    fn poly() -> impl Strategy<Value = P> {
        prop::collection::btree_map(-4i32..5, -50i64..50, 0..5).prop_map(|m| {
            let mut p = P::zero();
            for (k, c) in m {
                p.add_monomial(k, c).unwrap();
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * P::one(), a.clone());
            prop_assert_eq!(a.clone() - a.clone(), P::zero());
        }

        #[test]
        fn text_round_trip(a in poly()) {
            prop_assert_eq!(P::parse(&a.to_string()).unwrap(), a);
        }
    }
}
