use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::FreeGca;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A finite rational linear combination of monomials. Zero coefficients are
/// never stored, so equality of term maps is equality of elements.
#[derive(Clone)]
pub struct Element {
    algebra: FreeGca,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Element {
    pub fn zero(algebra: &FreeGca) -> Self {
        Element {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &FreeGca) -> Self {
        Element::monomial(algebra, algebra.one_monomial(), BigRational::one())
    }

    pub fn scalar(algebra: &FreeGca, c: BigRational) -> Self {
        Element::monomial(algebra, algebra.one_monomial(), c)
    }

    pub fn monomial(algebra: &FreeGca, m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn generator(algebra: &FreeGca, name: &str) -> Result<Self> {
        let i = algebra.require(name)?;
        Ok(Element::monomial(
            algebra,
            algebra.generator_monomial(i),
            BigRational::one(),
        ))
    }

    pub(crate) fn from_terms(algebra: &FreeGca, terms: BTreeMap<Monomial, BigRational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &FreeGca {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree of a nonzero homogeneous element; `None` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Ok(None),
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Ok(Some(d))
                } else {
                    Err(Error::Inhomogeneous)
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Checks that the element is zero or homogeneous of degree `degree`.
    pub fn check_degree(&self, degree: i64, context: &str) -> Result<()> {
        match self.degree()? {
            Some(d) if d != degree => Err(Error::DegreeMismatch {
                context: context.to_string(),
                expected: degree,
                found: d,
            }),
            _ => Ok(()),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &BigRational) {
        debug_assert!(self.algebra.same_as(&other.algebra));
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.algebra);
        }
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, rhs: &Element) -> Result<Element> {
        self.same_algebra(rhs)?;
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Element) -> Result<Element> {
        self.same_algebra(rhs)?;
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Element) -> Result<Element> {
        self.same_algebra(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn same_algebra(&self, rhs: &Element) -> Result<()> {
        if self.algebra.same_as(&rhs.algebra) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebra)
        }
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Element) -> Element {
        let odd = self.algebra.odd_mask();
        let mut out = Element::zero(&self.algebra);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((negative, m)) = ma.multiply(mb, odd) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Element {
        let odd = self.algebra.odd_mask();
        let mut out = Element::zero(&self.algebra);
        for (ma, ca) in &self.terms {
            if let Some((negative, p)) = ma.multiply(m, odd) {
                out.add_term(p, if negative { -ca.clone() } else { ca.clone() });
            }
        }
        out
    }

    pub fn monomial_mul(m: &Monomial, rhs: &Element) -> Element {
        let odd = rhs.algebra.odd_mask();
        let mut out = Element::zero(&rhs.algebra);
        for (mb, cb) in &rhs.terms {
            if let Some((negative, p)) = m.multiply(mb, odd) {
                out.add_term(p, if negative { -cb.clone() } else { cb.clone() });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut out = Element::one(&self.algebra);
        for _ in 0..e {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Homogeneous component of degree `n`.
    pub fn component(&self, n: i64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Transports the element to `target` by generator name.
    pub fn embed(&self, target: &FreeGca) -> Result<Element> {
        if self.algebra.same_as(target) {
            return Ok(Element {
                algebra: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map = self.algebra.partial_name_map(target)?;
        self.transport_with(&map, target)
    }

    /// Moves the element along a generator index map; `usize::MAX` entries
    /// mark generators with no counterpart, which must not occur.
    pub(crate) fn transport_with(&self, map: &[usize], target: &FreeGca) -> Result<Element> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            if let Some((i, _)) = m.support().find(|(i, _)| map[*i] == usize::MAX) {
                return Err(Error::UnknownGenerator(self.algebra.generator(i).name.clone()));
            }
            let (negative, tm) = self.algebra.transport(m, map, target);
            out.add_term(tm, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::format_element(self))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("addition of elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs)
            .expect("subtraction of elements of different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("product of elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-BigRational::one())
    }
}
