use std::collections::HashMap;

use num_rational::BigRational;

use super::algebra::FreeGca;
use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A degree-`degree` derivation of a free graded-commutative algebra,
/// determined by its values on generators and extended by
/// `θ(ab) = θ(a)b + (−1)^{|θ||a|} a θ(b)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    algebra: FreeGca,
    degree: i64,
    images: Vec<Element>,
}

impl Derivation {
    /// `images[i]` is the value on generator `i`; every generator needs one.
    pub fn new(algebra: &FreeGca, degree: i64, images: Vec<Element>) -> Result<Self> {
        if images.len() != algebra.len() {
            let missing = algebra
                .generators()
                .get(images.len())
                .map(|g| g.name.clone())
                .unwrap_or_default();
            return Err(Error::MissingImage(missing));
        }
        for (g, img) in algebra.generators().iter().zip(&images) {
            if !img.algebra().same_as(algebra) {
                return Err(Error::MismatchedAlgebra);
            }
            img.check_degree(g.degree + degree, &g.name)?;
        }
        Ok(Derivation {
            algebra: algebra.clone(),
            degree,
            images,
        })
    }

    /// Builds from named images. Generators absent from `images` are an error
    /// unless `default_zero` is set.
    pub fn from_named(
        algebra: &FreeGca,
        degree: i64,
        images: &HashMap<String, Element>,
        default_zero: bool,
    ) -> Result<Self> {
        for name in images.keys() {
            algebra.require(name)?;
        }
        let images = algebra
            .generators()
            .iter()
            .map(|g| match images.get(&g.name) {
                Some(e) => Ok(e.clone()),
                None if default_zero => Ok(Element::zero(algebra)),
                None => Err(Error::MissingImage(g.name.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(algebra, degree, images)
    }

    pub fn zero(algebra: &FreeGca, degree: i64) -> Self {
        Derivation {
            algebra: algebra.clone(),
            degree,
            images: vec![Element::zero(algebra); algebra.len()],
        }
    }

    pub fn algebra(&self) -> &FreeGca {
        &self.algebra
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn image(&self, index: usize) -> &Element {
        &self.images[index]
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        Ok(&self.images[self.algebra.require(name)?])
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !a.algebra().same_as(&self.algebra) {
            return Err(Error::MismatchedAlgebra);
        }
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &Element) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (m, c) in a.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let degrees = self.algebra.degrees();
        let n = self.algebra.len();
        let mut out = Element::zero(&self.algebra);
        let mut prefix_degree = 0i64;
        for (i, e) in m.support() {
            let image = &self.images[i];
            if !image.is_zero() {
                // left = (generators before i) · g_i^{e-1}, already canonical
                let mut left = m.exponents()[..i].to_vec();
                left.push(e - 1);
                left.resize(n, 0);
                let left = Monomial::from_parts(prefix_degree + degrees[i] * i64::from(e - 1), left);
                let mut right = vec![0; n];
                right[i + 1..].copy_from_slice(&m.exponents()[i + 1..]);
                let right_degree = m.degree() - prefix_degree - degrees[i] * i64::from(e);
                let right = Monomial::from_parts(right_degree, right);

                let term = Element::monomial_mul(&left, image).mul_monomial(&right);
                let mut coeff = BigRational::from_integer(i64::from(e).into());
                if (self.degree * prefix_degree).rem_euclid(2) == 1 {
                    coeff = -coeff;
                }
                out.add_scaled(&term, &coeff);
            }
            prefix_degree += degrees[i] * i64::from(e);
        }
        out
    }

    /// Transports the derivation to a larger algebra by generator name; the
    /// new generators are sent to `extra` values or zero.
    pub fn extend_to(&self, target: &FreeGca, extra: &HashMap<String, Element>) -> Result<Derivation> {
        let mut images = HashMap::new();
        for (g, img) in self.algebra.generators().iter().zip(&self.images) {
            images.insert(g.name.clone(), img.embed(target)?);
        }
        for (k, v) in extra {
            images.insert(k.clone(), v.clone());
        }
        Derivation::from_named(target, self.degree, &images, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{element::rational, Generator};

    #[test]
    fn leibniz_on_sphere_model() {
        let a = FreeGca::new(vec![Generator::new("x", 4), Generator::new("y", 7)]).unwrap();
        let x = Element::generator(&a, "x").unwrap();
        let y = Element::generator(&a, "y").unwrap();
        let d = Derivation::new(&a, 1, vec![Element::zero(&a), &x * &x]).unwrap();
        assert!(d.apply(&Element::one(&a)).unwrap().is_zero());
        assert_eq!(d.apply(&(&x * &y)).unwrap(), x.pow(3));
    }

    #[test]
    fn degree_minus_one_suspension_of_a_square() {
        let a = FreeGca::new(vec![Generator::new("x", 4), Generator::new("s1x", 3)]).unwrap();
        let x = Element::generator(&a, "x").unwrap();
        let s1x = Element::generator(&a, "s1x").unwrap();
        let s = Derivation::new(&a, -1, vec![s1x.clone(), Element::zero(&a)]).unwrap();
        let got = s.apply(&(&x * &x)).unwrap();
        assert_eq!(got, (&x * &s1x).scale(&rational(2)));
    }

    #[test]
    fn missing_image_is_an_error() {
        let a = FreeGca::new(vec![Generator::new("x", 4), Generator::new("y", 7)]).unwrap();
        let err = Derivation::from_named(&a, 1, &HashMap::new(), false).unwrap_err();
        assert_eq!(err, Error::MissingImage("x".into()));
    }

    #[test]
    fn wrong_degree_image_is_rejected() {
        let a = FreeGca::new(vec![Generator::new("x", 4)]).unwrap();
        let x = Element::generator(&a, "x").unwrap();
        assert!(matches!(
            Derivation::new(&a, 1, vec![x]),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
