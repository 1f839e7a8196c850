use std::collections::HashMap;

use super::algebra::FreeGca;
use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A degree-0 algebra map between free graded-commutative algebras,
/// determined by generator images.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    name: String,
    source: FreeGca,
    target: FreeGca,
    images: Vec<Element>,
}

impl AlgebraMorphism {
    pub fn new(name: impl Into<String>, source: &FreeGca, target: &FreeGca, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::MissingImage(
                source
                    .generators()
                    .get(images.len())
                    .map(|g| g.name.clone())
                    .unwrap_or_default(),
            ));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if !img.algebra().same_as(target) {
                return Err(Error::MismatchedAlgebra);
            }
            img.check_degree(g.degree, &g.name)?;
        }
        Ok(AlgebraMorphism {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Images by generator name; every source generator needs one.
    pub fn from_named(
        name: impl Into<String>,
        source: &FreeGca,
        target: &FreeGca,
        images: &HashMap<String, Element>,
    ) -> Result<Self> {
        for k in images.keys() {
            source.require(k)?;
        }
        let images = source
            .generators()
            .iter()
            .map(|g| {
                images
                    .get(&g.name)
                    .cloned()
                    .ok_or_else(|| Error::MissingImage(g.name.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::new(name, source, target, images)
    }

    pub fn identity(algebra: &FreeGca) -> Self {
        let images = (0..algebra.len())
            .map(|i| Element::monomial(algebra, algebra.generator_monomial(i), num_traits::One::one()))
            .collect();
        AlgebraMorphism {
            name: "id".into(),
            source: algebra.clone(),
            target: algebra.clone(),
            images,
        }
    }

    /// Sends each generator to the same-named generator of `target`, or to
    /// the value in `overrides`, or to zero when `target` lacks it.
    pub fn by_name(
        name: impl Into<String>,
        source: &FreeGca,
        target: &FreeGca,
        overrides: &HashMap<String, Element>,
    ) -> Result<Self> {
        let images = source
            .generators()
            .iter()
            .map(|g| {
                if let Some(e) = overrides.get(&g.name) {
                    Ok(e.clone())
                } else if target.contains(&g.name) {
                    Element::generator(target, &g.name)
                } else {
                    Ok(Element::zero(target))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::new(name, source, target, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &FreeGca {
        &self.source
    }

    pub fn target(&self) -> &FreeGca {
        &self.target
    }

    pub fn image(&self, index: usize) -> &Element {
        &self.images[index]
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        Ok(&self.images[self.source.require(name)?])
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !a.algebra().same_as(&self.source) {
            return Err(Error::MismatchedAlgebra);
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in a.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        Ok(out)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut out = Element::one(&self.target);
        for (i, e) in m.support() {
            let img = &self.images[i];
            if img.is_zero() {
                return Element::zero(&self.target);
            }
            for _ in 0..e {
                out = out.mul_unchecked(img);
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !first.target.same_as(&self.source) {
            return Err(Error::MismatchedAlgebra);
        }
        let images = first.images.iter().map(|e| self.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism {
            name: format!("{}∘{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// Whether every target generator occurs as a linear term of some
    /// generator image, i.e. the map is onto indecomposables.
    pub fn is_surjective_on_generators(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for img in &self.images {
            for m in img.terms().keys() {
                let mut support = m.support();
                if let (Some((i, 1)), None) = (support.next(), support.next()) {
                    hit[i] = true;
                }
            }
        }
        hit.into_iter().all(|h| h)
    }
}
