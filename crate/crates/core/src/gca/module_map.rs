use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::algebra::FreeGca;
use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A map of free modules over a base subalgebra, `μ(b·u) = (−1)^{|μ||b|} b·μ(u)`,
/// determined by its values on module-basis monomials `u` (monomials in the
/// non-base generators of the source).
///
/// Base generators are identified with target generators by name.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    name: String,
    source: FreeGca,
    target: FreeGca,
    base_mask: Vec<bool>,
    base_map: Vec<usize>,
    degree: i64,
    images: BTreeMap<Monomial, Element>,
    default_zero: bool,
}

impl ModuleMorphism {
    /// `base` names the source generators forming the coefficient algebra.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        source: &FreeGca,
        target: &FreeGca,
        base: &[S],
        degree: i64,
        default_zero: bool,
    ) -> Result<Self> {
        let mut base_mask = vec![false; source.len()];
        let mut base_map = vec![usize::MAX; source.len()];
        for b in base {
            let i = source.require(b.as_ref())?;
            let j = target
                .index_of(b.as_ref())
                .ok_or_else(|| Error::NotFactorable(b.as_ref().to_string()))?;
            if source.generator(i).degree != target.generator(j).degree {
                return Err(Error::ConflictingGenerator(b.as_ref().to_string()));
            }
            base_mask[i] = true;
            base_map[i] = j;
        }
        Ok(ModuleMorphism {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            base_mask,
            base_map,
            degree,
            images: BTreeMap::new(),
            default_zero,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &FreeGca {
        &self.source
    }

    pub fn target(&self) -> &FreeGca {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn default_zero(&self) -> bool {
        self.default_zero
    }

    pub fn is_base(&self, index: usize) -> bool {
        self.base_mask[index]
    }

    pub fn module_generators(&self) -> impl Iterator<Item = &str> + '_ {
        self.source
            .generators()
            .iter()
            .zip(&self.base_mask)
            .filter(|(_, &b)| !b)
            .map(|(g, _)| g.name.as_str())
    }

    pub fn base_generators(&self) -> impl Iterator<Item = &str> + '_ {
        self.source
            .generators()
            .iter()
            .zip(&self.base_mask)
            .filter(|(_, &b)| b)
            .map(|(g, _)| g.name.as_str())
    }

    pub fn module_mask(&self) -> Vec<bool> {
        self.base_mask.iter().map(|b| !b).collect()
    }

    /// Module-basis monomials of degree `n`.
    pub fn module_basis(&self, n: i64) -> Vec<Monomial> {
        self.source.basis_of_degree_in(n, &self.module_mask())
    }

    pub fn is_module_monomial(&self, u: &Monomial) -> bool {
        u.support().all(|(i, _)| !self.base_mask[i])
    }

    pub fn set_image(&mut self, u: Monomial, value: Element) -> Result<()> {
        if !self.is_module_monomial(&u) {
            return Err(Error::NotFactorable(self.source.format_monomial(&u)));
        }
        if !value.algebra().same_as(&self.target) {
            return Err(Error::MismatchedAlgebra);
        }
        value.check_degree(u.degree() + self.degree, &self.source.format_monomial(&u))?;
        self.images.insert(u, value);
        Ok(())
    }

    /// Sets the image of a module-basis element given as a single monomial
    /// with coefficient ±1 or another nonzero scalar.
    pub fn set_image_of(&mut self, u: &Element, value: Element) -> Result<()> {
        let mut terms = u.terms().iter();
        let (m, c) = match (terms.next(), terms.next()) {
            (Some(t), None) => t,
            _ => return Err(Error::NotFactorable(u.to_string())),
        };
        let inv = BigRational::from_integer(1.into()) / c;
        self.set_image(m.clone(), value.scale(&inv))
    }

    pub fn image(&self, u: &Monomial) -> Result<Element> {
        match self.images.get(u) {
            Some(e) => Ok(e.clone()),
            None if self.default_zero => Ok(Element::zero(&self.target)),
            None => Err(Error::MissingImage(self.source.format_monomial(u))),
        }
    }

    pub fn explicit_images(&self) -> &BTreeMap<Monomial, Element> {
        &self.images
    }

    /// Factors `m = sign · b · u` with `b` in the base and `u` a module-basis
    /// monomial. The flag is `true` for a negative sign.
    pub fn factor(&self, m: &Monomial) -> (bool, Monomial, Monomial) {
        self.source.split_monomial(m, &self.base_mask)
    }

    /// The base monomial `b` transported into the target.
    pub(crate) fn base_in_target(&self, b: &Monomial) -> (bool, Monomial) {
        self.source.transport(b, &self.base_map, &self.target)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Element> {
        let (neg_split, b, u) = self.factor(m);
        let image = self.image(&u)?;
        if image.is_zero() {
            return Ok(image);
        }
        let (neg_move, tb) = self.base_in_target(&b);
        let koszul = (self.degree * b.degree()).rem_euclid(2) == 1;
        let out = Element::monomial_mul(&tb, &image);
        if neg_split ^ neg_move ^ koszul {
            Ok(-&out)
        } else {
            Ok(out)
        }
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !a.algebra().same_as(&self.source) {
            return Err(Error::MismatchedAlgebra);
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in a.terms() {
            out.add_scaled(&self.apply_monomial(m)?, c);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &BigRational) -> ModuleMorphism {
        let mut out = self.clone();
        for v in out.images.values_mut() {
            *v = v.scale(c);
        }
        out
    }

    /// Base change: the same module-basis values, now linear over every
    /// generator of `source` that is not a module generator. Module
    /// generators and image generators are matched by name.
    pub fn extend(&self, name: impl Into<String>, source: &FreeGca, target: &FreeGca) -> Result<ModuleMorphism> {
        self.extend_renamed(name, source, target, &HashMap::new())
    }

    /// `extend` after renaming generators of the old source and target
    /// according to `renames`.
    pub fn extend_renamed(
        &self,
        name: impl Into<String>,
        source: &FreeGca,
        target: &FreeGca,
        renames: &HashMap<String, String>,
    ) -> Result<ModuleMorphism> {
        let module: Vec<String> = self
            .module_generators()
            .map(|g| renames.get(g).cloned().unwrap_or_else(|| g.to_string()))
            .collect();
        let base: Vec<String> = source
            .generators()
            .iter()
            .filter(|g| !module.contains(&g.name))
            .map(|g| g.name.clone())
            .collect();
        let mut out = ModuleMorphism::new(name, source, target, &base, self.degree, self.default_zero)?;
        let source_map = self.source.renamed_map(source, renames)?;
        let target_map = self.target.renamed_map(target, renames)?;
        for (u, v) in &self.images {
            let (negative, nu) = self.source.transport(u, &source_map, source);
            let mut nv = v.transport_with(&target_map, target)?;
            if negative {
                nv = -&nv;
            }
            out.images.insert(nu, nv);
        }
        Ok(out)
    }
}

impl FreeGca {
    pub(crate) fn split_monomial(&self, m: &Monomial, base_mask: &[bool]) -> (bool, Monomial, Monomial) {
        m.split(base_mask, self.degrees(), self.odd_mask())
    }
}
