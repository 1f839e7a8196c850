//! Sullivan models and the constructions on them: amalgamated tensor
//! products, quotients, renamings, and the mapping-space builders.

mod builders;
mod naming;

pub use builders::{
    build_collapse_model, build_disk_model, build_loop_model, build_path_model, build_sphere_model, build_torus_model,
    MappingSpace, MappingSpaceModel, StructureMap,
};
pub use naming::{loop_name, outer_path_name, path_copy_name, sphere_name, OUTER_PATH_PREFIX};

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gca::{AlgebraMorphism, Derivation, Element, FreeGca, Generator};

/// A free graded-commutative algebra with a degree +1 derivation squaring
/// to zero.
#[derive(Clone, Debug)]
pub struct SullivanModel {
    name: String,
    algebra: FreeGca,
    differential: Derivation,
}

impl SullivanModel {
    /// Checks that `differential` has degree 1 and squares to zero.
    pub fn new(name: impl Into<String>, differential: Derivation) -> Result<Self> {
        if differential.degree() != 1 {
            return Err(Error::DegreeMismatch {
                context: "differential".into(),
                expected: 1,
                found: differential.degree(),
            });
        }
        let model = SullivanModel {
            name: name.into(),
            algebra: differential.algebra().clone(),
            differential,
        };
        model.check_square_zero()?;
        Ok(model)
    }

    /// Convenience constructor: generators plus `d` values given as
    /// expressions on them; unlisted generators are closed.
    pub fn from_generators(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: &[(&str, &str)],
    ) -> Result<Self> {
        let algebra = FreeGca::new(generators)?;
        let mut images = HashMap::new();
        for (g, expr) in differential {
            images.insert(g.to_string(), crate::format::parse_element(expr, &algebra)?);
        }
        let d = Derivation::from_named(&algebra, 1, &images, true)?;
        SullivanModel::new(name, d)
    }

    /// `(Λ(generators), 0)`.
    pub fn free(name: impl Into<String>, generators: Vec<Generator>) -> Result<Self> {
        SullivanModel::from_generators(name, generators, &[])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &FreeGca {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Element::generator(&self.algebra, name)
    }

    pub fn d(&self, a: &Element) -> Result<Element> {
        self.differential.apply(a)
    }

    pub fn d_of(&self, name: &str) -> Result<&Element> {
        self.differential.image_of(name)
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for (g, img) in self.algebra.generators().iter().zip(self.differential.images()) {
            if !self.differential.apply_unchecked(img).is_zero() {
                return Err(Error::NotSquareZero(g.name.clone()));
            }
        }
        Ok(())
    }

    /// Default truncation degree: twice the top generator degree plus 4.
    pub fn default_truncation(&self) -> i64 {
        2 * self.algebra.max_generator_degree() + 4
    }

    /// `None` if pure, otherwise the first generator violating
    /// `d(V^even) = 0, d(V^odd) ⊂ Λ V^even`.
    pub fn purity_witness(&self) -> Option<String> {
        let odd = self.algebra.odd_mask();
        for (i, g) in self.algebra.generators().iter().enumerate() {
            let img = self.differential.image(i);
            let ok = if g.is_even() {
                img.is_zero()
            } else {
                img.terms().keys().all(|m| m.support().all(|(j, _)| !odd[j]))
            };
            if !ok {
                return Some(g.name.clone());
            }
        }
        None
    }

    pub fn is_pure(&self) -> bool {
        self.purity_witness().is_none()
    }

    /// No generator of degree `≤ k`.
    pub fn is_k_connected(&self, k: i64) -> bool {
        self.algebra.generators().iter().all(|g| g.degree > k)
    }

    pub fn require_k_connected(&self, k: i64) -> Result<()> {
        match self.algebra.generators().iter().find(|g| g.degree <= k) {
            None => Ok(()),
            Some(g) => Err(Error::NotConnected {
                k,
                generator: g.name.clone(),
                degree: g.degree,
            }),
        }
    }

    pub fn require_pure(&self) -> Result<()> {
        match self.purity_witness() {
            None => Ok(()),
            Some(g) => Err(Error::NotPure(g)),
        }
    }

    /// Generator indices ordered so that `d(g)` only involves generators
    /// earlier in the list. Fails if the dependency graph has a cycle (the
    /// model is then not a Sullivan algebra).
    pub fn dependency_order(&self) -> Result<Vec<usize>> {
        let n = self.algebra.len();
        let deps: Vec<BTreeSet<usize>> = (0..n)
            .map(|i| {
                self.differential
                    .image(i)
                    .terms()
                    .keys()
                    .flat_map(|m| m.support().map(|(j, _)| j).collect::<Vec<_>>())
                    .collect()
            })
            .collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let before = order.len();
            for i in 0..n {
                if !placed[i] && deps[i].iter().all(|&j| placed[j]) {
                    placed[i] = true;
                    order.push(i);
                }
            }
            if order.len() == before {
                let stuck = (0..n).find(|&i| !placed[i]).expect("some generator unplaced");
                return Err(Error::NotSullivan(self.algebra.generator(stuck).name.clone()));
            }
        }
        Ok(order)
    }

    /// Renames generators (names absent from `renames` are kept). Returns the
    /// renamed model and the isomorphism onto it.
    pub fn renamed(
        &self,
        name: impl Into<String>,
        renames: &HashMap<String, String>,
    ) -> Result<(SullivanModel, AlgebraMorphism)> {
        let gens: Vec<Generator> = self
            .algebra
            .generators()
            .iter()
            .map(|g| match renames.get(&g.name) {
                Some(n) => g.renamed(n.clone()),
                None => g.clone(),
            })
            .collect();
        let target = FreeGca::new(gens)?;
        let images = (0..target.len())
            .map(|i| Element::monomial(&target, target.generator_monomial(i), num_traits::One::one()))
            .collect();
        let iso = AlgebraMorphism::new("rename", &self.algebra, &target, images)?;
        let d_images = self
            .differential
            .images()
            .iter()
            .map(|e| iso.apply(e))
            .collect::<Result<Vec<_>>>()?;
        let model = SullivanModel::new(name, Derivation::new(&target, 1, d_images)?)?;
        Ok((model, iso))
    }
}

/// `f∘d = d∘f` on every generator of the source.
pub fn check_chain_map(f: &AlgebraMorphism, source: &SullivanModel, target: &SullivanModel) -> Result<()> {
    if !f.source().same_as(source.algebra()) || !f.target().same_as(target.algebra()) {
        return Err(Error::MismatchedAlgebra);
    }
    for (i, g) in source.algebra().generators().iter().enumerate() {
        let lhs = f.apply(source.differential().image(i))?;
        let rhs = target.d(f.image(i))?;
        if lhs != rhs {
            return Err(Error::NotChainMap {
                map: f.name().to_string(),
                generator: g.name.clone(),
            });
        }
    }
    Ok(())
}

/// `p∘s = id` on every generator of `s`'s source.
pub fn check_section(s: &AlgebraMorphism, p: &AlgebraMorphism) -> Result<()> {
    let composite = p.after(s)?;
    let id = AlgebraMorphism::identity(s.source());
    for (i, g) in s.source().generators().iter().enumerate() {
        if composite.image(i) != id.image(i) {
            return Err(Error::NotSection {
                map: s.name().to_string(),
                generator: g.name.clone(),
            });
        }
    }
    Ok(())
}

/// `A ⊗_B C` with its two inclusions.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub model: SullivanModel,
    pub left: AlgebraMorphism,
    pub right: AlgebraMorphism,
}

/// Amalgamated tensor product over `base`: generators of `a`, then those
/// of `b` not in `base`. Shared generators must agree in degree and in
/// differential.
pub fn tensor_amalgamated(
    name: impl Into<String>,
    a: &SullivanModel,
    b: &SullivanModel,
    base: &FreeGca,
) -> Result<Amalgam> {
    for g in base.generators() {
        for side in [a, b] {
            let i = side.algebra().require(&g.name)?;
            if side.algebra().generator(i).degree != g.degree {
                return Err(Error::ConflictingGenerator(g.name.clone()));
            }
        }
    }
    let mut gens: Vec<Generator> = a.algebra().generators().to_vec();
    for g in b.algebra().generators() {
        if base.contains(&g.name) {
            continue;
        }
        if a.algebra().contains(&g.name) {
            return Err(Error::ConflictingGenerator(g.name.clone()));
        }
        gens.push(g.clone());
    }
    let algebra = FreeGca::new(gens)?;
    let mut images = HashMap::new();
    for g in base.generators() {
        let da = a.d_of(&g.name)?.embed(&algebra)?;
        let db = b.d_of(&g.name)?.embed(&algebra)?;
        if da != db {
            return Err(Error::ConflictingGenerator(g.name.clone()));
        }
    }
    for side in [a, b] {
        for (g, img) in side.algebra().generators().iter().zip(side.differential().images()) {
            images.insert(g.name.clone(), img.embed(&algebra)?);
        }
    }
    let d = Derivation::from_named(&algebra, 1, &images, false)?;
    let model = SullivanModel::new(name, d)?;
    let left = AlgebraMorphism::by_name("left inclusion", a.algebra(), &algebra, &HashMap::new())?;
    let right = AlgebraMorphism::by_name("right inclusion", b.algebra(), &algebra, &HashMap::new())?;
    check_chain_map(&left, a, &model)?;
    check_chain_map(&right, b, &model)?;
    Ok(Amalgam { model, left, right })
}

/// A quotient model with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub model: SullivanModel,
    pub projection: AlgebraMorphism,
}

/// Kills the named generators.
pub fn quotient_by_generators<S: AsRef<str>>(
    name: impl Into<String>,
    a: &SullivanModel,
    kill: &[S],
) -> Result<Quotient> {
    let subst: Vec<(String, Option<String>)> = kill.iter().map(|s| (s.as_ref().to_string(), None)).collect();
    substitute_generators(name, a, &subst)
}

/// Removes generators, sending each either to zero (`None`) or to another
/// surviving generator (`Some(name)`). Fails unless the induced projection
/// is compatible with the differential.
pub fn substitute_generators(
    name: impl Into<String>,
    a: &SullivanModel,
    subst: &[(String, Option<String>)],
) -> Result<Quotient> {
    let removed: HashMap<&str, Option<&str>> = subst.iter().map(|(k, v)| (k.as_str(), v.as_deref())).collect();
    for k in removed.keys() {
        a.algebra().require(k)?;
    }
    let gens: Vec<Generator> = a
        .algebra()
        .generators()
        .iter()
        .filter(|g| !removed.contains_key(g.name.as_str()))
        .cloned()
        .collect();
    let algebra = FreeGca::new(gens)?;
    let mut images = HashMap::new();
    for g in a.algebra().generators() {
        let img = match removed.get(g.name.as_str()) {
            None => Element::generator(&algebra, &g.name)?,
            Some(None) => Element::zero(&algebra),
            Some(Some(t)) => {
                let e = Element::generator(&algebra, t)?;
                e.check_degree(g.degree, &g.name)?;
                e
            }
        };
        images.insert(g.name.clone(), img);
    }
    let projection = AlgebraMorphism::from_named("projection", a.algebra(), &algebra, &images)?;
    let mut d_images = HashMap::new();
    for g in algebra.generators() {
        d_images.insert(g.name.clone(), projection.apply(a.d_of(&g.name)?)?);
    }
    let d = Derivation::from_named(&algebra, 1, &d_images, false)?;
    let model = SullivanModel::new(name, d)?;
    check_chain_map(&projection, a, &model).map_err(|e| match e {
        Error::NotChainMap { generator, .. } => Error::NotClosed(generator),
        other => other,
    })?;
    Ok(Quotient { model, projection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> SullivanModel {
        SullivanModel::from_generators(
            "S4",
            vec![Generator::new("x", 4), Generator::new("y", 7)],
            &[("y", "x^2")],
        )
        .unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        // dz = y with dy = x^2 gives d²z = x^2
        let err = SullivanModel::from_generators(
            "bad",
            vec![Generator::new("x", 4), Generator::new("y", 7), Generator::new("z", 6)],
            &[("y", "x^2"), ("z", "y")],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotSquareZero("z".into()));
    }

    #[test]
    fn purity() {
        assert!(s4().is_pure());
        let x = SullivanModel::free("K", vec![Generator::new("x", 4)]).unwrap();
        assert!(x.is_pure());
        let impure = SullivanModel::from_generators(
            "impure",
            vec![Generator::new("a", 4), Generator::new("b", 5), Generator::new("c", 8)],
            &[("c", "a*b")],
        )
        .unwrap();
        assert_eq!(impure.purity_witness().as_deref(), Some("c"));
    }

    #[test]
    fn connectivity() {
        let x = SullivanModel::free("K", vec![Generator::new("x", 4)]).unwrap();
        assert!(x.is_k_connected(2));
        assert!(!x.is_k_connected(4));
        assert!(s4().is_k_connected(3));
    }

    #[test]
    fn amalgam_over_itself_is_itself() {
        let m = s4();
        let am = tensor_amalgamated("A", &m, &m, m.algebra()).unwrap();
        assert!(am.model.algebra().same_as(m.algebra()));
        let id = AlgebraMorphism::identity(m.algebra());
        assert_eq!(am.left.images(), id.images());
        assert_eq!(am.right.images(), id.images());
    }

    #[test]
    fn amalgam_rejects_conflicting_differential() {
        let a = s4();
        let b = SullivanModel::free("B", vec![Generator::new("x", 4), Generator::new("y", 7)]).unwrap();
        let err = tensor_amalgamated("A", &a, &b, a.algebra()).unwrap_err();
        assert_eq!(err, Error::ConflictingGenerator("y".into()));
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let m = s4();
        let q = quotient_by_generators::<&str>("Q", &m, &[]).unwrap();
        assert!(q.model.algebra().same_as(m.algebra()));
    }

    #[test]
    fn quotient_must_be_closed() {
        // killing x leaves d y = x^2 in the ideal: fine. Killing y alone is not.
        let m = s4();
        assert!(quotient_by_generators("Q", &m, &["x", "y"]).is_ok());
        let err = quotient_by_generators("Q", &m, &["y"]).unwrap_err();
        assert_eq!(err, Error::NotClosed("y".into()));
    }

    #[test]
    fn dependency_order_follows_differential() {
        let m = SullivanModel::from_generators(
            "rev",
            vec![Generator::new("y", 7), Generator::new("x", 4)],
            &[("y", "x^2")],
        )
        .unwrap();
        assert_eq!(m.dependency_order().unwrap(), vec![1, 0]);
    }
}
