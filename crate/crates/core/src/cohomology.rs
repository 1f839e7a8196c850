//! Degree-truncated exact linear algebra over Sullivan models: cohomology,
//! cocycle and coboundary tests, the Hom-complex differential, and lifting
//! through surjections.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gca::{AlgebraMorphism, Element, FreeGca, ModuleMorphism, Monomial};
use crate::linalg::{self, Echelon, SparseVec};
use crate::models::{check_chain_map, check_section, SullivanModel};

/// A monomial basis of one degree with its reverse index.
#[derive(Clone, Debug)]
pub struct Basis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn of_degree(algebra: &FreeGca, n: i64) -> Basis {
        let monomials = algebra.basis_of_degree(n);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinates of a homogeneous element of this degree. Terms of other
    /// degrees are an error.
    pub fn coordinates(&self, e: &Element) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(e.terms().len());
        for (m, c) in e.terms() {
            let i = *self.index.get(m).ok_or(Error::Inhomogeneous)?;
            v.push((i, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn element(&self, algebra: &FreeGca, coords: &[BigRational]) -> Element {
        let terms: BTreeMap<Monomial, BigRational> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.monomials[i].clone(), c.clone()))
            .collect();
        Element::from_terms(algebra, terms)
    }
}

/// `d: C^n → C^{n+1}` in monomial coordinates.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    pub degree: i64,
    pub basis: Basis,
    /// One sparse column per basis monomial, in the degree `n+1` basis.
    pub matrix_of_d: Vec<SparseVec>,
}

impl DegreeSlice {
    pub fn new(model: &SullivanModel, n: i64) -> Result<DegreeSlice> {
        let basis = Basis::of_degree(model.algebra(), n);
        let next = Basis::of_degree(model.algebra(), n + 1);
        let matrix_of_d = basis
            .monomials
            .iter()
            .map(|m| next.coordinates(&model.differential().apply_monomial(m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeSlice {
            degree: n,
            basis,
            matrix_of_d,
        })
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.matrix_of_d.iter().cloned())
    }

    /// A basis of the cocycles of this degree.
    pub fn cocycles(&self, algebra: &FreeGca) -> Vec<Element> {
        let rows = transpose(&self.matrix_of_d);
        let mut ech = Echelon::new();
        for r in rows {
            ech.insert(r);
        }
        ech.kernel(self.basis.len())
            .iter()
            .map(|z| self.basis.element(algebra, z))
            .collect()
    }
}

fn transpose(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows.entry(*i).or_default().push((j, v.clone()));
        }
    }
    rows.into_values().collect()
}

/// `dim H^n` for `n = 0..=n_max`.
pub fn cohomology_dims(model: &SullivanModel, n_max: i64) -> Result<Vec<usize>> {
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=n_max {
        let slice = DegreeSlice::new(model, n)?;
        ranks.push(slice.rank());
        dims.push(slice.basis.len());
    }
    Ok((0..dims.len())
        .map(|n| dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect())
}

pub fn is_cocycle(a: &Element, model: &SullivanModel) -> Result<bool> {
    if !a.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    Ok(model.d(a)?.is_zero())
}

/// `Some(z)` with `dz = a` when the cocycle `a` is exact.
pub fn coboundary_witness(a: &Element, model: &SullivanModel) -> Result<Option<Element>> {
    if !is_cocycle(a, model)? {
        return Err(Error::NotCocycle);
    }
    let n = match a.degree()? {
        None => return Ok(Some(Element::zero(model.algebra()))),
        Some(n) => n,
    };
    if n == 0 {
        return Ok(None);
    }
    let lower = DegreeSlice::new(model, n - 1)?;
    let target = Basis::of_degree(model.algebra(), n);
    let b = target.coordinates(a)?;
    Ok(linalg::solve_columns(&lower.matrix_of_d, &b, target.len()).map(|z| lower.basis.element(model.algebra(), &z)))
}

pub fn is_coboundary(a: &Element, model: &SullivanModel) -> Result<bool> {
    Ok(coboundary_witness(a, model)?.is_some())
}

/// Whether two cocycles of the same degree are cohomologous.
pub fn same_class(a: &Element, b: &Element, model: &SullivanModel) -> Result<bool> {
    is_coboundary(&a.try_sub(b)?, model)
}

/// Checks that two linear maps `source → target` of the same degree shift
/// agree on cohomology classes in source degrees `0..=n_max`. Returns the
/// first cocycle where they differ.
pub fn first_class_disagreement(
    source: &SullivanModel,
    target: &SullivanModel,
    n_max: i64,
    f: impl Fn(&Element) -> Result<Element>,
    g: impl Fn(&Element) -> Result<Element>,
) -> Result<Option<Element>> {
    for n in 0..=n_max {
        for z in DegreeSlice::new(source, n)?.cocycles(source.algebra()) {
            let (fz, gz) = (f(&z)?, g(&z)?);
            if !same_class(&fz, &gz, target)? {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

/// The Hom complex of base-linear maps between two models sharing a base
/// sub-model (matched by generator name).
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: SullivanModel,
    pub target: SullivanModel,
}

impl HomComplex {
    pub fn new(source: &SullivanModel, target: &SullivanModel) -> Self {
        HomComplex {
            source: source.clone(),
            target: target.clone(),
        }
    }

    fn check_base(&self, f: &ModuleMorphism) -> Result<()> {
        if !f.source().same_as(self.source.algebra()) || !f.target().same_as(self.target.algebra()) {
            return Err(Error::MismatchedAlgebra);
        }
        for b in f.base_generators() {
            let ds = self.source.d_of(b)?;
            let in_base = ds.terms().keys().all(|m| m.support().all(|(i, _)| f.is_base(i)));
            if !in_base || ds.embed(self.target.algebra())? != *self.target.d_of(b)? {
                return Err(Error::NotClosed(b.to_string()));
            }
        }
        Ok(())
    }

    /// `D(f) = d∘f − (−1)^{|f|} f∘d`, evaluated on every module-basis
    /// monomial of degree `≤ max_degree`.
    pub fn differential(&self, f: &ModuleMorphism, max_degree: i64) -> Result<ModuleMorphism> {
        self.check_base(f)?;
        let base: Vec<String> = f.base_generators().map(str::to_string).collect();
        let mut out = ModuleMorphism::new(
            format!("D({})", f.name()),
            f.source(),
            f.target(),
            &base,
            f.degree() + 1,
            false,
        )?;
        let sign = if f.degree().rem_euclid(2) == 0 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        for n in 0..=max_degree {
            for u in f.module_basis(n) {
                let u_elem = Element::monomial(f.source(), u.clone(), BigRational::one());
                let mut value = self.target.d(&f.image(&u)?)?;
                value.add_scaled(&f.apply(&self.source.d(&u_elem)?)?, &sign);
                out.set_image(u, value)?;
            }
        }
        Ok(out)
    }

    /// Fails with the first module-basis monomial where `D(f) ≠ 0`.
    pub fn check_cocycle(&self, f: &ModuleMorphism, max_degree: i64) -> Result<()> {
        let df = self.differential(f, max_degree)?;
        for (u, v) in df.explicit_images() {
            if !v.is_zero() {
                return Err(Error::NotHomCocycle {
                    map: f.name().to_string(),
                    monomial: f.source().format_monomial(u),
                });
            }
        }
        Ok(())
    }
}

/// Lifts `f: A → B` through the surjection `p: E → B` to a chain algebra
/// map `φ: A → E` with `p∘φ = f`. Generators of `A` are handled in
/// dependency order; for each `g` the affine system `dz = φ(dg)`,
/// `p(z) = f(g)` is solved in `E^{|g|}`, taking the solution with free
/// coordinates zero.
pub fn lift_through_surjection(
    p: &AlgebraMorphism,
    e: &SullivanModel,
    b: &SullivanModel,
    f: &AlgebraMorphism,
    a: &SullivanModel,
    n_max: i64,
) -> Result<AlgebraMorphism> {
    if !p.source().same_as(e.algebra())
        || !p.target().same_as(b.algebra())
        || !f.source().same_as(a.algebra())
        || !f.target().same_as(b.algebra())
    {
        return Err(Error::MismatchedAlgebra);
    }
    let mut images: Vec<Element> = vec![Element::zero(e.algebra()); a.algebra().len()];
    for i in a.dependency_order()? {
        let g = a.algebra().generator(i);
        if g.degree > n_max {
            return Err(Error::NoSolution {
                degree: g.degree,
                reason: format!("generator {} lies above the truncation degree {n_max}", g.name),
            });
        }
        let partial = AlgebraMorphism::new("", a.algebra(), e.algebra(), images.clone())?;
        let rhs_d = partial.apply(a.differential().image(i))?;
        let rhs_p = f.image(i);

        let unknowns = Basis::of_degree(e.algebra(), g.degree);
        let upper = Basis::of_degree(e.algebra(), g.degree + 1);
        let lower_b = Basis::of_degree(b.algebra(), g.degree);
        let offset = upper.len();
        let columns = unknowns
            .monomials
            .iter()
            .map(|m| {
                let mut col = upper.coordinates(&e.differential().apply_monomial(m))?;
                let pm = p.apply_monomial(m);
                col.extend(lower_b.coordinates(&pm)?.into_iter().map(|(j, c)| (j + offset, c)));
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rhs = upper.coordinates(&rhs_d)?;
        rhs.extend(lower_b.coordinates(rhs_p)?.into_iter().map(|(j, c)| (j + offset, c)));
        let z = linalg::solve_columns(&columns, &rhs, offset + lower_b.len()).ok_or_else(|| Error::NoSolution {
            degree: g.degree,
            reason: format!("no lift for generator {}", g.name),
        })?;
        images[i] = unknowns.element(e.algebra(), &z);
    }
    let phi = AlgebraMorphism::new(format!("lift({})", f.name()), a.algebra(), e.algebra(), images)?;
    check_chain_map(&phi, a, e)?;
    let composite = p.after(&phi)?;
    for (i, gname) in a.algebra().generators().iter().enumerate() {
        if composite.image(i) != f.image(i) {
            return Err(Error::NotSection {
                map: phi.name().to_string(),
                generator: gname.name.clone(),
            });
        }
    }
    Ok(phi)
}

/// Lifts the identity of `b` through `p: E → B`, giving a section.
pub fn section_of(p: &AlgebraMorphism, e: &SullivanModel, b: &SullivanModel, n_max: i64) -> Result<AlgebraMorphism> {
    let id = AlgebraMorphism::identity(b.algebra());
    let s = lift_through_surjection(p, e, b, &id, b, n_max)?;
    check_section(&s, p)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_element;
    use crate::gca::Generator;
    use crate::models::{build_disk_model, build_path_model, build_torus_model, MappingSpaceModel};

    fn lambda_x() -> SullivanModel {
        SullivanModel::free("K", vec![Generator::new("x", 4)]).unwrap()
    }

    fn s4() -> SullivanModel {
        SullivanModel::from_generators(
            "S4",
            vec![Generator::new("x", 4), Generator::new("y", 7)],
            &[("y", "x^2")],
        )
        .unwrap()
    }

    #[test]
    fn dims_of_basic_models() {
        assert_eq!(cohomology_dims(&lambda_x(), 8).unwrap(), [1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(cohomology_dims(&s4(), 8).unwrap(), [1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(cohomology_dims(&s4(), 0).unwrap(), [1]);
    }

    #[test]
    fn disk_and_path_are_quasi_isomorphic_to_base() {
        let m = lambda_x();
        let expected = cohomology_dims(&m, 8).unwrap();
        let disk = build_disk_model(&m, 2).unwrap();
        assert_eq!(cohomology_dims(&disk.model, 8).unwrap(), expected);
        let path = build_path_model(&s4()).unwrap();
        assert_eq!(
            cohomology_dims(&path.model, 14).unwrap(),
            cohomology_dims(&s4(), 14).unwrap()
        );
    }

    #[test]
    fn slices_compose_to_zero() {
        let t = build_torus_model(&s4(), 2).unwrap().model;
        for n in 0..10 {
            let lo = DegreeSlice::new(&t, n).unwrap();
            let hi_basis = Basis::of_degree(t.algebra(), n + 1);
            for m in &lo.basis.monomials {
                let dm = t.differential().apply_monomial(m);
                assert!(t.d(&dm).unwrap().is_zero());
                hi_basis.coordinates(&dm).unwrap();
            }
        }
    }

    #[test]
    fn cocycles_and_coboundaries() {
        let t = build_torus_model(&lambda_x(), 2).unwrap().model;
        let one = Element::one(t.algebra());
        assert!(is_cocycle(&one, &t).unwrap());
        let s1x = t.generator("s1x").unwrap();
        assert!(is_cocycle(&s1x, &t).unwrap());
        assert!(!is_coboundary(&s1x, &t).unwrap());
        assert_eq!(
            coboundary_witness(&Element::zero(t.algebra()), &t).unwrap(),
            Some(Element::zero(t.algebra()))
        );

        let sphere = crate::models::build_sphere_model(&s4(), 1).unwrap().model;
        assert!(!is_cocycle(&sphere.generator("s1y").unwrap(), &sphere).unwrap());

        let z = parse_element("s1y x + 3 s1x y", sphere.algebra()).unwrap();
        let dz = sphere.d(&z).unwrap();
        let w = coboundary_witness(&dz, &sphere).unwrap().unwrap();
        assert_eq!(sphere.d(&w).unwrap(), dz);
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let m = s4();
        assert_eq!(
            coboundary_witness(&m.generator("y").unwrap(), &m).unwrap_err(),
            Error::NotCocycle
        );
        let x = m.generator("x").unwrap();
        let mixed = &x + &Element::one(m.algebra());
        assert_eq!(is_cocycle(&mixed, &m).unwrap_err(), Error::Inhomogeneous);
    }

    #[test]
    fn identity_lift_is_identity() {
        let m = s4();
        let id = AlgebraMorphism::identity(m.algebra());
        let phi = lift_through_surjection(&id, &m, &m, &id, &m, 10).unwrap();
        assert_eq!(phi.images(), id.images());
    }

    #[test]
    fn section_of_disk_augmentation() {
        let d = build_disk_model(&s4(), 2).unwrap();
        let eps = d.map(MappingSpaceModel::EPSILON_TILDE).unwrap();
        let s = section_of(&eps.map, &d.model, &eps.target, 10).unwrap();
        assert_eq!(s.image_of("x").unwrap(), &d.model.generator("x").unwrap());
    }

    #[test]
    fn zero_map_has_zero_differential() {
        let d = build_disk_model(&lambda_x(), 2).unwrap();
        let incl = d.map(MappingSpaceModel::SPHERE_INCLUSION).unwrap();
        let hom = HomComplex::new(&d.model, &incl.source);
        let f = ModuleMorphism::new("0", d.model.algebra(), incl.source.algebra(), &["x", "s1x"], 3, true).unwrap();
        let df = hom.differential(&f, 8).unwrap();
        assert!(df.explicit_images().values().all(Element::is_zero));
    }
}
