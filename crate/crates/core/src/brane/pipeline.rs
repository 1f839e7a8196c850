use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::shriek::{
    build_shriek_constant, build_shriek_diagonal, coproduct_shift, product_shift, require_brane_input, split_parity,
    ShriekMap,
};
use crate::cohomology::{coboundary_witness, section_of, Basis, DegreeSlice};
use crate::error::{Error, Result};
use crate::gca::{AlgebraMorphism, Derivation, Element, FreeGca, ModuleMorphism, Monomial};
use crate::models::{
    build_collapse_model, build_disk_model, build_path_model, build_sphere_model, build_torus_model, check_chain_map,
    check_section, loop_name, outer_path_name, path_copy_name, quotient_by_generators, sphere_name,
    substitute_generators, tensor_amalgamated, MappingSpaceModel, SullivanModel,
};

/// How the sections `φ` and `ψ` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionStrategy {
    /// Closed-form sections; `ψ` falls back to the solver when some
    /// generator has nonzero differential.
    Explicit,
    /// Generator-by-generator lifting.
    Solver,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub n_max: i64,
    pub sections: SectionStrategy,
    pub normalization: BigRational,
}

impl PipelineOptions {
    pub fn new(n_max: i64) -> Self {
        PipelineOptions {
            n_max,
            sections: SectionStrategy::Explicit,
            normalization: BigRational::one(),
        }
    }

    pub fn with_sections(mut self, sections: SectionStrategy) -> Self {
        self.sections = sections;
        self
    }

    pub fn with_normalization(mut self, c: BigRational) -> Self {
        self.normalization = c;
        self
    }
}

/// A section `map` of the surjection `projection: total → quotient`.
#[derive(Clone, Debug)]
pub struct Section {
    pub map: AlgebraMorphism,
    pub projection: AlgebraMorphism,
    pub total: SullivanModel,
    pub quotient: SullivanModel,
    pub explicit: bool,
}

impl Section {
    pub fn check(&self) -> Result<()> {
        check_chain_map(&self.map, &self.quotient, &self.total)?;
        check_chain_map(&self.projection, &self.total, &self.quotient)?;
        check_section(&self.map, &self.projection)
    }
}

/// `M(D^k) ⊗_{M(S^{k−1})} M(T^{(k)})`, its quotient by `s^{k−1}V, s^kV`
/// (which is `M ⊗_{M(S^{k−1})} M(T^{(k)})`), and the collapse model.
struct CoproductSetup {
    k: u32,
    torus: SullivanModel,
    collapse: MappingSpaceModel,
    total: SullivanModel,
    quotient: SullivanModel,
    projection: AlgebraMorphism,
}

impl CoproductSetup {
    fn new(m: &SullivanModel, k: u32) -> Result<Self> {
        require_brane_input(m, k)?;
        let disk = build_disk_model(m, k)?;
        let torus = build_torus_model(m, k)?;
        let sphere = disk.map(MappingSpaceModel::SPHERE_INCLUSION)?.source.clone();
        let amalgam = tensor_amalgamated("M(D^k)⊗M(T)", &disk.model, &torus.model, sphere.algebra())?;
        let mut kill = Vec::new();
        for g in m.algebra().generators() {
            kill.push(sphere_name(&g.name, k - 1));
            kill.push(sphere_name(&g.name, k));
        }
        let q = quotient_by_generators("M⊗M(T)", &amalgam.model, &kill)?;
        Ok(CoproductSetup {
            k,
            torus: torus.model,
            collapse: build_collapse_model(m, k)?,
            total: amalgam.model,
            quotient: q.model,
            projection: q.projection.with_name("epsilon_tilde⊗id"),
        })
    }

    fn explicit_phi(&self, m: &SullivanModel) -> Result<AlgebraMorphism> {
        let a = self.total.algebra();
        let k = self.k;
        let mut sigma = HashMap::new();
        let mut s = HashMap::new();
        for g in m.algebra().generators() {
            sigma.insert(g.name.clone(), Element::generator(a, &sphere_name(&g.name, k))?);
            s.insert(g.name.clone(), Element::generator(a, &loop_name(&g.name))?);
            let lower = sphere_name(&g.name, k - 1);
            s.insert(lower.clone(), Element::generator(a, &loop_name(&lower))?);
        }
        let sigma = Derivation::from_named(a, -i64::from(k), &sigma, true)?;
        let s = Derivation::from_named(a, -1, &s, true)?;
        let sign = if k.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let (_, odd) = split_parity(m);
        let mut over = HashMap::new();
        for y in odd {
            let name = loop_name(&sphere_name(&y, k - 1));
            let dy = m.d_of(&y)?.embed(a)?;
            let corr = s.apply(&sigma.apply(&dy)?)?.scale(&sign);
            over.insert(name.clone(), Element::generator(a, &name)?.try_add(&corr)?);
        }
        AlgebraMorphism::by_name("phi", self.quotient.algebra(), a, &over)
    }

    fn section(&self, m: &SullivanModel, strategy: SectionStrategy, n_max: i64) -> Result<Section> {
        let (map, explicit) = match strategy {
            SectionStrategy::Explicit => (self.explicit_phi(m)?, true),
            SectionStrategy::Solver => (
                section_of(&self.projection, &self.total, &self.quotient, n_max)?.with_name("phi"),
                false,
            ),
        };
        let section = Section {
            map,
            projection: self.projection.clone(),
            total: self.total.clone(),
            quotient: self.quotient.clone(),
            explicit,
        };
        section.check()?;
        Ok(section)
    }
}

/// The product-side models: `P = M(I) ⊗_{ΛV} M(S^k)`, the quotient `R` of
/// `P` identifying the two copies of `V` (isomorphic to `M(U^{(k)})`), and
/// `Q2 = M(I) ⊗_{ΛV⊗ΛV} P`.
struct ProductSetup {
    sphere: SullivanModel,
    p: SullivanModel,
    r: SullivanModel,
    q2: SullivanModel,
    q2_to_r: AlgebraMorphism,
    p_to_sphere: AlgebraMorphism,
    u_to_r: AlgebraMorphism,
    collapse: MappingSpaceModel,
    renames: HashMap<String, String>,
}

impl ProductSetup {
    fn new(m: &SullivanModel, k: u32) -> Result<Self> {
        require_brane_input(m, k)?;
        let path = build_path_model(m)?;
        let sphere = build_sphere_model(m, k)?.model;
        let collapse = build_collapse_model(m, k)?;

        let mut right_is_v = HashMap::new();
        for g in m.algebra().generators() {
            right_is_v.insert(path_copy_name(&g.name, 2), g.name.clone());
        }
        let (inner, _) = path.model.renamed("M(I)", &right_is_v)?;
        let p = tensor_amalgamated("P", &inner, &sphere, m.algebra())?.model;

        let ident: Vec<(String, Option<String>)> = m
            .algebra()
            .generators()
            .iter()
            .map(|g| (path_copy_name(&g.name, 1), Some(g.name.clone())))
            .collect();
        let r = substitute_generators("R", &p, &ident)?.model;
        let u_to_r = AlgebraMorphism::by_name("U→R", collapse.model.algebra(), r.algebra(), &HashMap::new())?;
        check_chain_map(&u_to_r, &collapse.model, &r)?;

        let mut renames = right_is_v.clone();
        for g in m.algebra().generators() {
            renames.insert(loop_name(&g.name), outer_path_name(&g.name));
        }
        let (outer, _) = path.model.renamed("M(I)'", &renames)?;
        let base_gens = outer
            .algebra()
            .generators()
            .iter()
            .filter(|g| p.algebra().contains(&g.name))
            .cloned()
            .collect();
        let base = FreeGca::new(base_gens)?;
        let q2 = tensor_amalgamated("Q2", &outer, &p, &base)?.model;

        let mut to_v = HashMap::new();
        for g in m.algebra().generators() {
            to_v.insert(path_copy_name(&g.name, 1), Element::generator(r.algebra(), &g.name)?);
        }
        let q2_to_r = AlgebraMorphism::by_name("epsilon_bar⊗id", q2.algebra(), r.algebra(), &to_v)?;
        check_chain_map(&q2_to_r, &q2, &r)?;
        let mut to_v = HashMap::new();
        for g in m.algebra().generators() {
            to_v.insert(
                path_copy_name(&g.name, 1),
                Element::generator(sphere.algebra(), &g.name)?,
            );
        }
        let p_to_sphere = AlgebraMorphism::by_name("epsilon_bar⊗id", p.algebra(), sphere.algebra(), &to_v)?;
        check_chain_map(&p_to_sphere, &p, &sphere)?;
        Ok(ProductSetup {
            sphere,
            p,
            r,
            q2,
            q2_to_r,
            p_to_sphere,
            u_to_r,
            collapse,
            renames,
        })
    }

    fn explicit_psi(&self, m: &SullivanModel) -> Result<AlgebraMorphism> {
        let q2 = self.q2.algebra();
        let mut over = HashMap::new();
        for g in m.algebra().generators() {
            over.insert(g.name.clone(), Element::generator(q2, &path_copy_name(&g.name, 1))?);
            let sv = Element::generator(q2, &loop_name(&g.name))?;
            let outer = Element::generator(q2, &outer_path_name(&g.name))?;
            over.insert(loop_name(&g.name), sv.try_sub(&outer)?);
        }
        AlgebraMorphism::by_name("psi", self.r.algebra(), q2, &over)
    }

    fn section(&self, m: &SullivanModel, strategy: SectionStrategy, n_max: i64) -> Result<Section> {
        let closed = m.differential().images().iter().all(Element::is_zero);
        let (map, explicit) = if strategy == SectionStrategy::Explicit && closed {
            (self.explicit_psi(m)?, true)
        } else {
            (
                section_of(&self.q2_to_r, &self.q2, &self.r, n_max)?.with_name("psi"),
                false,
            )
        };
        let section = Section {
            map,
            projection: self.q2_to_r.clone(),
            total: self.q2.clone(),
            quotient: self.r.clone(),
            explicit,
        };
        section.check()?;
        Ok(section)
    }
}

/// The section `φ` of `ε̃⊗id: M(D^k) ⊗_{M(S^{k−1})} M(T^{(k)}) → M ⊗_{M(S^{k−1})} M(T^{(k)})`.
pub fn build_section_phi(m: &SullivanModel, k: u32, strategy: SectionStrategy, n_max: i64) -> Result<Section> {
    CoproductSetup::new(m, k)?.section(m, strategy, n_max)
}

/// The section `ψ` of `ε̄⊗id: M(I) ⊗_{ΛV⊗ΛV} P → M ⊗_{ΛV⊗ΛV} P`, where
/// `P = M(I) ⊗_{ΛV} M(S^k)`.
pub fn build_section_psi(m: &SullivanModel, k: u32, strategy: SectionStrategy, n_max: i64) -> Result<Section> {
    ProductSetup::new(m, k)?.section(m, strategy, n_max)
}

/// Source basis, target basis, and the target coordinates of each source monomial.
pub type SliceMatrix = (Vec<Monomial>, Vec<Monomial>, Vec<Vec<BigRational>>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    CoproductDual,
    ProductDual,
    Composite,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::CoproductDual => "coproduct",
            Direction::ProductDual => "product",
            Direction::Composite => "composite",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Stage {
    Algebra(AlgebraMorphism),
    Module(ModuleMorphism),
}

impl Stage {
    fn apply(&self, a: &Element) -> Result<Element> {
        match self {
            Stage::Algebra(f) => f.apply(a),
            Stage::Module(f) => f.apply(a),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Stage::Algebra(f) => f.name(),
            Stage::Module(f) => f.name(),
        }
    }
}

/// A composite of algebra and module maps between two models, raising
/// degree by `shift`.
#[derive(Clone, Debug)]
pub struct BraneOperation {
    pub direction: Direction,
    pub source: SullivanModel,
    pub target: SullivanModel,
    pub stages: Vec<Stage>,
    pub shift: i64,
    pub notes: Vec<String>,
}

impl BraneOperation {
    pub fn apply(&self, a: &Element) -> Result<Element> {
        let mut x = a.clone();
        for s in &self.stages {
            x = s.apply(&x)?;
        }
        x.embed(self.target.algebra())
    }

    /// Images of the degree-`n` basis monomials.
    pub fn slice(&self, n: i64) -> Result<Vec<(Monomial, Element)>> {
        self.source
            .algebra()
            .basis_of_degree(n)
            .into_iter()
            .map(|m| {
                let e = Element::monomial(self.source.algebra(), m.clone(), BigRational::one());
                Ok((m, self.apply(&e)?))
            })
            .collect()
    }

    /// The matrix of the operation from source degree `n` to target degree
    /// `n + shift`, one coordinate vector per source monomial.
    pub fn matrix(&self, n: i64) -> Result<SliceMatrix> {
        let target_basis = Basis::of_degree(self.target.algebra(), n + self.shift);
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        for (m, img) in self.slice(n)? {
            let mut dense = vec![BigRational::default(); target_basis.len()];
            for (i, c) in target_basis.coordinates(&img)? {
                dense[i] = c;
            }
            cols.push(m);
            rows.push(dense);
        }
        Ok((cols, target_basis.monomials.clone(), rows))
    }

    /// `d∘f = (−1)^{shift} f∘d` on every basis monomial of degree `≤ n_max`.
    pub fn check_chain_map(&self, n_max: i64) -> Result<()> {
        let sign = if self.shift.rem_euclid(2) == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        for n in 0..=n_max {
            for (m, img) in self.slice(n)? {
                let e = Element::monomial(self.source.algebra(), m.clone(), BigRational::one());
                let lhs = self.target.d(&img)?;
                let rhs = self.apply(&self.source.d(&e)?)?.scale(&sign);
                if lhs != rhs {
                    return Err(Error::NotChainMap {
                        map: self.direction.as_str().to_string(),
                        generator: self.source.algebra().format_monomial(&m),
                    });
                }
            }
        }
        Ok(())
    }

    /// First basis monomial of degree `≤ n_max` with nonzero image.
    pub fn first_nonzero(&self, n_max: i64) -> Result<Option<(Element, Element)>> {
        for n in 0..=n_max {
            for (m, img) in self.slice(n)? {
                if !img.is_zero() {
                    return Ok(Some((
                        Element::monomial(self.source.algebra(), m, BigRational::one()),
                        img,
                    )));
                }
            }
        }
        Ok(None)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BraneOperation) -> Result<BraneOperation> {
        if !first.target.algebra().same_as(self.source.algebra()) {
            return Err(Error::MismatchedAlgebra);
        }
        let mut stages = first.stages.clone();
        stages.push(Stage::Algebra(AlgebraMorphism::by_name(
            "id",
            first.target.algebra(),
            self.source.algebra(),
            &HashMap::new(),
        )?));
        stages.extend(self.stages.iter().cloned());
        let mut notes = first.notes.clone();
        notes.extend(self.notes.iter().cloned());
        Ok(BraneOperation {
            direction: Direction::Composite,
            source: first.source.clone(),
            target: self.target.clone(),
            stages,
            shift: first.shift + self.shift,
            notes,
        })
    }
}

/// `δ^∨: M(S^k) → M(T^{(k)})`: `incl^*`, the identification
/// `s^k v ↦ s s^{k−1}v`, the section `φ`, then `γ ⊗ id`.
pub fn brane_coproduct_dual(m: &SullivanModel, k: u32, options: &PipelineOptions) -> Result<BraneOperation> {
    let setup = CoproductSetup::new(m, k)?;
    let gamma = build_shriek_constant(m, k, &options.normalization, options.n_max)?;
    coproduct_from_parts(m, &setup, &gamma, options)
}

fn coproduct_from_parts(
    m: &SullivanModel,
    setup: &CoproductSetup,
    gamma: &ShriekMap,
    options: &PipelineOptions,
) -> Result<BraneOperation> {
    let incl = setup.collapse.map(MappingSpaceModel::INCL)?;
    let u = &setup.collapse.model;
    let mut over = HashMap::new();
    for g in m.algebra().generators() {
        over.insert(
            sphere_name(&g.name, setup.k),
            Element::generator(setup.quotient.algebra(), &loop_name(&sphere_name(&g.name, setup.k - 1)))?,
        );
    }
    let iso = AlgebraMorphism::by_name("iso", u.algebra(), setup.quotient.algebra(), &over)?;
    check_chain_map(&iso, u, &setup.quotient)?;
    let phi = setup.section(m, options.sections, options.n_max)?;
    let gamma_id = gamma
        .map
        .extend("gamma⊗id", setup.total.algebra(), setup.torus.algebra())?;
    Ok(BraneOperation {
        direction: Direction::CoproductDual,
        source: incl.source.clone(),
        target: setup.torus.clone(),
        stages: vec![
            Stage::Algebra(incl.map.clone()),
            Stage::Algebra(iso),
            Stage::Algebra(phi.map),
            Stage::Module(gamma_id),
        ],
        shift: coproduct_shift(m, setup.k),
        notes: vec![format!("phi: {}", if phi.explicit { "explicit" } else { "solver" })],
    })
}

/// `μ^∨: M(T^{(k)}) → M(S^k)`: `comp^*`, the identification of `M(U^{(k)})`
/// with `M ⊗_{ΛV⊗ΛV} P`, the section `ψ`, `η ⊗ id`, then `ε̄ ⊗ id`.
pub fn brane_product_dual(m: &SullivanModel, k: u32, options: &PipelineOptions) -> Result<BraneOperation> {
    let setup = ProductSetup::new(m, k)?;
    let eta = build_shriek_diagonal(m, &options.normalization, options.n_max)?;
    let comp = setup.collapse.map(MappingSpaceModel::COMP)?;
    let psi = setup.section(m, options.sections, options.n_max)?;
    let eta_id = eta
        .map
        .extend_renamed("eta⊗id", setup.q2.algebra(), setup.p.algebra(), &setup.renames)?;
    Ok(BraneOperation {
        direction: Direction::ProductDual,
        source: comp.source.clone(),
        target: setup.sphere.clone(),
        stages: vec![
            Stage::Algebra(comp.map.clone()),
            Stage::Algebra(setup.u_to_r.clone()),
            Stage::Algebra(psi.map),
            Stage::Module(eta_id),
            Stage::Algebra(setup.p_to_sphere.clone()),
        ],
        shift: product_shift(m),
        notes: vec![format!("psi: {}", if psi.explicit { "explicit" } else { "solver" })],
    })
}

/// Cocycles of the source whose image is a non-exact cocycle.
#[derive(Clone, Debug, Default)]
pub struct NontrivialityReport {
    pub witnesses: Vec<(Element, Element)>,
}

impl NontrivialityReport {
    pub fn is_nontrivial(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Evaluates the operation on a basis of the cocycles of each degree
/// `≤ n_max` and records those with non-exact image.
pub fn nontriviality_report(op: &BraneOperation, n_max: i64) -> Result<NontrivialityReport> {
    let mut report = NontrivialityReport::default();
    for n in 0..=n_max {
        for z in DegreeSlice::new(&op.source, n)?.cocycles(op.source.algebra()) {
            let img = op.apply(&z)?;
            if img.is_zero() || !op.target.d(&img)?.is_zero() {
                continue;
            }
            if coboundary_witness(&img, &op.target)?.is_none() {
                report.witnesses.push((z, img));
            }
        }
    }
    Ok(report)
}

/// `δ^∨ ∘ μ^∨ : M(T^{(k)}) → M(T^{(k)})`, with its nontriviality report.
pub fn compose_operations(
    delta: &BraneOperation,
    mu: &BraneOperation,
    n_max: i64,
) -> Result<(BraneOperation, NontrivialityReport)> {
    let composite = delta.after(mu)?;
    let report = nontriviality_report(&composite, n_max)?;
    Ok((composite, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_element;
    use crate::gca::{rational, Generator};

    fn lambda_x(deg: i64) -> SullivanModel {
        SullivanModel::free("K", vec![Generator::new("x", deg)]).unwrap()
    }

    fn s4() -> SullivanModel {
        SullivanModel::from_generators(
            "S4",
            vec![Generator::new("x", 4), Generator::new("y", 7)],
            &[("y", "x^2")],
        )
        .unwrap()
    }

    fn eval(op: &BraneOperation, expr: &str) -> Element {
        op.apply(&parse_element(expr, op.source.algebra()).unwrap()).unwrap()
    }

    fn target(op: &BraneOperation, expr: &str) -> Element {
        parse_element(expr, op.target.algebra()).unwrap()
    }

    #[test]
    fn explicit_phi_for_s4() {
        let phi = build_section_phi(&s4(), 2, SectionStrategy::Explicit, 12).unwrap();
        let img = phi.map.image_of("ss1y").unwrap();
        assert_eq!(img, &parse_element("ss1y + 2 sx s2x", phi.total.algebra()).unwrap());
    }

    #[test]
    fn explicit_psi_for_lambda_x() {
        let psi = build_section_psi(&lambda_x(4), 2, SectionStrategy::Explicit, 12).unwrap();
        assert!(psi.explicit);
        let q2 = psi.total.algebra();
        assert_eq!(psi.map.image_of("x").unwrap(), &parse_element("x_1", q2).unwrap());
        assert_eq!(psi.map.image_of("sx").unwrap(), &parse_element("sx - s'x", q2).unwrap());
        assert_eq!(psi.map.image_of("s2x").unwrap(), &parse_element("s2x", q2).unwrap());
    }

    #[test]
    fn solver_sections_for_s4() {
        build_section_phi(&s4(), 2, SectionStrategy::Solver, 12).unwrap();
        let psi = build_section_psi(&s4(), 2, SectionStrategy::Explicit, 12).unwrap();
        assert!(!psi.explicit);
    }

    #[test]
    fn lambda_x_closed_forms() {
        let m = lambda_x(4);
        let opts = PipelineOptions::new(12);
        let delta = brane_coproduct_dual(&m, 2, &opts).unwrap();
        assert_eq!(eval(&delta, "1"), target(&delta, "s1x"));
        assert_eq!(eval(&delta, "x s2x"), target(&delta, "s1x x ss1x"));
        let mu = brane_product_dual(&m, 2, &opts).unwrap();
        assert_eq!(eval(&mu, "sx"), target(&mu, "-1"));
        assert_eq!(eval(&mu, "sx ss1x x"), target(&mu, "-1 s2x x"));
        assert!(eval(&mu, "ss1x").is_zero());
        assert!(eval(&mu, "s1x sx").is_zero());
        delta.check_chain_map(12).unwrap();
        mu.check_chain_map(12).unwrap();

        let (comp, report) = compose_operations(&delta, &mu, 12).unwrap();
        assert_eq!(eval(&comp, "sx"), target(&comp, "-1 s1x"));
        assert!(report.is_nontrivial());
    }

    #[test]
    fn coproduct_vanishes_for_s4() {
        let m = s4();
        let delta = brane_coproduct_dual(&m, 2, &PipelineOptions::new(m.default_truncation())).unwrap();
        assert!(delta.first_nonzero(m.default_truncation()).unwrap().is_none());
    }

    #[test]
    fn normalization_scales_the_coproduct() {
        let m = lambda_x(4);
        let opts = PipelineOptions::new(8).with_normalization(rational(5));
        let delta = brane_coproduct_dual(&m, 2, &opts).unwrap();
        assert_eq!(eval(&delta, "1"), target(&delta, "5 s1x"));
    }
}
