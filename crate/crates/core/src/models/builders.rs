use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::naming::{loop_name, path_copy_name, sphere_name};
use super::{check_chain_map, quotient_by_generators, tensor_amalgamated, SullivanModel};
use crate::error::{Error, Result};
use crate::gca::{AlgebraMorphism, Derivation, Element, FreeGca, Generator};

/// Which mapping space a model describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MappingSpace {
    Path,
    Sphere(u32),
    Loop,
    Disk(u32),
    Torus(u32),
    Collapse(u32),
}

/// A named algebra map together with the models it runs between.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub map: AlgebraMorphism,
    pub source: SullivanModel,
    pub target: SullivanModel,
}

impl StructureMap {
    fn new(name: &str, map: AlgebraMorphism, source: &SullivanModel, target: &SullivanModel) -> Result<Self> {
        let map = map.with_name(name);
        check_chain_map(&map, source, target)?;
        Ok(StructureMap {
            map,
            source: source.clone(),
            target: target.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct MappingSpaceModel {
    pub kind: MappingSpace,
    pub model: SullivanModel,
    pub maps: Vec<StructureMap>,
    pub suspensions: Vec<Derivation>,
}

impl MappingSpaceModel {
    pub const EPSILON: &'static str = "epsilon";
    pub const EPSILON_TILDE: &'static str = "epsilon_tilde";
    pub const EPSILON_BAR: &'static str = "epsilon_bar";
    pub const SPHERE_INCLUSION: &'static str = "sphere_inclusion";
    pub const LEFT: &'static str = "left";
    pub const RIGHT: &'static str = "right";
    pub const INCL: &'static str = "incl";
    pub const ISO: &'static str = "iso";
    pub const COMP: &'static str = "comp";
    pub const PROJECTION: &'static str = "projection";

    pub fn map(&self, name: &str) -> Result<&StructureMap> {
        self.maps
            .iter()
            .find(|m| m.map.name() == name)
            .ok_or_else(|| Error::MissingImage(name.to_string()))
    }

    /// Re-runs every structural check: `d² = 0`, chain maps, and surjectivity
    /// of the augmentations.
    pub fn check(&self) -> Result<()> {
        self.model.check_square_zero()?;
        for m in &self.maps {
            m.source.check_square_zero()?;
            m.target.check_square_zero()?;
            check_chain_map(&m.map, &m.source, &m.target)?;
            let augmentation = [Self::EPSILON, Self::EPSILON_TILDE, Self::EPSILON_BAR].contains(&m.map.name());
            if augmentation && !m.map.is_surjective_on_generators() {
                return Err(Error::NotSection {
                    map: m.map.name().to_string(),
                    generator: "surjectivity".into(),
                });
            }
        }
        Ok(())
    }
}

/// Adds a suspended copy of every generator of `m` at `level`, with
/// `d(s v) = (−1)^level s(dv)` for the derivation `s: v ↦ s v`.
fn suspension_extension(
    name: &str,
    m: &SullivanModel,
    level: u32,
    rename: impl Fn(&str) -> String,
) -> Result<(SullivanModel, Derivation)> {
    let mut gens = m.algebra().generators().to_vec();
    for g in m.algebra().generators() {
        let sg = Generator::suspended(rename(&g.name), g, level);
        if sg.degree < 1 {
            return Err(Error::InvalidDegree {
                name: sg.name,
                degree: sg.degree,
            });
        }
        gens.push(sg);
    }
    let algebra = FreeGca::new(gens)?;
    let mut s_images = HashMap::new();
    for g in m.algebra().generators() {
        s_images.insert(g.name.clone(), Element::generator(&algebra, &rename(&g.name))?);
    }
    let s = Derivation::from_named(&algebra, -i64::from(level), &s_images, true)?;
    let sign = if level.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let mut d_images = HashMap::new();
    for (g, img) in m.algebra().generators().iter().zip(m.differential().images()) {
        let dv = img.embed(&algebra)?;
        d_images.insert(rename(&g.name), s.apply(&dv)?.scale(&sign));
        d_images.insert(g.name.clone(), dv);
    }
    let d = Derivation::from_named(&algebra, 1, &d_images, false)?;
    Ok((SullivanModel::new(name, d)?, s))
}

/// `M(S^j) = (ΛV ⊗ Λ s^j V, d)` with `d(s^j v) = (−1)^j s^{(j)}(dv)` and the
/// augmentation `ε`.
pub fn build_sphere_model(m: &SullivanModel, j: u32) -> Result<MappingSpaceModel> {
    if j == 0 {
        return Err(Error::OutOfScope("sphere dimension must be at least 1".into()));
    }
    m.require_k_connected(i64::from(j))?;
    let (model, s) = suspension_extension(&format!("M(S^{j})"), m, j, |v| sphere_name(v, j))?;
    let eps = AlgebraMorphism::by_name("", model.algebra(), m.algebra(), &HashMap::new())?;
    let eps = StructureMap::new(MappingSpaceModel::EPSILON, eps, &model, m)?;
    Ok(MappingSpaceModel {
        kind: MappingSpace::Sphere(j),
        model,
        maps: vec![eps],
        suspensions: vec![s],
    })
}

/// Free loop model `(ΛW ⊗ Λ sW, d)`, `d(sw) = −s(dw)`, with generators named
/// `s{w}`.
pub fn build_loop_model(m: &SullivanModel) -> Result<MappingSpaceModel> {
    m.require_k_connected(1)?;
    let (model, s) = suspension_extension(&format!("L({})", m.name()), m, 1, loop_name)?;
    let eps = AlgebraMorphism::by_name("", model.algebra(), m.algebra(), &HashMap::new())?;
    let eps = StructureMap::new(MappingSpaceModel::EPSILON, eps, &model, m)?;
    let incl = AlgebraMorphism::by_name("", m.algebra(), model.algebra(), &HashMap::new())?;
    let incl = StructureMap::new(MappingSpaceModel::SPHERE_INCLUSION, incl, m, &model)?;
    Ok(MappingSpaceModel {
        kind: MappingSpace::Loop,
        model,
        maps: vec![eps, incl],
        suspensions: vec![s],
    })
}

fn require_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::OutOfScope(format!("k = {k}: need k ≥ 2")));
    }
    Ok(())
}

/// `M(D^k) = (ΛV ⊗ Λ s^{k−1}V ⊗ Λ s^k V, d)` with
/// `d(s^k v) = s^{k−1}v + (−1)^k s^{(k)}(dv)`, the augmentation `ε̃` and the
/// inclusion of `M(S^{k−1})`.
pub fn build_disk_model(m: &SullivanModel, k: u32) -> Result<MappingSpaceModel> {
    require_k(k)?;
    m.require_k_connected(i64::from(k))?;
    let sphere = build_sphere_model(m, k - 1)?;
    let mut gens = sphere.model.algebra().generators().to_vec();
    for g in m.algebra().generators() {
        gens.push(Generator::suspended(sphere_name(&g.name, k), g, k));
    }
    let algebra = FreeGca::new(gens)?;
    let mut sigma_images = HashMap::new();
    for g in m.algebra().generators() {
        sigma_images.insert(g.name.clone(), Element::generator(&algebra, &sphere_name(&g.name, k))?);
    }
    let sigma = Derivation::from_named(&algebra, -i64::from(k), &sigma_images, true)?;
    let sign = if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let mut d_images = HashMap::new();
    for (g, img) in sphere
        .model
        .algebra()
        .generators()
        .iter()
        .zip(sphere.model.differential().images())
    {
        d_images.insert(g.name.clone(), img.embed(&algebra)?);
    }
    for (g, img) in m.algebra().generators().iter().zip(m.differential().images()) {
        let lower = Element::generator(&algebra, &sphere_name(&g.name, k - 1))?;
        let corr = sigma.apply(&img.embed(&algebra)?)?.scale(&sign);
        d_images.insert(sphere_name(&g.name, k), &lower + &corr);
    }
    let d = Derivation::from_named(&algebra, 1, &d_images, false)?;
    let model = SullivanModel::new(format!("M(D^{k})"), d)?;
    let eps = AlgebraMorphism::by_name("", model.algebra(), m.algebra(), &HashMap::new())?;
    let eps = StructureMap::new(MappingSpaceModel::EPSILON_TILDE, eps, &model, m)?;
    let incl = AlgebraMorphism::by_name("", sphere.model.algebra(), model.algebra(), &HashMap::new())?;
    let incl = StructureMap::new(MappingSpaceModel::SPHERE_INCLUSION, incl, &sphere.model, &model)?;
    let mut suspensions = vec![sigma];
    suspensions.extend(sphere.suspensions);
    Ok(MappingSpaceModel {
        kind: MappingSpace::Disk(k),
        model,
        maps: vec![eps, incl],
        suspensions,
    })
}

/// `M(T^{(k)})`: the loop construction applied to `M(S^{k−1})`.
pub fn build_torus_model(m: &SullivanModel, k: u32) -> Result<MappingSpaceModel> {
    require_k(k)?;
    m.require_k_connected(i64::from(k))?;
    let sphere = build_sphere_model(m, k - 1)?;
    let mut torus = build_loop_model(&sphere.model)?;
    torus.model = rename_model(&torus.model, format!("M(T^{k})"));
    torus.kind = MappingSpace::Torus(k);
    for sm in &mut torus.maps {
        if sm.source.algebra().same_as(torus.model.algebra()) {
            sm.source = torus.model.clone();
        }
        if sm.target.algebra().same_as(torus.model.algebra()) {
            sm.target = torus.model.clone();
        }
    }
    torus.suspensions.extend(sphere.suspensions);
    Ok(torus)
}

fn rename_model(m: &SullivanModel, name: String) -> SullivanModel {
    SullivanModel {
        name,
        algebra: m.algebra().clone(),
        differential: m.differential().clone(),
    }
}

/// `M(U^{(k)}) = M(S^k) ⊗_{ΛV} M(S^1)`, with `incl^*` from `M(S^k)`, the
/// isomorphism `s^k v ↦ s s^{k−1}v` onto `M(T^{(k)}) / (s^{k−1}V)` (map
/// `iso`), the quotient map `projection` of the torus model, and
/// `comp^* : M(T^{(k)}) → M(U^{(k)})`.
pub fn build_collapse_model(m: &SullivanModel, k: u32) -> Result<MappingSpaceModel> {
    require_k(k)?;
    m.require_k_connected(i64::from(k))?;
    let top = build_sphere_model(m, k)?;
    let circle = build_loop_model(m)?;
    let amalgam = tensor_amalgamated(format!("M(U^{k})"), &top.model, &circle.model, m.algebra())?;
    let model = amalgam.model;
    let incl = StructureMap::new(MappingSpaceModel::INCL, amalgam.left, &top.model, &model)?;

    let torus = build_torus_model(m, k)?;
    let lower: Vec<String> = m
        .algebra()
        .generators()
        .iter()
        .map(|g| sphere_name(&g.name, k - 1))
        .collect();
    let quotient = quotient_by_generators(format!("M(T^{k})/s^{}V", k - 1), &torus.model, &lower)?;

    let mut to_quotient = HashMap::new();
    let mut from_torus = HashMap::new();
    for g in m.algebra().generators() {
        let top_name = sphere_name(&g.name, k);
        let inner = loop_name(&sphere_name(&g.name, k - 1));
        to_quotient.insert(top_name.clone(), Element::generator(quotient.model.algebra(), &inner)?);
        from_torus.insert(inner, Element::generator(model.algebra(), &top_name)?);
    }
    let iso = AlgebraMorphism::by_name("", model.algebra(), quotient.model.algebra(), &to_quotient)?;
    let iso = StructureMap::new(MappingSpaceModel::ISO, iso, &model, &quotient.model)?;
    let comp = AlgebraMorphism::by_name("", torus.model.algebra(), model.algebra(), &from_torus)?;
    let comp = StructureMap::new(MappingSpaceModel::COMP, comp, &torus.model, &model)?;
    let projection = StructureMap::new(
        MappingSpaceModel::PROJECTION,
        quotient.projection,
        &torus.model,
        &quotient.model,
    )?;
    let mut suspensions = top.suspensions;
    suspensions.extend(circle.suspensions);
    Ok(MappingSpaceModel {
        kind: MappingSpace::Collapse(k),
        model,
        maps: vec![incl, iso, comp, projection],
        suspensions,
    })
}

/// The path model `M(I) = (ΛV_1 ⊗ ΛV_2 ⊗ Λ sV, d)` with
/// `d(sv) = v_2 − v_1 − Σ_{i≥1} (sd)^i/i! (v_1)`, where `s` sends both copies
/// of `v` to `sv`. Maps: `ε̄` onto `m`, and the two inclusions `left`,
/// `right` of `m`.
pub fn build_path_model(m: &SullivanModel) -> Result<MappingSpaceModel> {
    m.require_k_connected(1)?;
    let base = m.algebra();
    let mut gens = Vec::new();
    for copy in [1u8, 2] {
        for g in base.generators() {
            gens.push(g.renamed(path_copy_name(&g.name, copy)));
        }
    }
    for g in base.generators() {
        gens.push(Generator::suspended(loop_name(&g.name), g, 1));
    }
    let algebra = FreeGca::new(gens)?;

    let copy_map = |copy: u8| -> Result<AlgebraMorphism> {
        let mut images = HashMap::new();
        for g in base.generators() {
            images.insert(
                g.name.clone(),
                Element::generator(&algebra, &path_copy_name(&g.name, copy))?,
            );
        }
        AlgebraMorphism::from_named("", base, &algebra, &images)
    };
    let left = copy_map(1)?;
    let right = copy_map(2)?;

    let mut s_images = HashMap::new();
    for g in base.generators() {
        let sv = Element::generator(&algebra, &loop_name(&g.name))?;
        s_images.insert(path_copy_name(&g.name, 1), sv.clone());
        s_images.insert(path_copy_name(&g.name, 2), sv);
    }
    let s = Derivation::from_named(&algebra, -1, &s_images, true)?;

    let mut d_images: Vec<Element> = vec![Element::zero(&algebra); algebra.len()];
    for (i, g) in base.generators().iter().enumerate() {
        let dv = m.differential().image(i);
        d_images[algebra.require(&path_copy_name(&g.name, 1))?] = left.apply(dv)?;
        d_images[algebra.require(&path_copy_name(&g.name, 2))?] = right.apply(dv)?;
    }
    for i in m.dependency_order()? {
        let g = base.generator(i);
        let d_partial = Derivation::new(&algebra, 1, d_images.clone())?;
        let v1 = Element::generator(&algebra, &path_copy_name(&g.name, 1))?;
        let v2 = Element::generator(&algebra, &path_copy_name(&g.name, 2))?;
        let mut value = &v2 - &v1;
        let mut term = v1;
        let mut i_step = 1i64;
        loop {
            term = s
                .apply(&d_partial.apply(&term)?)?
                .scale(&BigRational::new(1.into(), i_step.into()));
            if term.is_zero() {
                break;
            }
            if i_step > g.degree + 1 {
                return Err(Error::SeriesDiverged(g.name.clone()));
            }
            value = &value - &term;
            i_step += 1;
        }
        d_images[algebra.require(&loop_name(&g.name))?] = value;
    }
    let d = Derivation::new(&algebra, 1, d_images)?;
    let model = SullivanModel::new("M(I)", d)?;

    let mut eps_images = HashMap::new();
    for g in base.generators() {
        let v = Element::generator(base, &g.name)?;
        eps_images.insert(path_copy_name(&g.name, 1), v.clone());
        eps_images.insert(path_copy_name(&g.name, 2), v);
        eps_images.insert(loop_name(&g.name), Element::zero(base));
    }
    let eps = AlgebraMorphism::from_named("", &algebra, base, &eps_images)?;
    let maps = vec![
        StructureMap::new(MappingSpaceModel::EPSILON_BAR, eps, &model, m)?,
        StructureMap::new(MappingSpaceModel::LEFT, left, m, &model)?,
        StructureMap::new(MappingSpaceModel::RIGHT, right, m, &model)?,
    ];
    Ok(MappingSpaceModel {
        kind: MappingSpace::Path,
        model,
        maps,
        suspensions: vec![s],
    })
}
