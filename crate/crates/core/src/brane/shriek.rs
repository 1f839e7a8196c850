use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;

use crate::cohomology::HomComplex;
use crate::error::{Error, Result};
use crate::gca::{Element, FreeGca, ModuleMorphism, Monomial};
use crate::linalg::{self, SparseVec};
use crate::models::{
    build_disk_model, build_path_model, path_copy_name, sphere_name, MappingSpaceModel, SullivanModel,
};

/// A shriek representative: a Hom-complex cocycle with its normalization.
#[derive(Clone, Debug)]
pub struct ShriekMap {
    pub map: ModuleMorphism,
    pub normalization: BigRational,
    pub complex: HomComplex,
}

impl ShriekMap {
    pub fn degree(&self) -> i64 {
        self.map.degree()
    }

    /// `D(map) = 0` on module-basis monomials of degree `≤ max_degree`.
    pub fn check(&self, max_degree: i64) -> Result<()> {
        self.complex.check_cocycle(&self.map, max_degree)
    }

    pub fn scaled(&self, c: &BigRational) -> ShriekMap {
        ShriekMap {
            map: self.map.scaled(c),
            normalization: &self.normalization * c,
            complex: self.complex.clone(),
        }
    }
}

/// Names of the even and the odd generators, in declaration order.
pub(crate) fn split_parity(m: &SullivanModel) -> (Vec<String>, Vec<String>) {
    let gens = m.algebra().generators();
    let even = gens.iter().filter(|g| g.is_even()).map(|g| g.name.clone()).collect();
    let odd = gens.iter().filter(|g| g.is_odd()).map(|g| g.name.clone()).collect();
    (even, odd)
}

/// `m̄ = Σ_i (|x_i| − k + 1) − Σ_j (|y_j| − k)`, the degree of `γ`.
pub fn coproduct_shift(m: &SullivanModel, k: u32) -> i64 {
    let k = i64::from(k);
    m.algebra()
        .generators()
        .iter()
        .map(|g| if g.is_even() { g.degree - k + 1 } else { -(g.degree - k) })
        .sum()
}

/// `m = Σ_j |y_j| − Σ_i (|x_i| − 1)`, the degree of `η`.
pub fn product_shift(m: &SullivanModel) -> i64 {
    m.algebra()
        .generators()
        .iter()
        .map(|g| if g.is_even() { -(g.degree - 1) } else { g.degree })
        .sum()
}

pub(crate) fn require_even_k(k: u32) -> Result<()> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::OutOfScope(format!(
            "γ is only constructed for even k ≥ 2 (got k = {k})"
        )));
    }
    Ok(())
}

pub(crate) fn require_brane_input(m: &SullivanModel, k: u32) -> Result<()> {
    require_even_k(k)?;
    m.require_pure()?;
    m.require_k_connected(i64::from(k))
}

fn product_of(algebra: &FreeGca, names: &[String]) -> Result<Element> {
    let mut out = Element::one(algebra);
    for n in names {
        out = out.try_mul(&Element::generator(algebra, n)?)?;
    }
    Ok(out)
}

/// `γ: M(D^k) → M(S^{k−1})`, linear over `M(S^{k−1})`, with
/// `γ(s^k y_1⋯s^k y_q) = c · s^{k−1}x_1⋯s^{k−1}x_p` and zero on every other
/// module-basis monomial. `D(γ) = 0` is checked through `max_degree`.
pub fn build_shriek_constant(
    m: &SullivanModel,
    k: u32,
    normalization: &BigRational,
    max_degree: i64,
) -> Result<ShriekMap> {
    require_brane_input(m, k)?;
    let disk = build_disk_model(m, k)?;
    let incl = disk.map(MappingSpaceModel::SPHERE_INCLUSION)?;
    let sphere = incl.source.clone();
    let base: Vec<String> = sphere.algebra().generators().iter().map(|g| g.name.clone()).collect();
    let mut gamma = ModuleMorphism::new(
        "gamma",
        disk.model.algebra(),
        sphere.algebra(),
        &base,
        coproduct_shift(m, k),
        true,
    )?;
    let (even, odd) = split_parity(m);
    let top_names: Vec<String> = odd.iter().map(|y| sphere_name(y, k)).collect();
    let value_names: Vec<String> = even.iter().map(|x| sphere_name(x, k - 1)).collect();
    let top = product_of(disk.model.algebra(), &top_names)?;
    let value = product_of(sphere.algebra(), &value_names)?.scale(normalization);
    gamma.set_image_of(&top, value)?;
    let shriek = ShriekMap {
        map: gamma,
        normalization: normalization.clone(),
        complex: HomComplex::new(&disk.model, &sphere),
    };
    shriek.check(max_degree)?;
    Ok(shriek)
}

/// `ΛV ⊗ ΛV` as the sub-model of `M(I)` on the two copies of `V`.
pub(crate) fn diagonal_base(m: &SullivanModel, path: &MappingSpaceModel) -> Result<SullivanModel> {
    let mut gens = Vec::new();
    for copy in [1u8, 2] {
        for g in m.algebra().generators() {
            gens.push(g.renamed(path_copy_name(&g.name, copy)));
        }
    }
    let algebra = FreeGca::new(gens)?;
    let mut images = HashMap::new();
    for g in algebra.generators() {
        images.insert(g.name.clone(), path.model.d_of(&g.name)?.embed(&algebra)?);
    }
    let d = crate::gca::Derivation::from_named(&algebra, 1, &images, false)?;
    SullivanModel::new("ΛV⊗ΛV", d)
}

/// `η: M(I) → ΛV ⊗ ΛV`, linear over `ΛV ⊗ ΛV`, with
/// `η(s x_1⋯s x_p) = c · ∏_j (y_j ⊗ 1 − 1 ⊗ y_j)` read as `∏ (y_j_2 − y_j_1)`.
/// Values on module-basis monomials of degree at most that of
/// `s x_1⋯s x_p` are solved for so that `D(η) = 0` through `max_degree`;
/// all higher values are zero.
pub fn build_shriek_diagonal(m: &SullivanModel, normalization: &BigRational, max_degree: i64) -> Result<ShriekMap> {
    m.require_pure()?;
    let path = build_path_model(m)?;
    let target = diagonal_base(m, &path)?;
    let base: Vec<String> = target.algebra().generators().iter().map(|g| g.name.clone()).collect();
    let mut eta = ModuleMorphism::new(
        "eta",
        path.model.algebra(),
        target.algebra(),
        &base,
        product_shift(m),
        true,
    )?;
    let (even, odd) = split_parity(m);
    let top_names: Vec<String> = even.iter().map(|x| crate::models::loop_name(x)).collect();
    let top = product_of(path.model.algebra(), &top_names)?;
    let mut value = Element::one(target.algebra());
    for y in &odd {
        let diff = Element::generator(target.algebra(), &path_copy_name(y, 2))?
            .try_sub(&Element::generator(target.algebra(), &path_copy_name(y, 1))?)?;
        value = value.try_mul(&diff)?;
    }
    eta.set_image_of(&top, value.scale(normalization))?;
    let top_monomial = top.terms().keys().next().expect("top monomial is nonzero").clone();

    let complex = HomComplex::new(&path.model, &target);
    let unknowns: Vec<Monomial> = (0..=top_monomial.degree())
        .flat_map(|n| eta.module_basis(n))
        .filter(|u| *u != top_monomial)
        .collect();
    let eta = complete_cocycle(&complex, &eta, &unknowns, max_degree)?;
    let shriek = ShriekMap {
        map: eta,
        normalization: normalization.clone(),
        complex,
    };
    shriek.check(max_degree)?;
    Ok(shriek)
}

/// Solves for the values of `fixed` on `unknowns` (module-basis monomials)
/// so that `D(f) = 0` on every module-basis monomial of degree
/// `≤ max_degree`, taking the particular solution with free coordinates
/// zero. Values on `unknowns` already set in `fixed` are replaced.
pub fn complete_cocycle(
    complex: &HomComplex,
    fixed: &ModuleMorphism,
    unknowns: &[Monomial],
    max_degree: i64,
) -> Result<ModuleMorphism> {
    let base: Vec<String> = fixed.base_generators().map(str::to_string).collect();
    let mut start = ModuleMorphism::new(
        fixed.name(),
        fixed.source(),
        fixed.target(),
        &base,
        fixed.degree(),
        true,
    )?;
    for (u, v) in fixed.explicit_images() {
        if !unknowns.contains(u) {
            start.set_image(u.clone(), v.clone())?;
        }
    }
    let mut columns: Vec<(Monomial, Monomial)> = Vec::new();
    for u in unknowns {
        for b in fixed.target().basis_of_degree(u.degree() + fixed.degree()) {
            columns.push((u.clone(), b));
        }
    }
    let mut rows: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    let index = |rows: &mut BTreeMap<(Monomial, Monomial), usize>, key: (Monomial, Monomial)| {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    let flatten = |rows: &mut BTreeMap<(Monomial, Monomial), usize>, df: &ModuleMorphism| -> SparseVec {
        let mut v: SparseVec = Vec::new();
        for (u, img) in df.explicit_images() {
            for (t, c) in img.terms() {
                v.push((index(rows, (u.clone(), t.clone())), c.clone()));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let mut a_columns = Vec::with_capacity(columns.len());
    for (u, b) in &columns {
        let mut e = ModuleMorphism::new("e", fixed.source(), fixed.target(), &base, fixed.degree(), true)?;
        e.set_image(
            u.clone(),
            Element::monomial(fixed.target(), b.clone(), BigRational::one()),
        )?;
        a_columns.push(flatten(&mut rows, &complex.differential(&e, max_degree)?));
    }
    let rhs: SparseVec = flatten(&mut rows, &complex.differential(&start, max_degree)?)
        .into_iter()
        .map(|(i, c)| (i, -c))
        .collect();
    let z = linalg::solve_columns(&a_columns, &rhs, rows.len()).ok_or_else(|| Error::NoSolution {
        degree: max_degree,
        reason: format!("no cocycle completion of {}", fixed.name()),
    })?;
    let mut values: BTreeMap<Monomial, Element> = BTreeMap::new();
    for ((u, b), c) in columns.iter().zip(&z) {
        let entry = values.entry(u.clone()).or_insert_with(|| Element::zero(fixed.target()));
        entry.add_term(b.clone(), c.clone());
    }
    for (u, v) in values {
        if !v.is_zero() {
            start.set_image(u, v)?;
        }
    }
    Ok(start)
}
