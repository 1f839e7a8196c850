use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::generator::Generator;
use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    degrees: Vec<i64>,
    odd: Vec<bool>,
}

/// Free graded-commutative algebra over the rationals on a finite, ordered
/// set of generators of positive degree. Cheap to clone.
#[derive(Clone)]
pub struct FreeGca {
    inner: Arc<Inner>,
}

impl FreeGca {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::InvalidDegree {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let degrees = generators.iter().map(|g| g.degree).collect();
        let odd = generators.iter().map(Generator::is_odd).collect();
        Ok(FreeGca {
            inner: Arc::new(Inner {
                generators,
                index,
                degrees,
                odd,
            }),
        })
    }

    /// The ground field, with basis `{1}` in degree 0.
    pub fn ground() -> Self {
        FreeGca::new(Vec::new()).expect("empty generator list is valid")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.inner.generators[index]
    }

    pub fn len(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.inner.index.contains_key(name)
    }

    pub(crate) fn degrees(&self) -> &[i64] {
        &self.inner.degrees
    }

    pub(crate) fn odd_mask(&self) -> &[bool] {
        &self.inner.odd
    }

    pub fn same_as(&self, other: &FreeGca) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.generators == other.inner.generators
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.len())
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        let mut exps = vec![0; self.len()];
        exps[index] = 1;
        Monomial::from_parts(self.inner.degrees[index], exps)
    }

    /// Builds a monomial from exponents, or `None` if an odd generator is
    /// raised to a power above 1.
    pub fn monomial(&self, exponents: Vec<u32>) -> Option<Monomial> {
        assert_eq!(exponents.len(), self.len(), "exponent vector length");
        let mut degree = 0;
        for (i, &e) in exponents.iter().enumerate() {
            if self.inner.odd[i] && e > 1 {
                return None;
            }
            degree += self.inner.degrees[i] * i64::from(e);
        }
        Some(Monomial::from_parts(degree, exponents))
    }

    /// All monomials of degree `n`, sorted in monomial order.
    pub fn basis_of_degree(&self, n: i64) -> Vec<Monomial> {
        self.basis_of_degree_in(n, &vec![true; self.len()])
    }

    /// Degree-`n` monomials involving only generators with `mask[i] == true`.
    pub fn basis_of_degree_in(&self, n: i64, mask: &[bool]) -> Vec<Monomial> {
        let mut out = Vec::new();
        if n < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.len()];
        self.enumerate(0, n, mask, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: i64, mask: &[bool], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            let degree = exps
                .iter()
                .zip(&self.inner.degrees)
                .map(|(&e, &d)| i64::from(e) * d)
                .sum();
            out.push(Monomial::from_parts(degree, exps.clone()));
            return;
        }
        if i == self.len() {
            return;
        }
        if !mask[i] {
            self.enumerate(i + 1, remaining, mask, exps, out);
            return;
        }
        let d = self.inner.degrees[i];
        let max = if self.inner.odd[i] { 1 } else { remaining / d };
        for e in 0..=max.min(remaining / d) {
            exps[i] = e as u32;
            self.enumerate(i + 1, remaining - e * d, mask, exps, out);
        }
        exps[i] = 0;
    }

    /// Coefficients of the Poincaré series ∏_even (1 − t^|g|)^{-1} ∏_odd (1 + t^|g|)
    /// up to `t^n_max`.
    pub fn poincare_series(&self, n_max: i64) -> Vec<BigInt> {
        let len = (n_max.max(0) + 1) as usize;
        let mut coeffs = vec![BigInt::from(0); len];
        coeffs[0] = BigInt::from(1);
        for g in self.generators() {
            let d = g.degree as usize;
            if g.is_odd() {
                for n in (d..len).rev() {
                    let c = coeffs[n - d].clone();
                    coeffs[n] += c;
                }
            } else {
                for n in d..len {
                    let c = coeffs[n - d].clone();
                    coeffs[n] += c;
                }
            }
        }
        coeffs
    }

    /// Moves a monomial into `target` along a generator index map, returning
    /// the reordering sign (`true` when negative) and the target monomial.
    pub(crate) fn transport(&self, m: &Monomial, map: &[usize], target: &FreeGca) -> (bool, Monomial) {
        let mut out = target.one_monomial();
        let mut negative = false;
        for (i, e) in m.support() {
            let mut exps = vec![0; target.len()];
            exps[map[i]] = e;
            let g = target.monomial(exps).expect("odd exponents preserved");
            let (neg, p) = out.multiply(&g, target.odd_mask()).expect("generators are distinct");
            negative ^= neg;
            out = p;
        }
        (negative, out)
    }

    /// Index map into `target` by generator name, checking degrees; generators missing from `target` map to
    /// `usize::MAX`.
    pub(crate) fn partial_name_map(&self, target: &FreeGca) -> Result<Vec<usize>> {
        self.generators()
            .iter()
            .map(|g| match target.index_of(&g.name) {
                None => Ok(usize::MAX),
                Some(j) if target.generator(j).degree == g.degree => Ok(j),
                Some(_) => Err(Error::ConflictingGenerator(g.name.clone())),
            })
            .collect()
    }

    /// Index map into `target` after renaming by `renames`; generators
    /// missing from `target` map to `usize::MAX`.
    pub(crate) fn renamed_map(&self, target: &FreeGca, renames: &HashMap<String, String>) -> Result<Vec<usize>> {
        self.generators()
            .iter()
            .map(|g| {
                let name = renames.get(&g.name).unwrap_or(&g.name);
                match target.index_of(name) {
                    None => Ok(usize::MAX),
                    Some(j) if target.generator(j).degree == g.degree => Ok(j),
                    Some(_) => Err(Error::ConflictingGenerator(name.clone())),
                }
            })
            .collect()
    }

    pub fn max_generator_degree(&self) -> i64 {
        self.inner.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.support()
            .map(|(i, e)| format!("{}^{}", self.generator(i).name, e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for FreeGca {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FreeGca {}

impl fmt::Debug for FreeGca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators()).finish()
    }
}

impl fmt::Display for FreeGca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "Λ({})", gens.join(", "))
    }
}
