use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use branecalc::brane::{brane_coproduct_dual, brane_product_dual, PipelineOptions};
use branecalc::cohomology::cohomology_dims;
use branecalc::format::{format_element, parse_element};
use branecalc::gca::{rational, Element, FreeGca, Generator};
use branecalc::model_file::parse_model;
use branecalc::models::{
    build_collapse_model, build_disk_model, build_path_model, build_sphere_model, build_torus_model, MappingSpaceModel,
    SullivanModel,
};

const FIXTURES: [&str; 6] = ["lx4", "lx6", "s4", "s6", "k46", "s4xs6"];

fn fixture(name: &str) -> SullivanModel {
    let path = format!("{}/fixtures/{name}.model", env!("CARGO_MANIFEST_DIR"));
    parse_model(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fixtures() -> &'static Vec<SullivanModel> {
    static CELL: OnceLock<Vec<SullivanModel>> = OnceLock::new();
    CELL.get_or_init(|| FIXTURES.iter().map(|n| fixture(n)).collect())
}

/// Every mapping-space model of every fixture, for k = 2.
fn built() -> &'static Vec<MappingSpaceModel> {
    static CELL: OnceLock<Vec<MappingSpaceModel>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for m in fixtures() {
            out.push(build_sphere_model(m, 1).unwrap());
            out.push(build_sphere_model(m, 2).unwrap());
            out.push(build_disk_model(m, 2).unwrap());
            out.push(build_torus_model(m, 2).unwrap());
            out.push(build_collapse_model(m, 2).unwrap());
            out.push(build_path_model(m).unwrap());
        }
        out
    })
}

fn test_algebra() -> FreeGca {
    FreeGca::new(vec![
        Generator::new("x", 2),
        Generator::new("a", 3),
        Generator::new("b", 5),
        Generator::new("z", 4),
        Generator::new("c", 1),
    ])
    .unwrap()
}

/// A homogeneous element of degree `n` with the given coefficients cycled
/// over the basis.
fn element_of_degree(algebra: &FreeGca, n: i64, coeffs: &[i64]) -> Element {
    let mut e = Element::zero(algebra);
    for (i, m) in algebra.basis_of_degree(n).into_iter().enumerate() {
        e.add_term(m, rational(coeffs[i % coeffs.len()]));
    }
    e
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..6)
}

/// Poincaré series coefficients from the product formula
/// ∏ 1/(1 − t^even) · ∏ (1 + t^odd).
fn series_oracle(degrees: &[i64], n_max: i64) -> Vec<BigInt> {
    let len = n_max as usize + 1;
    let mut s = vec![BigInt::from(0); len];
    s[0] = BigInt::from(1);
    for &d in degrees {
        let d = d as usize;
        if d.is_multiple_of(2) {
            for i in d..len {
                let prev = s[i - d].clone();
                s[i] += prev;
            }
        } else {
            for i in (d..len).rev() {
                let prev = s[i - d].clone();
                s[i] += prev;
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity(p in 0i64..12, q in 0i64..12, c1 in coeffs(), c2 in coeffs()) {
        let a = test_algebra();
        let u = element_of_degree(&a, p, &c1);
        let v = element_of_degree(&a, q, &c2);
        let sign = if p * q % 2 == 0 { rational(1) } else { rational(-1) };
        prop_assert_eq!(u.try_mul(&v).unwrap(), v.try_mul(&u).unwrap().scale(&sign));
    }

    #[test]
    fn associativity(p in 0i64..8, q in 0i64..8, r in 0i64..8, c1 in coeffs(), c2 in coeffs(), c3 in coeffs()) {
        let a = test_algebra();
        let u = element_of_degree(&a, p, &c1);
        let v = element_of_degree(&a, q, &c2);
        let w = element_of_degree(&a, r, &c3);
        let left = u.try_mul(&v).unwrap().try_mul(&w).unwrap();
        let right = u.try_mul(&v.try_mul(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn leibniz_rule(which in 0usize..36, p in 0i64..10, q in 0i64..10, c1 in coeffs(), c2 in coeffs()) {
        let m = &built()[which].model;
        let a = m.algebra();
        let u = element_of_degree(a, p, &c1);
        let v = element_of_degree(a, q, &c2);
        let sign = if p % 2 == 0 { rational(1) } else { rational(-1) };
        let lhs = m.d(&u.try_mul(&v).unwrap()).unwrap();
        let rhs = m.d(&u).unwrap().try_mul(&v).unwrap()
            .try_add(&u.try_mul(&m.d(&v).unwrap()).unwrap().scale(&sign)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_squares_to_zero(which in 0usize..36, p in 0i64..14, c in coeffs()) {
        let m = &built()[which].model;
        let u = element_of_degree(m.algebra(), p, &c);
        prop_assert!(m.d(&m.d(&u).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn structure_maps_commute_with_d(which in 0usize..36, p in 0i64..12, c in coeffs()) {
        for s in &built()[which].maps {
            let u = element_of_degree(s.source.algebra(), p, &c);
            let lhs = s.target.d(&s.map.apply(&u).unwrap()).unwrap();
            let rhs = s.map.apply(&s.source.d(&u).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", s.map.name());
        }
    }

    #[test]
    fn generating_function(degrees in prop::collection::vec(1i64..7, 1..6)) {
        let gens = degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("g{i}"), d)).collect();
        let a = FreeGca::new(gens).unwrap();
        let n_max = 16;
        let oracle = series_oracle(&degrees, n_max);
        prop_assert_eq!(&a.poincare_series(n_max), &oracle);
        for n in 0..=n_max {
            prop_assert_eq!(BigInt::from(a.basis_of_degree(n).len()), oracle[n as usize].clone());
        }
    }

    #[test]
    fn element_strings_round_trip(p in 0i64..12, c in coeffs()) {
        let a = test_algebra();
        let u = element_of_degree(&a, p, &c);
        prop_assert_eq!(parse_element(&format_element(&u), &a).unwrap(), u);
    }

    #[test]
    fn cohomology_ignores_generator_order(which in 0usize..6, seed in any::<u64>()) {
        let m = &fixtures()[which];
        let mut gens: Vec<Generator> = m.algebra().generators().to_vec();
        // deterministic shuffle driven by the seed
        let mut s = seed;
        for i in (1..gens.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            gens.swap(i, (s >> 33) as usize % (i + 1));
        }
        let images: Vec<(String, String)> = m.algebra().generators().iter()
            .map(|g| (g.name.clone(), format_element(m.d_of(&g.name).unwrap())))
            .collect();
        let pairs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let shuffled = SullivanModel::from_generators("shuffled", gens, &pairs).unwrap();
        let n = 16;
        prop_assert_eq!(cohomology_dims(&shuffled, n).unwrap(), cohomology_dims(m, n).unwrap());
    }
}

#[test]
fn brane_operations_are_chain_maps_on_fixtures() {
    for m in fixtures() {
        let n = m.default_truncation().min(16);
        let opts = PipelineOptions::new(n);
        brane_coproduct_dual(m, 2, &opts).unwrap().check_chain_map(n).unwrap();
        brane_product_dual(m, 2, &opts).unwrap().check_chain_map(n).unwrap();
    }
}

#[test]
fn renaming_preserves_cohomology() {
    let m = fixture("s4xs6");
    let renames: HashMap<String, String> = [("x", "p"), ("y", "q")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let (r, iso) = m.renamed("R", &renames).unwrap();
    branecalc::models::check_chain_map(&iso, &m, &r).unwrap();
    assert_eq!(cohomology_dims(&r, 20).unwrap(), cohomology_dims(&m, 20).unwrap());
}
