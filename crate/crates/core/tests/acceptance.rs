//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use branecalc::brane::{
    brane_coproduct_dual, brane_product_dual, compose_operations, nontriviality_report, BraneOperation,
    PipelineOptions, SectionStrategy,
};
use branecalc::cli::verify_battery;
use branecalc::cohomology::{first_class_disagreement, is_coboundary, is_cocycle};
use branecalc::gca::{rational, Element, FreeGca, Generator, Monomial};
use branecalc::model_file::parse_model;
use branecalc::models::SullivanModel;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lambda_x(degree: i64) -> SullivanModel {
    SullivanModel::free(format!("Lx{degree}"), vec![Generator::new("x", degree)]).unwrap()
}

fn fixture(name: &str) -> SullivanModel {
    let path = format!("{}/fixtures/{name}.model", env!("CARGO_MANIFEST_DIR"));
    parse_model(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn err(e: branecalc::Error) -> String {
    e.to_string()
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!(
            "{label} took {:.1}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn composite_on_sx() -> Outcome {
    let mut lines = Vec::new();
    for (k, n) in [(2u32, 2i64), (2, 3), (4, 3)] {
        let start = Instant::now();
        let m = lambda_x(2 * n);
        let opts = PipelineOptions::new(m.default_truncation());
        let delta = brane_coproduct_dual(&m, k, &opts).map_err(err)?;
        let mu = brane_product_dual(&m, k, &opts).map_err(err)?;
        let (comp, _) = compose_operations(&delta, &mu, 2 * n).map_err(err)?;
        let sx = Element::generator(comp.source.algebra(), "sx").map_err(err)?;
        let got = comp.apply(&sx).map_err(err)?;
        let expected = Element::generator(comp.target.algebra(), &format!("s{}x", k - 1))
            .map_err(err)?
            .scale(&rational(-1));
        if got != expected {
            return Err(format!("(k,n)=({k},{n}): got {got}, expected {expected}"));
        }
        within(&format!("(k,n)=({k},{n})"), start.elapsed(), Duration::from_secs(5))?;
        lines.push(format!("({k},{n}) {:.2}s", start.elapsed().as_secs_f64()));
    }
    Ok(format!("composite(sx) = -s^(k-1)x for {}", lines.join(", ")))
}

fn coproduct_vanishes_on_spheres() -> Outcome {
    let mut lines = Vec::new();
    for name in ["s4", "s6"] {
        let start = Instant::now();
        let m = fixture(name);
        let n = m.default_truncation();
        let delta = brane_coproduct_dual(&m, 2, &PipelineOptions::new(n)).map_err(err)?;
        let mut checked = 0;
        for degree in 0..=n {
            for (u, image) in delta.slice(degree).map_err(err)? {
                checked += 1;
                if !image.is_zero() {
                    let u = delta.source.algebra().format_monomial(&u);
                    return Err(format!("{name}: δ∨({u}) = {image}"));
                }
            }
        }
        within(name, start.elapsed(), Duration::from_secs(30))?;
        lines.push(format!(
            "{name}: {checked} basis elements through degree {n} in {:.2}s",
            start.elapsed().as_secs_f64()
        ));
    }
    Ok(lines.join("; "))
}

/// Builds the monomial with the given exponents by generator name.
fn named(algebra: &FreeGca, powers: &[(&str, u32)]) -> Monomial {
    let mut exps = vec![0; algebra.len()];
    for (name, p) in powers {
        exps[algebra.index_of(name).expect("oracle generator")] += p;
    }
    algebra.monomial(exps).expect("oracle monomial")
}

fn closed_forms() -> Outcome {
    let m = lambda_x(4);
    let limit = 12;
    let opts = PipelineOptions::new(limit);
    let delta = brane_coproduct_dual(&m, 2, &opts).map_err(err)?;
    let mu = brane_product_dual(&m, 2, &opts).map_err(err)?;
    let mut count = 0;

    // δ∨(x^a s2x^b) = s1x · x^a (ss1x)^b
    let (s, t) = (delta.source.algebra(), delta.target.algebra());
    for degree in 0..=limit {
        for (u, image) in delta.slice(degree).map_err(err)? {
            let a = u.exponent(s.index_of("x").unwrap());
            let b = u.exponent(s.index_of("s2x").unwrap());
            let expected = Element::monomial(t, named(t, &[("s1x", 1), ("x", a), ("ss1x", b)]), rational(1));
            if image != expected {
                return Err(format!("δ∨({}) = {image}, expected {expected}", s.format_monomial(&u)));
            }
            count += 1;
        }
    }

    // μ∨(sx · x^a (ss1x)^b) = -x^a (s2x)^b, zero on the other cosets
    let (s, t) = (mu.source.algebra(), mu.target.algebra());
    for degree in 0..=limit {
        for (u, image) in mu.slice(degree).map_err(err)? {
            let e = |g: &str| u.exponent(s.index_of(g).unwrap());
            let expected = if e("sx") == 1 && e("s1x") == 0 {
                Element::monomial(t, named(t, &[("x", e("x")), ("s2x", e("ss1x"))]), rational(-1))
            } else {
                Element::zero(t)
            };
            if image != expected {
                return Err(format!("μ∨({}) = {image}, expected {expected}", s.format_monomial(&u)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} basis elements through degree {limit} match"))
}

fn fixture_invariants() -> Outcome {
    let mut lines = Vec::new();
    for name in ["lx4", "lx6", "s4", "s6", "k46", "s4xs6"] {
        let m = fixture(name);
        let n = m.default_truncation();
        let ks: Vec<u32> = [2u32, 4]
            .into_iter()
            .filter(|&k| m.is_k_connected(i64::from(k)))
            .collect();
        for k in ks {
            let checks = verify_battery(&m, k, n).map_err(err)?;
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                return Err(format!(
                    "{name}, k={k}: {} ({})",
                    c.name,
                    c.detail.clone().unwrap_or_default()
                ));
            }
            lines.push(format!("{name}/k={k}"));
        }
    }
    Ok(format!("all structural checks hold for {}", lines.join(", ")))
}

fn degree_shifts() -> Outcome {
    let mut cases = 0;
    for n in 2..=5i64 {
        for k in [2u32, 4, 6] {
            let m = lambda_x(2 * n);
            if !m.is_k_connected(i64::from(k)) {
                continue;
            }
            let opts = PipelineOptions::new(2 * n);
            let delta = brane_coproduct_dual(&m, k, &opts).map_err(err)?;
            let mu = brane_product_dual(&m, k, &opts).map_err(err)?;
            let (mbar, mm) = (2 * n - i64::from(k) + 1, 1 - 2 * n);
            if delta.shift != mbar || mu.shift != mm {
                return Err(format!(
                    "n={n}, k={k}: shifts ({}, {}), expected ({mbar}, {mm})",
                    delta.shift, mu.shift
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("shifts match in {cases} cases"))
}

fn agree(a: &BraneOperation, b: &BraneOperation, n: i64) -> Result<(), String> {
    match first_class_disagreement(&a.source, &a.target, n, |z| a.apply(z), |z| b.apply(z)).map_err(err)? {
        None => Ok(()),
        Some(z) => Err(format!("{} disagrees on {z}", a.direction.as_str())),
    }
}

fn solver_agreement() -> Outcome {
    let m = lambda_x(4);
    let n = 12;
    let explicit = PipelineOptions::new(n);
    let solver = PipelineOptions::new(n).with_sections(SectionStrategy::Solver);
    agree(
        &brane_coproduct_dual(&m, 2, &explicit).map_err(err)?,
        &brane_coproduct_dual(&m, 2, &solver).map_err(err)?,
        n,
    )?;
    agree(
        &brane_product_dual(&m, 2, &explicit).map_err(err)?,
        &brane_product_dual(&m, 2, &solver).map_err(err)?,
        n,
    )?;
    Ok(format!("δ∨ and μ∨ agree on classes through degree {n}"))
}

fn two_even_generators() -> Outcome {
    let m = fixture("k46");
    let n = m.default_truncation();
    let mut verdicts = Vec::new();
    for strategy in [SectionStrategy::Explicit, SectionStrategy::Solver] {
        let opts = PipelineOptions::new(n).with_sections(strategy);
        let delta = brane_coproduct_dual(&m, 2, &opts).map_err(err)?;
        let mu = brane_product_dual(&m, 2, &opts).map_err(err)?;
        let comp = delta.after(&mu).map_err(err)?;
        let report = nontriviality_report(&comp, n).map_err(err)?;
        // recheck each witness directly
        for (z, image) in &report.witnesses {
            let ok = is_cocycle(z, &comp.source).map_err(err)?
                && is_cocycle(image, &comp.target).map_err(err)?
                && !is_coboundary(image, &comp.target).map_err(err)?;
            if !ok {
                return Err(format!("{strategy:?}: witness {z} does not hold up"));
            }
        }
        verdicts.push((strategy, report.is_nontrivial(), report.witnesses.first().cloned()));
    }
    let all_nontrivial = verdicts.iter().all(|(_, v, _)| *v);
    let (_, _, witness) = &verdicts[0];
    if all_nontrivial {
        let (z, image) = witness.clone().unwrap();
        Ok(format!(
            "nontrivial with explicit and solver sections, e.g. {z} ↦ {image}"
        ))
    } else {
        Err(format!(
            "verdicts {:?}",
            verdicts.iter().map(|(s, v, _)| (s, v)).collect::<Vec<_>>()
        ))
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 composite on sx for Λx", composite_on_sx),
        ("2 coproduct vanishes for S4, S6", coproduct_vanishes_on_spheres),
        ("3 closed-form formulas for Λx(4), k=2", closed_forms),
        ("4 structural invariants on the fixture corpus", fixture_invariants),
        ("5 degree shifts", degree_shifts),
        ("6 solver and explicit sections agree", solver_agreement),
        ("7 composite nontrivial for Λ(x:4, x':6)", two_even_generators),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
