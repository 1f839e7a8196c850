//! Command-line front end: `check`, `cohomology`, `brane` and `verify`.
//!
//! Exit status is 0 on success, 1 when a verification fails, 2 on input
//! errors (unreadable or invalid model files, unsupported parameters).

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::brane::{
    brane_coproduct_dual, brane_product_dual, build_section_phi, build_section_psi, build_shriek_constant,
    build_shriek_diagonal, compose_operations, nontriviality_report, BraneOperation, PipelineOptions, SectionStrategy,
};
use crate::cohomology::{cohomology_dims, first_class_disagreement};
use crate::error::{Error, Result};
use crate::format::{format_element, format_rational};
use crate::gca::{rational, Element};
use crate::model_file::parse_model;
use crate::models::{
    build_collapse_model, build_disk_model, build_path_model, build_sphere_model, build_torus_model, MappingSpaceModel,
    SullivanModel,
};

pub const ENGINE: &str = concat!("branecalc ", env!("CARGO_PKG_VERSION"));

#[derive(Parser, Debug)]
#[command(
    name = "branecalc",
    version,
    about = "Sullivan-model computations of sphere brane operations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a model file and report its structure.
    Check(CommonArgs),
    /// Cohomology dimensions through the truncation degree.
    Cohomology(CommonArgs),
    /// Evaluate a brane operation on every basis element.
    Brane(BraneArgs),
    /// Run the full invariant battery for the given k.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Model file, or `-` for standard input.
    pub file: String,
    /// Truncation degree (default: twice the top generator degree plus 4).
    #[arg(long, env = "BRANECALC_MAX_DEGREE")]
    pub max_degree: Option<i64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct BraneArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum)]
    pub op: OpKind,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub k: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Product,
    Coproduct,
    Composite,
}

#[derive(Serialize, Debug, Clone)]
pub struct CommandEcho {
    pub name: String,
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<OpKind>,
}

#[derive(Serialize, Debug, Clone)]
pub struct ResultDocument {
    pub engine: String,
    pub command: CommandEcho,
    pub model: String,
    pub max_degree: i64,
    pub ok: bool,
    pub result: CommandResult,
}

#[derive(Serialize, Debug, Clone)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Check(CheckResult),
    Cohomology { dimensions: Vec<usize> },
    Brane(BraneResult),
    Verify(VerifyResult),
}

#[derive(Serialize, Debug, Clone)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
    pub d: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckResult {
    pub generators: Vec<GeneratorEntry>,
    pub pure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purity_witness: Option<String>,
    pub square_zero: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct SliceEntry {
    pub degree: i64,
    pub target_degree: i64,
    pub source_basis: Vec<String>,
    pub target_basis: Vec<String>,
    /// One row per source basis monomial: its image in target coordinates.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct BraneResult {
    pub operation: OpKind,
    pub k: u32,
    pub shift: i64,
    pub slices: Vec<SliceEntry>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyResult {
    pub k: u32,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} | {} | model {} | max degree {}\n",
            self.engine, self.command.name, self.model, self.max_degree
        );
        match &self.result {
            CommandResult::Check(c) => {
                for g in &c.generators {
                    s += &format!("generator {} {}    d = {}\n", g.name, g.degree, g.d);
                }
                s += &format!("d² = 0: {}\n", c.square_zero);
                match &c.purity_witness {
                    None => s += "pure: yes\n",
                    Some(w) => s += &format!("pure: no (generator {w})\n"),
                }
            }
            CommandResult::Cohomology { dimensions } => {
                for (n, d) in dimensions.iter().enumerate() {
                    s += &format!("H^{n} = {d}\n");
                }
            }
            CommandResult::Brane(b) => {
                s += &format!(
                    "operation {} | k = {} | degree shift {}\n",
                    b.operation.name(),
                    b.k,
                    b.shift
                );
                for slice in &b.slices {
                    if slice.source_basis.is_empty() {
                        continue;
                    }
                    s += &format!("degree {} -> {}:\n", slice.degree, slice.target_degree);
                    for (src, row) in slice.source_basis.iter().zip(&slice.matrix) {
                        let image: Vec<String> = row
                            .iter()
                            .zip(&slice.target_basis)
                            .filter(|(c, _)| c.as_str() != "0")
                            .map(|(c, t)| format!("{c} {t}"))
                            .collect();
                        let image = if image.is_empty() {
                            "0".to_string()
                        } else {
                            image.join(" + ")
                        };
                        s += &format!("  {src} ↦ {image}\n");
                    }
                }
                s += &format!("verdict: {}\n", b.verdict);
                if let Some(w) = &b.witness {
                    s += &format!("witness: {w}\n");
                }
            }
            CommandResult::Verify(v) => {
                for c in &v.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    match &c.detail {
                        Some(d) => s += &format!("{mark} {} ({d})\n", c.name),
                        None => s += &format!("{mark} {}\n", c.name),
                    }
                }
                match &v.first_failure {
                    None => s += "all checks passed\n",
                    Some(f) => s += &format!("first failure: {f}\n"),
                }
            }
        }
        s
    }
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Product => "product",
            OpKind::Coproduct => "coproduct",
            OpKind::Composite => "composite",
        }
    }
}

fn document(name: &str, file: &str, model: &SullivanModel, n: i64, ok: bool, result: CommandResult) -> ResultDocument {
    ResultDocument {
        engine: ENGINE.to_string(),
        command: CommandEcho {
            name: name.to_string(),
            file: file.to_string(),
            k: None,
            op: None,
        },
        model: model.name().to_string(),
        max_degree: n,
        ok,
        result,
    }
}

pub fn cmd_check(model: &SullivanModel, file: &str, n: i64) -> ResultDocument {
    let generators = model
        .algebra()
        .generators()
        .iter()
        .zip(model.differential().images())
        .map(|(g, d)| GeneratorEntry {
            name: g.name.clone(),
            degree: g.degree,
            d: format_element(d),
        })
        .collect();
    let witness = model.purity_witness();
    let result = CheckResult {
        generators,
        pure: witness.is_none(),
        purity_witness: witness,
        square_zero: model.check_square_zero().is_ok(),
    };
    document("check", file, model, n, true, CommandResult::Check(result))
}

pub fn cmd_cohomology(model: &SullivanModel, file: &str, n: i64) -> Result<ResultDocument> {
    let dimensions = cohomology_dims(model, n)?;
    Ok(document(
        "cohomology",
        file,
        model,
        n,
        true,
        CommandResult::Cohomology { dimensions },
    ))
}

/// `sx` for a unit monomial, the full element form otherwise.
fn compact(e: &Element) -> String {
    let mut terms = e.terms().iter();
    if let (Some((m, c)), None) = (terms.next(), terms.next()) {
        if *c == rational(1) && !m.is_one() {
            return m
                .support()
                .map(|(i, p)| {
                    let name = &e.algebra().generator(i).name;
                    if p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
        }
    }
    format_element(e)
}

pub fn build_operation(model: &SullivanModel, k: u32, op: OpKind, options: &PipelineOptions) -> Result<BraneOperation> {
    match op {
        OpKind::Coproduct => brane_coproduct_dual(model, k, options),
        OpKind::Product => brane_product_dual(model, k, options),
        OpKind::Composite => {
            let delta = brane_coproduct_dual(model, k, options)?;
            let mu = brane_product_dual(model, k, options)?;
            Ok(compose_operations(&delta, &mu, options.n_max)?.0)
        }
    }
}

pub fn cmd_brane(model: &SullivanModel, file: &str, k: u32, op: OpKind, n: i64) -> Result<ResultDocument> {
    let operation = build_operation(model, k, op, &PipelineOptions::new(n))?;
    let mut slices = Vec::new();
    for degree in 0..=n {
        let (source, target, matrix) = operation.matrix(degree)?;
        slices.push(SliceEntry {
            degree,
            target_degree: degree + operation.shift,
            source_basis: source
                .iter()
                .map(|m| operation.source.algebra().format_monomial(m))
                .collect(),
            target_basis: target
                .iter()
                .map(|m| operation.target.algebra().format_monomial(m))
                .collect(),
            matrix: matrix
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        });
    }
    let report = nontriviality_report(&operation, n)?;
    let witness = report
        .witnesses
        .first()
        .map(|(z, img)| format!("{} ↦ {}", compact(z), format_element(img)));
    let result = BraneResult {
        operation: op,
        k,
        shift: operation.shift,
        slices,
        verdict: if report.is_nontrivial() {
            "NONTRIVIAL"
        } else {
            "TRIVIAL"
        }
        .to_string(),
        witness,
    };
    let mut doc = document("brane", file, model, n, true, CommandResult::Brane(result));
    doc.command.k = Some(k);
    doc.command.op = Some(op);
    Ok(doc)
}

struct Battery {
    checks: Vec<CheckEntry>,
}

impl Battery {
    fn record(&mut self, name: &str, outcome: Result<()>) {
        self.checks.push(CheckEntry {
            name: name.to_string(),
            passed: outcome.is_ok(),
            detail: outcome.err().map(|e| e.to_string()),
        });
    }

    fn first_failure(&self) -> Option<String> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name.clone())
    }
}

fn quasi_iso_check(built: &SullivanModel, base: &SullivanModel, n: i64) -> Result<()> {
    let a = cohomology_dims(built, n)?;
    let b = cohomology_dims(base, n)?;
    match (0..a.len()).find(|&i| a[i] != b[i]) {
        None => Ok(()),
        Some(i) => Err(Error::NoSolution {
            degree: i as i64,
            reason: format!("cohomology dimension {} differs from {}", a[i], b[i]),
        }),
    }
}

fn agreement_check(a: &BraneOperation, b: &BraneOperation, n: i64) -> Result<()> {
    match first_class_disagreement(&a.source, &a.target, n, |z| a.apply(z), |z| b.apply(z))? {
        None => Ok(()),
        Some(z) => Err(Error::NoSolution {
            degree: z.degree().ok().flatten().unwrap_or(0),
            reason: format!("induced maps differ on the class of {}", format_element(&z)),
        }),
    }
}

/// Runs every structural check for `model` and `k`. Input problems (odd k,
/// impure or insufficiently connected model) are errors, not failures.
pub fn verify_battery(model: &SullivanModel, k: u32, n: i64) -> Result<Vec<CheckEntry>> {
    build_shriek_constant(model, k, &rational(1), 0)?;
    let mut b = Battery { checks: Vec::new() };
    b.record("d² = 0 on the input model", model.check_square_zero());
    let builders: Vec<(&str, Result<MappingSpaceModel>)> = vec![
        ("sphere model M(S^{k-1})", build_sphere_model(model, k - 1)),
        ("sphere model M(S^k)", build_sphere_model(model, k)),
        ("disk model M(D^k)", build_disk_model(model, k)),
        ("torus model M(T^(k))", build_torus_model(model, k)),
        ("collapse model M(U^(k))", build_collapse_model(model, k)),
        ("path model M(I)", build_path_model(model)),
    ];
    let mut disk = None;
    let mut path = None;
    for (name, built) in builders {
        let outcome = built.and_then(|mm| {
            mm.check()?;
            Ok(mm)
        });
        match outcome {
            Ok(mm) => {
                b.record(&format!("{name}: d² = 0 and structure maps are chain maps"), Ok(()));
                if name.starts_with("disk") {
                    disk = Some(mm);
                } else if name.starts_with("path") {
                    path = Some(mm);
                }
            }
            Err(e) => b.record(name, Err(e)),
        }
    }
    if let Some(d) = &disk {
        b.record(
            "ε̃ is a quasi-isomorphism through the truncation",
            quasi_iso_check(&d.model, model, n),
        );
    }
    if let Some(p) = &path {
        b.record(
            "ε̄ is a quasi-isomorphism through the truncation",
            quasi_iso_check(&p.model, model, n),
        );
    }
    b.record("D(γ) = 0", build_shriek_constant(model, k, &rational(1), n).map(|_| ()));
    b.record("D(η) = 0", build_shriek_diagonal(model, &rational(1), n).map(|_| ()));
    for strategy in [SectionStrategy::Explicit, SectionStrategy::Solver] {
        let label = match strategy {
            SectionStrategy::Explicit => "explicit",
            SectionStrategy::Solver => "solver",
        };
        b.record(
            &format!("φ ({label}) is a chain-map section of ε̃⊗id"),
            build_section_phi(model, k, strategy, n).map(|_| ()),
        );
        b.record(
            &format!("ψ ({label}) is a chain-map section of ε̄⊗id"),
            build_section_psi(model, k, strategy, n).map(|_| ()),
        );
    }
    let explicit = PipelineOptions::new(n);
    let solver = PipelineOptions::new(n).with_sections(SectionStrategy::Solver);
    let ops = (|| -> Result<_> {
        Ok((
            brane_coproduct_dual(model, k, &explicit)?,
            brane_product_dual(model, k, &explicit)?,
            brane_coproduct_dual(model, k, &solver)?,
            brane_product_dual(model, k, &solver)?,
        ))
    })();
    match ops {
        Ok((delta, mu, delta_s, mu_s)) => {
            b.record("δ^∨ is a chain map", delta.check_chain_map(n));
            b.record("μ^∨ is a chain map", mu.check_chain_map(n));
            b.record(
                "δ^∨: solver and explicit sections agree on classes",
                agreement_check(&delta, &delta_s, n),
            );
            b.record(
                "μ^∨: solver and explicit sections agree on classes",
                agreement_check(&mu, &mu_s, n),
            );
        }
        Err(e) => b.record("brane pipelines", Err(e)),
    }
    Ok(b.checks)
}

pub fn cmd_verify(model: &SullivanModel, file: &str, k: u32, n: i64) -> Result<ResultDocument> {
    let checks = verify_battery(model, k, n)?;
    let battery = Battery { checks };
    let first_failure = battery.first_failure();
    let ok = first_failure.is_none();
    let result = VerifyResult {
        k,
        checks: battery.checks,
        first_failure,
    };
    let mut doc = document("verify", file, model, n, ok, CommandResult::Verify(result));
    doc.command.k = Some(k);
    Ok(doc)
}

fn read_model(file: &str, stdin: &mut dyn Read) -> std::result::Result<SullivanModel, String> {
    let text = if file == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("cannot read {file}: {e}"))?
    };
    parse_model(&text).map_err(|e| format!("{file}: {e}"))
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Check(c) | Command::Cohomology(c) => c,
        Command::Brane(b) => &b.common,
        Command::Verify(v) => &v.common,
    };
    let model = match read_model(&common.file, stdin) {
        Ok(m) => m,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let n = common.max_degree.unwrap_or_else(|| model.default_truncation());
    if n < 0 {
        let _ = writeln!(err, "error: --max-degree must be non-negative");
        return 2;
    }
    let outcome = match &cli.command {
        Command::Check(c) => Ok(cmd_check(&model, &c.file, n)),
        Command::Cohomology(c) => cmd_cohomology(&model, &c.file, n),
        Command::Brane(b) => cmd_brane(&model, &b.common.file, b.k, b.op, n),
        Command::Verify(v) => cmd_verify(&model, &v.common.file, v.k, n),
    };
    match outcome {
        Ok(doc) => {
            let text = match common.format {
                OutputFormat::Text => doc.to_text(),
                OutputFormat::Json => doc.to_json(),
            };
            let _ = write!(out, "{text}");
            if doc.ok {
                0
            } else {
                if let CommandResult::Verify(v) = &doc.result {
                    let _ = writeln!(
                        err,
                        "verification failed: {}",
                        v.first_failure.clone().unwrap_or_default()
                    );
                }
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cohomology_from_stdin() {
        let (code, out, _) = run_with(
            &["branecalc", "cohomology", "-", "--max-degree", "8"],
            "generator x 4\n",
        );
        assert_eq!(code, 0);
        assert!(out.contains("H^8 = 1"));
    }

    #[test]
    fn composite_witness() {
        let (code, out, _) = run_with(
            &[
                "branecalc",
                "brane",
                "-",
                "--k",
                "2",
                "--op",
                "composite",
                "--max-degree",
                "8",
            ],
            "generator x 4\n",
        );
        assert_eq!(code, 0);
        assert!(out.contains("verdict: NONTRIVIAL"));
        assert!(out.contains("witness: sx ↦ -1 s1x^1"), "{out}");
    }

    #[test]
    fn odd_k_is_an_input_error() {
        let (code, _, err) = run_with(
            &["branecalc", "brane", "-", "--k", "3", "--op", "coproduct"],
            "generator x 4\n",
        );
        assert_eq!(code, 2);
        assert!(err.contains("out of scope"));
    }

    #[test]
    fn bad_file_is_an_input_error() {
        let (code, _, err) = run_with(&["branecalc", "check", "-"], "generator x 4\nd x = x\n");
        assert_eq!(code, 2);
        assert!(err.contains("degree mismatch"));
    }

    #[test]
    fn json_is_stable() {
        let args = [
            "branecalc",
            "brane",
            "-",
            "--k",
            "2",
            "--op",
            "product",
            "--format",
            "json",
            "--max-degree",
            "6",
        ];
        let (_, a, _) = run_with(&args, "generator x 4\n");
        let (_, b, _) = run_with(&args, "generator x 4\n");
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["engine"], ENGINE);
        assert_eq!(v["result"]["shift"], -3);
    }
}
