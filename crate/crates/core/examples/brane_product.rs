// The dual brane product, with explicit and solver-built sections.

use branecalc::brane::{brane_product_dual, PipelineOptions, SectionStrategy};
use branecalc::cohomology::first_class_disagreement;
use branecalc::format::parse_element;
use branecalc::gca::Generator;
use branecalc::models::SullivanModel;

pub fn run_example() -> branecalc::Result<()> {
    let lx = SullivanModel::free("Lx", vec![Generator::new("x", 6)])?;
    let n = 14;
    let explicit = brane_product_dual(&lx, 2, &PipelineOptions::new(n))?;
    let solver = brane_product_dual(&lx, 2, &PipelineOptions::new(n).with_sections(SectionStrategy::Solver))?;
    explicit.check_chain_map(n)?;
    println!("shift {}", explicit.shift);
    for expr in ["sx", "ss1x", "sx ss1x", "x sx"] {
        let a = parse_element(expr, explicit.source.algebra())?;
        println!("μ∨({expr}) = {}", explicit.apply(&a)?);
    }
    let diff = first_class_disagreement(
        &explicit.source,
        &explicit.target,
        n,
        |z| explicit.apply(z),
        |z| solver.apply(z),
    )?;
    println!("sections agree on cohomology: {}", diff.is_none());
    assert!(diff.is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("product example");
}
