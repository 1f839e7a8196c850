// The dual brane coproduct on Λx and on the 4-sphere.

use branecalc::brane::{brane_coproduct_dual, PipelineOptions};
use branecalc::format::parse_element;
use branecalc::gca::Generator;
use branecalc::models::SullivanModel;

pub fn run_example() -> branecalc::Result<()> {
    let lx = SullivanModel::free("Lx", vec![Generator::new("x", 4)])?;
    let delta = brane_coproduct_dual(&lx, 2, &PipelineOptions::new(12))?;
    delta.check_chain_map(12)?;
    println!("shift {}", delta.shift);
    for expr in ["1", "x", "s2x", "x s2x"] {
        let a = parse_element(expr, delta.source.algebra())?;
        println!("δ∨({expr}) = {}", delta.apply(&a)?);
    }

    let s4 = SullivanModel::from_generators(
        "S4",
        vec![Generator::new("x", 4), Generator::new("y", 7)],
        &[("y", "x^2")],
    )?;
    let n = s4.default_truncation();
    let delta = brane_coproduct_dual(&s4, 2, &PipelineOptions::new(n))?;
    let first = delta.first_nonzero(n)?;
    println!("S4: first nonzero value through degree {n}: {first:?}");
    assert!(first.is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("coproduct example");
}
