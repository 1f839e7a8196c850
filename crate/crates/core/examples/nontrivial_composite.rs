// The composite δ∨∘μ∨ and a witness of its nontriviality.

use branecalc::brane::{brane_coproduct_dual, brane_product_dual, compose_operations, PipelineOptions};
use branecalc::format::parse_element;
use branecalc::model_file::parse_model;

pub fn run_example() -> branecalc::Result<()> {
    let k46 = parse_model("model K46\ngenerator x 4\ngenerator x' 6\n")?;
    let n = k46.default_truncation();
    let opts = PipelineOptions::new(n);
    let delta = brane_coproduct_dual(&k46, 2, &opts)?;
    let mu = brane_product_dual(&k46, 2, &opts)?;
    let (composite, report) = compose_operations(&delta, &mu, n)?;
    println!("composite shift {}", composite.shift);
    println!("nontrivial: {}", report.is_nontrivial());
    for (z, image) in report.witnesses.iter().take(3) {
        println!("  {z} ↦ {image}");
    }
    let sx = parse_element("sx", composite.source.algebra())?;
    println!("composite(sx) = {}", composite.apply(&sx)?);
    assert!(report.is_nontrivial());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("composite example");
}
