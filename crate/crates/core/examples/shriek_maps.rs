// The shriek cocycles γ (sphere inclusion) and η (diagonal).

use branecalc::brane::{build_shriek_constant, build_shriek_diagonal, coproduct_shift, product_shift};
use branecalc::gca::{rational, Generator};
use branecalc::models::SullivanModel;

pub fn run_example() -> branecalc::Result<()> {
    let s4 = SullivanModel::from_generators(
        "S4",
        vec![Generator::new("x", 4), Generator::new("y", 7)],
        &[("y", "x^2")],
    )?;
    let n = s4.default_truncation();
    println!("deg γ = {}, deg η = {}", coproduct_shift(&s4, 2), product_shift(&s4));

    let gamma = build_shriek_constant(&s4, 2, &rational(1), n)?;
    gamma.check(n)?;
    for (u, v) in gamma.map.explicit_images() {
        if !v.is_zero() {
            println!("γ({}) = {v}", gamma.map.source().format_monomial(u));
        }
    }

    let eta = build_shriek_diagonal(&s4, &rational(1), n)?;
    eta.check(n)?;
    for (u, v) in eta.map.explicit_images().iter().take(6) {
        println!("η({}) = {v}", eta.map.source().format_monomial(u));
    }

    // odd k is not supported
    assert!(build_shriek_constant(&s4, 3, &rational(1), n).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("shriek example");
}
