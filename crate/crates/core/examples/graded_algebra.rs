// Free graded-commutative algebras, Koszul signs and derivations.

use std::collections::HashMap;

use branecalc::format::parse_element;
use branecalc::gca::{Derivation, FreeGca, Generator};

pub fn run_example() -> branecalc::Result<()> {
    let a = FreeGca::new(vec![
        Generator::new("x", 4),
        Generator::new("a", 3),
        Generator::new("b", 7),
    ])?;
    let ab = parse_element("a b", &a)?;
    let ba = parse_element("b a", &a)?;
    println!("a·b = {ab}");
    println!("b·a = {ba}");
    assert_eq!(ab, ba.scale(&branecalc::gca::rational(-1)));

    // odd generators square to zero
    assert!(parse_element("a", &a)?.pow(2).is_zero());

    let mut images = HashMap::new();
    images.insert("b".to_string(), parse_element("x^2", &a)?);
    let d = Derivation::from_named(&a, 1, &images, true)?;
    let e = parse_element("x^2 b + x a b", &a)?;
    println!("d({e}) = {}", d.apply(&e)?);

    for n in 0..=12 {
        println!("dim A^{n} = {}", a.basis_of_degree(n).len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("graded algebra example");
}
