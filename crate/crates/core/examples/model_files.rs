// Reading a model from text and computing its cohomology.

use branecalc::cohomology::cohomology_dims;
use branecalc::model_file::parse_model;

const S4_X_S6: &str = "\
model S4xS6
generator x 4
generator y 7
generator x' 6
generator y' 11
d y = x^2
d y' = x'^2
";

pub fn run_example() -> branecalc::Result<()> {
    let m = parse_model(S4_X_S6)?;
    let n = m.default_truncation();
    println!(
        "{}: {} generators, pure = {}, truncation {n}",
        m.name(),
        m.algebra().len(),
        m.is_pure()
    );
    let dims = cohomology_dims(&m, n)?;
    let nonzero: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] > 0).collect();
    println!("nonzero cohomology in degrees {nonzero:?}");
    assert_eq!(nonzero, vec![0, 4, 6, 10]);

    match parse_model("generator x 4\nd x = y") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("model file example");
}
