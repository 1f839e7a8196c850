// Models of sphere, disk, torus, collapse and path mapping spaces.

use branecalc::cohomology::cohomology_dims;
use branecalc::gca::Generator;
use branecalc::models::{
    build_collapse_model, build_disk_model, build_path_model, build_sphere_model, build_torus_model, SullivanModel,
};

pub fn run_example() -> branecalc::Result<()> {
    let s4 = SullivanModel::from_generators(
        "S4",
        vec![Generator::new("x", 4), Generator::new("y", 7)],
        &[("y", "x^2")],
    )?;
    let k = 2;
    let built = [
        build_sphere_model(&s4, k)?,
        build_disk_model(&s4, k)?,
        build_torus_model(&s4, k)?,
        build_collapse_model(&s4, k)?,
        build_path_model(&s4)?,
    ];
    for mm in &built {
        mm.check()?;
        println!("{:?}: {}", mm.kind, mm.model.name());
        for (g, d) in mm
            .model
            .algebra()
            .generators()
            .iter()
            .zip(mm.model.differential().images())
        {
            println!("  d {} = {}", g.name, d);
        }
    }

    // disk and path models have the cohomology of the base
    let n = 14;
    let base = cohomology_dims(&s4, n)?;
    assert_eq!(cohomology_dims(&built[1].model, n)?, base);
    assert_eq!(cohomology_dims(&built[4].model, n)?, base);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("mapping space example");
}
