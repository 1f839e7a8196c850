macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(graded_algebra, "graded_algebra.rs");
example!(model_files, "model_files.rs");
example!(mapping_spaces, "mapping_spaces.rs");
example!(shriek_maps, "shriek_maps.rs");
example!(brane_coproduct, "brane_coproduct.rs");
example!(brane_product, "brane_product.rs");
example!(nontrivial_composite, "nontrivial_composite.rs");
example!(command_line, "command_line.rs");

#[test]
fn graded_algebra_runs() {
    graded_algebra::run_example().unwrap();
}

#[test]
fn model_files_runs() {
    model_files::run_example().unwrap();
}

#[test]
fn mapping_spaces_runs() {
    mapping_spaces::run_example().unwrap();
}

#[test]
fn shriek_maps_runs() {
    shriek_maps::run_example().unwrap();
}

#[test]
fn brane_coproduct_runs() {
    brane_coproduct::run_example().unwrap();
}

#[test]
fn brane_product_runs() {
    brane_product::run_example().unwrap();
}

#[test]
fn nontrivial_composite_runs() {
    nontrivial_composite::run_example().unwrap();
}

#[test]
fn command_line_runs() {
    command_line::run_example().unwrap();
}
