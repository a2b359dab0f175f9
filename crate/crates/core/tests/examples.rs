macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(constants, "constants.rs");
example!(disk_geometry, "disk_geometry.rs");
example!(seminorms, "seminorms.rs");
example!(certify_theorem1, "certify_theorem1.rs");
example!(quasiregular, "quasiregular.rs");
example!(lemma23, "lemma23.rs");
example!(non_lipschitz, "non_lipschitz.rs");
example!(sharpness, "sharpness.rs");

#[test]
fn examples_run() {
    constants::run_example().unwrap();
    disk_geometry::run_example().unwrap();
    seminorms::run_example().unwrap();
    certify_theorem1::run_example().unwrap();
    quasiregular::run_example().unwrap();
    lemma23::run_example().unwrap();
    non_lipschitz::run_example().unwrap();
    sharpness::run_example().unwrap();
}
