// Grid-plus-simplex estimates of Bloch seminorms.
//
// cargo run --example seminorms

use bloch_lab::seminorms::{bloch_seminorm, bloch_type_seminorm, harmonic_bloch_seminorm};
use bloch_lab::{HarmonicMap, Polynomial, SupConfig};

pub fn run_example() -> bloch_lab::Result<()> {
    let cfg = SupConfig::default();

    // sup (1 - r^2) r^2 = 1/4
    let z3 = Polynomial::monomial(1.0.into(), 3);
    let est = bloch_seminorm(&z3, &cfg)?;
    println!("||z^3/3||_B ~ {:.10} at {:?} (tolerance {:.1e})", est.value / 3.0, est.argmax.value(), est.tolerance);

    let log = HarmonicMap::log_fixture();
    let est = harmonic_bloch_seminorm(&log, &cfg)?;
    println!("log(1 - z^2): {:.8} (grid {:.8}), limit 2", est.value, est.grid_value);

    for k in [0.1, 0.5, 0.9] {
        let f = HarmonicMap::affine(k);
        let bh = harmonic_bloch_seminorm(&f, &cfg)?.value;
        let star = bloch_type_seminorm(&f, &cfg)?.value;
        println!("z + {k} conj(z): B_h = {bh:.6}, B_h* = {star:.6}, ratio^2 = {:.6}", (bh / star).powi(2));
    }

    let coarse = SupConfig { n_radial: 8, n_angular: 8, refine_top: 0, ..cfg };
    let f = HarmonicMap::new(Polynomial::from_real(&[0.0, 1.0, 0.0, 0.5]), Polynomial::from_real(&[0.0, 0.0, 0.3]));
    println!(
        "8x8 grid, no refinement: {:.6}; default: {:.6}",
        harmonic_bloch_seminorm(&f, &coarse)?.value,
        harmonic_bloch_seminorm(&f, &cfg)?.value
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
