// Weighted displacement of (h ∘ φ_w)' near the origin.
//
// cargo run --example lemma23

use bloch_lab::bounds::{constants, lemma23_pair, log_displacement_inequality, second_derivative_bound};
use bloch_lab::seminorms::bloch_seminorm;
use bloch_lab::verify::gen_polynomial;
use bloch_lab::{DiskPoint, SupConfig};

pub fn run_example() -> bloch_lab::Result<()> {
    let h = gen_polynomial(5, 6, 1.0)?;
    let norm = bloch_seminorm(&h, &SupConfig::default())?.value;
    println!("||h||_B = {norm:.6}, c1 = {:.6}", constants().c1);
    let w = DiskPoint::from_polar(0.97, 1.3)?;
    for r in [0.01, 0.1, 0.2, 1.0 / 3.0] {
        let zeta = DiskPoint::from_polar(r, -0.4)?;
        let (lhs, rhs) = lemma23_pair(&h, w, zeta, norm)?;
        println!("  |zeta| = {r:.4}: {lhs:.6} <= {rhs:.6}");
    }
    for r in [0.1, 0.5, 0.9] {
        println!("  second-derivative factor at r = {r}, |w| = 1/3: {:.4}", second_derivative_bound(r, 1.0 / 3.0)?);
    }
    for t in [0.05, 0.2, 1.0 / 3.0] {
        let (lhs, rhs) = log_displacement_inequality(t)?;
        println!("  t = {t:.3}: {lhs:.6} <= {rhs:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
