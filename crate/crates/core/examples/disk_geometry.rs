// Möbius automorphisms and the pseudo-hyperbolic distance.
//
// cargo run --example disk_geometry

use bloch_lab::disk::{one_minus_rho_sq, pseudo_distance};
use bloch_lab::{DiskPoint, MobiusTransform};

pub fn run_example() -> bloch_lab::Result<()> {
    let z = DiskPoint::from_re_im(0.5, 0.0)?;
    let w = DiskPoint::from_re_im(-0.5, 0.0)?;
    println!("rho(0.5, -0.5) = {}", pseudo_distance(z, w));

    let phi = MobiusTransform::new(DiskPoint::from_re_im(0.3, -0.6)?);
    let p = DiskPoint::from_polar(0.95, 2.0)?;
    let back = phi.map_point(phi.map_point(p));
    println!("phi(phi(p)) - p = {:.2e}", (back.value() - p.value()).norm());

    // 1 - rho^2 three ways
    let a = DiskPoint::from_polar(0.99, 0.4)?;
    let b = DiskPoint::from_polar(0.97, -1.1)?;
    let direct = 1.0 - pseudo_distance(a, b).powi(2);
    let product = one_minus_rho_sq(a, b);
    let derivative = b.weight() * MobiusTransform::new(a).derivative(b.value()).norm();
    println!("1 - rho^2: {direct:.15} {product:.15} {derivative:.15}");

    // invariance under an automorphism
    let t = MobiusTransform::new(DiskPoint::from_re_im(-0.7, 0.2)?);
    println!(
        "rho(a, b) = {:.15}, rho(Ta, Tb) = {:.15}",
        pseudo_distance(a, b),
        pseudo_distance(t.map_point(a), t.map_point(b))
    );

    match DiskPoint::from_re_im(1.0, 0.0) {
        Ok(_) => println!("boundary point accepted?"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
