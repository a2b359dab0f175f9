// The certified constants and the relations that tie them together.
//
// cargo run --example constants

use bloch_lab::bounds::{constants, minimize_psi, psi};

pub fn run_example() -> bloch_lab::Result<()> {
    let c = constants();
    println!("c1       = {:.10}  (at r* = {:.10})", c.c1, c.r_star);
    println!("c2       = {:.10}  = 2 c1 + 1/3", c.c2);
    println!("c3       = {:.10}  = c1 + 1", c.c3);
    println!("c3_tight = {:.10}  = c1 + 1/6", c.c3_tight);
    println!("theorem A constant = {}", c.theorem_a_constant);

    // the minimizer is the positive root of r^4 + 28 r^2 - 9
    let root = ((-28.0 + 820f64.sqrt()) / 2.0).sqrt();
    println!("closed-form r* = {root:.12}, |diff| = {:.1e}", (root - c.r_star).abs());

    let (r, v) = minimize_psi(1e-6)?;
    println!("coarse search: psi({r:.6}) = {v:.6}");
    for r in [0.3, 0.5, 0.7, 0.9] {
        println!("  psi({r}) = {:.5}", psi(r)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
