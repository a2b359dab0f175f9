// log(1 - z^2) has finite Bloch seminorm but is not Lipschitz: its
// difference quotients blow up near the boundary.
//
// cargo run --example non_lipschitz

use bloch_lab::verify::non_lipschitz_witness;

pub fn run_example() -> bloch_lab::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>8}", "x", "quotient", "1/(1-x)", "ratio");
    for x in [0.9, 0.99, 0.999, 0.9999, 0.99999] {
        let (q, r) = non_lipschitz_witness(x, (1.0 - x) / 100.0)?;
        println!("{x:>8} {q:>12.3} {r:>12.3} {:>8.4}", q / r);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
