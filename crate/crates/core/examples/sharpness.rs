// How close do random and hill-climbed configurations get to the constants?
//
// cargo run --release --example sharpness -- 10000

use bloch_lab::verify::{sharpness_search, SharpnessConfig, SharpnessKind};

pub fn run_with(budget: usize) -> bloch_lab::Result<()> {
    for kind in SharpnessKind::ALL {
        let report = sharpness_search(&SharpnessConfig::new(kind, 42, budget))?;
        print!("{kind}: best quotient {:.4} vs bound {:.4}", report.max_raw_quotient, report.bound);
        if let Some(best) = &report.best {
            print!(" (rho = {:.3e}, restart {})", best.rho, best.restart);
        }
        println!();
    }
    Ok(())
}

pub fn run_example() -> bloch_lab::Result<()> {
    run_with(200)
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    let budget = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    run_with(budget)
}
