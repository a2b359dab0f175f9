// A small Lipschitz certification campaign for (1 - |z|^2) Λ_f.
//
// cargo run --release --example certify_theorem1 -- 5000

use bloch_lab::verify::{run_campaign, CampaignConfig, CampaignKind};

pub fn run_with(trials: usize) -> bloch_lab::Result<()> {
    for kind in [CampaignKind::TheoremA, CampaignKind::Theorem1] {
        let report = run_campaign(&CampaignConfig::new(kind, 7, trials))?;
        println!(
            "{}: {} trials, max quotient {:.4} of bound (raw {:.4}), {} violations",
            report.campaign_name,
            report.n_trials,
            report.max_quotient,
            report.max_raw_quotient,
            report.violations.len()
        );
        for s in &report.strata {
            println!("  {:?}: {} trials, max {:.4}", s.stratum, s.trials, s.max_quotient);
        }
        let bars: String = report
            .histogram
            .iter()
            .map(|&c| match c {
                0 => ' ',
                c if c * 20 < trials as u64 => '.',
                _ => '#',
            })
            .collect();
        println!("  [{bars}]");
    }
    Ok(())
}

pub fn run_example() -> bloch_lab::Result<()> {
    run_with(200)
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    run_with(trials)
}
