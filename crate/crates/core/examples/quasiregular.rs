// Quasiregular maps: dilatation, the norm chain, and the Jacobian campaign.
//
// cargo run --release --example quasiregular

use bloch_lab::harmonic::bundle_at;
use bloch_lab::seminorms::{bloch_type_seminorm, harmonic_bloch_seminorm, quasiregularity_constant};
use bloch_lab::verify::{gen_quasiregular, run_campaign, CampaignConfig, CampaignKind};
use bloch_lab::{DiskPoint, SupConfig};

pub fn run_example() -> bloch_lab::Result<()> {
    let cfg = SupConfig::default();
    for (seed, k) in [(1, 0.1), (2, 0.5), (3, 0.9)] {
        let (f, nominal) = gen_quasiregular(seed, 5, k)?;
        let measured = quasiregularity_constant(&f, &cfg)?;
        let bh = harmonic_bloch_seminorm(&f, &cfg)?.value;
        let star = bloch_type_seminorm(&f, &cfg)?.value;
        println!("k = {k}: K nominal {nominal:.4}, measured {measured:.4}");
        println!("  {star:.5} <= {bh:.5} <= {:.5}", measured.sqrt() * star);
        let b = bundle_at(&f, DiskPoint::from_re_im(0.3, 0.2)?);
        println!("  at 0.3+0.2i: Λ = {:.4}, λ = {:.4}, J = {:.4}", b.big_lambda, b.small_lambda, b.jacobian);
    }

    let report = run_campaign(&CampaignConfig::new(CampaignKind::Theorem2, 11, 150).with_dilatation(0.5))?;
    println!(
        "{}: max {:.4} of bound, {} violations",
        report.campaign_name,
        report.max_quotient,
        report.violations.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> bloch_lab::Result<()> {
    run_example()
}
