//! A seeded campaign over a few chains, printed as the JSON report.
//!
//! `cargo run --release --example campaign`

use hhchain::campaign::{run_campaign, CampaignConfig, TheoremId};

fn main() -> hhchain::Result<()> {
    let cfg = CampaignConfig {
        theorem_ids: vec![TheoremId::UinFull, TheoremId::TraceSqrt, TheoremId::Dragomir],
        trials: 100,
        dims: vec![2, 3],
        master_seed: 2024,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&cfg)?;
    for t in &report.theorems {
        println!("{:<12} {:<6} min margin {:?}", t.id, t.status.as_str(), t.min_margin);
    }
    print!("{}", report.to_json_string());
    Ok(())
}
