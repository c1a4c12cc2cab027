//! Dropping a hypothesis and watching the chains break.
//!
//! `cargo run --release --example ablation`

use hhchain::campaign::{run_campaign, Ablation, CampaignConfig, TheoremId};

fn main() -> hhchain::Result<()> {
    for (flag, ids) in [
        (Ablation::DropPositivity, vec![TheoremId::DetAg, TheoremId::Kittaneh]),
        (Ablation::DropCommutativity, vec![TheoremId::OpGgHh, TheoremId::TraceSqrt, TheoremId::OpNormGg]),
    ] {
        let cfg = CampaignConfig {
            theorem_ids: ids,
            trials: 100,
            master_seed: 1,
            ablation_flags: [flag].into_iter().collect(),
            ..CampaignConfig::default()
        };
        let report = run_campaign(&cfg)?;
        println!("{flag}");
        for t in &report.theorems {
            println!("  {:<14} {:<22} {} of {} violated", t.id, t.status.as_str(), t.fail_count, t.trials_run);
        }
    }
    Ok(())
}
