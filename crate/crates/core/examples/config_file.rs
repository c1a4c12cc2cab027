//! Layering a `key = value` config file under command-line style overrides,
//! then replaying one trial.
//!
//! `cargo run --example config_file`

use hhchain::campaign::{demo_trial, parse_config_text, CampaignConfig, ConfigOverrides};

const FILE: &str = "
# nightly settings
theorem = uin_symmetric
trials = 250
dim = 3, 5
norm = kyfan:2
nu = 0.2
";

fn main() -> hhchain::Result<()> {
    let mut cfg = CampaignConfig::default();
    parse_config_text(FILE)?.apply(&mut cfg);
    let mut flags = ConfigOverrides::default();
    flags.set("--nu", "0.35")?;
    flags.apply(&mut cfg);
    cfg.validate()?;
    println!("theorems {:?} trials {} dims {:?} norm {:?} nu {}", cfg.theorem_ids, cfg.trials, cfg.dims, cfg.norm, cfg.nu);

    let demo = demo_trial(cfg.theorem_ids[0], &cfg, 42, 3)?;
    print!("{}", demo.text);
    Ok(())
}
