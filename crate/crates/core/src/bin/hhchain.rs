use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use hhchain::campaign::{demo_trial, parse_config_text, run_campaign, CampaignConfig, ConfigOverrides, TheoremId};

#[derive(Parser)]
#[command(name = "hhchain", version, about = "Randomized verification of Hermite-Hadamard type matrix inequality chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded campaign and write the JSON report.
    Verify(VerifyArgs),
    /// Replay one trial and print its terms.
    Demo(DemoArgs),
}

#[derive(Args)]
struct Settings {
    /// Plain-text `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "fn")]
    fn_: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    /// schatten:p | schatten:inf | opnorm | tracenorm | kyfan:k
    #[arg(long)]
    norm: Option<String>,
    #[arg(long)]
    quad_n: Option<String>,
    #[arg(long)]
    rtol: Option<String>,
    #[arg(long)]
    atol: Option<String>,
    /// Comma-separated DROP_COMMUTATIVITY, DROP_POSITIVITY, DROP_CONVEXITY_GUARD.
    #[arg(long)]
    ablation: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id or `all`.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[command(flatten)]
    settings: Settings,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall_time_ms in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[command(flatten)]
    settings: Settings,
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn build_config(settings: &Settings, extra: &[(&str, &Option<String>)]) -> Result<CampaignConfig, String> {
    let mut cfg = CampaignConfig::default();
    if let Some(path) = &settings.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_config_text(&text).map_err(|e| e.to_string())?.apply(&mut cfg);
    }
    let mut cli = ConfigOverrides::default();
    let flags = [
        ("fn", &settings.fn_),
        ("nu", &settings.nu),
        ("norm", &settings.norm),
        ("quad-n", &settings.quad_n),
        ("rtol", &settings.rtol),
        ("atol", &settings.atol),
        ("ablation", &settings.ablation),
    ];
    for (key, value) in flags.iter().chain(extra) {
        if let Some(v) = value {
            cli.set(key, v).map_err(|e| e.to_string())?;
        }
    }
    cli.apply(&mut cfg);
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let extra = [
        ("theorem", &args.theorem),
        ("trials", &args.trials),
        ("dim", &args.dim),
        ("seed", &args.seed),
    ];
    let cfg = match build_config(&args.settings, &extra) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if let Err(e) = cfg.validate() {
        return config_error(e);
    }
    let start = Instant::now();
    let mut report = match run_campaign(&cfg) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if args.timing {
        report.wall_time_ms = Some(elapsed);
    }
    let json = report.to_json_string();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    for t in &report.theorems {
        eprintln!(
            "{:<16} {:<22} run {:>6}  pass {:>6}  fail {:>4}  unreliable {:>4}",
            t.id.as_str(),
            t.status.as_str(),
            t.trials_run,
            t.pass_count,
            t.fail_count,
            t.unreliable_count
        );
        if t.status == hhchain::campaign::Status::Fail {
            if let Some(cmd) = &t.reproduce {
                eprintln!("    reproduce: {cmd}");
            }
        }
    }
    eprintln!("elapsed {elapsed} ms");
    ExitCode::from(report.exit_code() as u8)
}

fn demo(args: DemoArgs) -> ExitCode {
    let id: TheoremId = match args.theorem.parse() {
        Ok(id) => id,
        Err(e) => return config_error(e),
    };
    let cfg = match build_config(&args.settings, &[]) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let cfg = CampaignConfig {
        theorem_ids: vec![id],
        dims: vec![args.dim],
        ..cfg
    };
    if let Err(e) = cfg.validate() {
        return config_error(e);
    }
    match demo_trial(id, &cfg, args.seed, args.dim) {
        Ok(out) => {
            print!("{}", out.text);
            println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::Demo(args) => demo(args),
    }
}
