use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Number, Value};

use super::trial::{guard_holds, run_trial, TrialMode};
use super::{Ablation, CampaignConfig, TheoremId};
use crate::error::Result;
use crate::sampler::trial_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Unreliable,
    /// An ablated run found the violation the dropped hypothesis excludes.
    ExpectedViolation,
    /// An ablated run found no violation.
    AblationNoViolation,
    /// The configured function fails the convexity guard; no trials ran.
    HypothesisUnsupported,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unreliable => "UNRELIABLE",
            Status::ExpectedViolation => "EXPECTED_VIOLATION",
            Status::AblationNoViolation => "ABLATION_NO_VIOLATION",
            Status::HypothesisUnsupported => "HYPOTHESIS_UNSUPPORTED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSummary {
    pub id: TheoremId,
    pub status: Status,
    pub trials_run: usize,
    pub pass_count: usize,
    pub fail_count: usize,
    pub unreliable_count: usize,
    /// Smallest margin over the reliable trials.
    pub min_margin: Option<f64>,
    pub worst_trial_seed: Option<u64>,
    /// Command that replays the worst trial.
    pub reproduce: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub version: String,
    pub config: CampaignConfig,
    pub wall_time_ms: Option<u64>,
    pub theorems: Vec<TheoremSummary>,
}

enum Outcome {
    Pass(f64),
    Fail(f64),
    Unreliable,
}

fn reproduce_command(cfg: &CampaignConfig, id: TheoremId, seed: u64, dim: usize) -> String {
    let mut cmd = format!(
        "hhchain demo --theorem {id} --seed {seed} --dim {dim} --fn {} --nu {} --norm {} --quad-n {} --rtol {:e} --atol {:e}",
        cfg.function,
        cfg.nu,
        cfg.norm_for(id),
        cfg.quad_n,
        cfg.rtol,
        cfg.atol
    );
    if !cfg.ablation_flags.is_empty() {
        let flags: Vec<&str> = cfg.ablation_flags.iter().map(Ablation::as_str).collect();
        cmd.push_str(&format!(" --ablation {}", flags.join(",")));
    }
    cmd
}

fn summarize(cfg: &CampaignConfig, id: TheoremId, ablated: bool) -> TheoremSummary {
    let jobs: Vec<(usize, u64)> = cfg
        .dims
        .iter()
        .enumerate()
        .flat_map(|(di, &dim)| {
            (0..cfg.trials).map(move |i| (dim, trial_seed(cfg.master_seed, (di * cfg.trials + i) as u64)))
        })
        .collect();
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(dim, seed)| match run_trial(id, cfg, dim, seed, TrialMode::Normal) {
            Ok(r) if !r.quad_reliable() => Outcome::Unreliable,
            Ok(r) if r.pass() => Outcome::Pass(r.min_margin()),
            Ok(r) => Outcome::Fail(r.min_margin()),
            Err(_) => Outcome::Unreliable,
        })
        .collect();

    let mut s = TheoremSummary {
        id,
        status: Status::Pass,
        trials_run: jobs.len(),
        pass_count: 0,
        fail_count: 0,
        unreliable_count: 0,
        min_margin: None,
        worst_trial_seed: None,
        reproduce: None,
    };
    let mut worst: Option<(f64, usize)> = None;
    for (k, o) in outcomes.iter().enumerate() {
        let m = match *o {
            Outcome::Pass(m) => {
                s.pass_count += 1;
                m
            }
            Outcome::Fail(m) => {
                s.fail_count += 1;
                m
            }
            Outcome::Unreliable => {
                s.unreliable_count += 1;
                continue;
            }
        };
        if worst.is_none_or(|(w, _)| m < w) {
            worst = Some((m, k));
        }
    }
    if let Some((m, k)) = worst {
        let (dim, seed) = jobs[k];
        s.min_margin = Some(m);
        s.worst_trial_seed = Some(seed);
        s.reproduce = Some(reproduce_command(cfg, id, seed, dim));
    }
    s.status = if ablated {
        if s.fail_count > 0 {
            Status::ExpectedViolation
        } else {
            Status::AblationNoViolation
        }
    } else if s.fail_count > 0 {
        Status::Fail
    } else if s.unreliable_count as f64 > cfg.unreliable_threshold * s.trials_run as f64 {
        Status::Unreliable
    } else {
        Status::Pass
    };
    s
}

/// Runs every selected id over every dimension. Trial `k` of an id (counted
/// across dimensions) uses the stream seed `splitmix64(master_seed ^ k)`,
/// so the report does not depend on scheduling.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let mut theorems = Vec::with_capacity(cfg.theorem_ids.len());
    for &id in &cfg.theorem_ids {
        let guard = guard_holds(id, cfg)?;
        let guard_dropped = guard == Some(false);
        if guard_dropped && !cfg.has(Ablation::DropConvexityGuard) {
            theorems.push(TheoremSummary {
                id,
                status: Status::HypothesisUnsupported,
                trials_run: 0,
                pass_count: 0,
                fail_count: 0,
                unreliable_count: 0,
                min_margin: None,
                worst_trial_seed: None,
                reproduce: None,
            });
            continue;
        }
        let ablated = guard_dropped || cfg.ablation_flags.iter().any(|&f| id.affected_by(f));
        theorems.push(summarize(cfg, id, ablated));
    }
    Ok(CampaignReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        wall_time_ms: None,
        theorems,
    })
}

/// JSON number with 17 significant digits; non-finite values become null.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"))
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn int(x: impl Into<u64>) -> Value {
    Value::Number(x.into().into())
}

impl CampaignReport {
    /// 0 when every non-ablated id passes, 1 on a genuine violation, 3 when
    /// an id exceeds the unreliability threshold.
    pub fn exit_code(&self) -> i32 {
        if self.theorems.iter().any(|t| t.status == Status::Fail) {
            1
        } else if self.theorems.iter().any(|t| t.status == Status::Unreliable) {
            3
        } else {
            0
        }
    }

    pub fn summary(&self, id: TheoremId) -> Option<&TheoremSummary> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn to_json_value(&self) -> Value {
        let c = &self.config;
        let mut config = Map::new();
        config.insert(
            "theorem_ids".into(),
            Value::Array(c.theorem_ids.iter().map(|id| Value::String(id.to_string())).collect()),
        );
        config.insert("trials".into(), int(c.trials as u64));
        config.insert("dims".into(), Value::Array(c.dims.iter().map(|&d| int(d as u64)).collect()));
        config.insert("master_seed".into(), int(c.master_seed));
        config.insert("rtol".into(), num(c.rtol));
        config.insert("atol".into(), num(c.atol));
        config.insert(
            "norm".into(),
            c.norm.map_or(Value::Null, |n| Value::String(n.to_string())),
        );
        config.insert("nu".into(), num(c.nu));
        config.insert("quad_n".into(), int(c.quad_n as u64));
        config.insert("function".into(), Value::String(c.function.to_string()));
        config.insert(
            "ablation_flags".into(),
            Value::Array(c.ablation_flags.iter().map(|f| Value::String(f.to_string())).collect()),
        );

        let theorems = self
            .theorems
            .iter()
            .map(|t| {
                let mut m = Map::new();
                m.insert("id".into(), Value::String(t.id.to_string()));
                m.insert("status".into(), Value::String(t.status.as_str().into()));
                m.insert("trials_run".into(), int(t.trials_run as u64));
                m.insert("pass_count".into(), int(t.pass_count as u64));
                m.insert("fail_count".into(), int(t.fail_count as u64));
                m.insert("unreliable_count".into(), int(t.unreliable_count as u64));
                m.insert("min_margin".into(), opt_num(t.min_margin));
                m.insert("worst_trial_seed".into(), t.worst_trial_seed.map_or(Value::Null, int));
                m.insert("reproduce".into(), t.reproduce.clone().map_or(Value::Null, Value::String));
                Value::Object(m)
            })
            .collect();

        let mut root = Map::new();
        root.insert("version".into(), Value::String(self.version.clone()));
        root.insert("config".into(), Value::Object(config));
        root.insert("wall_time_ms".into(), self.wall_time_ms.map_or(Value::Null, int));
        root.insert("theorems".into(), Value::Array(theorems));
        Value::Object(root)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::FunctionSpec;

    fn small(ids: &[TheoremId]) -> CampaignConfig {
        CampaignConfig {
            theorem_ids: ids.to_vec(),
            trials: 5,
            dims: vec![2, 3],
            master_seed: 7,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn counts_add_up_and_report_is_stable() {
        let cfg = small(&[TheoremId::UinFull, TheoremId::ScalarAg]);
        let a = run_campaign(&cfg).unwrap();
        let b = run_campaign(&cfg).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        for t in &a.theorems {
            assert_eq!(t.pass_count + t.fail_count + t.unreliable_count, t.trials_run);
            assert_eq!(t.trials_run, 10);
            assert_eq!(t.status, Status::Pass);
        }
        assert_eq!(a.exit_code(), 0);
        let json = a.to_json_string();
        assert!(json.ends_with("}\n"));
        assert!(json.contains("\"rtol\": 1.0000000000000000e-8"));
    }

    #[test]
    fn unsupported_function_is_skipped_unless_guard_dropped() {
        let mut cfg = small(&[TheoremId::ScalarAg]);
        cfg.function = FunctionSpec::power(2.0).unwrap();
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.theorems[0].status, Status::HypothesisUnsupported);
        assert_eq!(r.exit_code(), 0);
        cfg.ablation_flags.insert(Ablation::DropConvexityGuard);
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.theorems[0].status, Status::ExpectedViolation);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn reproduce_command_names_the_worst_trial() {
        let r = run_campaign(&small(&[TheoremId::DetAg])).unwrap();
        let t = &r.theorems[0];
        let seed = t.worst_trial_seed.unwrap();
        assert!(t.reproduce.as_ref().unwrap().contains(&format!("--seed {seed}")));
    }
}
