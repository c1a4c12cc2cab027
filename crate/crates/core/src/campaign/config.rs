use std::collections::BTreeSet;

use serde::Serialize;

use super::{Ablation, TheoremId};
use crate::chains::ChainOptions;
use crate::error::{Error, Result};
use crate::functions::FunctionSpec;
use crate::norms::NormSpec;
use crate::quadrature::{QuadScheme, MAX_QUAD_N};

/// Grid size of the log-convexity witnesses inside a campaign.
pub const DEFAULT_WITNESS_GRID_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub theorem_ids: Vec<TheoremId>,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub master_seed: u64,
    pub rtol: f64,
    pub atol: f64,
    /// `None` picks the per-id default.
    #[serde(serialize_with = "display_opt")]
    pub norm: Option<NormSpec>,
    pub nu: f64,
    pub quad_n: usize,
    #[serde(serialize_with = "display")]
    pub function: FunctionSpec,
    pub ablation_flags: BTreeSet<Ablation>,
    /// Fraction of unreliable trials above which an id is UNRELIABLE.
    pub unreliable_threshold: f64,
    pub witness_grid_n: usize,
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_opt<T: std::fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            theorem_ids: TheoremId::ALL.to_vec(),
            trials: 1000,
            dims: vec![2, 3, 5, 8],
            master_seed: 0,
            rtol: 1e-8,
            atol: 1e-12,
            norm: None,
            nu: 0.3,
            quad_n: 64,
            function: FunctionSpec::exp(1.0).expect("exp:1"),
            ablation_flags: BTreeSet::new(),
            unreliable_threshold: 0.01,
            witness_grid_n: DEFAULT_WITNESS_GRID_N,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.theorem_ids.is_empty() {
            return bad("no theorem selected".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > 64) {
            return bad(format!("dims must be a nonempty list in 1..=64, got {:?}", self.dims));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return bad(format!("rtol and atol must be positive, got {} and {}", self.rtol, self.atol));
        }
        if !(0.0..=1.0).contains(&self.nu) {
            return bad(format!("nu = {} is outside [0, 1]", self.nu));
        }
        if self.quad_n == 0 || self.quad_n > MAX_QUAD_N {
            return Err(Error::NOutOfRange(self.quad_n));
        }
        if self.witness_grid_n < 3 {
            return bad("witness grid needs at least 3 points".into());
        }
        let selected = |id| self.theorem_ids.contains(&id);
        if selected(TheoremId::UinSymmetric) && self.nu == 0.5 {
            return Err(Error::DegenerateInterval("uin_symmetric at nu = 1/2".into()));
        }
        if (selected(TheoremId::UinEndLeft) || selected(TheoremId::UinEndRight)) && (self.nu == 0.0 || self.nu == 1.0) {
            return Err(Error::DegenerateInterval(format!("one-sided uin chains at nu = {}", self.nu)));
        }
        Ok(())
    }

    pub fn chain_options(&self) -> ChainOptions {
        ChainOptions {
            scheme: QuadScheme::GaussLegendre(self.quad_n),
            rtol: self.rtol,
            atol: self.atol,
        }
    }

    pub fn norm_for(&self, id: TheoremId) -> NormSpec {
        self.norm.unwrap_or_else(|| id.default_norm())
    }

    pub fn has(&self, flag: Ablation) -> bool {
        self.ablation_flags.contains(&flag)
    }
}

/// Settings collected from a config file or the command line. Later layers
/// override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub theorem_ids: Option<Vec<TheoremId>>,
    pub trials: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub master_seed: Option<u64>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub norm: Option<NormSpec>,
    pub nu: Option<f64>,
    pub quad_n: Option<usize>,
    pub function: Option<FunctionSpec>,
    pub ablation_flags: Option<BTreeSet<Ablation>>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad value `{value}` for `{key}`")))
}

fn list<T, F>(value: &str, parse: F) -> Result<Vec<T>>
where
    F: Fn(&str) -> Result<T>,
{
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse(s.trim())).collect()
}

impl ConfigOverrides {
    /// Sets one key. Keys are the long flag names with or without the
    /// leading dashes; `_` and `-` are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        match key.as_str() {
            "theorem" | "theorems" | "theorem-ids" => {
                self.theorem_ids = Some(if value == "all" {
                    TheoremId::ALL.to_vec()
                } else {
                    list(value, str::parse)?
                });
            }
            "trials" => self.trials = Some(number(&key, value)?),
            "dim" | "dims" => self.dims = Some(list(value, |s| number(&key, s))?),
            "seed" | "master-seed" => self.master_seed = Some(number(&key, value)?),
            "rtol" => self.rtol = Some(number(&key, value)?),
            "atol" => self.atol = Some(number(&key, value)?),
            "norm" => self.norm = Some(value.parse()?),
            "nu" => self.nu = Some(number(&key, value)?),
            "quad-n" => self.quad_n = Some(number(&key, value)?),
            "fn" | "function" => self.function = Some(value.parse()?),
            "ablation" | "ablation-flags" => self.ablation_flags = Some(list(value, str::parse)?.into_iter().collect()),
            _ => return Err(Error::InvalidArgument(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn apply(&self, cfg: &mut CampaignConfig) {
        macro_rules! take {
            ($($field:ident),+) => {
                $(if let Some(v) = &self.$field { cfg.$field = v.clone(); })+
            };
        }
        take!(theorem_ids, trials, dims, master_seed, rtol, atol, nu, quad_n, function, ablation_flags);
        if self.norm.is_some() {
            cfg.norm = self.norm;
        }
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<ConfigOverrides> {
    let mut out = ConfigOverrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        out.set(key, value).map_err(|e| Error::ConfigParse {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    Ok(out)
}
