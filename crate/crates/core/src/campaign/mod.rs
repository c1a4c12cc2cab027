//! Seeded verification campaigns over every theorem id: configuration,
//! trial generation, aggregation and the JSON report.

mod config;
mod report;
mod trial;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::NormSpec;

pub use config::{parse_config_text, CampaignConfig, ConfigOverrides, DEFAULT_WITNESS_GRID_N};
pub use report::{run_campaign, CampaignReport, Status, TheoremSummary};
pub use trial::{demo_trial, guard_holds, run_trial, trial_report, DemoOutput, TrialMode};

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Identifier of one verified statement.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum TheoremId {
            $($variant),+
        }

        impl TheoremId {
            pub const ALL: [TheoremId; 22] = [$(TheoremId::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name),+
                }
            }
        }

        impl FromStr for TheoremId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($name => Ok(TheoremId::$variant),)+
                    other => Err(Error::UnknownTheoremId(other.to_string())),
                }
            }
        }
    };
}

theorem_ids! {
    ScalarAg => "scalar_ag",
    ScalarGg => "scalar_gg",
    ScalarMeans => "scalar_means",
    Dragomir => "dragomir",
    OpGgHh => "op_gg_hh",
    OpAgMidpoint => "op_ag_midpoint",
    OpNormGg => "op_norm_gg",
    ExpNorm => "exp_norm",
    TraceSqrt => "trace_sqrt",
    TraceSquared => "trace_squared",
    DetAg => "det_ag",
    AmGmLoewner => "am_gm_loewner",
    NormPower => "norm_power",
    Kittaneh => "kittaneh",
    PhiOperator => "phi_operator",
    PhiSandwich => "phi_sandwich",
    PhiDiagonal => "phi_diagonal",
    UinSymmetric => "uin_symmetric",
    UinEndLeft => "uin_end_left",
    UinEndRight => "uin_end_right",
    UinFull => "uin_full",
    UinDiagonal => "uin_diagonal",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl TheoremId {
    /// Ids about unitarily invariant norms of `AᵗXB^{1-t}`-type products.
    pub fn is_sandwich(&self) -> bool {
        use TheoremId::*;
        matches!(
            self,
            Kittaneh | PhiSandwich | PhiDiagonal | UinSymmetric | UinEndLeft | UinEndRight | UinFull | UinDiagonal
        )
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, TheoremId::ScalarAg | TheoremId::ScalarGg | TheoremId::ScalarMeans)
    }

    /// Ids evaluated on a commuting pair.
    pub fn uses_commuting_pair(&self) -> bool {
        use TheoremId::*;
        matches!(
            self,
            OpGgHh | OpAgMidpoint | OpNormGg | ExpNorm | TraceSqrt | TraceSquared | PhiOperator
        )
    }

    pub fn default_norm(&self) -> NormSpec {
        if self.is_sandwich() {
            NormSpec::Schatten(2.0)
        } else {
            NormSpec::OperatorNorm
        }
    }

    pub fn affected_by(&self, flag: Ablation) -> bool {
        match flag {
            Ablation::DropPositivity => matches!(self, TheoremId::DetAg | TheoremId::Kittaneh),
            Ablation::DropCommutativity => self.uses_commuting_pair(),
            Ablation::DropConvexityGuard => false,
        }
    }
}

/// Hypothesis ablations. Each one removes an assumption so that the
/// campaign can show the assumption matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ablation {
    DropCommutativity,
    DropPositivity,
    DropConvexityGuard,
}

impl Ablation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ablation::DropCommutativity => "DROP_COMMUTATIVITY",
            Ablation::DropPositivity => "DROP_POSITIVITY",
            Ablation::DropConvexityGuard => "DROP_CONVEXITY_GUARD",
        }
    }
}

impl fmt::Display for Ablation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Ablation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "DROP_COMMUTATIVITY" => Ok(Ablation::DropCommutativity),
            "DROP_POSITIVITY" => Ok(Ablation::DropPositivity),
            "DROP_CONVEXITY_GUARD" => Ok(Ablation::DropConvexityGuard),
            _ => Err(Error::InvalidArgument(format!("unknown ablation flag `{s}`"))),
        }
    }
}
