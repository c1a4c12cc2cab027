use std::fmt::Write as _;

use serde::Serialize;

use super::{Ablation, CampaignConfig, TheoremId};
use crate::chains::{
    ag_convexity_witness, am_gm_loewner_check, det_ag_concavity_check, det_ag_indefinite_check,
    dragomir_operator_chain, kittaneh_check, kittaneh_nonnormal_check, norm_power_check,
    operator_ag_midpoint_order_chain, operator_gg_hh_order_chain, operator_norm_gg_chain, phi_operator_witness,
    scalar_hh_chain, scalar_means_chain, trace_chain, uin_chain, ChainOptions, Curve, DragomirFn, GeneralPair,
    PairAlgebra, Report, SandwichCurve, ScalarKind, TraceVariant, UinVariant,
};
use crate::error::Result;
use crate::functions::{is_ag_convex, is_gg_convex, FunctionSpec, DEFAULT_CONVEXITY_TOL, DEFAULT_GRID_N};
use crate::linalg::{eigh, Matrix, SymMatrix, DEFAULT_EIGH_TOL};
use crate::sampler::{
    random_commuting_pair, random_general, random_nonnormal, random_spd, random_symmetric_indefinite, RandomStream,
};

const SPD_LO: f64 = 0.1;
const SPD_HI: f64 = 10.0;
const NONNORMAL_COND: f64 = 10.0;

/// `Collapse` draws the degenerate instance of a trial: `B = A` (and
/// `A = B = I` for the sandwich ids), or a vanishing interval for the
/// scalar chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialMode {
    Normal,
    Collapse,
}

/// Convexity guard of an id on its sampling window, `None` when the id
/// has no function hypothesis.
pub fn guard_holds(id: TheoremId, cfg: &CampaignConfig) -> Result<Option<bool>> {
    let f = &cfg.function;
    let ag = |positive| {
        let (lo, hi) = f.sampling_window(positive);
        is_ag_convex(f, lo, hi, DEFAULT_GRID_N, DEFAULT_CONVEXITY_TOL).map(|v| Some(v.holds))
    };
    let gg = || {
        let (lo, hi) = f.sampling_window(true);
        is_gg_convex(f, lo, hi, DEFAULT_GRID_N, DEFAULT_CONVEXITY_TOL).map(|v| Some(v.holds))
    };
    match id {
        TheoremId::ScalarAg => ag(false),
        TheoremId::OpAgMidpoint => ag(true),
        TheoremId::ScalarGg | TheoremId::OpGgHh | TheoremId::OpNormGg | TheoremId::PhiOperator => gg(),
        _ => Ok(None),
    }
}

fn draw_interval(r: &mut RandomStream, lo: f64, hi: f64, mode: TrialMode) -> (f64, f64) {
    match mode {
        TrialMode::Normal => {
            let (x, y) = (r.uniform_in(lo, hi), r.uniform_in(lo, hi));
            if x == y {
                (x, x + 1e-6 * x.abs().max(1.0))
            } else {
                (x.min(y), x.max(y))
            }
        }
        TrialMode::Collapse => {
            let x = r.uniform_in(lo, hi);
            (x, x + 1e-10 * x.abs().max(1.0))
        }
    }
}

fn spd_pair(r: &mut RandomStream, n: usize, mode: TrialMode) -> Result<(SymMatrix, SymMatrix)> {
    let a = random_spd(r, n, SPD_LO, SPD_HI)?;
    let b = match mode {
        TrialMode::Normal => random_spd(r, n, SPD_LO, SPD_HI)?,
        TrialMode::Collapse => a.clone(),
    };
    Ok((a, b))
}

fn sandwich_inputs(r: &mut RandomStream, n: usize, mode: TrialMode) -> Result<(SymMatrix, SymMatrix, Matrix)> {
    let (a, b) = match mode {
        TrialMode::Normal => spd_pair(r, n, mode)?,
        TrialMode::Collapse => (SymMatrix::identity(n), SymMatrix::identity(n)),
    };
    Ok((a, b, random_general(r, n, n, 1.0)))
}

fn uin_variant(id: TheoremId, nu: f64) -> UinVariant {
    match id {
        TheoremId::UinSymmetric => UinVariant::Symmetric(nu),
        TheoremId::UinEndLeft => UinVariant::EndLeft(if nu <= 0.5 { nu } else { 1.0 - nu }),
        TheoremId::UinEndRight => UinVariant::EndRight(if nu >= 0.5 { nu } else { 1.0 - nu }),
        TheoremId::UinFull => UinVariant::Full,
        _ => UinVariant::Diagonal,
    }
}

fn pair_report<P: PairAlgebra>(
    id: TheoremId,
    p: &P,
    cfg: &CampaignConfig,
    opts: &ChainOptions,
) -> Result<Report> {
    let f = &cfg.function;
    let spec = cfg.norm_for(id);
    Ok(match id {
        TheoremId::OpGgHh => Report::Order(operator_gg_hh_order_chain(f, p, opts)?),
        TheoremId::OpAgMidpoint => Report::Order(operator_ag_midpoint_order_chain(f, p, opts)?),
        TheoremId::OpNormGg => Report::Chain(operator_norm_gg_chain(f, p, spec, opts)?),
        TheoremId::ExpNorm => Report::Chain(operator_norm_gg_chain(&FunctionSpec::exp(1.0)?, p, spec, opts)?),
        TheoremId::TraceSqrt => Report::Chain(trace_chain(TraceVariant::Sqrt, p, opts)?),
        TheoremId::TraceSquared => Report::Chain(trace_chain(TraceVariant::Squared, p, opts)?),
        _ => Report::Witness(phi_operator_witness(f, p, spec, cfg.witness_grid_n, cfg.rtol)?),
    })
}

/// One trial of `id` in dimension `dim`, drawn from the stream seeded with
/// `seed`, evaluated with `opts`.
pub fn trial_report(
    id: TheoremId,
    cfg: &CampaignConfig,
    dim: usize,
    seed: u64,
    mode: TrialMode,
    opts: &ChainOptions,
) -> Result<Report> {
    let mut r = RandomStream::new(seed);
    let r = &mut r;
    let f = &cfg.function;
    let n = dim;
    Ok(match id {
        TheoremId::ScalarAg | TheoremId::ScalarGg => {
            let gg = id == TheoremId::ScalarGg;
            let (lo, hi) = f.sampling_window(gg);
            let (a, b) = draw_interval(r, lo, hi, mode);
            let kind = if gg { ScalarKind::Gg } else { ScalarKind::Ag };
            Report::Chain(scalar_hh_chain(kind, f, a, b, opts)?)
        }
        TheoremId::ScalarMeans => {
            let a = r.uniform_in(SPD_LO, SPD_HI);
            let b = match mode {
                TrialMode::Normal => r.uniform_in(SPD_LO, SPD_HI),
                TrialMode::Collapse => a,
            };
            Report::Chain(scalar_means_chain(a, b, opts)?)
        }
        TheoremId::Dragomir => {
            let g = DragomirFn::from_spec(f).unwrap_or(if seed.is_multiple_of(2) {
                DragomirFn::Square
            } else {
                DragomirFn::Inverse
            });
            let (a, b) = spd_pair(r, n, mode)?;
            Report::Order(dragomir_operator_chain(g, &a, &b, opts)?)
        }
        _ if id.uses_commuting_pair() => {
            let (lo, hi) = f.sampling_window(true);
            if cfg.has(Ablation::DropCommutativity) {
                let a = random_spd(r, n, lo, hi)?;
                let b = match mode {
                    TrialMode::Normal => random_spd(r, n, lo, hi)?,
                    TrialMode::Collapse => a.clone(),
                };
                pair_report(id, &GeneralPair::new(a, b)?, cfg, opts)?
            } else {
                let p = random_commuting_pair(r, n, lo, hi)?;
                let p = match mode {
                    TrialMode::Normal => p,
                    TrialMode::Collapse => p.collapsed(),
                };
                pair_report(id, &p, cfg, opts)?
            }
        }
        TheoremId::DetAg => {
            let alpha = r.uniform();
            if cfg.has(Ablation::DropPositivity) {
                let a = random_symmetric_indefinite(r, n, SPD_LO, SPD_HI)?;
                let b = match mode {
                    TrialMode::Normal => random_symmetric_indefinite(r, n, SPD_LO, SPD_HI)?,
                    TrialMode::Collapse => a.clone(),
                };
                Report::Inequality(det_ag_indefinite_check(&a, &b, alpha, opts)?)
            } else {
                let (a, b) = spd_pair(r, n, mode)?;
                Report::Inequality(det_ag_concavity_check(&a, &b, alpha, opts)?)
            }
        }
        TheoremId::AmGmLoewner => {
            let nu = r.uniform();
            let (a, b) = spd_pair(r, n, mode)?;
            Report::Order(am_gm_loewner_check(&a, &b, nu, opts)?)
        }
        TheoremId::NormPower => Report::Inequality(norm_power_check(&random_spd(r, n, SPD_LO, SPD_HI)?, opts)?),
        TheoremId::Kittaneh => {
            let spec = cfg.norm_for(id);
            if cfg.has(Ablation::DropPositivity) && mode == TrialMode::Normal {
                let a = random_nonnormal(r, n, SPD_LO, SPD_HI, NONNORMAL_COND)?;
                let b = random_nonnormal(r, n, SPD_LO, SPD_HI, NONNORMAL_COND)?;
                let x = random_general(r, n, n, 1.0);
                Report::Inequality(kittaneh_nonnormal_check(&a, &b, &x, cfg.nu, spec, opts)?)
            } else {
                let (a, b, x) = sandwich_inputs(r, n, mode)?;
                Report::Inequality(kittaneh_check(&a, &b, &x, cfg.nu, spec, opts)?)
            }
        }
        TheoremId::PhiSandwich | TheoremId::PhiDiagonal => {
            let (a, b, x) = sandwich_inputs(r, n, mode)?;
            let c = SandwichCurve::new(&a, &b, &x)?;
            let curve = if id == TheoremId::PhiSandwich {
                Curve::PhiSandwich(&c)
            } else {
                Curve::PhiDiagonal(&c)
            };
            Report::Witness(ag_convexity_witness(curve, cfg.norm_for(id), cfg.witness_grid_n, cfg.rtol)?)
        }
        _ => {
            let (a, b, x) = sandwich_inputs(r, n, mode)?;
            Report::Chain(uin_chain(uin_variant(id, cfg.nu), &a, &b, &x, cfg.norm_for(id), opts)?)
        }
    })
}

/// [`trial_report`] with the campaign's own options.
pub fn run_trial(id: TheoremId, cfg: &CampaignConfig, dim: usize, seed: u64, mode: TrialMode) -> Result<Report> {
    trial_report(id, cfg, dim, seed, mode, &cfg.chain_options())
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoOutput {
    pub text: String,
    pub report: Report,
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Re-runs one trial and renders every named term with 12 significant
/// digits together with the margins.
pub fn demo_trial(id: TheoremId, cfg: &CampaignConfig, seed: u64, dim: usize) -> Result<DemoOutput> {
    let report = run_trial(id, cfg, dim, seed, TrialMode::Normal)?;
    let mut t = String::new();
    let _ = writeln!(t, "theorem {id}  seed {seed}  dim {dim}");
    match &report {
        Report::Chain(c) => {
            for (i, (name, v)) in c.term_names.iter().zip(&c.term_values).enumerate() {
                let _ = writeln!(t, "  T{}  {:>19}  {name}", i + 1, sig12(*v));
            }
            let margins: Vec<String> = c.margins.iter().map(|m| sig12(*m)).collect();
            let _ = writeln!(t, "  margins    [{}]", margins.join(", "));
            let _ = writeln!(t, "  tolerance  {}", sig12(c.tolerance));
            let _ = writeln!(
                t,
                "  pass {}  quad_reliable {}  hypothesis_supported {}",
                c.pass, c.quad_reliable, c.hypothesis_supported
            );
        }
        Report::Order(o) => {
            for (i, (name, m)) in o.term_names.iter().zip(&o.terms).enumerate() {
                let eig = eigh(&SymMatrix::symmetrize(m.clone()), DEFAULT_EIGH_TOL)?;
                let vals: Vec<String> = eig.lambda.iter().map(|v| sig12(*v)).collect();
                let _ = writeln!(t, "  T{}  {name}\n      eigenvalues [{}]", i + 1, vals.join(", "));
            }
            for c in &o.comparisons {
                let _ = writeln!(
                    t,
                    "  {} vs {}: {:?}  min_gap {}",
                    c.lhs,
                    c.rhs,
                    c.ordering,
                    sig12(c.min_gap)
                );
            }
            let _ = writeln!(
                t,
                "  pass {}  quad_reliable {}  hypothesis_supported {}",
                o.pass, o.quad_reliable, o.hypothesis_supported
            );
        }
        Report::Inequality(q) => {
            for e in &q.entries {
                let _ = writeln!(
                    t,
                    "  {}\n      lhs {}  rhs {}  margin {}",
                    e.name,
                    sig12(e.lhs),
                    sig12(e.rhs),
                    sig12(e.margin)
                );
            }
            let _ = writeln!(t, "  pass {}", q.pass);
        }
        Report::Witness(w) => {
            let samples: Vec<String> = w.samples.iter().map(|v| sig12(*v)).collect();
            let _ = writeln!(t, "  curve at t = 0, 1/4, 1/2, 3/4, 1: [{}]", samples.join(", "));
            let (x, y, l) = w.verdict.worst_triple;
            let _ = writeln!(
                t,
                "  min slack {} at x {} y {} lambda {}",
                sig12(w.verdict.slack),
                sig12(x),
                sig12(y),
                sig12(l)
            );
            let _ = writeln!(t, "  pass {}  hypothesis_supported {}", w.pass, w.hypothesis_supported);
        }
    }
    Ok(DemoOutput { text: t, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_runs_in_both_modes() {
        let cfg = CampaignConfig::default();
        for id in TheoremId::ALL {
            for mode in [TrialMode::Normal, TrialMode::Collapse] {
                let r = run_trial(id, &cfg, 3, 11, mode).unwrap();
                assert!(r.pass(), "{id} {mode:?}");
            }
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let cfg = CampaignConfig::default();
        let a = serde_json::to_string(&run_trial(TheoremId::UinFull, &cfg, 2, 99, TrialMode::Normal).unwrap()).unwrap();
        let b = serde_json::to_string(&run_trial(TheoremId::UinFull, &cfg, 2, 99, TrialMode::Normal).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn demo_prints_terms() {
        let cfg = CampaignConfig::default();
        let d = demo_trial(TheoremId::ScalarAg, &cfg, 5, 2).unwrap();
        assert!(d.text.contains("T5"));
        assert!(d.text.contains("margins"));
    }

    #[test]
    fn guards() {
        let mut cfg = CampaignConfig::default();
        assert_eq!(guard_holds(TheoremId::ScalarAg, &cfg).unwrap(), Some(true));
        assert_eq!(guard_holds(TheoremId::Kittaneh, &cfg).unwrap(), None);
        cfg.function = FunctionSpec::identity();
        assert_eq!(guard_holds(TheoremId::ScalarAg, &cfg).unwrap(), Some(false));
    }
}
