use hhchain::campaign::{trial_report, CampaignConfig, TheoremId, TrialMode};
use hhchain::chains::{scalar_hh_chain, trace_chain, uin_chain, ChainOptions, ScalarKind, TraceVariant, UinVariant};
use hhchain::functions::{scalar_mean_chain, FunctionSpec};
use hhchain::linalg::{eigh, loewner_compare, weighted_geometric_mean, CommutingPair, SymMatrix, DEFAULT_EIGH_TOL};
use hhchain::norms::{norm, trace_property_check, NormSpec};
use hhchain::sampler::{random_general, random_orthogonal, random_spd, RandomStream};
use proptest::prelude::*;

fn norm_spec() -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        (1.0f64..6.0).prop_map(NormSpec::Schatten),
        Just(NormSpec::Schatten(f64::INFINITY)),
        Just(NormSpec::OperatorNorm),
        Just(NormSpec::TraceNorm),
        (1usize..4).prop_map(NormSpec::KyFan),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigh_reconstructs(seed in any::<u64>(), n in 1usize..10) {
        let mut r = RandomStream::new(seed);
        let s = SymMatrix::symmetrize(random_general(&mut r, n, n, 3.0));
        let d = eigh(&s, DEFAULT_EIGH_TOL).unwrap();
        let res = (&*d.reconstruct() - &*s).frobenius_norm();
        prop_assert!(res <= 1e-10 * s.frobenius_norm().max(1.0));
        prop_assert!(d.lambda.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn norms_are_unitarily_invariant(seed in any::<u64>(), m in 1usize..7, n in 1usize..7, spec in norm_spec()) {
        let mut r = RandomStream::new(seed);
        let x = random_general(&mut r, m, n, 1.0);
        let y = &(&random_orthogonal(&mut r, m) * &x) * &random_orthogonal(&mut r, n);
        let (a, b) = (norm(&x, spec).unwrap(), norm(&y, spec).unwrap());
        prop_assert!((a - b).abs() <= 1e-10 * a);
    }

    #[test]
    fn trace_bound_holds(seed in any::<u64>(), n in 1usize..7) {
        let mut r = RandomStream::new(seed);
        let a = random_general(&mut r, n, n, 1.0);
        let t = random_general(&mut r, n, n, 1.0);
        let rep = trace_property_check(&a, &t).unwrap();
        prop_assert!(rep.cyclicity_residual <= 1e-12 * (1.0 + rep.trace_at.abs()));
        prop_assert!(rep.bound_residual <= 1e-12);
    }

    #[test]
    fn geometric_mean_sits_below_arithmetic(seed in any::<u64>(), n in 1usize..6, nu in 0.0f64..=1.0) {
        let mut r = RandomStream::new(seed);
        let a = random_spd(&mut r, n, 0.1, 10.0).unwrap();
        let b = random_spd(&mut r, n, 0.1, 10.0).unwrap();
        let g = weighted_geometric_mean(&a, &b, nu).unwrap();
        let m = a.lincomb(1.0 - nu, &b, nu).unwrap();
        prop_assert!(loewner_compare(&g, &m, 1e-8).unwrap().is_less_equal());
    }

    #[test]
    fn scalar_means_are_ordered(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        prop_assert!(scalar_mean_chain(a, b).unwrap().is_nondecreasing(1e-12));
    }

    #[test]
    fn scalar_chains_hold(a in -3.0f64..3.0, w in 1e-6f64..4.0, scale in 0.1f64..2.0) {
        let f = FunctionSpec::exp(scale).unwrap();
        let c = scalar_hh_chain(ScalarKind::Ag, &f, a, a + w, &ChainOptions::default()).unwrap();
        prop_assert!(c.pass);
        let lo = 0.1 + (a + 3.0);
        let c = scalar_hh_chain(ScalarKind::Gg, &f, lo, lo + w, &ChainOptions::default()).unwrap();
        prop_assert!(c.pass);
    }

    #[test]
    fn trace_chains_hold(seed in any::<u64>(), n in 1usize..6) {
        let mut r = RandomStream::new(seed);
        let a: Vec<f64> = (0..n).map(|_| r.uniform_in(0.1, 10.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| r.uniform_in(0.1, 10.0)).collect();
        let p = CommutingPair::diagonal(a, b).unwrap();
        for v in [TraceVariant::Sqrt, TraceVariant::Squared] {
            prop_assert!(trace_chain(v, &p, &ChainOptions::default()).unwrap().pass);
        }
    }

    #[test]
    fn uin_chains_hold_for_every_norm(seed in any::<u64>(), n in 1usize..6, nu in 0.05f64..0.95, spec in norm_spec()) {
        let mut r = RandomStream::new(seed);
        let a = random_spd(&mut r, n, 0.1, 10.0).unwrap();
        let b = random_spd(&mut r, n, 0.1, 10.0).unwrap();
        let x = random_general(&mut r, n, n, 1.0);
        let opts = ChainOptions::default();
        let mut variants = vec![UinVariant::Full, UinVariant::Diagonal, UinVariant::EndLeft(nu / 2.0), UinVariant::EndRight(0.5 + nu / 2.0)];
        if (nu - 0.5).abs() > 1e-3 {
            variants.push(UinVariant::Symmetric(nu));
        }
        for v in variants {
            let c = uin_chain(v, &a, &b, &x, spec, &opts).unwrap();
            prop_assert!(c.pass, "{:?} {:?}", v, c.margins);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn every_id_passes_reproducibly(seed in any::<u64>(), dim in 1usize..5) {
        let cfg = CampaignConfig::default();
        let opts = cfg.chain_options();
        for id in TheoremId::ALL {
            let r = trial_report(id, &cfg, dim, seed, TrialMode::Normal, &opts).unwrap();
            prop_assert!(r.pass(), "{} seed {} dim {}", id, seed, dim);
            let again = trial_report(id, &cfg, dim, seed, TrialMode::Normal, &opts).unwrap();
            prop_assert_eq!(&r, &again);
        }
    }
}
