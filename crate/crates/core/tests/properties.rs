use adm_core::deconvolution::DeconvOp;
use adm_core::diagnostics::{bound_fin, defect_half_norm_sq, fit_rate};
use adm_core::filters::{gaussian_approx_error, helmholtz_power_sandwich};
use adm_core::inequalities::{check_inq_tech1, check_inq_tech2, check_inq_tech3, check_transf_est};
use adm_core::snapshot;
use adm_core::spectral::{leray_project, sobolev_norm, sobolev_norm_sq};
use adm_core::{FilterSpec, SpectralField, WaveLattice};
use proptest::prelude::*;

fn any_spec() -> impl Strategy<Value = FilterSpec> {
    prop_oneof![
        (0.01f64..4.0, 0.75f64..6.0).prop_map(|(alpha, p)| FilterSpec::Helmholtz { alpha, p }),
        (0.01f64..2.0).prop_map(|alpha| FilterSpec::Gaussian { alpha }),
        (0.01f64..4.0, 1u32..=64).prop_map(|(alpha, m)| FilterSpec::GaussianApprox { alpha, m }),
        (0.01f64..2.0, 1u32..=16).prop_map(|(mu, m)| FilterSpec::HelmholtzPower { mu, m }),
    ]
}

fn helmholtz() -> impl Strategy<Value = FilterSpec> {
    (0.01f64..4.0, prop::sample::select(vec![0.75, 1.0, 1.5, 2.0, 4.0]))
        .prop_map(|(alpha, p)| FilterSpec::Helmholtz { alpha, p })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn symbol_in_unit_interval_and_decreasing(spec in any_spec(), e in -3.0f64..3.0) {
        let k2 = 10f64.powf(e);
        let g = spec.symbol(k2);
        // Ĝ may round to 1 when (αk)^{2p} is below machine epsilon; its
        // complement carries the strict inequality
        prop_assert!(g > 0.0 && g <= 1.0);
        prop_assert!(spec.complement(k2) > 0.0);
        // strict decrease, checked on the logarithm so underflow cannot hide it
        prop_assert!(spec.ln_symbol(k2 * 1.01) < spec.ln_symbol(k2));
        prop_assert!((spec.symbol(k2) + spec.complement(k2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn deconvolution_bounds(spec in helmholtz(), order in 0u32..=32, e in -2.0f64..14.0) {
        let k2 = 10f64.powf(e);
        let op = DeconvOp::new(spec, order);
        let d = op.symbol(k2);
        let slack = 1e-12;
        prop_assert!(d >= 1.0 - slack);
        prop_assert!(d <= (order as f64 + 1.0) * (1.0 + slack));
        prop_assert!(d <= spec.inverse_symbol(k2).unwrap() * (1.0 + slack));
        prop_assert!(DeconvOp::new(spec, order + 1).symbol(k2) >= d);
        let rho = op.rho(k2).unwrap();
        prop_assert!(rho > 0.0 && rho <= 1.0);
        prop_assert!((rho - d * spec.symbol(k2)).abs() <= 1e-12);
    }

    #[test]
    fn power_filter_is_the_matching_approximant(mu in 0.01f64..2.0, m in 1u32..=64, e in -3.0f64..6.0) {
        let k2 = 10f64.powf(e);
        let alpha = mu * (24.0 * m as f64).sqrt();
        // compared in logs: exp turns the last-bit error of a log near −400
        // into a relative error of ~1e-13 in the value
        let a = FilterSpec::HelmholtzPower { mu, m }.ln_symbol(k2);
        let b = FilterSpec::GaussianApprox { alpha, m }.ln_symbol(k2);
        prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0));
    }

    #[test]
    fn approximant_gap_and_sandwich(alpha in 0.1f64..4.0, m in 1u32..=64, e in -3.0f64..6.0) {
        let k2 = 10f64.powf(e);
        prop_assert!(gaussian_approx_error(alpha, m, k2) <= 2.0 / m as f64);
        let s = helmholtz_power_sandwich(alpha / (24.0 * m as f64).sqrt(), m.min(8), k2);
        prop_assert!(s.holds(1e-12));
    }

    #[test]
    fn inequalities_hold(x in 0.0f64..1e3, a in 1.0f64..1024.0, m in 1.0f64..1024.0, n in 1u32..=1024) {
        prop_assert!(check_inq_tech2(x, a, m).unwrap().passes());
        prop_assert!(check_inq_tech3(x, a, m).unwrap().passes());
        prop_assert!(check_inq_tech1(x, a).unwrap().passes());
        prop_assert!(check_transf_est(x, n).unwrap().passes());
    }

    #[test]
    fn planted_rates_are_recovered(beta in 0.05f64..3.0, c in 0.01f64..100.0) {
        let s: Vec<(u32, f64)> = (0..10).map(|n| (n, c * (n as f64 + 1.0).powf(-beta))).collect();
        let fit = fit_rate(&s).unwrap();
        prop_assert!((fit.beta - beta).abs() < 1e-10);
        prop_assert!((fit.r2 - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_is_idempotent_and_solenoidal(seed in any::<u64>(), decay in 0.0f64..4.0) {
        let lat = WaveLattice::new(8, 3.3).unwrap();
        let u = SpectralField::random(lat, decay, 1.0, seed);
        prop_assert!(u.max_divergence_ratio() < 1e-14);
        let p = leray_project(&u);
        let diff = p.sub(&u).unwrap();
        prop_assert!(sobolev_norm(&diff, 0.0) < 1e-15);
        prop_assert!(u.validate().is_ok());
    }

    #[test]
    fn filtering_is_a_contraction(seed in any::<u64>(), spec in any_spec(), order in 0u32..=16) {
        let lat = WaveLattice::periodic(8).unwrap();
        let u = SpectralField::random(lat, 1.0, 1.0, seed);
        let ubar = spec.apply(&u);
        prop_assert!(sobolev_norm(&ubar, 1.0) <= sobolev_norm(&u, 1.0));
        // the symbol of D_N G lies in (0, 1]
        let rec = DeconvOp::new(spec, order).apply(&ubar);
        prop_assert!(sobolev_norm(&rec, 1.0) <= sobolev_norm(&u, 1.0) * (1.0 + 1e-14));
    }

    #[test]
    fn defect_bound_holds(
        seed in any::<u64>(),
        spec in helmholtz(),
        order in prop::sample::select(vec![0u32, 1, 2, 4, 8, 16, 32, 64, 128, 256]),
    ) {
        let FilterSpec::Helmholtz { alpha, p } = spec else { unreachable!() };
        let lat = WaveLattice::periodic(16).unwrap();
        let u = SpectralField::random(lat, 1.0, 1.0, seed);
        let lhs = defect_half_norm_sq(&u, &spec, order);
        let rhs = bound_fin(sobolev_norm(&u, 1.0), alpha, p, order);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn snapshot_round_trip(seed in any::<u64>(), l in 0.1f64..10.0) {
        let lat = WaveLattice::new(8, l).unwrap();
        let u = SpectralField::random(lat, 1.0, 1.0, seed);
        let back = snapshot::decode(&snapshot::encode(&u)).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn sobolev_norms_are_monotone_in_s(seed in any::<u64>()) {
        let u = SpectralField::random(WaveLattice::periodic(8).unwrap(), 1.0, 1.0, seed);
        // every nonzero mode has |k| ≥ 1 on the 2π box
        let mut prev = 0.0;
        for s in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            let v = sobolev_norm_sq(&u, s);
            prop_assert!(v >= prev);
            prev = v;
        }
    }
}
