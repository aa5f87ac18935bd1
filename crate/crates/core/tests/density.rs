mod common;

use common::{config, covol4, gaussian, pt, rational4};
use hrtlab::density::{
    completeness_probe, cyclic_membership_residual, deep_hole_probe, density_stats, orbit_fit, probe_rows_csv,
    residual_curve, sample_targets, semigroup_witness,
};
use hrtlab::phase_space::LatticeBasis;
use hrtlab::signal::GridSpec;

#[test]
fn witness_fixture() {
    let c = covol4();
    let w = semigroup_witness(&c, pt(1.3, 2.7), 0.05, 100_000).unwrap();
    assert_eq!((w.n, w.m1, w.m2), (342, -483, -591));
    assert!((w.error - 0.0317).abs() < 1e-3, "{}", w.error);
    assert!((w.recompute_error(&c) - w.error).abs() < 1e-12);
}

#[test]
fn witnesses_are_genuine() {
    let c = covol4();
    let stats = density_stats(&c, 0.05, 100_000, 50, 3);
    assert_eq!(stats.witnesses.len(), 50);
    assert_eq!(stats.successes, stats.witnesses.iter().flatten().count());
    for w in stats.witnesses.iter().flatten() {
        assert!(w.error < 0.05);
        assert!(w.n <= 100_000);
        assert!((w.recompute_error(&c) - w.error).abs() < 1e-9);
    }
}

#[test]
fn targets_are_seeded_and_in_fundamental_domain() {
    let basis = LatticeBasis::square(2.0).unwrap();
    let a = sample_targets(&basis, 100, 9);
    assert_eq!(a, sample_targets(&basis, 100, 9));
    assert_ne!(a, sample_targets(&basis, 100, 10));
    for z in a {
        let (u, v) = basis.coordinates(z);
        assert!((-1e-12..1.0 + 1e-12).contains(&u) && (-1e-12..1.0 + 1e-12).contains(&v), "{u} {v}");
    }
}

#[test]
fn rates_are_deterministic() {
    let a = density_stats(&covol4(), 1e-3, 100_000, 200, 42);
    let b = density_stats(&covol4(), 1e-3, 100_000, 200, 42);
    assert_eq!(a, b);
    // frozen: 0.095
    assert!((a.rate - 0.095).abs() < 1e-12, "{}", a.rate);
}

#[test]
fn rational_semigroup_is_discrete() {
    let stats = density_stats(&rational4(), 1e-3, 100_000, 200, 42);
    assert_eq!(stats.rate, 0.0);
    // the orbit of ν is finite mod L0, so n_max beyond N changes nothing
    let small = density_stats(&rational4(), 0.05, 4, 200, 42);
    let big = density_stats(&rational4(), 0.05, 10_000, 200, 42);
    assert_eq!(small.successes, big.successes);
}

#[test]
fn rate_grows_with_eps() {
    let c = covol4();
    let rates: Vec<f64> = [1e-3, 1e-2, 0.05].iter().map(|&e| density_stats(&c, e, 100_000, 100, 5).rate).collect();
    assert!(rates.windows(2).all(|w| w[0] <= w[1]), "{rates:?}");
}

#[test]
fn probe_fixtures() {
    let rows = completeness_probe(&[0.8, 1.2], 4, GridSpec::standard()).unwrap();
    // frozen at R = 4: 2.9e-7 and 0.71399122070
    assert!(rows[0].residual < 1e-6, "{}", rows[0].residual);
    assert!((rows[1].residual - 0.713_991_220_7).abs() < 1e-6, "{}", rows[1].residual);
    assert!((rows[0].covol - 0.64).abs() < 1e-12);
    let csv = probe_rows_csv(&rows);
    assert!(csv.starts_with("alpha,covol,R,residual\n"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn residual_curves_are_monotone() {
    let g = gaussian();
    for alpha in [0.8, 1.0, 1.2] {
        let basis = LatticeBasis::square(alpha).unwrap();
        let probe = deep_hole_probe(&g, alpha).unwrap();
        let curve = residual_curve(&g, &basis, &probe, "deep hole", &[1, 2, 3, 4]).unwrap();
        assert!(curve.is_monotone(1e-9), "{curve:?}");
    }
}

#[test]
fn membership_residuals() {
    let g = gaussian();
    // frozen: 0.97334 at covol 4, 6.55e-9 at covol 1/4, 2.5e-11 for ν = a + b
    let large = cyclic_membership_residual(&g, &covol4(), 4).unwrap();
    assert!((large - 0.97334).abs() < 1e-4, "{large}");
    let small = cyclic_membership_residual(&g, &config(0.5, "sqrt(2)", "sqrt(3)"), 6).unwrap();
    assert!(small < 1e-7, "{small:e}");
    let lattice = cyclic_membership_residual(&g, &config(2.0, "1", "1"), 2).unwrap();
    assert!(lattice < 1e-9, "{lattice:e}");
}

#[test]
fn orbit_fit_reports_regularization() {
    let g = gaussian();
    let basis = LatticeBasis::square(1.0).unwrap();
    let fit = orbit_fit(&g, &basis, &deep_hole_probe(&g, 1.0).unwrap(), 2).unwrap();
    assert_eq!(fit.family_size, 25);
    assert!((fit.regularization - 25.0 * 1e-12).abs() < 1e-20);
}

#[test]
fn wrapped_family_is_an_error() {
    let g = gaussian();
    let basis = LatticeBasis::square(4.0).unwrap();
    let probe = deep_hole_probe(&g, 4.0).unwrap();
    assert!(orbit_fit(&g, &basis, &probe, 4).is_err());
}
