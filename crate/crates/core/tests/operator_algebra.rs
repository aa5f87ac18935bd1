mod common;

use common::{gaussian, pt, wave_packet};
use hrtlab::phase_space::PhasePoint;
use hrtlab::signal::{cocycle, composition_phase, gaussian_ambiguity, inner, modulate, norm, tf_shift, translate, GridSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn point(bound: f64) -> impl Strategy<Value = PhasePoint> {
    (-bound..bound, -bound..bound).prop_map(|(x, w)| pt(x, w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tf_shift_is_unitary(z in point(4.0)) {
        for f in [gaussian(), wave_packet(GridSpec::standard())] {
            let shifted = tf_shift(&f, z);
            let rel = (norm(&shifted) - norm(&f)).abs() / norm(&f);
            prop_assert!(rel < 1e-10, "relative norm change {rel:e}");
            prop_assert!(shifted.is_clean());
        }
    }

    #[test]
    fn commutation_cocycle(z in point(3.0), w in point(3.0)) {
        let g = gaussian();
        let zw = tf_shift(&tf_shift(&g, w), z);
        let wz = tf_shift(&tf_shift(&g, z), w);
        let err = norm(&zw.sub(&wz.scale(cocycle(z, w))).unwrap());
        prop_assert!(err < 1e-8, "{err:e}");
    }

    #[test]
    fn composition_law(z in point(3.0), w in point(3.0)) {
        let g = wave_packet(GridSpec::standard());
        let zw = tf_shift(&tf_shift(&g, w), z);
        let joint = tf_shift(&g, z + w).scale(composition_phase(z, w));
        let err = norm(&zw.sub(&joint).unwrap());
        prop_assert!(err < 1e-8, "{err:e}");
        // The cocycle is the ratio of the two composition phases.
        let ratio = composition_phase(z, w) / composition_phase(w, z);
        prop_assert!((ratio - cocycle(z, w)).norm() < 1e-12);
    }

    #[test]
    fn inner_products_are_preserved(z in point(3.0), w in point(3.0)) {
        let f = gaussian();
        let h = wave_packet(GridSpec::standard());
        let before = inner(&tf_shift(&f, w), &h).unwrap();
        let after = inner(&tf_shift(&tf_shift(&f, w), z), &tf_shift(&h, z)).unwrap();
        prop_assert!((before - after).norm() < 1e-10);
    }
}

#[test]
fn half_period_cocycle_is_minus_one() {
    let (z, w) = (pt(1.0, 0.0), pt(0.0, 0.5));
    assert!((cocycle(z, w) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    let g = gaussian();
    let zw = tf_shift(&tf_shift(&g, w), z);
    let wz = tf_shift(&tf_shift(&g, z), w);
    assert!(norm(&zw.sub(&wz.scale(Complex64::new(-1.0, 0.0))).unwrap()) < 1e-10);
}

#[test]
fn operator_order_is_modulation_after_translation() {
    let g = wave_packet(GridSpec::standard());
    let z = pt(0.75, -1.25);
    let direct = modulate(&translate(&g, z.x), z.omega);
    assert!(norm(&tf_shift(&g, z).sub(&direct).unwrap()) < 1e-14);
}

#[test]
fn strong_continuity_is_monotone() {
    let g = gaussian();
    let z = pt(1.2, -0.8);
    let dists: Vec<f64> = (1..=10)
        .map(|k| norm(&tf_shift(&g, (1.0 / k as f64) * z).sub(&g).unwrap()))
        .collect();
    for w in dists.windows(2) {
        assert!(w[1] < w[0], "{dists:?}");
    }
    for (k, d) in dists.iter().enumerate() {
        let zk = (1.0 / (k + 1) as f64) * z;
        let closed = (2.0 - 2.0 * gaussian_ambiguity(zk, PhasePoint::ORIGIN).re).sqrt();
        assert!((d - closed).abs() < 1e-8, "k={} {d} vs {closed}", k + 1);
    }
}

#[test]
fn whole_sample_translation_is_exact() {
    let grid = GridSpec::standard();
    let g = wave_packet(grid);
    let moved = translate(&g, 3.0 * grid.step());
    let n = grid.n_samples();
    for k in 0..n {
        let want = g.samples()[(k + n - 3) % n];
        assert!((moved.samples()[k] - want).norm() < 1e-13);
    }
}
