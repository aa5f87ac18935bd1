mod common;

use common::{gaussian, pt};
use hrtlab::phase_space::PhasePoint;
use hrtlab::signal::{gaussian_ambiguity, inner, tf_shift};
use proptest::prelude::*;

fn disk_point(radius: f64) -> impl Strategy<Value = PhasePoint> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| pt(r * t.cos(), r * t.sin()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discrete_matches_closed_form(z in disk_point(3.0), w in disk_point(3.0)) {
        let g = gaussian();
        let got = inner(&tf_shift(&g, z), &tf_shift(&g, w)).unwrap();
        let want = gaussian_ambiguity(z, w);
        prop_assert!((got - want).norm() < 1e-6, "z={z:?} w={w:?} got={got} want={want}");
        let modulus = (-std::f64::consts::PI * z.distance(w).powi(2) / 2.0).exp();
        prop_assert!((got.norm() - modulus).abs() < 1e-6);
    }
}

#[test]
fn grid_of_pairs_within_tolerance() {
    let g = gaussian();
    let vals = [-3.0, -1.7, -0.4, 0.0, 0.9, 2.1, 3.0];
    let mut worst: f64 = 0.0;
    for &x in &vals {
        for &om in &vals {
            for &y in &vals {
                for &eta in &vals {
                    let (z, w) = (pt(x, om), pt(y, eta));
                    if z.norm() > 3.0 || w.norm() > 3.0 {
                        continue;
                    }
                    let got = inner(&tf_shift(&g, z), &tf_shift(&g, w)).unwrap();
                    worst = worst.max((got - gaussian_ambiguity(z, w)).norm());
                }
            }
        }
    }
    // measured 6.7e-16 on the standard grid
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn conjugate_symmetry() {
    let (z, w) = (pt(0.3, -1.1), pt(-2.0, 0.6));
    let a = gaussian_ambiguity(z, w);
    let b = gaussian_ambiguity(w, z);
    assert!((a - b.conj()).norm() < 1e-15);
    assert!((gaussian_ambiguity(z, z).re - 1.0).abs() < 1e-15);
}
