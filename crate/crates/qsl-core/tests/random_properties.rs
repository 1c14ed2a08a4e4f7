//! Randomized invariants with shrinking: structural identities the unit
//! tests pin at anchors must survive arbitrary inputs.

use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use qsl_core::bounds::{
    beta, beta_inverse, forbidden_floor, qsl_time, t_zero, AlphaTable, QslQuery, Regime,
};
use qsl_core::composite::ratio_lower_bound;
use qsl_core::dynamics::{survival_probability, two_level_crossing_time};
use qsl_core::states::{EnergySpectrum, PureState};

fn table() -> &'static AlphaTable {
    static TABLE: OnceLock<AlphaTable> = OnceLock::new();
    TABLE.get_or_init(|| AlphaTable::build().expect("table builds"))
}

fn beta_sq(eps: f64) -> f64 {
    let b = beta(eps).unwrap();
    b * b
}

/// Spacings and amplitude pairs for a small random pure state.
fn state_strategy() -> impl Strategy<Value = PureState> {
    (
        prop::collection::vec(0.1..2.0f64, 1..6),
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7),
    )
        .prop_filter_map("normalizable amplitudes", |(gaps, raw)| {
            let mut levels = vec![0.0];
            for gap in &gaps {
                levels.push(levels.last().unwrap() + gap);
            }
            let spectrum = EnergySpectrum::new(levels).ok()?;
            let amps: Vec<Complex64> = raw[..spectrum.len()]
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect();
            PureState::new_normalized(spectrum, amps).ok()
        })
}

proptest! {
    #[test]
    fn beta_round_trips(eps in 0.0..1.0f64) {
        let there = beta(eps).unwrap();
        prop_assert!((beta_inverse(there).unwrap() - eps).abs() <= 1e-9);
    }

    #[test]
    fn beta_is_decreasing(a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(beta(lo).unwrap() >= beta(hi).unwrap());
    }

    #[test]
    fn beta_sq_is_subadditive(e1 in 0.0..=1.0f64, e2 in 0.0..=1.0f64) {
        prop_assert!(beta_sq(e1) + beta_sq(e2) - beta_sq(e1 * e2) >= -1e-9);
    }

    #[test]
    fn beta_sq_is_convex_in_the_root(
        e1 in 0.0..=1.0f64,
        e2 in 0.0..=1.0f64,
        phi in 0.0..std::f64::consts::PI,
    ) {
        let (w1, w2) = (phi.cos() * phi.cos(), phi.sin() * phi.sin());
        let mix = e1 * w1 + e2 * w2;
        let gap = beta_sq(e1 * e1) * w1 + beta_sq(e2 * e2) * w2 - beta_sq(mix * mix);
        prop_assert!(gap >= -1e-9);
    }

    #[test]
    fn tabulated_alpha_is_subadditive(e1 in 0.0..=1.0f64, e2 in 0.0..=1.0f64) {
        let t = table();
        let gap = t.value(e1).unwrap() + t.value(e2).unwrap() - t.value(e1 * e2).unwrap();
        prop_assert!(gap >= -1e-4);
    }

    #[test]
    fn bound_time_is_the_larger_branch(
        eps in 0.0..0.999f64,
        e in 0.01..5.0f64,
        de in 0.01..5.0f64,
    ) {
        let bound = qsl_time(&QslQuery { epsilon: eps, mean_energy: e, spread: de }).unwrap();
        let energy_branch = bound.alpha_value * std::f64::consts::FRAC_PI_2 / e;
        let spread_branch = bound.beta_value * std::f64::consts::FRAC_PI_2 / de;
        prop_assert_eq!(bound.time, energy_branch.max(spread_branch));
        match bound.regime {
            Regime::MargolusLevitin => prop_assert!(de * bound.alpha_value >= e * bound.beta_value),
            Regime::Heisenberg => prop_assert!(de * bound.alpha_value <= e * bound.beta_value),
        }
    }

    #[test]
    fn slowdown_ratio_never_drops_below_one(eps in 0.0..0.999f64, m in 2..8usize) {
        prop_assert!(ratio_lower_bound(eps, m).unwrap() >= 1.0);
    }

    #[test]
    fn forbidden_floor_never_rises(
        e in 0.05..3.0f64,
        de in 0.05..3.0f64,
        a in 0.0..1.0f64,
        b in 0.0..1.0f64,
    ) {
        let horizon = t_zero(e, de);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let early = forbidden_floor(horizon * lo, e, de, table()).unwrap();
        let late = forbidden_floor(horizon * hi, e, de, table()).unwrap();
        prop_assert!(early >= late - 1e-9);
    }

    #[test]
    fn survival_stays_in_the_unit_interval(state in state_strategy(), t in 0.0..20.0f64) {
        let p = survival_probability(&state, t);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((survival_probability(&state, 0.0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_level_crossings_come_later_for_deeper_targets(
        xi in 0.05..0.95f64,
        eps in 0.0..0.999f64,
        shallower in 0.001..0.999f64,
    ) {
        // Crossing a higher survival level can never take longer.
        let eps_hi = eps + (1.0 - eps) * shallower;
        let deep = two_level_crossing_time(xi, eps);
        let shallow = two_level_crossing_time(xi, eps_hi);
        match (deep, shallow) {
            (Ok(t_deep), Ok(t_shallow)) => prop_assert!(t_deep >= t_shallow),
            // If the deeper level is unreachable the shallower one may
            // still be reachable, never the other way around.
            (Ok(_), Err(_)) => prop_assert!(false, "shallow unreachable but deep reachable"),
            _ => {}
        }
    }
}
