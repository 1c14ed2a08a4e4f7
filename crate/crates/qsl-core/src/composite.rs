//! Multi-subsystem analysis: the product survival law, the homogeneous
//! slowdown ratio R, speedup verification for the entangled two-branch
//! family, and saturation diagnostics for separable mixtures.

use alloc::vec::Vec;

use crate::bounds::{alpha_upper, beta, qsl_time, touch_epsilon, QslQuery, Regime};
use crate::dynamics::{survival_probability, two_level_crossing_time};
use crate::error::Error;
use crate::states::{CompositeState, TwoLevelState};

/// Survival probability of a separable composite as the product of factor
/// survivals.
pub fn product_survival(state: &CompositeState, t: f64) -> Result<f64, Error> {
    let factors = state.factors().ok_or(Error::NotSeparable)?;
    Ok(factors.iter().map(|f| survival_probability(f, t)).product())
}

/// `eps^(1/m)` in log space, exact at both endpoints.
fn eps_root(eps: f64, m: usize) -> f64 {
    if eps == 0.0 {
        0.0
    } else {
        libm::exp(libm::log(eps) / m as f64)
    }
}

/// Guaranteed slowdown of a homogeneous separable state against the joint
/// bound: `min(m alpha(eps^(1/m)) / alpha(eps), sqrt(m) beta(eps^(1/m)) /
/// beta(eps))`.
///
/// Always at least 1; exactly `sqrt(m)` at `eps = 0`. Levels within 1e-12
/// of 1 return 1 directly (no rotation, no slowdown to measure).
pub fn ratio_lower_bound(eps: f64, m: usize) -> Result<f64, Error> {
    if m < 2 {
        return Err(Error::OutOfRange(alloc::format!("subsystem count {m}")));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::OutOfRange(alloc::format!(
            "eps {eps} outside [0, 1)"
        )));
    }
    if eps >= 1.0 - 1e-12 {
        return Ok(1.0);
    }
    if eps == 0.0 {
        // alpha branch gives m, beta branch sqrt(m); keep the latter exact.
        return Ok(libm::sqrt(m as f64));
    }
    let root = eps_root(eps, m);
    let alpha_branch = m as f64 * alpha_upper(root)? / alpha_upper(eps)?;
    let beta_branch = libm::sqrt(m as f64) * beta(root)? / beta(eps)?;
    Ok(alpha_branch.min(beta_branch))
}

/// One point of the slowdown curve; `branch` names the term that set the
/// minimum (the alpha term scales like m, the beta term like sqrt(m)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub epsilon: f64,
    pub r_lower: f64,
    pub branch: Regime,
}

/// Slowdown curve over a caller-supplied set of rotation levels.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCurve {
    pub m: usize,
    pub points: Vec<RatioPoint>,
}

pub fn ratio_curve(m: usize, epsilons: &[f64]) -> Result<RatioCurve, Error> {
    let mut points = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let r_lower = ratio_lower_bound(eps, m)?;
        let branch = if eps >= 1.0 - 1e-12 || eps == 0.0 {
            Regime::Heisenberg
        } else {
            let root = eps_root(eps, m);
            let alpha_branch = m as f64 * alpha_upper(root)? / alpha_upper(eps)?;
            if alpha_branch <= r_lower + 1e-15 {
                Regime::MargolusLevitin
            } else {
                Regime::Heisenberg
            }
        };
        points.push(RatioPoint {
            epsilon: eps,
            r_lower,
            branch,
        });
    }
    Ok(RatioCurve { m, points })
}

/// Outcome of the entangled-family speedup verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedupReport {
    pub xi: f64,
    pub subsystems: usize,
    /// Rotation level at which the matching two-level state sits exactly on
    /// the bound; the comparison level for everything below.
    pub touch_eps: f64,
    pub joint_energy: f64,
    pub joint_spread: f64,
    /// Speed-limit time for the joint resources at `touch_eps`.
    pub bound_time: f64,
    /// First crossing of the entangled state, from the generic scan solver.
    pub crossing_time: f64,
    /// `(crossing - bound) / bound`; the family is tight, so this should
    /// vanish to solver precision.
    pub relative_gap: f64,
    /// First crossing of the homogeneous separable state with the same
    /// per-subsystem resources; infinite when `touch_eps^(1/m)` is below
    /// that state's reachable floor.
    pub separable_crossing: f64,
    pub ratio_bound: f64,
    /// `separable_crossing - ratio_bound * bound_time`, nonnegative when
    /// the slowdown bound holds.
    pub separable_margin: f64,
}

/// Verifies that the two-branch entangled family attains the speed limit
/// while its separable counterpart lags by at least the slowdown ratio.
///
/// The joint state evolves exactly as a two-level problem on `{0, m E0}`,
/// so its crossing is solved by the generic scan and compared against the
/// bound; the separable crossing follows from the product law, which turns
/// the level `touch_eps` into `touch_eps^(1/m)` per factor.
pub fn entangled_speedup_check(xi: f64, e0: f64, m: usize) -> Result<SpeedupReport, Error> {
    if m < 2 {
        return Err(Error::OutOfRange(alloc::format!("subsystem count {m}")));
    }
    let family = crate::states::entangled_family(xi, e0, m)?;
    let joint = family.joint();
    let touch_eps = touch_epsilon(xi)?;
    let joint_energy = joint.mean_energy();
    let joint_spread = joint.energy_spread();
    let bound = qsl_time(&QslQuery {
        epsilon: touch_eps,
        mean_energy: joint_energy,
        spread: joint_spread,
    })?;
    let horizon = 2.0 * core::f64::consts::PI / e0;
    let crossing_time = match crate::dynamics::time_to_fidelity(joint, touch_eps, horizon)? {
        crate::dynamics::Crossing::Reached(t) => t,
        crate::dynamics::Crossing::NotReached { min_probability } => {
            return Err(Error::Unreachable {
                eps: touch_eps,
                min_p: min_probability,
            })
        }
    };
    let relative_gap = (crossing_time - bound.time) / bound.time;

    let factor = TwoLevelState::new(xi, e0)?;
    let per_factor_eps = eps_root(touch_eps, m);
    let separable_crossing = match two_level_crossing_time(xi, per_factor_eps) {
        Ok(et) => et / factor.mean_energy(),
        Err(Error::Unreachable { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    let ratio_bound = ratio_lower_bound(touch_eps, m)?;
    Ok(SpeedupReport {
        xi,
        subsystems: m,
        touch_eps,
        joint_energy,
        joint_spread,
        bound_time: bound.time,
        crossing_time,
        relative_gap,
        separable_crossing,
        ratio_bound,
        separable_margin: separable_crossing - ratio_bound * bound.time,
    })
}

/// Per-component view of a separable mixture at the bound horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDiagnostic {
    pub subsystem_energy: Vec<f64>,
    pub subsystem_spread: Vec<f64>,
    /// Factor survival probabilities at the horizon.
    pub subsystem_eps: Vec<f64>,
    /// Whether this component devotes all its spread (and, in the
    /// Margolus-Levitin regime, all its energy) to a single subsystem.
    pub concentrated: bool,
}

/// Necessary-condition report for a separable mixture reaching the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureDiagnostic {
    /// Speed-limit time of the mixture at the requested level.
    pub horizon: f64,
    pub regime: Regime,
    pub components: Vec<ComponentDiagnostic>,
    /// All components concentrated. Necessary for saturation, never
    /// sufficient.
    pub candidate: bool,
}

/// Spread below this is treated as an exact eigenstate; factor spreads are
/// exactly zero for eigenstates by construction.
const CONCENTRATION_TOL: f64 = 1e-12;

/// Checks the resource-concentration condition for a mixture of product
/// states: a component can only help saturate the bound if one subsystem
/// carries all of its spread, leaving the rest stationary, and in the
/// Margolus-Levitin regime the stationary subsystems must also sit in the
/// ground state.
pub fn separable_mixture_diagnostic(
    probs: &[f64],
    components: &[CompositeState],
    eps: f64,
) -> Result<MixtureDiagnostic, Error> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::OutOfRange(alloc::format!(
            "eps {eps} outside [0, 1)"
        )));
    }
    if probs.is_empty() || probs.len() != components.len() {
        return Err(Error::BadProbabilities("weights do not match components"));
    }
    if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
        return Err(Error::BadProbabilities("negative or non-finite weight"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadProbabilities("weights do not sum to 1"));
    }
    let first = &components[0];
    for c in components {
        if c.factors().is_none() {
            return Err(Error::NotSeparable);
        }
        if c.joint().spectrum() != first.joint().spectrum()
            || c.subsystem_count() != first.subsystem_count()
        {
            return Err(Error::SpectrumMismatch);
        }
    }

    // Mixture statistics: mean is weight-linear, the second moment too.
    let mut mean = 0.0;
    let mut second = 0.0;
    for (&p, c) in probs.iter().zip(components) {
        let e = c.joint().mean_energy();
        let de = c.joint().energy_spread();
        mean += p * e;
        second += p * (de * de + e * e);
    }
    let spread = libm::sqrt((second - mean * mean).max(0.0));
    let bound = qsl_time(&QslQuery {
        epsilon: eps,
        mean_energy: mean,
        spread,
    })?;

    let mut reports = Vec::with_capacity(components.len());
    for c in components {
        let factors = c.factors().expect("separability checked above");
        let subsystem_energy: Vec<f64> = factors.iter().map(|f| f.mean_energy()).collect();
        let subsystem_spread: Vec<f64> = factors.iter().map(|f| f.energy_spread()).collect();
        let subsystem_eps: Vec<f64> = factors
            .iter()
            .map(|f| survival_probability(f, bound.time))
            .collect();
        let active: Vec<usize> = (0..factors.len())
            .filter(|&k| subsystem_spread[k] > CONCENTRATION_TOL)
            .collect();
        let concentrated = match active.as_slice() {
            [] => false, // fully stationary component cannot rotate at all
            [k] => {
                bound.regime == Regime::Heisenberg
                    || subsystem_energy
                        .iter()
                        .enumerate()
                        .all(|(j, &e)| j == *k || e <= CONCENTRATION_TOL)
            }
            _ => false,
        };
        reports.push(ComponentDiagnostic {
            subsystem_energy,
            subsystem_spread,
            subsystem_eps,
            concentrated,
        });
    }
    let candidate = reports.iter().all(|r| r.concentrated);
    Ok(MixtureDiagnostic {
        horizon: bound.time,
        regime: bound.regime,
        components: reports,
        candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{time_to_fidelity, Crossing};
    use crate::states::{composite_product, CompositeState, EnergySpectrum, PureState};
    use core::f64::consts::FRAC_PI_2;
    use num_complex::Complex64;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn uniform(rng: &mut ChaCha8Rng) -> f64 {
        ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    fn random_state(rng: &mut ChaCha8Rng, levels: Vec<f64>) -> PureState {
        let spectrum = EnergySpectrum::new(levels).unwrap();
        let amps: Vec<Complex64> = (0..spectrum.len())
            .map(|_| Complex64::new(uniform(rng) - 0.5, uniform(rng) - 0.5))
            .collect();
        PureState::new_normalized(spectrum, amps).unwrap()
    }

    #[test]
    fn product_survival_single_factor() {
        let s = TwoLevelState::new(0.6, 1.3).unwrap().pure_state();
        let c = composite_product(alloc::vec![s.clone()]).unwrap();
        for k in 0..20 {
            let t = 0.37 * k as f64;
            assert!((product_survival(&c, t).unwrap() - survival_probability(&s, t)).abs() < 1e-15);
        }
    }

    #[test]
    fn eigenstate_factor_is_transparent() {
        let spectrum = EnergySpectrum::new(alloc::vec![0.0, 2.0]).unwrap();
        let idle = PureState::eigenstate(spectrum, 1).unwrap();
        let busy = TwoLevelState::new(0.5, 1.0).unwrap().pure_state();
        let pair = composite_product(alloc::vec![busy.clone(), idle]).unwrap();
        for k in 0..20 {
            let t = 0.52 * k as f64;
            assert!(
                (product_survival(&pair, t).unwrap() - survival_probability(&busy, t)).abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn product_law_matches_joint_evolution() {
        // Oracle: survival of the explicit joint state.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let factors: Vec<PureState> = (0..3)
                .map(|_| {
                    let top = 0.5 + 2.0 * uniform(&mut rng);
                    random_state(&mut rng, alloc::vec![0.0, top])
                })
                .collect();
            let c = composite_product(factors).unwrap();
            let t = 8.0 * uniform(&mut rng);
            let product = product_survival(&c, t).unwrap();
            let joint = survival_probability(c.joint(), t);
            assert!(
                (product - joint).abs() < 1e-10,
                "product {product} vs joint {joint}"
            );
        }
    }

    #[test]
    fn product_survival_needs_factors() {
        let spectra = alloc::vec![
            EnergySpectrum::new(alloc::vec![0.0, 1.0]).unwrap(),
            EnergySpectrum::new(alloc::vec![0.0, 1.0]).unwrap(),
        ];
        let amps = alloc::vec![
            Complex64::new(libm::sqrt(0.5), 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(libm::sqrt(0.5), 0.0),
        ];
        let entangled = CompositeState::from_joint(spectra, amps).unwrap();
        assert!(matches!(
            product_survival(&entangled, 1.0),
            Err(Error::NotSeparable)
        ));
    }

    #[test]
    fn ratio_at_zero_is_square_root_of_m() {
        for m in 2..=8 {
            let r = ratio_lower_bound(0.0, m).unwrap();
            assert_eq!(r, libm::sqrt(m as f64));
        }
    }

    #[test]
    fn ratio_never_dips_below_one() {
        for m in 2..=8 {
            for i in 0..100 {
                let eps = i as f64 / 100.0;
                let r = ratio_lower_bound(eps, m).unwrap();
                assert!(r >= 1.0, "m={m} eps={eps}: ratio {r}");
            }
        }
    }

    #[test]
    fn ratio_anchor_direct_evaluation() {
        // Oracle: both branches evaluated explicitly at eps = 0.5, m = 5.
        let root = libm::exp(libm::log(0.5) / 5.0);
        let expected = (5.0 * alpha_upper(root).unwrap() / alpha_upper(0.5).unwrap())
            .min(libm::sqrt(5.0) * beta(root).unwrap() / beta(0.5).unwrap());
        let got = ratio_lower_bound(0.5, 5).unwrap();
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn ratio_near_full_rotation_is_one() {
        assert_eq!(ratio_lower_bound(1.0 - 1e-13, 4).unwrap(), 1.0);
        assert!(ratio_lower_bound(1.0, 4).is_err());
        assert!(ratio_lower_bound(0.5, 1).is_err());
    }

    #[test]
    fn ratio_curve_is_pointwise_consistent() {
        let epsilons: Vec<f64> = (0..50).map(|i| i as f64 / 50.0).collect();
        let curve = ratio_curve(5, &epsilons).unwrap();
        assert_eq!(curve.m, 5);
        for (point, &eps) in curve.points.iter().zip(&epsilons) {
            assert_eq!(point.epsilon, eps);
            assert_eq!(point.r_lower, ratio_lower_bound(eps, 5).unwrap());
        }
        // The sqrt(m) branch owns the orthogonality end.
        assert_eq!(curve.points[0].branch, Regime::Heisenberg);
    }

    #[test]
    fn entangled_family_attains_the_bound() {
        let report = entangled_speedup_check(0.5, 1.0, 3).unwrap();
        assert!((report.touch_eps - 0.30).abs() < 6e-3);
        assert!((report.joint_energy - 0.75).abs() < 1e-12);
        assert!(
            report.relative_gap.abs() < 1e-6,
            "gap {}",
            report.relative_gap
        );
        assert!(report.separable_margin >= -1e-9);
        assert!(report.separable_crossing > report.crossing_time);
    }

    #[test]
    fn balanced_family_saturates_orthogonality() {
        let xi = libm::sqrt(0.5);
        for m in [2, 4] {
            let report = entangled_speedup_check(xi, 1.0, m).unwrap();
            assert_eq!(report.touch_eps, 0.0);
            // E = dE = m E0 / 2, so both branches give pi / (m E0).
            let expected = FRAC_PI_2 / report.joint_energy;
            assert!((report.bound_time - expected).abs() < 1e-12);
            assert!(report.relative_gap.abs() < 1e-6, "m={m}");
        }
    }

    #[test]
    fn separable_crossing_matches_scan_oracle() {
        // Oracle: run the generic crossing solver on the explicit product
        // state instead of the per-factor closed form.
        let (xi, e0, m) = (0.5, 1.0, 3);
        let report = entangled_speedup_check(xi, e0, m).unwrap();
        let factor = TwoLevelState::new(xi, e0).unwrap().pure_state();
        let product = composite_product(alloc::vec![factor; m]).unwrap();
        let horizon = 8.0 * core::f64::consts::PI / e0;
        match time_to_fidelity(product.joint(), report.touch_eps, horizon).unwrap() {
            Crossing::Reached(t) => {
                assert!(
                    (t - report.separable_crossing).abs() < 1e-9,
                    "scan {t} vs closed form {}",
                    report.separable_crossing
                );
            }
            Crossing::NotReached { min_probability } => {
                panic!("product state stuck at {min_probability}")
            }
        }
    }

    #[test]
    fn speedup_holds_across_the_family() {
        for &xi in &[0.3, 0.5, libm::sqrt(0.5)] {
            for &m in &[2usize, 3, 5] {
                let report = entangled_speedup_check(xi, 1.0, m).unwrap();
                assert!(
                    report.relative_gap.abs() < 1e-6,
                    "xi={xi} m={m}: gap {}",
                    report.relative_gap
                );
                assert!(
                    report.separable_crossing > report.crossing_time,
                    "xi={xi} m={m}: no strict speedup"
                );
                assert!(
                    report.separable_margin >= -1e-9,
                    "xi={xi} m={m}: margin {}",
                    report.separable_margin
                );
            }
        }
    }

    #[test]
    fn speedup_check_rejects_bad_inputs() {
        assert!(entangled_speedup_check(0.5, 1.0, 1).is_err());
        assert!(entangled_speedup_check(0.9, 1.0, 3).is_err());
        assert!(entangled_speedup_check(0.0, 1.0, 3).is_err());
    }

    fn ground_eigenstate(levels: Vec<f64>) -> PureState {
        PureState::eigenstate(EnergySpectrum::new(levels).unwrap(), 0).unwrap()
    }

    #[test]
    fn concentrated_single_component_is_a_candidate() {
        let busy = TwoLevelState::new(0.6, 1.0).unwrap().pure_state();
        let idle = ground_eigenstate(alloc::vec![0.0, 1.0]);
        let c = composite_product(alloc::vec![busy, idle.clone(), idle]).unwrap();
        let report = separable_mixture_diagnostic(&[1.0], &[c], 0.2).unwrap();
        assert!(report.candidate);
        assert_eq!(report.components.len(), 1);
        let comp = &report.components[0];
        assert!(comp.concentrated);
        // Stationary subsystems report unit survival at the horizon.
        assert!((comp.subsystem_eps[1] - 1.0).abs() < 1e-12);
        assert!((comp.subsystem_eps[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn homogeneous_product_is_not_a_candidate() {
        let factor = TwoLevelState::new(0.5, 1.0).unwrap().pure_state();
        let c = composite_product(alloc::vec![factor; 3]).unwrap();
        let report = separable_mixture_diagnostic(&[1.0], &[c], 0.2).unwrap();
        assert!(!report.candidate);
        assert!(!report.components[0].concentrated);
    }

    #[test]
    fn components_may_concentrate_on_different_subsystems() {
        let busy = TwoLevelState::new(0.6, 1.0).unwrap().pure_state();
        let idle = ground_eigenstate(alloc::vec![0.0, 1.0]);
        let first = composite_product(alloc::vec![busy.clone(), idle.clone()]).unwrap();
        let second = composite_product(alloc::vec![idle, busy]).unwrap();
        let report = separable_mixture_diagnostic(&[0.5, 0.5], &[first, second], 0.3).unwrap();
        assert!(report.candidate);
        assert!(report.components.iter().all(|c| c.concentrated));
    }

    #[test]
    fn excited_idle_subsystem_fails_only_in_the_energy_regime() {
        // An excited eigenstate keeps spread concentration intact but holds
        // energy away from the active subsystem, which only matters when the
        // energy branch rules the bound. A low-weight, high-gap active
        // factor keeps dE/E large enough for that branch to win.
        let busy = TwoLevelState::new(0.1, 10.0).unwrap().pure_state();
        let spectrum = EnergySpectrum::new(alloc::vec![0.0, 0.3]).unwrap();
        let excited = PureState::eigenstate(spectrum, 1).unwrap();
        let c = composite_product(alloc::vec![busy.clone(), excited]).unwrap();
        let hot = separable_mixture_diagnostic(&[1.0], &[c], 0.2).unwrap();
        assert_eq!(hot.regime, Regime::MargolusLevitin);
        assert!(!hot.candidate);

        let idle = ground_eigenstate(alloc::vec![0.0, 0.3]);
        let cold = composite_product(alloc::vec![busy.clone(), idle]).unwrap();
        let report = separable_mixture_diagnostic(&[1.0], &[cold], 0.2).unwrap();
        assert_eq!(report.regime, Regime::MargolusLevitin);
        assert!(report.candidate);

        // Same geometry in the spread-dominated regime: the excited idle
        // factor no longer disqualifies the component.
        let heavy = TwoLevelState::new(libm::sqrt(0.5), 1.0)
            .unwrap()
            .pure_state();
        let spectrum = EnergySpectrum::new(alloc::vec![0.0, 6.0]).unwrap();
        let excited = PureState::eigenstate(spectrum, 1).unwrap();
        let h = composite_product(alloc::vec![heavy, excited]).unwrap();
        let report = separable_mixture_diagnostic(&[1.0], &[h], 0.2).unwrap();
        assert_eq!(report.regime, Regime::Heisenberg);
        assert!(report.candidate);
    }

    #[test]
    fn mixture_diagnostic_validates_inputs() {
        let busy = TwoLevelState::new(0.5, 1.0).unwrap().pure_state();
        let idle = ground_eigenstate(alloc::vec![0.0, 1.0]);
        let c = composite_product(alloc::vec![busy.clone(), idle.clone()]).unwrap();
        assert!(matches!(
            separable_mixture_diagnostic(&[0.5, 0.5], core::slice::from_ref(&c), 0.2),
            Err(Error::BadProbabilities(_))
        ));
        assert!(matches!(
            separable_mixture_diagnostic(&[1.0], core::slice::from_ref(&c), 1.0),
            Err(Error::OutOfRange(_))
        ));

        let other_scale = composite_product(alloc::vec![
            TwoLevelState::new(0.5, 2.0).unwrap().pure_state(),
            ground_eigenstate(alloc::vec![0.0, 2.0]),
        ])
        .unwrap();
        assert!(matches!(
            separable_mixture_diagnostic(&[0.5, 0.5], &[c.clone(), other_scale], 0.2),
            Err(Error::SpectrumMismatch)
        ));

        let spectra = alloc::vec![
            EnergySpectrum::new(alloc::vec![0.0, 1.0]).unwrap(),
            EnergySpectrum::new(alloc::vec![0.0, 1.0]).unwrap(),
        ];
        let amps = alloc::vec![
            Complex64::new(libm::sqrt(0.5), 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(libm::sqrt(0.5), 0.0),
        ];
        let entangled = CompositeState::from_joint(spectra, amps).unwrap();
        assert!(matches!(
            separable_mixture_diagnostic(&[1.0], &[entangled], 0.2),
            Err(Error::NotSeparable)
        ));
    }

    #[test]
    fn entangled_beats_separable_below_the_floor() {
        // Strict ordering of crossings for equal per-subsystem resources.
        let mut rng = ChaCha8Rng::seed_from_u64(88);
        for _ in 0..10 {
            let xi = 0.25 + 0.45 * uniform(&mut rng);
            let m = 2 + (rng.next_u64() % 3) as usize;
            let report = entangled_speedup_check(xi, 1.0, m).unwrap();
            assert!(report.separable_crossing > report.crossing_time);
        }
    }
}
