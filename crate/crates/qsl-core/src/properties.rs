//! Numerical verification of the structural properties the bounds rest on:
//! convexity and subadditivity of the bounding functions in sqrt(eps), the
//! Cauchy-Schwarz envelope on dP/dt, the cosine floor, and the necessary
//! conditions for a mixture to saturate the speed limit.

use alloc::vec::Vec;

use crate::bounds::{alpha_upper, beta, qsl_time, AlphaTable, QslQuery, Regime};
use crate::dynamics::{survival_derivative, survival_probability};
use crate::error::Error;
use crate::states::{validate_ensemble, PureState};

/// One point of a verification surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    /// Parameter point: `[eps1, eps2, phi]` for convexity surfaces,
    /// `[eps1, eps2]` for subadditivity.
    pub inputs: Vec<f64>,
    pub lambda_value: f64,
    /// True at the known zero sets (equal arguments, weight collapse, or a
    /// unit eps); flagged samples carry no convexity information.
    pub degenerate: bool,
}

fn check_unit(name: &'static str, x: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(alloc::format!(
            "{name} {x} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Weight collapse happens where the mixing angle kills one component.
fn collapsed(phi: f64) -> bool {
    (libm::sin(phi) * libm::cos(phi)).abs() <= 1e-9
}

/// Convexity gap of alpha in the square-root variable:
/// `alpha(e1^2) cos^2 phi + alpha(e2^2) sin^2 phi - alpha((e1 cos^2 phi +
/// e2 sin^2 phi)^2)` over the supplied angles.
///
/// Alpha values come from the interpolated tabulation, so gaps are only
/// meaningful above its error (~1e-8), well inside the -1e-4 acceptance
/// slack used for this surface.
pub fn convexity_surface_alpha(
    eps1: f64,
    eps2: f64,
    phi_grid: &[f64],
    table: &AlphaTable,
) -> Result<Vec<SurfaceSample>, Error> {
    check_unit("eps1", eps1)?;
    check_unit("eps2", eps2)?;
    let mut samples = Vec::with_capacity(phi_grid.len());
    for &phi in phi_grid {
        let w1 = libm::cos(phi) * libm::cos(phi);
        let w2 = libm::sin(phi) * libm::sin(phi);
        let mix = eps1 * w1 + eps2 * w2;
        let lambda_value = table.value(eps1 * eps1)? * w1 + table.value(eps2 * eps2)? * w2
            - table.value(mix * mix)?;
        samples.push(SurfaceSample {
            inputs: alloc::vec![eps1, eps2, phi],
            lambda_value,
            degenerate: (eps1 - eps2).abs() <= 1e-12 || collapsed(phi),
        });
    }
    Ok(samples)
}

/// Convexity gap of beta squared in the square-root variable; closed form.
pub fn convexity_surface_beta(
    eps1: f64,
    eps2: f64,
    phi_grid: &[f64],
) -> Result<Vec<SurfaceSample>, Error> {
    check_unit("eps1", eps1)?;
    check_unit("eps2", eps2)?;
    let beta_sq = |e: f64| {
        let b = libm::acos(libm::sqrt(e)) / core::f64::consts::FRAC_PI_2;
        b * b
    };
    let mut samples = Vec::with_capacity(phi_grid.len());
    for &phi in phi_grid {
        let w1 = libm::cos(phi) * libm::cos(phi);
        let w2 = libm::sin(phi) * libm::sin(phi);
        let mix = eps1 * w1 + eps2 * w2;
        let lambda_value =
            beta_sq(eps1 * eps1) * w1 + beta_sq(eps2 * eps2) * w2 - beta_sq(mix * mix);
        samples.push(SurfaceSample {
            inputs: alloc::vec![eps1, eps2, phi],
            lambda_value,
            degenerate: (eps1 - eps2).abs() <= 1e-12 || collapsed(phi),
        });
    }
    Ok(samples)
}

/// Which bounding function a subadditivity surface evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Alpha,
    BetaSq,
}

/// Subadditivity gap `f(e1) + f(e2) - f(e1 e2)` for the chosen bounding
/// function; zero only where one argument is 1.
pub fn subadditivity_surface(
    eps_pairs: &[(f64, f64)],
    which: SurfaceKind,
    table: &AlphaTable,
) -> Result<Vec<SurfaceSample>, Error> {
    let f = |e: f64| -> Result<f64, Error> {
        match which {
            SurfaceKind::Alpha => table.value(e),
            SurfaceKind::BetaSq => {
                let b = beta(e)?;
                Ok(b * b)
            }
        }
    };
    let mut samples = Vec::with_capacity(eps_pairs.len());
    for &(eps1, eps2) in eps_pairs {
        check_unit("eps1", eps1)?;
        check_unit("eps2", eps2)?;
        let lambda_value = f(eps1)? + f(eps2)? - f(eps1 * eps2)?;
        samples.push(SurfaceSample {
            inputs: alloc::vec![eps1, eps2],
            lambda_value,
            degenerate: (1.0 - eps1).abs() <= 1e-12 || (1.0 - eps2).abs() <= 1e-12,
        });
    }
    Ok(samples)
}

/// Allowed excess of |dP/dt| over the spread envelope.
pub const DERIVATIVE_SLACK: f64 = 1e-9;

/// Outcome of the derivative-envelope check on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeReport {
    /// Largest `|dP/dt| - 2 dE sqrt(P(1-P))` over the grid.
    pub worst_excess: f64,
    /// Largest gap between the analytic derivative and central differences.
    pub worst_fd_gap: f64,
    /// Tolerance the finite-difference gap is held to.
    pub fd_tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Verifies `|dP/dt| <= 2 dE sqrt(P(1-P))` on the supplied grid and
/// cross-checks the analytic derivative against central differences.
pub fn derivative_bound_check(state: &PureState, t_grid: &[f64]) -> DerivativeReport {
    let spread = state.energy_spread();
    let h = 1e-5 / (1.0 + state.spectrum().max_level());
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_fd_gap: f64 = 0.0;
    for &t in t_grid {
        let p = survival_probability(state, t);
        let d = survival_derivative(state, t);
        let envelope = 2.0 * spread * libm::sqrt((p * (1.0 - p)).max(0.0));
        worst_excess = worst_excess.max(d.abs() - envelope);
        let fd =
            (survival_probability(state, t + h) - survival_probability(state, t - h)) / (2.0 * h);
        worst_fd_gap = worst_fd_gap.max((d - fd).abs());
    }
    let fd_tolerance = (1e-4 * spread).max(1e-6);
    DerivativeReport {
        worst_excess,
        worst_fd_gap,
        fd_tolerance,
        samples: t_grid.len(),
        passed: worst_excess <= DERIVATIVE_SLACK && worst_fd_gap <= fd_tolerance,
    }
}

/// Outcome of the cosine-floor check on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloorReport {
    /// Smallest `P(t) - cos^2(dE t)` over the quarter period.
    pub min_slack: f64,
    /// Where the minimum was found.
    pub argmin_t: f64,
    pub samples: usize,
}

/// Verifies `P(t) >= cos^2(dE t)` on a uniform grid over the quarter period
/// `[0, pi / (2 dE)]`.
pub fn cosine_floor_check(state: &PureState, samples: usize) -> Result<FloorReport, Error> {
    let spread = state.energy_spread();
    if spread == 0.0 {
        return Err(Error::Degenerate(
            "zero energy spread: the floor is identically 1",
        ));
    }
    if samples < 2 {
        return Err(Error::OutOfRange(alloc::format!(
            "grid of {samples} points"
        )));
    }
    let horizon = core::f64::consts::FRAC_PI_2 / spread;
    let mut min_slack = f64::INFINITY;
    let mut argmin_t = 0.0;
    for k in 0..samples {
        let t = horizon * k as f64 / (samples - 1) as f64;
        let c = libm::cos(spread * t);
        let slack = survival_probability(state, t) - c * c;
        if slack < min_slack {
            min_slack = slack;
            argmin_t = t;
        }
    }
    Ok(FloorReport {
        min_slack,
        argmin_t,
        samples,
    })
}

/// Component rotation levels must sit this close to the target for the
/// mixture to remain a saturation candidate.
pub const SATURATION_TOL: f64 = 1e-6;

/// Necessary-condition report for a pure-state mixture saturating the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SaturationReport {
    /// Speed-limit time of the mixture at the requested level.
    pub horizon: f64,
    pub regime: Regime,
    /// Survival of each component at the horizon.
    pub component_eps: Vec<f64>,
    /// `(sum_n p_n sqrt(eps_n))^2`, the effective mixture level.
    pub epsilon_bar: f64,
    /// `alpha(eps_bar) - sum_n p_n alpha(eps_n)`; nonnegative when the
    /// mixture saturates.
    pub alpha_gap: f64,
    /// Same gap for beta squared.
    pub beta_sq_gap: f64,
    /// Every component rotated by exactly the target level.
    pub candidate: bool,
}

/// Evaluates the saturation conditions for an ensemble at level `eps`: each
/// component's rotation at the mixture horizon, the effective level, and
/// the two regime inequalities.
pub fn mixture_saturation_check(
    probs: &[f64],
    states: &[PureState],
    eps: f64,
) -> Result<SaturationReport, Error> {
    validate_ensemble(probs, states)?;
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::OutOfRange(alloc::format!(
            "eps {eps} outside [0, 1)"
        )));
    }
    let mut mean = 0.0;
    let mut second = 0.0;
    for (&p, s) in probs.iter().zip(states) {
        let e = s.mean_energy();
        let de = s.energy_spread();
        mean += p * e;
        second += p * (de * de + e * e);
    }
    let spread = libm::sqrt((second - mean * mean).max(0.0));
    let bound = qsl_time(&QslQuery {
        epsilon: eps,
        mean_energy: mean,
        spread,
    })?;
    if !bound.time.is_finite() {
        return Err(Error::Degenerate("mixture cannot rotate at all"));
    }
    let component_eps: Vec<f64> = states
        .iter()
        .map(|s| survival_probability(s, bound.time))
        .collect();
    let root_bar: f64 = probs
        .iter()
        .zip(&component_eps)
        .map(|(&p, &e)| p * libm::sqrt(e))
        .sum();
    let epsilon_bar = root_bar * root_bar;
    let mut alpha_mix = 0.0;
    let mut beta_sq_mix = 0.0;
    for (&p, &e) in probs.iter().zip(&component_eps) {
        alpha_mix += p * alpha_upper(e)?;
        let b = beta(e)?;
        beta_sq_mix += p * b * b;
    }
    let beta_bar = beta(epsilon_bar)?;
    let candidate = component_eps
        .iter()
        .all(|&e| (e - eps).abs() <= SATURATION_TOL);
    Ok(SaturationReport {
        horizon: bound.time,
        regime: bound.regime,
        component_eps,
        epsilon_bar,
        alpha_gap: alpha_upper(epsilon_bar)? - alpha_mix,
        beta_sq_gap: beta_bar * beta_bar - beta_sq_mix,
        candidate,
    })
}
