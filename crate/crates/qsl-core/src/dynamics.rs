//! Time evolution under diagonal Hamiltonians: survival probability and its
//! derivative, density-matrix evolution, Uhlmann fidelity, purifications,
//! and first-crossing solvers.
//!
//! `hbar = 1` everywhere; presentation units are the caller's concern.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::numerics::{
    bisect, eigh, matrix_sqrt_psd, CMatrix, HermitianMatrix, RootBracket, DEFAULT_TOL,
};
use crate::states::{
    ensemble_to_density, validate_ensemble, DensityMatrix, EnergySpectrum, PureState,
};

/// Hard cap on scan points in [`time_to_fidelity`]; guards against
/// pathological `t_max / step` ratios, not a tuning knob.
const MAX_SCAN_STEPS: usize = 50_000_000;

/// A survival level within this distance of a local minimum counts as
/// touched (handles tangential crossings, including level 0).
const TOUCH_TOL: f64 = 1e-12;

/// Survival probability `P(t) = |sum_n |c_n|^2 e^{-i E_n t}|^2`.
pub fn survival_probability(state: &PureState, t: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (c, &e) in state.amplitudes().iter().zip(state.spectrum().levels()) {
        let p = c.norm_sqr();
        re += p * libm::cos(e * t);
        im -= p * libm::sin(e * t);
    }
    (re * re + im * im).clamp(0.0, 1.0)
}

/// Analytic `dP/dt`: with `S(t) = sum_n p_n e^{-i E_n t}`, the derivative is
/// `2 Re[S'(t) conj(S(t))]`.
pub fn survival_derivative(state: &PureState, t: f64) -> f64 {
    let (mut s_re, mut s_im) = (0.0, 0.0);
    let (mut d_re, mut d_im) = (0.0, 0.0);
    for (c, &e) in state.amplitudes().iter().zip(state.spectrum().levels()) {
        let p = c.norm_sqr();
        let (sin, cos) = (libm::sin(e * t), libm::cos(e * t));
        s_re += p * cos;
        s_im -= p * sin;
        // d/dt of p e^{-iEt} = -iE p e^{-iEt}
        d_re -= p * e * sin;
        d_im -= p * e * cos;
    }
    2.0 * (d_re * s_re + d_im * s_im)
}

/// Applies the phase factors `e^{-i E_n t}` to the amplitudes.
pub fn evolve_state(state: &PureState, t: f64) -> PureState {
    let amplitudes: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .zip(state.spectrum().levels())
        .map(|(c, &e)| c * Complex64::new(libm::cos(e * t), -libm::sin(e * t)))
        .collect();
    PureState::new(state.spectrum().clone(), amplitudes)
        .expect("unit phases preserve normalization")
}

/// Multiplies entry (j, k) by `e^{-i (E_j - E_k) t}`; trace and spectrum are
/// untouched, so no re-validation is needed.
pub fn evolve_density(rho: &DensityMatrix, t: f64) -> DensityMatrix {
    let n = rho.dim();
    let phases: Vec<Complex64> = rho
        .spectrum()
        .levels()
        .iter()
        .map(|&e| Complex64::new(libm::cos(e * t), -libm::sin(e * t)))
        .collect();
    let mut m = CMatrix::zeros(n);
    for j in 0..n {
        m.set(j, j, Complex64::new(rho.matrix().get(j, j).re, 0.0));
        for k in (j + 1)..n {
            let v = rho.matrix().get(j, k) * phases[j] * phases[k].conj();
            m.set(j, k, v);
            m.set(k, j, v.conj());
        }
    }
    let matrix = HermitianMatrix::new(m).expect("mirrored entries are exactly Hermitian");
    DensityMatrix::trusted(rho.spectrum().clone(), matrix)
}

/// Uhlmann fidelity `F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
///
/// Symmetric in its arguments and equal to `|<psi|phi>|^2` on pure states.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64, Error> {
    if rho.spectrum() != sigma.spectrum() {
        return Err(Error::SpectrumMismatch);
    }
    let root = matrix_sqrt_psd(rho.matrix())?;
    let middle = root
        .as_matrix()
        .mul(sigma.matrix().as_matrix())
        .mul(root.as_matrix());
    let middle = HermitianMatrix::new(middle)?;
    let decomp = eigh(&middle)?;
    // Rank-deficient products carry eigenvalue noise around
    // machine-eps * lambda_max; the square root would amplify it to ~1e-8
    // per mode, so anything below a relative floor is treated as zero.
    let floor = decomp.values.last().copied().unwrap_or(0.0).max(0.0) * 1e-13;
    let trace_root: f64 = decomp
        .values
        .iter()
        .filter(|&&l| l > floor)
        .map(|&l| libm::sqrt(l))
        .sum();
    Ok((trace_root * trace_root).clamp(0.0, 1.0))
}

/// Outcome of a first-crossing search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    /// First time the survival probability reaches the requested level.
    Reached(f64),
    /// No crossing up to `t_max`; carries the scanned minimum for diagnosis.
    NotReached { min_probability: f64 },
}

impl Crossing {
    pub fn time(&self) -> Option<f64> {
        match *self {
            Crossing::Reached(t) => Some(t),
            Crossing::NotReached { .. } => None,
        }
    }
}

/// Smallest `t` in `(0, t_max]` with `P(t) = eps`.
///
/// Dense scan with step `0.01 / max(E, dE)` isolates the first crossing,
/// then bisection refines it to [`DEFAULT_TOL`]. Tangential approaches
/// (the dip only touches `eps`, as it does for `eps = 0`) are resolved by
/// bisecting the analytic derivative around the scanned local minimum, so
/// the returned time does not inherit the `sqrt(machine-eps)` blur of a
/// value-only search.
pub fn time_to_fidelity(state: &PureState, eps: f64, t_max: f64) -> Result<Crossing, Error> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::OutOfRange(alloc::format!("survival level {eps}")));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::OutOfRange(alloc::format!("time horizon {t_max}")));
    }
    let spread = state.energy_spread();
    if spread == 0.0 {
        return Err(Error::Degenerate(
            "stationary state: zero energy spread, survival stays at 1",
        ));
    }
    let mean = state.mean_energy();
    let step = 0.01 / mean.max(spread);
    let steps = libm::ceil(t_max / step) as usize;
    if steps > MAX_SCAN_STEPS {
        return Err(Error::OutOfRange(alloc::format!(
            "crossing scan needs {steps} steps (cap {MAX_SCAN_STEPS})"
        )));
    }
    // A grid sample near a quadratic minimum overshoots the true value by
    // at most |P''|/2 * step^2 with |P''| <= 4 <E^2>, so dips within this
    // window of eps deserve derivative refinement.
    let window = 2.0 * (mean * mean + spread * spread) * step * step + TOUCH_TOL;

    let mut min_p = 1.0f64;
    // Sliding window (t, P) over the last three grid points.
    let mut prev2 = (0.0, 1.0);
    let mut prev = (0.0, 1.0);
    for k in 1..=steps {
        let t = (k as f64 * step).min(t_max);
        let p = survival_probability(state, t);
        min_p = min_p.min(p);

        if p <= eps {
            // Transversal crossing inside (prev.0, t].
            let f = |x: f64| survival_probability(state, x) - eps;
            let bracket = RootBracket::new(prev.0, t, prev.1 - eps, p - eps)?;
            return Ok(Crossing::Reached(bisect(f, bracket, DEFAULT_TOL)?));
        }
        if k >= 2 && prev.1 < prev2.1 && prev.1 <= p && prev.1 <= eps + window {
            // Possible tangential touch: the dip may bottom out at eps
            // without a sign change in P - eps. Locate the true minimum via
            // the derivative and accept it only if it actually gets there.
            let d = |x: f64| survival_derivative(state, x);
            if let Ok(bracket) = RootBracket::from_fn(d, prev2.0, t) {
                let t_star = bisect(d, bracket, DEFAULT_TOL)?;
                let p_star = survival_probability(state, t_star);
                min_p = min_p.min(p_star);
                if p_star <= eps + TOUCH_TOL {
                    return Ok(Crossing::Reached(t_star));
                }
            }
        }
        prev2 = prev;
        prev = (t, p);
    }
    Ok(Crossing::NotReached {
        min_probability: min_p,
    })
}

/// Dimensionless first-crossing time `E t / hbar` for the two-level family
/// `sqrt(1 - xi^2)|0> + xi|E0>`: `xi^2 arccos[(eps - 1 + 2w) / (2w)]` with
/// `w = xi^2 (1 - xi^2)`. Independent of `E0`.
pub fn two_level_crossing_time(xi: f64, eps: f64) -> Result<f64, Error> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::OutOfRange(alloc::format!(
            "xi {xi} (need 0 < xi < 1)"
        )));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::OutOfRange(alloc::format!("survival level {eps}")));
    }
    let w = xi * xi * (1.0 - xi * xi);
    let arg = (eps - 1.0 + 2.0 * w) / (2.0 * w);
    if arg < -1.0 {
        // The survival probability never gets down to eps.
        return Err(Error::Unreachable {
            eps,
            min_p: 1.0 - 4.0 * w,
        });
    }
    Ok(xi * xi * libm::acos(arg.clamp(-1.0, 1.0)))
}

/// Uniformly sampled values over `[0, t_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Survival probability on `steps + 1` uniform points including both ends.
pub fn survival_trajectory(
    state: &PureState,
    t_max: f64,
    steps: usize,
) -> Result<Trajectory, Error> {
    if !(t_max > 0.0) || !t_max.is_finite() || steps == 0 {
        return Err(Error::OutOfRange(alloc::format!(
            "trajectory over [0, {t_max}] with {steps} steps"
        )));
    }
    let times: Vec<f64> = (0..=steps)
        .map(|k| t_max * k as f64 / steps as f64)
        .collect();
    let values = times
        .iter()
        .map(|&t| survival_probability(state, t))
        .collect();
    Ok(Trajectory { times, values })
}

/// Uhlmann fidelity `F(rho, rho(t))` on `steps + 1` uniform points.
pub fn fidelity_trajectory(
    rho: &DensityMatrix,
    t_max: f64,
    steps: usize,
) -> Result<Trajectory, Error> {
    if !(t_max > 0.0) || !t_max.is_finite() || steps == 0 {
        return Err(Error::OutOfRange(alloc::format!(
            "trajectory over [0, {t_max}] with {steps} steps"
        )));
    }
    let mut times = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = t_max * k as f64 / steps as f64;
        times.push(t);
        values.push(uhlmann_fidelity(rho, &evolve_density(rho, t))?);
    }
    Ok(Trajectory { times, values })
}

/// A pure state on system (x) ancilla whose ancilla trace reproduces a given
/// density matrix.
#[derive(Debug, Clone)]
pub struct Purification {
    system_state: DensityMatrix,
    joint_pure: PureState,
    ancilla_phases: Vec<f64>,
}

impl Purification {
    pub fn system_state(&self) -> &DensityMatrix {
        &self.system_state
    }

    /// Joint state over the product spectrum; ancilla levels are all 0, so
    /// the joint energies coincide with the system energies.
    pub fn joint_pure(&self) -> &PureState {
        &self.joint_pure
    }

    pub fn ancilla_phases(&self) -> &[f64] {
        &self.ancilla_phases
    }
}

/// Purifies the ensemble `sum_n p_n |phi_n><phi_n|` as
/// `sum_n sqrt(p_n) e^{i phase_n} |phi_n>|n>` with the ancilla in ground
/// (zero-energy) levels, so the joint state keeps the ensemble's energy and
/// spread. Joint index layout: system level major, ancilla slot minor.
pub fn ground_ancilla_purification(
    probs: &[f64],
    states: &[PureState],
    phases: Option<&[f64]>,
) -> Result<Purification, Error> {
    validate_ensemble(probs, states)?;
    let ensemble = probs.len();
    if let Some(ph) = phases {
        if ph.len() != ensemble {
            return Err(Error::OutOfRange(alloc::format!(
                "{} phases for {ensemble} components",
                ph.len()
            )));
        }
        if ph.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("purification phase"));
        }
    }
    let ancilla_phases: Vec<f64> = match phases {
        Some(ph) => ph.to_vec(),
        None => alloc::vec![0.0; ensemble],
    };
    let system = states[0].spectrum().clone();
    let dim = system.len();
    // Repeating each system level once per ancilla slot keeps the list
    // ascending with a zero ground level.
    let joint_levels: Vec<f64> = system
        .levels()
        .iter()
        .flat_map(|&e| core::iter::repeat(e).take(ensemble))
        .collect();
    let joint_spectrum = EnergySpectrum::new(joint_levels)?;
    let mut amplitudes = alloc::vec![Complex64::ZERO; dim * ensemble];
    for (n, (p, state)) in probs.iter().zip(states).enumerate() {
        let weight = libm::sqrt(*p);
        let phase = Complex64::new(libm::cos(ancilla_phases[n]), libm::sin(ancilla_phases[n]));
        for i in 0..dim {
            amplitudes[i * ensemble + n] = weight * phase * state.amplitudes()[i];
        }
    }
    let joint_pure = PureState::new(joint_spectrum, amplitudes)?;
    let system_state = ensemble_to_density(probs, states)?;
    Ok(Purification {
        system_state,
        joint_pure,
        ancilla_phases,
    })
}
