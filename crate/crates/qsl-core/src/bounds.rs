//! Bounding functions for the minimal evolution time: the closed-form beta,
//! the tangent-line family a(q), a seeded min-max Monte Carlo lower bound
//! and a two-level upper bound for alpha, their reconciliation, the speed
//! limit time itself, and the forbidden-region floor with inverses.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::Error;
use crate::numerics::{
    bisect, derive_seed, extrapolate_linear, random_grid, ExtrapolationResult, RootBracket,
    DEFAULT_TOL,
};

fn check_unit(name: &'static str, x: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(alloc::format!(
            "{name} {x} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Spread-side bounding function `(2/pi) arccos(sqrt(eps))`; strictly
/// decreasing with `beta(0) = 1` and `beta(1) = 0`.
pub fn beta(eps: f64) -> Result<f64, Error> {
    check_unit("eps", eps)?;
    Ok(libm::acos(libm::sqrt(eps)) / FRAC_PI_2)
}

/// Inverse of [`beta`]: `cos^2(pi x / 2)`.
pub fn beta_inverse(x: f64) -> Result<f64, Error> {
    check_unit("level", x)?;
    let c = libm::cos(FRAC_PI_2 * x);
    Ok(c * c)
}

/// The line `1 - a t` supporting `cos t + q sin t` from below on `t >= 0`,
/// touching it at `t = y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentLine {
    pub q: f64,
    /// Line slope magnitude; the line is `1 - a t`.
    pub a: f64,
    /// Touch abscissa.
    pub y: f64,
}

impl TangentLine {
    pub fn line(&self, t: f64) -> f64 {
        1.0 - self.a * t
    }

    pub fn curve(&self, t: f64) -> f64 {
        libm::cos(t) + self.q * libm::sin(t)
    }
}

/// Slope forced by `sin^2 + cos^2 = 1` at a presumed touch abscissa `y`.
fn tangent_slope(q: f64, y: f64) -> f64 {
    (y + libm::sqrt(y * y * (1.0 + q * q) + q * q)) / (1.0 + y * y)
}

/// Solves the tangency system for the support line of `cos t + q sin t`.
///
/// Substituting the slope expression into the sine condition leaves a single
/// equation in the touch abscissa `y`, bisected over `[pi - arctan(1/q),
/// pi + arctan(q)]` (`[pi/2, pi]` at `q = 0`). A preliminary scan counts the
/// sign changes so an unexpected second root fails loudly instead of being
/// resolved by bracket order.
pub fn tangent_line(q: f64) -> Result<TangentLine, Error> {
    if !q.is_finite() || q < 0.0 {
        return Err(Error::OutOfRange(alloc::format!("tangent parameter {q}")));
    }
    let (y_lo, y_hi) = if q == 0.0 {
        (FRAC_PI_2, PI)
    } else {
        (PI - libm::atan(1.0 / q), PI + libm::atan(q))
    };
    let f = |y: f64| libm::sin(y) - (tangent_slope(q, y) * (1.0 - q * y) + q) / (1.0 + q * q);

    let scan = 128;
    let mut bracket = None;
    let mut crossings = 0;
    let mut prev_y = y_lo;
    let mut prev_f = f(y_lo);
    for i in 1..=scan {
        let y = y_lo + (y_hi - y_lo) * i as f64 / scan as f64;
        let fy = f(y);
        if prev_f == 0.0 || prev_f * fy < 0.0 {
            crossings += 1;
            if bracket.is_none() {
                bracket = Some(RootBracket::new(prev_y, y, prev_f, fy)?);
            }
        }
        prev_y = y;
        prev_f = fy;
    }
    if crossings > 1 {
        return Err(Error::OutOfRange(alloc::format!(
            "tangency condition for q = {q} changes sign {crossings} times"
        )));
    }
    let bracket = bracket.ok_or(Error::NoBracket { lo: y_lo, hi: y_hi })?;
    let y = bisect(f, bracket, DEFAULT_TOL)?;
    Ok(TangentLine {
        q,
        a: tangent_slope(q, y),
        y,
    })
}

const SPEED_TABLE_NODES: usize = 4096;

/// Cubic-Hermite tabulation of the tangent slope a(q) on `[0, q_max]`.
///
/// Node derivatives come from 5-point finite differences of the node values;
/// at 4096 nodes the interpolation error (~1e-11) is far below the Monte
/// Carlo resolution of the lower-bound pipeline that consumes it.
struct SpeedTable {
    step: f64,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl SpeedTable {
    fn build(q_max: f64) -> Result<Self, Error> {
        let n = SPEED_TABLE_NODES;
        let step = q_max / (n - 1) as f64;
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            values.push(tangent_line(i as f64 * step)?.a);
        }
        let h12 = 12.0 * step;
        let mut derivs = alloc::vec![0.0; n];
        for (i, d) in derivs.iter_mut().enumerate() {
            *d = if i >= 2 && i + 2 < n {
                (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / h12
            } else if i == 0 {
                (-25.0 * values[0] + 48.0 * values[1] - 36.0 * values[2] + 16.0 * values[3]
                    - 3.0 * values[4])
                    / h12
            } else if i == 1 {
                (-3.0 * values[0] - 10.0 * values[1] + 18.0 * values[2] - 6.0 * values[3]
                    + values[4])
                    / h12
            } else if i == n - 2 {
                (3.0 * values[n - 1] + 10.0 * values[n - 2] - 18.0 * values[n - 3]
                    + 6.0 * values[n - 4]
                    - values[n - 5])
                    / h12
            } else {
                (25.0 * values[n - 1] - 48.0 * values[n - 2] + 36.0 * values[n - 3]
                    - 16.0 * values[n - 4]
                    + 3.0 * values[n - 5])
                    / h12
            };
        }
        Ok(Self {
            step,
            values,
            derivs,
        })
    }

    fn eval(&self, q: f64) -> f64 {
        let scaled = (q / self.step).max(0.0);
        let i = (scaled as usize).min(self.values.len() - 2);
        let t = scaled - i as f64;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.values[i]
            + (t3 - 2.0 * t2 + t) * self.step * self.derivs[i]
            + (3.0 * t2 - 2.0 * t3) * self.values[i + 1]
            + (t3 - t2) * self.step * self.derivs[i + 1]
    }
}

/// Grid ladder and seeds for the Monte Carlo lower bound on alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGridSpec {
    /// Mean angular spacings, one scan rung each, coarse to fine.
    pub theta_spacings: Vec<f64>,
    /// Base spacing of the q ladder before halving.
    pub q_spacing: f64,
    /// Number of halvings; the ladder holds `q_halvings + 1` grids.
    pub q_halvings: usize,
    /// Upper cutoff of the q grids. The true maximizer must stay in the
    /// interior; see the cutoff check in [`alpha_lower`].
    pub q_max: f64,
    /// One independent replicate per seed; rung values are averaged over
    /// replicates before the angular extrapolation.
    pub seeds: Vec<u64>,
}

impl AlphaGridSpec {
    /// Default ladder: angular spacings `2pi/100 .. 2pi/800`, q spacing 0.1
    /// halved four times on `[0, 10]`, eight replicates derived from `seed`.
    pub fn with_seed(seed: u64) -> Self {
        Self {
            theta_spacings: (0..4).map(|r| TAU / (100u32 << r) as f64).collect(),
            q_spacing: 0.1,
            q_halvings: 4,
            q_max: 10.0,
            seeds: (0..8).map(|k| derive_seed(seed, &[k])).collect(),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.theta_spacings.len() < 3 {
            return Err(Error::DegenerateFit("fewer than three angular rungs"));
        }
        if self
            .theta_spacings
            .iter()
            .any(|&s| !(s > 0.0 && s < TAU) || !s.is_finite())
        {
            return Err(Error::OutOfRange(alloc::format!(
                "angular spacings {:?}",
                self.theta_spacings
            )));
        }
        if self.q_halvings < 2 {
            return Err(Error::DegenerateFit("fewer than three q-ladder grids"));
        }
        if !(self.q_spacing > 0.0 && self.q_max > self.q_spacing) {
            return Err(Error::OutOfRange(alloc::format!(
                "q ladder {} on [0, {}]",
                self.q_spacing,
                self.q_max
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::OutOfRange("no replicate seeds".into()));
        }
        Ok(())
    }
}

/// One scan rung: the min over a random angular grid of per-angle maxima
/// extrapolated down the q ladder.
///
/// The ladder grids are drawn once and shared by every angle in the rung, so
/// the min over angles compares values with common sampling noise instead of
/// chasing per-angle extremes.
fn alpha_rung(
    root_eps: f64,
    d_theta: f64,
    rung: usize,
    seed: u64,
    spec: &AlphaGridSpec,
    table: &SpeedTable,
) -> Result<f64, Error> {
    let theta_grid = random_grid(0.0, TAU, d_theta, derive_seed(seed, &[0, rung as u64]))?;
    let mut ladder = Vec::with_capacity(spec.q_halvings + 1);
    for j in 0..=spec.q_halvings {
        let spacing = spec.q_spacing / (1u32 << j) as f64;
        let grid = random_grid(
            0.0,
            spec.q_max,
            spacing,
            derive_seed(seed, &[1, rung as u64, j as u64]),
        )?;
        let speeds: Vec<f64> = grid
            .points
            .iter()
            .map(|&q| 2.0 / (PI * table.eval(q)))
            .collect();
        ladder.push((spacing, grid.points, speeds));
    }

    let mut best = f64::INFINITY;
    let mut best_peak = 0.0;
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(spec.q_halvings + 1);
    for &theta in &theta_grid.points {
        let base = 1.0 - root_eps * libm::cos(theta);
        let gain = root_eps * libm::sin(theta);
        samples.clear();
        let mut finest_peak = 0.0;
        for (spacing, qs, speeds) in &ladder {
            let mut max_v = f64::NEG_INFINITY;
            let mut peak = 0.0;
            for (&q, &c) in qs.iter().zip(speeds) {
                let v = (base + gain * q) * c;
                if v > max_v {
                    max_v = v;
                    peak = q;
                }
            }
            samples.push((*spacing, max_v));
            finest_peak = peak;
        }
        let value = extrapolate_linear(&samples)?.value_at_zero;
        if value < best {
            best = value;
            best_peak = finest_peak;
        }
    }
    if best_peak >= 0.9 * spec.q_max {
        // The supremum is meant to sit well inside the cutoff.
        return Err(Error::GridCutoff { q_max: spec.q_max });
    }
    Ok(best)
}

/// Monte Carlo lower bound on alpha: min over angles of the max over `q` of
/// `[1 - sqrt(eps)(cos theta - q sin theta)] * 2 / (pi a(q))`.
///
/// Per rung, the per-angle q maxima are extrapolated linearly in the ladder
/// spacing and the minimum over the angular grid is averaged over replicate
/// seeds; the rung means are then extrapolated against the squared angular
/// spacing (the empirical convergence law of the grid minimum), with the fit
/// residual reported as the error bar.
pub fn alpha_lower(eps: f64, spec: &AlphaGridSpec) -> Result<ExtrapolationResult, Error> {
    check_unit("eps", eps)?;
    spec.validate()?;
    if eps == 1.0 {
        // The integrand vanishes identically at theta = 0.
        return Ok(ExtrapolationResult::exact(0.0));
    }
    let table = SpeedTable::build(spec.q_max)?;
    let root_eps = libm::sqrt(eps);
    let mut rungs = Vec::with_capacity(spec.theta_spacings.len());
    for (r, &d_theta) in spec.theta_spacings.iter().enumerate() {
        let mut acc = 0.0;
        for &seed in &spec.seeds {
            acc += alpha_rung(root_eps, d_theta, r, seed, spec, &table)?;
        }
        rungs.push((d_theta * d_theta, acc / spec.seeds.len() as f64));
    }
    extrapolate_linear(&rungs)
}

/// Residual whose root in `z` locates the stationary two-level weight; also
/// reused in `eps` by [`touch_epsilon`].
fn upper_stationarity(eps: f64, z: f64) -> f64 {
    let w = 2.0 * z * (1.0 - z);
    let arg = ((eps - 1.0 + w) / w).clamp(-1.0, 1.0);
    libm::acos(arg)
        - ((1.0 - 2.0 * z) / (1.0 - z)) * libm::sqrt((1.0 - eps) / (eps - 1.0 + 2.0 * w))
}

/// Two-level upper bound on alpha: the normalized first-crossing time
/// `(2/pi) z arccos[(eps - 1 + 2z(1-z)) / (2z(1-z))]` minimized over the
/// excited-level weight `z`.
///
/// The stationarity residual runs from `-inf` at the reachability edge
/// `z = (1 - sqrt(eps))/2` to a nonnegative value at `z = 1/2`; 200 fixed
/// halvings pin its root to full precision without endpoint evaluation.
pub fn alpha_upper(eps: f64) -> Result<f64, Error> {
    check_unit("eps", eps)?;
    if eps == 0.0 {
        return Ok(1.0);
    }
    if eps == 1.0 {
        return Ok(0.0);
    }
    let mut lo = 0.5 * (1.0 - libm::sqrt(eps));
    let mut hi = 0.5;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if upper_stationarity(eps, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z = 0.5 * (lo + hi);
    let w = 2.0 * z * (1.0 - z);
    let arg = ((eps - 1.0 + w) / w).clamp(-1.0, 1.0);
    Ok((2.0 / PI) * z * libm::acos(arg))
}

/// Lower and upper alpha evaluations for one `eps`, reconciled.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaEstimate {
    pub epsilon: f64,
    pub lower: ExtrapolationResult,
    pub upper: f64,
    /// The value downstream consumers should use; the closed-form upper
    /// branch, which is deterministic and smooth, with the Monte Carlo lower
    /// bound serving as its certificate.
    pub reconciled: f64,
    pub compatible: bool,
}

/// Runs both alpha branches and checks they agree within
/// `max(error_bar, 1e-3)`; disagreement is an implementation bug, not a
/// data point, hence an error.
pub fn alpha(eps: f64, spec: &AlphaGridSpec) -> Result<AlphaEstimate, Error> {
    let lower = alpha_lower(eps, spec)?;
    let upper = alpha_upper(eps)?;
    let gap = upper - lower.value_at_zero;
    if gap.abs() > lower.error_bar.max(1e-3) {
        return Err(Error::Incompatible {
            eps,
            lower: lower.value_at_zero,
            error_bar: lower.error_bar,
            upper,
        });
    }
    Ok(AlphaEstimate {
        epsilon: eps,
        lower,
        upper,
        reconciled: upper,
        compatible: true,
    })
}

pub const ALPHA_TABLE_NODES: usize = 2048;

/// Strictly decreasing tabulation of the reconciled alpha with monotone
/// cubic interpolation, rebuilt per run.
///
/// Nodes are uniform in `sqrt(eps)`, which resolves the steep approach to
/// `alpha(1) = 0` without wasting density near 0.
#[derive(Debug, Clone)]
pub struct AlphaTable {
    eps_nodes: Vec<f64>,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl AlphaTable {
    pub fn build() -> Result<Self, Error> {
        let n = ALPHA_TABLE_NODES;
        let mut eps_nodes = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let root = i as f64 / (n - 1) as f64;
            let eps = root * root;
            eps_nodes.push(eps);
            values.push(alpha_upper(eps)?);
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::DegenerateFit("alpha tabulation is not decreasing"));
        }
        let derivs = monotone_derivatives(&eps_nodes, &values);
        Ok(Self {
            eps_nodes,
            values,
            derivs,
        })
    }

    /// Interpolated alpha.
    pub fn value(&self, eps: f64) -> Result<f64, Error> {
        check_unit("eps", eps)?;
        Ok(self.eval(eps))
    }

    fn eval(&self, eps: f64) -> f64 {
        let hi = self.eps_nodes.partition_point(|&x| x <= eps);
        if hi == self.eps_nodes.len() {
            return *self.values.last().expect("nonempty table");
        }
        let i = hi.saturating_sub(1).min(self.eps_nodes.len() - 2);
        let h = self.eps_nodes[i + 1] - self.eps_nodes[i];
        let t = (eps - self.eps_nodes[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.values[i]
            + (t3 - 2.0 * t2 + t) * h * self.derivs[i]
            + (3.0 * t2 - 2.0 * t3) * self.values[i + 1]
            + (t3 - t2) * h * self.derivs[i + 1]
    }

    /// Inverse of the interpolated alpha by bisection; exact at the
    /// endpoints since the tabulation anchors `alpha(0) = 1, alpha(1) = 0`.
    pub fn inverse(&self, level: f64) -> Result<f64, Error> {
        check_unit("level", level)?;
        let f = |eps: f64| self.eval(eps) - level;
        let bracket = RootBracket::new(0.0, 1.0, 1.0 - level, -level)?;
        bisect(f, bracket, DEFAULT_TOL)
    }
}

/// Shape-preserving cubic node derivatives (harmonic slope blending with
/// the usual one-sided endpoint rules); on strictly monotone data the
/// resulting Hermite interpolant is strictly monotone.
fn monotone_derivatives(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let slope: Vec<f64> = ys
        .windows(2)
        .zip(&h)
        .map(|(w, &dx)| (w[1] - w[0]) / dx)
        .collect();
    let mut d = alloc::vec![0.0; n];
    for i in 1..n - 1 {
        if slope[i - 1] * slope[i] > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
        }
    }
    let one_sided = |h0: f64, h1: f64, s0: f64, s1: f64| {
        let mut end = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if end * s0 <= 0.0 {
            end = 0.0;
        } else if s0 * s1 <= 0.0 && end.abs() > 3.0 * s0.abs() {
            end = 3.0 * s0;
        }
        end
    };
    d[0] = one_sided(h[0], h[1], slope[0], slope[1]);
    d[n - 1] = one_sided(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
    d
}

/// The rotation level at which the two-level state with excited weight
/// `xi^2` attains the alpha bound exactly: the root in `eps` of the same
/// stationarity residual that defines [`alpha_upper`], now at fixed weight.
///
/// Defined for `0 < xi <= 1/sqrt(2)`; the balanced state touches at
/// `eps = 0`, and heavier excited weights never minimize the crossing time
/// (of the two weights sharing a spread, the smaller reaches any level
/// sooner), so they touch nowhere.
pub fn touch_epsilon(xi: f64) -> Result<f64, Error> {
    let limit = libm::sqrt(0.5);
    if !(xi > 0.0 && xi <= limit + 1e-12) {
        return Err(Error::OutOfRange(alloc::format!(
            "xi {xi} outside (0, 1/sqrt(2)]"
        )));
    }
    let z = (xi * xi).min(0.5);
    if 0.5 - z < 1e-12 {
        return Ok(0.0);
    }
    let w = 2.0 * z * (1.0 - z);
    // Residual runs from -inf at the reachability edge eps = 1 - 2w to a
    // positive value as eps -> 1.
    let mut lo = 1.0 - 2.0 * w;
    let mut hi = 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if upper_stationarity(mid, z) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inputs of a speed-limit evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QslQuery {
    pub epsilon: f64,
    pub mean_energy: f64,
    pub spread: f64,
}

/// Which branch of the bound is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    MargolusLevitin,
    Heisenberg,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::MargolusLevitin => "ML",
            Regime::Heisenberg => "Heisenberg",
        }
    }
}

/// A speed-limit evaluation: the minimal time and the branch that set it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QslBound {
    pub time: f64,
    pub regime: Regime,
    pub alpha_value: f64,
    pub beta_value: f64,
}

/// Minimal time to rotate survival down to `epsilon`:
/// `max(alpha pi / (2 E), beta pi / (2 dE))` with `hbar = 1`.
///
/// Zero mean energy or spread makes the corresponding branch infinite (the
/// state cannot rotate); the energy branch classifies as Margolus-Levitin
/// when `dE / E >= beta / alpha`, compared in cross-multiplied form so zero
/// denominators need no cases.
pub fn qsl_time(query: &QslQuery) -> Result<QslBound, Error> {
    check_unit("eps", query.epsilon)?;
    if !(query.mean_energy >= 0.0 && query.mean_energy.is_finite())
        || !(query.spread >= 0.0 && query.spread.is_finite())
    {
        return Err(Error::OutOfRange(alloc::format!(
            "energy scales ({}, {})",
            query.mean_energy,
            query.spread
        )));
    }
    if query.mean_energy == 0.0 && query.spread == 0.0 && query.epsilon < 1.0 {
        return Err(Error::Undefined);
    }
    let alpha_value = alpha_upper(query.epsilon)?;
    let beta_value = beta(query.epsilon)?;
    let branch = |coeff: f64, scale: f64| {
        if scale > 0.0 {
            coeff * FRAC_PI_2 / scale
        } else if coeff > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    };
    let t_alpha = branch(alpha_value, query.mean_energy);
    let t_beta = branch(beta_value, query.spread);
    let regime = if query.spread * alpha_value >= query.mean_energy * beta_value {
        Regime::MargolusLevitin
    } else {
        Regime::Heisenberg
    };
    Ok(QslBound {
        time: t_alpha.max(t_beta),
        regime,
        alpha_value,
        beta_value,
    })
}

/// Horizon below which the forbidden floor is defined: the orthogonality
/// bound `max(pi/(2E), pi/(2 dE))`, infinite when either scale vanishes.
pub fn t_zero(mean_energy: f64, spread: f64) -> f64 {
    (FRAC_PI_2 / mean_energy).max(FRAC_PI_2 / spread)
}

/// Both branches of the forbidden-region floor at time `t`:
/// `(alpha_inverse(2 E t / pi), beta_inverse(2 dE t / pi))`.
///
/// A branch whose argument reaches 1 has run out of constraint and
/// contributes 0.
pub fn forbidden_floor_branches(
    t: f64,
    mean_energy: f64,
    spread: f64,
    table: &AlphaTable,
) -> Result<(f64, f64), Error> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange(alloc::format!("time {t}")));
    }
    if !(mean_energy >= 0.0 && mean_energy.is_finite()) || !(spread >= 0.0 && spread.is_finite()) {
        return Err(Error::OutOfRange(alloc::format!(
            "energy scales ({mean_energy}, {spread})"
        )));
    }
    let horizon = t_zero(mean_energy, spread);
    if t > horizon {
        return Err(Error::OutOfRange(alloc::format!(
            "time {t} beyond the orthogonality horizon {horizon}"
        )));
    }
    let arg_alpha = 2.0 * mean_energy * t / PI;
    let arg_beta = 2.0 * spread * t / PI;
    let floor_alpha = if arg_alpha >= 1.0 {
        0.0
    } else {
        table.inverse(arg_alpha)?
    };
    let floor_beta = if arg_beta >= 1.0 {
        0.0
    } else {
        beta_inverse(arg_beta)?
    };
    Ok((floor_alpha, floor_beta))
}

/// Survival probabilities below this value are unreachable at time `t` for
/// any state with the given mean energy and spread.
pub fn forbidden_floor(
    t: f64,
    mean_energy: f64,
    spread: f64,
    table: &AlphaTable,
) -> Result<f64, Error> {
    let (a, b) = forbidden_floor_branches(t, mean_energy, spread, table)?;
    Ok(a.max(b))
}
