//! Deterministic numerical kernels: bisection, seeded random grids,
//! least-squares extrapolation to zero spacing, and a dense Hermitian
//! eigensolver for desk-scale matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Error;

/// Default abscissa tolerance for bisection-based solvers.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest matrix dimension the dense eigensolver accepts.
pub const MAX_EIGH_DIM: usize = 64;

/// A sign-change interval for a scalar function.
#[derive(Debug, Clone, Copy)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    /// Validates `lo < hi` and `f_lo * f_hi <= 0`.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, Error> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::BadInterval { lo, hi });
        }
        if !f_lo.is_finite() || !f_hi.is_finite() {
            return Err(Error::NonFinite("bracket endpoints"));
        }
        if f_lo * f_hi > 0.0 {
            return Err(Error::NoBracket { lo, hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at the endpoints and validates the bracket.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self, Error> {
        Self::new(lo, hi, f(lo), f(hi))
    }
}

/// Bisects `f` over `bracket` until the interval width drops below `tol`.
///
/// Deterministic for fixed inputs; returns the interval midpoint.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: RootBracket, tol: f64) -> Result<f64, Error> {
    if !(tol > 0.0) {
        return Err(Error::OutOfRange(alloc::format!("tolerance {tol}")));
    }
    let RootBracket {
        mut lo,
        mut hi,
        mut f_lo,
        ..
    } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer representable
        }
        let f_mid = f(mid);
        if !f_mid.is_finite() {
            return Err(Error::NonFinite("bisection"));
        }
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sorted i.i.d.-uniform sample points with a target mean spacing.
#[derive(Debug, Clone)]
pub struct RandomGrid {
    pub points: Vec<f64>,
    pub target_spacing: f64,
    pub seed: u64,
}

/// Draws `round((hi - lo) / spacing)` uniform points in the open interval
/// `(lo, hi)` and sorts them. Reproducible for a fixed seed.
pub fn random_grid(lo: f64, hi: f64, spacing: f64, seed: u64) -> Result<RandomGrid, Error> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::BadInterval { lo, hi });
    }
    if !(spacing > 0.0 && spacing < hi - lo) {
        return Err(Error::OutOfRange(alloc::format!("grid spacing {spacing}")));
    }
    let count = (libm::round((hi - lo) / spacing) as usize).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<f64> = (0..count)
        .map(|_| lo + (hi - lo) * unit_uniform(&mut rng))
        .collect();
    points.sort_unstable_by(f64::total_cmp);
    Ok(RandomGrid {
        points,
        target_spacing: spacing,
        seed,
    })
}

/// Uniform draw strictly inside (0, 1): 53-bit mantissa, half-step offset.
fn unit_uniform<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Derives an independent sub-seed from a base seed and a tag path.
///
/// Splitmix64-style mixing; the result depends only on `(seed, tags)`, so
/// work can be partitioned arbitrarily without changing any draw.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut acc = mix(seed);
    for &t in tags {
        acc = mix(acc ^ mix(t));
    }
    acc
}

/// Intercept of a least-squares line through (spacing, value) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationResult {
    pub value_at_zero: f64,
    pub error_bar: f64,
    pub chi_squared: f64,
    /// Input samples sorted by strictly decreasing spacing.
    pub samples: Vec<(f64, f64)>,
}

impl ExtrapolationResult {
    /// An exact result carrying no extrapolation uncertainty.
    pub fn exact(value: f64) -> Self {
        Self {
            value_at_zero: value,
            error_bar: 0.0,
            chi_squared: 0.0,
            samples: Vec::new(),
        }
    }
}

/// Fits `value = b + m * spacing` by unweighted least squares and reports the
/// intercept `b` with its standard error from the residual variance.
pub fn extrapolate_linear(samples: &[(f64, f64)]) -> Result<ExtrapolationResult, Error> {
    if samples.len() < 3 {
        return Err(Error::DegenerateFit("fewer than three samples"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| f64::total_cmp(&b.0, &a.0));
    for pair in sorted.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::DegenerateFit("duplicate spacings"));
        }
    }
    let n = sorted.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(s, v) in &sorted {
        if !(s > 0.0) || !v.is_finite() {
            return Err(Error::NonFinite("extrapolation sample"));
        }
        sx += s;
        sy += v;
        sxx += s * s;
        sxy += s * v;
    }
    let det = n * sxx - sx * sx;
    if det <= f64::EPSILON * n * sxx {
        return Err(Error::DegenerateFit("spacings too close to resolve"));
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    let chi_squared: f64 = sorted
        .iter()
        .map(|&(s, v)| {
            let r = v - intercept - slope * s;
            r * r
        })
        .sum();
    let variance = chi_squared / (n - 2.0);
    let error_bar = libm::sqrt((variance * sxx / det).max(0.0));
    Ok(ExtrapolationResult {
        value_at_zero: intercept,
        error_bar,
        chi_squared,
        samples: sorted,
    })
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Result<Self, Error> {
        if data.len() != dim * dim || dim == 0 {
            return Err(Error::BadDimension {
                dim,
                len: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn frobenius_distance(&self, rhs: &Self) -> f64 {
        debug_assert_eq!(self.dim, rhs.dim);
        libm::sqrt(
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum(),
        )
    }
}

/// Tolerance for the elementwise Hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A matrix validated to equal its conjugate transpose within [`HERMITICITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
}

impl HermitianMatrix {
    /// Validates Hermiticity elementwise and forces an exactly symmetric
    /// representation (off-diagonal pairs averaged, diagonals made real).
    pub fn new(matrix: CMatrix) -> Result<Self, Error> {
        let n = matrix.dim();
        let mut max_dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let dev = (matrix.get(i, j) - matrix.get(j, i).conj()).norm();
                max_dev = max_dev.max(dev);
            }
        }
        if max_dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev });
        }
        let mut sym = matrix;
        for i in 0..n {
            for j in i..n {
                if i == j {
                    let re = sym.get(i, i).re;
                    sym.set(i, i, Complex64::new(re, 0.0));
                } else {
                    let avg = 0.5 * (sym.get(i, j) + sym.get(j, i).conj());
                    sym.set(i, j, avg);
                    sym.set(j, i, avg.conj());
                }
            }
        }
        Ok(Self { inner: sym })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner.get(row, col)
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }
}

/// Ascending eigenvalues with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    pub values: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Unconditionally convergent for Hermitian input; intended for `dim <= 64`.
pub fn eigh(m: &HermitianMatrix) -> Result<Eigendecomposition, Error> {
    let n = m.dim();
    if n > MAX_EIGH_DIM {
        return Err(Error::OutOfRange(alloc::format!("eigh dimension {n}")));
    }
    let mut w = m.as_matrix().clone();
    let mut v = CMatrix::identity(n);
    let scale = w.frobenius_norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += w.get(i, j).norm_sqr();
                }
            }
        }
        if libm::sqrt(off) <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // Unitary 2x2 block U = [[c, s], [-s*e^{-i phi}, c*e^{-i phi}]]
                // with e^{i phi} the phase of a_pq; zeroes the (p,q) entry.
                let phase = apq / mag;
                let tau = (w.get(q, q).re - w.get(p, p).re) / (2.0 * mag);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (libm::fabs(tau) + libm::sqrt(1.0 + tau * tau));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let upp = Complex64::new(c, 0.0);
                let upq = Complex64::new(s, 0.0);
                let uqp = -s * phase.conj();
                let uqq = c * phase.conj();
                // Columns: A <- A U, V <- V U.
                for i in 0..n {
                    let aip = w.get(i, p);
                    let aiq = w.get(i, q);
                    w.set(i, p, aip * upp + aiq * uqp);
                    w.set(i, q, aip * upq + aiq * uqq);
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * upp + viq * uqp);
                    v.set(i, q, vip * upq + viq * uqq);
                }
                // Rows: A <- U^dagger A.
                for j in 0..n {
                    let apj = w.get(p, j);
                    let aqj = w.get(q, j);
                    w.set(p, j, upp.conj() * apj + uqp.conj() * aqj);
                    w.set(q, j, upq.conj() * apj + uqq.conj() * aqj);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f64::total_cmp(&w.get(a, a).re, &w.get(b, b).re));
    let values: Vec<f64> = order.iter().map(|&i| w.get(i, i).re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(Eigendecomposition { values, vectors })
}

/// Eigenvalues below this threshold fail the PSD check; values in
/// `[-PSD_TOL, 0)` are clamped to zero (floating-point drift).
pub const PSD_TOL: f64 = 1e-12;

/// Principal square root of a positive-semidefinite Hermitian matrix.
pub fn matrix_sqrt_psd(m: &HermitianMatrix) -> Result<HermitianMatrix, Error> {
    let decomp = eigh(m)?;
    let n = m.dim();
    let mut roots = Vec::with_capacity(n);
    for &lambda in &decomp.values {
        if lambda < -PSD_TOL {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        roots.push(libm::sqrt(lambda.max(0.0)));
    }
    // V diag(sqrt(lambda)) V^dagger, then exact symmetrization.
    let v = &decomp.vectors;
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for (k, &r) in roots.iter().enumerate() {
                acc += v.get(i, k) * r * v.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    HermitianMatrix::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn bisect_linear_root() {
        let f = |x: f64| x - 0.5;
        let bracket = RootBracket::from_fn(f, 0.0, 1.0).unwrap();
        let root = bisect(f, bracket, 1e-12).unwrap();
        assert!((root - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bisect_cosine_root() {
        let f = |x: f64| libm::cos(x);
        let bracket = RootBracket::from_fn(f, 1.0, 2.0).unwrap();
        let root = bisect(f, bracket, 1e-12).unwrap();
        assert!((root - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn bisect_tangent_abscissa_limit_case() {
        // sin y = 2y / (1 + y^2) on [pi/2 + 0.1, pi]; oracle below scans
        // a dense grid for the same sign change.
        let f = |y: f64| libm::sin(y) - 2.0 * y / (1.0 + y * y);
        let bracket = RootBracket::from_fn(f, FRAC_PI_2 + 0.1, PI).unwrap();
        let root = bisect(f, bracket, 1e-12).unwrap();

        let lo = FRAC_PI_2 + 0.1;
        let steps = 1_000_000;
        let mut oracle = None;
        let mut prev = f(lo);
        for k in 1..=steps {
            let y = lo + (PI - lo) * k as f64 / steps as f64;
            let cur = f(y);
            if prev * cur <= 0.0 {
                oracle = Some(y);
                break;
            }
            prev = cur;
        }
        let oracle = oracle.expect("dense scan must find the sign change");
        assert!((root - oracle).abs() < 1e-5);
        assert!((root - 2.331122).abs() < 1e-5);
        let a = 2.0 * root / (1.0 + root * root);
        assert!((a - 0.724611).abs() < 1e-5);
    }

    #[test]
    fn bisect_rejects_missing_bracket() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(
            RootBracket::from_fn(f, 0.0, 1.0),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn bisect_is_deterministic() {
        let f = |x: f64| libm::cos(x) - x;
        let bracket = RootBracket::from_fn(f, 0.0, 1.0).unwrap();
        let a = bisect(f, bracket, 1e-12).unwrap();
        let b = bisect(f, bracket, 1e-12).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn random_grid_is_reproducible_and_contained() {
        let g1 = random_grid(0.0, 1.0, 0.1, 7).unwrap();
        let g2 = random_grid(0.0, 1.0, 0.1, 7).unwrap();
        assert_eq!(g1.points, g2.points);
        assert_eq!(g1.points.len(), 10);
        assert!(g1.points.iter().all(|&p| p > 0.0 && p < 1.0));
        assert!(g1.points.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn random_grid_mean_gap_tracks_spacing() {
        let g = random_grid(0.0, 2.0 * PI, 0.01, 1).unwrap();
        let n = g.points.len();
        assert!(n > 600 && n < 660, "expected ~628 points, got {n}");
        let mean_gap: f64 = g.points.windows(2).map(|w| w[1] - w[0]).sum::<f64>() / (n - 1) as f64;
        assert!(
            (0.008..=0.012).contains(&mean_gap),
            "mean gap {mean_gap} outside [0.008, 0.012]"
        );
    }

    #[test]
    fn random_grid_coarse_interval() {
        let g = random_grid(0.0, 1.0, 0.5, 3).unwrap();
        assert!(!g.points.is_empty());
        assert!(g.points.iter().all(|&p| p > 0.0 && p < 1.0));
    }

    #[test]
    fn derive_seed_depends_on_path() {
        let a = derive_seed(42, &[1, 2]);
        let b = derive_seed(42, &[2, 1]);
        let c = derive_seed(42, &[1, 2]);
        assert_eq!(a, c);
        assert_ne!(a, b);
    }

    #[test]
    fn extrapolation_recovers_exact_line() {
        let samples = [(0.1, 1.0 - 0.2), (0.05, 1.0 - 0.1), (0.025, 1.0 - 0.05)];
        let r = extrapolate_linear(&samples).unwrap();
        assert!((r.value_at_zero - 1.0).abs() < 1e-12);
        assert!(r.error_bar < 1e-12);
        assert!(r.chi_squared < 1e-20);
    }

    #[test]
    fn extrapolation_matches_normal_equations() {
        // Oracle: direct 2x2 normal-equation solve for the same samples.
        let samples = [(0.1, 0.95), (0.05, 0.97), (0.025, 0.99)];
        let r = extrapolate_linear(&samples).unwrap();
        let n = 3.0;
        let sx: f64 = samples.iter().map(|s| s.0).sum();
        let sy: f64 = samples.iter().map(|s| s.1).sum();
        let sxx: f64 = samples.iter().map(|s| s.0 * s.0).sum();
        let sxy: f64 = samples.iter().map(|s| s.0 * s.1).sum();
        let intercept = (sxx * sy - sx * sxy) / (n * sxx - sx * sx);
        assert!((r.value_at_zero - intercept).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_constant_data_has_zero_slope() {
        let samples = [(0.1, 0.42), (0.05, 0.42), (0.025, 0.42), (0.0125, 0.42)];
        let r = extrapolate_linear(&samples).unwrap();
        assert!((r.value_at_zero - 0.42).abs() < 1e-12);
        assert!(r.error_bar < 1e-12);
    }

    #[test]
    fn extrapolation_rejects_degenerate_input() {
        assert!(matches!(
            extrapolate_linear(&[(0.1, 1.0), (0.1, 1.1), (0.1, 0.9)]),
            Err(Error::DegenerateFit(_))
        ));
        assert!(matches!(
            extrapolate_linear(&[(0.1, 1.0), (0.05, 1.0)]),
            Err(Error::DegenerateFit(_))
        ));
    }

    fn hermitian(dim: usize, entries: &[(usize, usize, f64, f64)]) -> HermitianMatrix {
        let mut m = CMatrix::zeros(dim);
        for &(i, j, re, im) in entries {
            m.set(i, j, Complex64::new(re, im));
            if i != j {
                m.set(j, i, Complex64::new(re, -im));
            }
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn eigh_identity() {
        let m = HermitianMatrix::from_diagonal(&[1.0, 1.0, 1.0]);
        let d = eigh(&m).unwrap();
        assert_eq!(d.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigh_diagonal_passthrough() {
        let m = HermitianMatrix::from_diagonal(&[0.0, 2.0]);
        let d = eigh(&m).unwrap();
        assert!((d.values[0] - 0.0).abs() < 1e-14);
        assert!((d.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_pauli_x() {
        let m = hermitian(2, &[(0, 1, 1.0, 0.0)]);
        let d = eigh(&m).unwrap();
        assert!((d.values[0] + 1.0).abs() < 1e-12);
        assert!((d.values[1] - 1.0).abs() < 1e-12);
    }

    /// Checks `m = V diag(values) V^dagger` and unitarity of `V`.
    fn assert_decomposition(m: &HermitianMatrix, d: &Eigendecomposition, tol: f64) {
        let n = m.dim();
        let v = &d.vectors;
        let mut lam = CMatrix::zeros(n);
        for (i, &val) in d.values.iter().enumerate() {
            lam.set(i, i, Complex64::new(val, 0.0));
        }
        let rebuilt = v.mul(&lam).mul(&v.adjoint());
        assert!(
            rebuilt.frobenius_distance(m.as_matrix()) < tol,
            "reconstruction error {}",
            rebuilt.frobenius_distance(m.as_matrix())
        );
        let gram = v.adjoint().mul(v);
        assert!(gram.frobenius_distance(&CMatrix::identity(n)) < tol);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2usize, 3, 5, 8, 13] {
            let mut m = CMatrix::zeros(dim);
            for i in 0..dim {
                for j in i..dim {
                    let re = 2.0 * unit_uniform(&mut rng) - 1.0;
                    let im = if i == j {
                        0.0
                    } else {
                        2.0 * unit_uniform(&mut rng) - 1.0
                    };
                    m.set(i, j, Complex64::new(re, im));
                    m.set(j, i, Complex64::new(re, -im));
                }
            }
            let h = HermitianMatrix::new(m).unwrap();
            let d = eigh(&h).unwrap();
            assert_decomposition(&h, &d, 1e-10);
            assert!(d.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigh_invariant_under_unitary_conjugation() {
        // Conjugating by the eigenvector matrix of another Hermitian matrix
        // must leave the spectrum unchanged.
        let h = hermitian(
            3,
            &[
                (0, 0, 0.3, 0.0),
                (1, 1, -0.2, 0.0),
                (2, 2, 1.1, 0.0),
                (0, 1, 0.4, 0.2),
                (0, 2, -0.1, 0.5),
                (1, 2, 0.25, -0.3),
            ],
        );
        let u_src = hermitian(3, &[(0, 1, 0.7, 0.1), (1, 2, -0.4, 0.6), (0, 2, 0.2, 0.2)]);
        let u = eigh(&u_src).unwrap().vectors;
        let conj = u.adjoint().mul(h.as_matrix()).mul(&u);
        let h2 = HermitianMatrix::new(conj).unwrap();
        let d1 = eigh(&h).unwrap();
        let d2 = eigh(&h2).unwrap();
        for (a, b) in d1.values.iter().zip(&d2.values) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn sqrt_diagonal() {
        let m = HermitianMatrix::from_diagonal(&[4.0, 9.0]);
        let r = matrix_sqrt_psd(&m).unwrap();
        assert!((r.get(0, 0).re - 2.0).abs() < 1e-12);
        assert!((r.get(1, 1).re - 3.0).abs() < 1e-12);
        assert!(r.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let m = hermitian(
            3,
            &[
                (0, 0, 2.0, 0.0),
                (1, 1, 1.5, 0.0),
                (2, 2, 1.0, 0.0),
                (0, 1, 0.3, 0.1),
                (1, 2, -0.2, 0.2),
            ],
        );
        // Shift to guarantee PSD: eigenvalues of the above lie well inside (0, 3).
        let r = matrix_sqrt_psd(&m).unwrap();
        let sq = r.as_matrix().mul(r.as_matrix());
        assert!(sq.frobenius_distance(m.as_matrix()) < 1e-9);
    }

    #[test]
    fn sqrt_projector_is_itself() {
        // Rank-1 projector onto (1, i)/sqrt(2).
        let mut m = CMatrix::zeros(2);
        m.set(0, 0, Complex64::new(0.5, 0.0));
        m.set(0, 1, Complex64::new(0.0, -0.5));
        m.set(1, 0, Complex64::new(0.0, 0.5));
        m.set(1, 1, Complex64::new(0.5, 0.0));
        let h = HermitianMatrix::new(m).unwrap();
        let r = matrix_sqrt_psd(&h).unwrap();
        assert!(r.as_matrix().frobenius_distance(h.as_matrix()) < 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative_eigenvalue() {
        let m = HermitianMatrix::from_diagonal(&[1.0, -0.5]);
        assert!(matches!(matrix_sqrt_psd(&m), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn hermitian_constructor_rejects_asymmetry() {
        let mut m = CMatrix::zeros(2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        m.set(1, 0, Complex64::new(0.5, 0.0));
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }
}
