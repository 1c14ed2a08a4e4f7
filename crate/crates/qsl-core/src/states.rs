//! Finite-spectrum state representations: energy spectra with a zero ground
//! level, pure states, density matrices in the energy eigenbasis, and
//! composite (tensor-product) states.
//!
//! Every spectrum is a finite ascending list whose first level is exactly 0.
//! That convention is load-bearing: the mean-energy branch of the speed
//! limit is meaningless if the ground energy floats.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::numerics::{CMatrix, HermitianMatrix, PSD_TOL};

/// Tolerance for unit-norm and unit-trace checks at construction.
pub const NORM_TOL: f64 = 1e-12;

/// Largest joint dimension a composite state may have.
pub const MAX_JOINT_DIM: usize = 4096;

/// Ascending energy levels with `levels[0] == 0` exactly.
///
/// Degenerate levels are allowed; amplitudes are tracked per index, not per
/// distinct energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum {
    levels: Vec<f64>,
}

impl EnergySpectrum {
    pub fn new(levels: Vec<f64>) -> Result<Self, Error> {
        if levels.is_empty() {
            return Err(Error::BadSpectrum("no levels"));
        }
        if levels.iter().any(|l| !l.is_finite()) {
            return Err(Error::BadSpectrum("non-finite level"));
        }
        if levels[0] != 0.0 {
            return Err(Error::BadSpectrum("ground level must be exactly zero"));
        }
        if levels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadSpectrum("levels must be ascending"));
        }
        Ok(Self { levels })
    }

    /// Sorts the input and subtracts the minimum so the ground level is 0.
    pub fn shift_to_zero_ground(mut levels: Vec<f64>) -> Result<Self, Error> {
        if levels.is_empty() {
            return Err(Error::BadSpectrum("no levels"));
        }
        if levels.iter().any(|l| !l.is_finite()) {
            return Err(Error::BadSpectrum("non-finite level"));
        }
        levels.sort_unstable_by(f64::total_cmp);
        let ground = levels[0];
        for l in &mut levels {
            *l -= ground;
        }
        levels[0] = 0.0;
        Self::new(levels)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level(&self, index: usize) -> f64 {
        self.levels[index]
    }

    pub fn max_level(&self) -> f64 {
        *self.levels.last().expect("spectrum is non-empty")
    }
}

/// A normalized superposition over the levels of one [`EnergySpectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    spectrum: EnergySpectrum,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Requires `amplitudes.len()` to match the spectrum and the norm to be
    /// 1 within [`NORM_TOL`].
    pub fn new(spectrum: EnergySpectrum, amplitudes: Vec<Complex64>) -> Result<Self, Error> {
        if amplitudes.len() != spectrum.len() {
            return Err(Error::BadDimension {
                dim: spectrum.len(),
                len: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite("state amplitude"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        let deviation = libm::fabs(norm_sq - 1.0);
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self {
            spectrum,
            amplitudes,
        })
    }

    /// Rescales the amplitudes to unit norm before constructing; fails only
    /// on zero or non-finite input.
    pub fn new_normalized(
        spectrum: EnergySpectrum,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, Error> {
        if amplitudes.len() != spectrum.len() {
            return Err(Error::BadDimension {
                dim: spectrum.len(),
                len: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        let scale = 1.0 / libm::sqrt(norm_sq);
        let rescaled = amplitudes.into_iter().map(|c| c * scale).collect();
        Self::new(spectrum, rescaled)
    }

    /// The eigenstate of level `index`.
    pub fn eigenstate(spectrum: EnergySpectrum, index: usize) -> Result<Self, Error> {
        if index >= spectrum.len() {
            return Err(Error::BadDimension {
                dim: spectrum.len(),
                len: index,
            });
        }
        let mut amplitudes = vec![Complex64::ZERO; spectrum.len()];
        amplitudes[index] = Complex64::ONE;
        Self::new(spectrum, amplitudes)
    }

    pub fn spectrum(&self) -> &EnergySpectrum {
        &self.spectrum
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Level populations `|c_n|^2`.
    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Mean energy `sum_n |c_n|^2 E_n`; nonnegative by the zero-ground convention.
    pub fn mean_energy(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(self.spectrum.levels())
            .map(|(c, &e)| c.norm_sqr() * e)
            .sum()
    }

    /// Energy spread `sqrt(sum_n |c_n|^2 (E_n - E)^2)`.
    pub fn energy_spread(&self) -> f64 {
        let mean = self.mean_energy();
        let var: f64 = self
            .amplitudes
            .iter()
            .zip(self.spectrum.levels())
            .map(|(c, &e)| c.norm_sqr() * (e - mean) * (e - mean))
            .sum();
        libm::sqrt(var.max(0.0))
    }
}

/// The two-level family `sqrt(1 - xi^2)|0> + xi|E0>`.
///
/// These states certify the closed-form upper bound on the speed-limit
/// prefactor: minimizing their crossing time over `xi` reproduces it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    xi: f64,
    e0: f64,
}

impl TwoLevelState {
    pub fn new(xi: f64, e0: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::OutOfRange(alloc::format!("xi {xi}")));
        }
        if !(e0 > 0.0) || !e0.is_finite() {
            return Err(Error::OutOfRange(alloc::format!("level gap {e0}")));
        }
        Ok(Self { xi, e0 })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn pure_state(&self) -> PureState {
        let spectrum = EnergySpectrum::new(vec![0.0, self.e0]).expect("valid two-level spectrum");
        let ground = libm::sqrt((1.0 - self.xi * self.xi).max(0.0));
        PureState::new(
            spectrum,
            vec![Complex64::new(ground, 0.0), Complex64::new(self.xi, 0.0)],
        )
        .expect("two-level amplitudes are normalized by construction")
    }

    /// `xi^2 E0`.
    pub fn mean_energy(&self) -> f64 {
        self.xi * self.xi * self.e0
    }

    /// `xi sqrt(1 - xi^2) E0`.
    pub fn energy_spread(&self) -> f64 {
        self.xi * libm::sqrt((1.0 - self.xi * self.xi).max(0.0)) * self.e0
    }
}

/// Unit-trace PSD Hermitian matrix in the energy eigenbasis of `spectrum`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    spectrum: EnergySpectrum,
    matrix: HermitianMatrix,
}

impl DensityMatrix {
    /// Validates dimension, unit trace within [`NORM_TOL`], and positive
    /// semidefiniteness within [`PSD_TOL`] (one dense eigendecomposition).
    pub fn new(spectrum: EnergySpectrum, matrix: HermitianMatrix) -> Result<Self, Error> {
        if matrix.dim() != spectrum.len() {
            return Err(Error::BadDimension {
                dim: spectrum.len(),
                len: matrix.dim(),
            });
        }
        let trace = matrix.as_matrix().trace().re;
        let deviation = libm::fabs(trace - 1.0);
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        let decomp = crate::numerics::eigh(&matrix)?;
        if let Some(&lambda) = decomp.values.first() {
            if lambda < -PSD_TOL {
                return Err(Error::NotPsd { eigenvalue: lambda });
            }
        }
        Ok(Self { spectrum, matrix })
    }

    /// Rank-1 projector onto a pure state; skips the PSD eigendecomposition.
    pub fn from_pure(state: &PureState) -> Self {
        let n = state.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, state.amplitudes[i] * state.amplitudes[j].conj());
            }
        }
        Self {
            spectrum: state.spectrum.clone(),
            matrix: HermitianMatrix::new(m).expect("projector is Hermitian by construction"),
        }
    }

    /// Internal constructor for matrices PSD by construction.
    pub(crate) fn trusted(spectrum: EnergySpectrum, matrix: HermitianMatrix) -> Self {
        Self { spectrum, matrix }
    }

    pub fn spectrum(&self) -> &EnergySpectrum {
        &self.spectrum
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    /// `tr(H rho)`, a diagonal sum because the basis diagonalizes `H`.
    pub fn mean_energy(&self) -> f64 {
        (0..self.dim())
            .map(|n| self.matrix.get(n, n).re * self.spectrum.level(n))
            .sum()
    }

    /// `sqrt(tr(H^2 rho) - E^2)`.
    pub fn energy_spread(&self) -> f64 {
        let mean = self.mean_energy();
        let second: f64 = (0..self.dim())
            .map(|n| {
                let e = self.spectrum.level(n);
                self.matrix.get(n, n).re * e * e
            })
            .sum();
        libm::sqrt((second - mean * mean).max(0.0))
    }
}

/// Mixes pure states sharing one spectrum into `sum_n p_n |phi_n><phi_n|`.
pub fn ensemble_to_density(probs: &[f64], states: &[PureState]) -> Result<DensityMatrix, Error> {
    validate_ensemble(probs, states)?;
    let spectrum = states[0].spectrum().clone();
    let n = spectrum.len();
    let mut m = CMatrix::zeros(n);
    for (p, state) in probs.iter().zip(states) {
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) + p * state.amplitudes[i] * state.amplitudes[j].conj();
                m.set(i, j, v);
            }
        }
    }
    let matrix = HermitianMatrix::new(m)?;
    // Convex mixture of projectors: PSD and unit trace by construction.
    Ok(DensityMatrix::trusted(spectrum, matrix))
}

pub(crate) fn validate_ensemble(probs: &[f64], states: &[PureState]) -> Result<(), Error> {
    if probs.is_empty() || probs.len() != states.len() {
        return Err(Error::BadProbabilities("count does not match states"));
    }
    if probs.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
        return Err(Error::BadProbabilities("probabilities must be positive"));
    }
    let total: f64 = probs.iter().sum();
    if libm::fabs(total - 1.0) > NORM_TOL {
        return Err(Error::BadProbabilities("probabilities must sum to 1"));
    }
    if states
        .windows(2)
        .any(|w| w[0].spectrum() != w[1].spectrum())
    {
        return Err(Error::SpectrumMismatch);
    }
    Ok(())
}

/// A state of `M` non-interacting subsystems.
///
/// The joint amplitude vector over the product spectrum is always stored
/// explicitly so separable and entangled states share one evolution path;
/// the factor list is kept only when the state was built as a product.
#[derive(Debug, Clone)]
pub struct CompositeState {
    factors: Option<Vec<PureState>>,
    subsystem_spectra: Vec<EnergySpectrum>,
    joint: PureState,
    /// Maps a row-major subsystem index tuple to its position in the
    /// energy-sorted joint spectrum.
    position: Vec<usize>,
}

impl CompositeState {
    /// Tensor product of normalized factors.
    pub fn from_factors(factors: Vec<PureState>) -> Result<Self, Error> {
        if factors.is_empty() {
            return Err(Error::OutOfRange("composite state needs factors".into()));
        }
        let spectra: Vec<EnergySpectrum> = factors.iter().map(|f| f.spectrum().clone()).collect();
        let layout = ProductLayout::new(&spectra)?;
        let mut joint_amps = vec![Complex64::ZERO; layout.dim];
        for (tuple_index, &pos) in layout.position.iter().enumerate() {
            let mut amp = Complex64::ONE;
            for (k, factor) in factors.iter().enumerate() {
                amp *= factor.amplitudes()[layout.digit(tuple_index, k)];
            }
            joint_amps[pos] = amp;
        }
        let joint = PureState::new(layout.spectrum()?, joint_amps)?;
        Ok(Self {
            factors: Some(factors),
            subsystem_spectra: spectra,
            joint,
            position: layout.position,
        })
    }

    /// Joint amplitudes indexed row-major over the subsystem levels
    /// (last subsystem varies fastest).
    pub fn from_joint(
        subsystem_spectra: Vec<EnergySpectrum>,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, Error> {
        if subsystem_spectra.is_empty() {
            return Err(Error::OutOfRange("composite state needs subsystems".into()));
        }
        let layout = ProductLayout::new(&subsystem_spectra)?;
        if amplitudes.len() != layout.dim {
            return Err(Error::BadDimension {
                dim: layout.dim,
                len: amplitudes.len(),
            });
        }
        let mut joint_amps = vec![Complex64::ZERO; layout.dim];
        for (tuple_index, amp) in amplitudes.into_iter().enumerate() {
            joint_amps[layout.position[tuple_index]] = amp;
        }
        let joint = PureState::new(layout.spectrum()?, joint_amps)?;
        Ok(Self {
            factors: None,
            subsystem_spectra,
            joint,
            position: layout.position,
        })
    }

    pub fn subsystem_count(&self) -> usize {
        self.subsystem_spectra.len()
    }

    pub fn subsystem_spectra(&self) -> &[EnergySpectrum] {
        &self.subsystem_spectra
    }

    /// The explicit joint state over the energy-sorted product spectrum.
    pub fn joint(&self) -> &PureState {
        &self.joint
    }

    pub fn factors(&self) -> Option<&[PureState]> {
        self.factors.as_deref()
    }

    pub fn is_separable(&self) -> bool {
        self.factors.is_some()
    }

    /// Joint amplitude of a subsystem index tuple.
    pub fn amplitude(&self, indices: &[usize]) -> Complex64 {
        let tuple_index = self.tuple_index(indices);
        self.joint.amplitudes()[self.position[tuple_index]]
    }

    fn tuple_index(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.subsystem_count());
        let mut acc = 0;
        for (spec, &i) in self.subsystem_spectra.iter().zip(indices) {
            assert!(i < spec.len());
            acc = acc * spec.len() + i;
        }
        acc
    }

    /// Reduced density matrix of subsystem `k` (partial trace over the rest).
    pub fn reduced_density(&self, k: usize) -> Result<DensityMatrix, Error> {
        let m = self.subsystem_count();
        if k >= m {
            return Err(Error::OutOfRange(alloc::format!("subsystem {k} of {m}")));
        }
        let dims: Vec<usize> = self.subsystem_spectra.iter().map(|s| s.len()).collect();
        let dk = dims[k];
        let stride: usize = dims[k + 1..].iter().product();
        let outer: usize = dims[..k].iter().product();
        let mut rho = CMatrix::zeros(dk);
        for o in 0..outer {
            for s in 0..stride {
                let base = o * dk * stride + s;
                for i in 0..dk {
                    let ci = self.joint.amplitudes()[self.position[base + i * stride]];
                    if ci == Complex64::ZERO {
                        continue;
                    }
                    for j in 0..dk {
                        let cj = self.joint.amplitudes()[self.position[base + j * stride]];
                        let v = rho.get(i, j) + ci * cj.conj();
                        rho.set(i, j, v);
                    }
                }
            }
        }
        let matrix = HermitianMatrix::new(rho)?;
        Ok(DensityMatrix::trusted(
            self.subsystem_spectra[k].clone(),
            matrix,
        ))
    }
}

/// Row-major layout of a product spectrum, with the permutation into
/// energy-sorted order.
struct ProductLayout {
    dims: Vec<usize>,
    dim: usize,
    sorted_levels: Vec<f64>,
    position: Vec<usize>,
}

impl ProductLayout {
    fn new(spectra: &[EnergySpectrum]) -> Result<Self, Error> {
        let dims: Vec<usize> = spectra.iter().map(|s| s.len()).collect();
        let mut dim = 1usize;
        for &d in &dims {
            dim = dim
                .checked_mul(d)
                .filter(|&v| v <= MAX_JOINT_DIM)
                .ok_or_else(|| {
                    Error::OutOfRange(alloc::format!("joint dimension exceeds {MAX_JOINT_DIM}"))
                })?;
        }
        // Sum energies per tuple, then sort by (energy, tuple index): ties
        // broken deterministically so layouts are reproducible.
        let mut entries: Vec<(f64, usize)> = Vec::with_capacity(dim);
        for tuple_index in 0..dim {
            let mut rest = tuple_index;
            let mut energy = 0.0;
            for (spec, &d) in spectra.iter().zip(&dims).rev() {
                energy += spec.level(rest % d);
                rest /= d;
            }
            entries.push((energy, tuple_index));
        }
        entries.sort_unstable_by(|a, b| f64::total_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        let mut position = vec![0usize; dim];
        let mut sorted_levels = Vec::with_capacity(dim);
        for (rank, &(energy, tuple_index)) in entries.iter().enumerate() {
            position[tuple_index] = rank;
            sorted_levels.push(energy);
        }
        Ok(Self {
            dims,
            dim,
            sorted_levels,
            position,
        })
    }

    fn spectrum(&self) -> Result<EnergySpectrum, Error> {
        let mut levels = self.sorted_levels.clone();
        // The all-ground tuple sums exactly to zero; clear any -0.0.
        levels[0] = 0.0;
        EnergySpectrum::new(levels)
    }

    /// Subsystem index of `tuple_index` at position `k`.
    fn digit(&self, tuple_index: usize, k: usize) -> usize {
        let stride: usize = self.dims[k + 1..].iter().product();
        (tuple_index / stride) % self.dims[k]
    }
}

/// Product state `|psi_1> ... |psi_M>`; energies add, variances add.
pub fn composite_product(factors: Vec<PureState>) -> Result<CompositeState, Error> {
    CompositeState::from_factors(factors)
}

/// The M-partite family `sqrt(1 - xi^2)|0...0> + xi|E0...E0>`: all subsystems
/// share the two-level spectrum `{0, E0}` and only the two extreme product
/// levels are populated.
pub fn entangled_family(xi: f64, e0: f64, m: usize) -> Result<CompositeState, Error> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::OutOfRange(alloc::format!("xi {xi}")));
    }
    if !(e0 > 0.0) || !e0.is_finite() {
        return Err(Error::OutOfRange(alloc::format!("level gap {e0}")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("need at least one subsystem".into()));
    }
    let dim = 1usize
        .checked_shl(m as u32)
        .filter(|&d| d <= MAX_JOINT_DIM)
        .ok_or_else(|| Error::OutOfRange(alloc::format!("2^{m} exceeds {MAX_JOINT_DIM}")))?;
    let spectra: Vec<EnergySpectrum> = (0..m)
        .map(|_| EnergySpectrum::new(vec![0.0, e0]))
        .collect::<Result<_, _>>()?;
    let mut amplitudes = vec![Complex64::ZERO; dim];
    let ground = libm::sqrt((1.0 - xi * xi).max(0.0));
    amplitudes[0] = Complex64::new(ground, 0.0);
    amplitudes[dim - 1] = Complex64::new(xi, 0.0);
    CompositeState::from_joint(spectra, amplitudes)
}
