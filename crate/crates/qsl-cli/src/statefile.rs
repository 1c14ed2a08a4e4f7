//! JSON state files: pure states, mixtures, and composite states. Parse
//! failures and inconsistent data are exit-65 errors.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qsl_core::states::{
    composite_product, ensemble_to_density, CompositeState, DensityMatrix, EnergySpectrum,
    PureState,
};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct PureFile {
    levels: Vec<f64>,
    amplitudes_re: Vec<f64>,
    amplitudes_im: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct JointFile {
    spectra: Vec<Vec<f64>>,
    amplitudes_re: Vec<f64>,
    amplitudes_im: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StateFile {
    Density {
        probs: Vec<f64>,
        states: Vec<PureFile>,
    },
    Product {
        factors: Vec<PureFile>,
    },
    Joint {
        joint: JointFile,
    },
    Pure(PureFile),
}

pub enum LoadedState {
    Pure(PureState),
    Density(DensityMatrix),
    Composite(CompositeState),
}

fn data<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Data(err.to_string())
}

/// Ascending levels, shifted so the ground level is exactly zero.
fn spectrum(mut levels: Vec<f64>) -> Result<EnergySpectrum, CliError> {
    if let Some(&ground) = levels.first() {
        if ground != 0.0 {
            for l in &mut levels {
                *l -= ground;
            }
            if let Some(first) = levels.first_mut() {
                *first = 0.0;
            }
        }
    }
    EnergySpectrum::new(levels).map_err(data)
}

fn amplitudes(re: &[f64], im: &[f64]) -> Result<Vec<Complex64>, CliError> {
    if re.len() != im.len() {
        return Err(CliError::Data(format!(
            "{} real amplitudes but {} imaginary",
            re.len(),
            im.len()
        )));
    }
    Ok(re
        .iter()
        .zip(im)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect())
}

fn pure(file: &PureFile) -> Result<PureState, CliError> {
    let spectrum = spectrum(file.levels.clone())?;
    let amps = amplitudes(&file.amplitudes_re, &file.amplitudes_im)?;
    PureState::new_normalized(spectrum, amps).map_err(data)
}

pub fn load(path: &Path) -> Result<LoadedState, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("state file {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("state file {}: {e}", path.display())))?;
    match file {
        StateFile::Pure(p) => Ok(LoadedState::Pure(pure(&p)?)),
        StateFile::Density { probs, states } => {
            let states = states
                .iter()
                .map(pure)
                .collect::<Result<Vec<PureState>, CliError>>()?;
            Ok(LoadedState::Density(
                ensemble_to_density(&probs, &states).map_err(data)?,
            ))
        }
        StateFile::Product { factors } => {
            let factors = factors
                .iter()
                .map(pure)
                .collect::<Result<Vec<PureState>, CliError>>()?;
            Ok(LoadedState::Composite(
                composite_product(factors).map_err(data)?,
            ))
        }
        StateFile::Joint { joint } => {
            let spectra = joint
                .spectra
                .into_iter()
                .map(spectrum)
                .collect::<Result<Vec<EnergySpectrum>, CliError>>()?;
            let mut amps = amplitudes(&joint.amplitudes_re, &joint.amplitudes_im)?;
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(CliError::Data(
                    "joint amplitudes are not normalizable".into(),
                ));
            }
            for a in &mut amps {
                *a /= norm;
            }
            Ok(LoadedState::Composite(
                CompositeState::from_joint(spectra, amps).map_err(data)?,
            ))
        }
    }
}
