//! Pinned parameter sets for the reference spectra, sweeps and mode sets.

use clap::ValueEnum;
use drumhead::Normalization;
use serde::Deserialize;

use crate::options::{Axis, ModesArgs, Range, ScanArgs, SolveArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    /// Concentric spectrum, sigma = 3.125, k = 0.4.
    Table1,
    /// Eccentric spectrum, k = 0.29, eps = 0.18.
    Table2,
    /// Eccentric spectrum, k = 0.4, eps = 0.18.
    Table3,
    /// Normalized spectrum against sigma at k = 0.4.
    Fig5,
    /// Harmonicity map over sigma and k.
    Fig6,
    /// First 20 modes of the most harmonic concentric loading.
    Fig7,
    /// Spectrum against eccentricity at sigma = 3.125, k = 0.29.
    Fig8,
    /// First 20 modes of the eccentric loading of table2.
    Fig9,
}

const XI: f64 = 0.091;

impl Recipe {
    pub fn command(self) -> &'static str {
        match self {
            Recipe::Table1 | Recipe::Table2 | Recipe::Table3 => "solve",
            Recipe::Fig5 | Recipe::Fig6 | Recipe::Fig8 => "scan",
            Recipe::Fig7 | Recipe::Fig9 => "modes",
        }
    }

    pub fn name(self) -> String {
        format!("{self:?}").to_lowercase()
    }

    pub fn solve(self) -> Option<SolveArgs> {
        let (sigma, k, eps, normalize) = match self {
            Recipe::Table1 => (3.125, 0.4, 0.0, Normalization::Overtone2),
            Recipe::Table2 => (3.125, 0.29, 0.18, Normalization::Overtone1),
            Recipe::Table3 => (3.125, 0.4, 0.18, Normalization::Fundamental),
            _ => return None,
        };
        Some(SolveArgs {
            sigma: Some(sigma),
            k: Some(k),
            xi: Some(XI),
            eps: Some(eps),
            normalize: Some(normalize),
            ..Default::default()
        })
    }

    pub fn scan(self) -> Option<ScanArgs> {
        let base = ScanArgs {
            xi: Some(XI),
            ..Default::default()
        };
        match self {
            Recipe::Fig5 => Some(ScanArgs {
                axis: Some(Axis::Sigma),
                k: Some(0.4),
                eps: Some(0.0),
                sigma_range: Some(Range::new(1.0, 5.0, 41)),
                normalize: Some(Normalization::Overtone2),
                ..base
            }),
            Recipe::Fig6 => Some(ScanArgs {
                axis: Some(Axis::SigmaK),
                eps: Some(0.0),
                sigma_range: Some(Range::new(1.0, 5.0, 41)),
                k_range: Some(Range::new(0.2, 0.8, 31)),
                nmax: Some(15),
                ..base
            }),
            Recipe::Fig8 => Some(ScanArgs {
                axis: Some(Axis::Eccentricity),
                sigma: Some(3.125),
                k: Some(0.29),
                eps_range: Some(Range::new(0.0, 0.5, 26)),
                normalize: Some(Normalization::Overtone1),
                ..base
            }),
            _ => None,
        }
    }

    pub fn modes(self) -> Option<ModesArgs> {
        let (sigma, k, eps) = match self {
            Recipe::Fig7 => (2.57, 0.492, 0.0),
            Recipe::Fig9 => (3.125, 0.29, 0.18),
            _ => return None,
        };
        Some(ModesArgs {
            sigma: Some(sigma),
            k: Some(k),
            xi: Some(XI),
            eps: Some(eps),
            count: Some(20),
            ..Default::default()
        })
    }
}
