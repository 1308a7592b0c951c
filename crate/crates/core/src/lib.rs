//! Vibration modes of a clamped unit membrane whose density rises smoothly
//! towards a (possibly off-centre) loaded patch, as on the drumheads of the
//! tabla and mridangam.
//!
//! The pipeline is: build a [`DiskGrid`], assemble [`DiscreteOperators`]
//! for some [`LoadingParams`], then call [`solve_modes`] or
//! [`solve_lambdas`]. [`harmonicity`] scores how close a spectrum is to a
//! harmonic series and scans the loading parameters for the best one.

pub mod density;
pub mod eigensolver;
mod error;
pub mod harmonicity;
pub mod modes;
pub mod oracle;
pub mod par;
pub mod report;
pub mod spectral_disk;

pub use density::{assemble_mass, LoadingParams};
pub use eigensolver::{
    detect_degenerate_pairs, normalize_spectrum, solve_lambdas, solve_modes, Mode, Normalization,
    NormalizedSpectrum,
};
pub use error::{Error, Result};
pub use modes::{classify_mode, export_mode_grid, Classification, FieldRow};
pub use report::SpectrumReport;
pub use spectral_disk::{assemble_laplacian, DiscreteOperators, DiskGrid};
