//! Command-line flags and their config-file twins.
//!
//! Every subcommand's flags form one struct that clap fills from the command
//! line and serde fills from the matching table of the config file, so a
//! `[solve]` table takes exactly the keys `solve` takes as flags. Values are
//! resolved flag > config file > recipe > built-in default.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use drumhead::harmonicity::linspace;
use drumhead::Normalization;
use serde::Deserialize;

use crate::recipes::Recipe;
use crate::Failure;

/// `start:end:points`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "String")]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Range {
    pub const fn new(start: f64, end: f64, points: usize) -> Self {
        Self { start, end, points }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.end, self.points)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected start:end:points, got {s:?}"));
        };
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("{t:?} is not a finite number"))
        };
        let (start, end) = (number(a)?, number(b)?);
        let points: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("{n:?} is not a point count"))?;
        if points == 0 {
            return Err("a range needs at least one point".into());
        }
        if points > 1 && start >= end {
            return Err(format!("range start {start} must be below end {end}"));
        }
        Ok(Self { start, end, points })
    }
}

impl TryFrom<String> for Range {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum Axis {
    /// Harmonicity over a sigma x k grid.
    #[value(name = "sigma_k")]
    #[serde(rename = "sigma_k")]
    SigmaK,
    /// Spectrum against sigma.
    #[value(name = "sigma")]
    #[serde(rename = "sigma")]
    Sigma,
    /// Spectrum against the patch offset.
    #[value(name = "eccentricity")]
    #[serde(rename = "eccentricity")]
    Eccentricity,
    /// Harmonicity against the transition width.
    #[value(name = "xi")]
    #[serde(rename = "xi")]
    Xi,
}

// Fields set on `self` win over those on `base`.
macro_rules! overlay {
    ($ty:ident { $($field:ident),* $(,)? }) => {
        impl $ty {
            pub fn over(self, base: Self) -> Self {
                Self { $($field: self.$field.or(base.$field)),* }
            }
        }
    };
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveArgs {
    /// Named parameter set (table1, table2, table3).
    #[arg(long, value_enum)]
    pub recipe: Option<Recipe>,
    /// Square root of the patch-to-rim density ratio.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Patch radius.
    #[arg(long)]
    pub k: Option<f64>,
    /// Width of the density transition [default: 0.091].
    #[arg(long)]
    pub xi: Option<f64>,
    /// Offset of the patch centre [default: 0].
    #[arg(long)]
    pub eps: Option<f64>,
    /// Chebyshev degree, odd [default: 65].
    #[arg(long)]
    pub nr: Option<usize>,
    /// Angular points, even [default: 30, or 56 when eps > 0].
    #[arg(long)]
    pub ntheta: Option<usize>,
    /// Number of modes [default: 25].
    #[arg(long)]
    pub nmodes: Option<usize>,
    /// overtone2, overtone1, fundamental or none [default: overtone2, or
    /// overtone1 when eps > 0].
    #[arg(long)]
    pub normalize: Option<Normalization>,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

overlay!(SolveArgs { recipe, sigma, k, xi, eps, nr, ntheta, nmodes, normalize, out });

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanArgs {
    /// Named sweep (fig5, fig6, fig8).
    #[arg(long, value_enum)]
    pub recipe: Option<Recipe>,
    /// What to vary [default: sigma_k].
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// sigma values as start:end:points [default: 1:5:41].
    #[arg(long)]
    pub sigma_range: Option<Range>,
    /// k values [default: 0.2:0.8:31].
    #[arg(long)]
    pub k_range: Option<Range>,
    /// Eccentricities [default: 0:0.5:26].
    #[arg(long)]
    pub eps_range: Option<Range>,
    /// Transition widths [default: 0.02:0.2:37].
    #[arg(long)]
    pub xi_range: Option<Range>,
    #[arg(long)]
    pub nr: Option<usize>,
    #[arg(long)]
    pub ntheta: Option<usize>,
    /// Frequencies entering the harmonicity score [default: 15].
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Modes per spectrum in 1-D sweeps [default: 15].
    #[arg(long)]
    pub nmodes: Option<usize>,
    /// Normalization of 1-D sweep spectra [default: overtone2 against sigma,
    /// overtone1 against eccentricity].
    #[arg(long)]
    pub normalize: Option<Normalization>,
    /// Side of the local grid rescanned around the sigma_k minimizer at ten
    /// times the resolution; 0 disables [default: 5].
    #[arg(long)]
    pub refine: Option<usize>,
    /// Write the refined sigma_k map here.
    #[arg(long)]
    pub refined_out: Option<PathBuf>,
    /// Parallel solves [default: available cores].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

overlay!(ScanArgs {
    recipe, axis, sigma, k, xi, eps, sigma_range, k_range, eps_range, xi_range, nr, ntheta,
    nmax, nmodes, normalize, refine, refined_out, workers, out,
});

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModesArgs {
    /// Named parameter set (fig7, fig9).
    #[arg(long, value_enum)]
    pub recipe: Option<Recipe>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub nr: Option<usize>,
    #[arg(long)]
    pub ntheta: Option<usize>,
    /// Modes to export [default: 20].
    #[arg(long)]
    pub count: Option<usize>,
    /// Normalization used in the index file.
    #[arg(long)]
    pub normalize: Option<Normalization>,
    /// Directory for the field files and index.csv [default: modes].
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

overlay!(ModesArgs { recipe, sigma, k, xi, eps, nr, ntheta, count, normalize, out_dir });

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchmarkArgs {
    /// [default: 31]
    #[arg(long)]
    pub nr: Option<usize>,
    /// [default: 20]
    #[arg(long)]
    pub ntheta: Option<usize>,
}

overlay!(BenchmarkArgs { nr, ntheta });

/// The config file: one optional table per subcommand.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub solve: SolveArgs,
    pub scan: ScanArgs,
    pub modes: ModesArgs,
    pub benchmark: BenchmarkArgs,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Failure::invalid(format!("bad config {}: {e}", path.display())))
    }
}
