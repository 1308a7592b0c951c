//! Harmonicity of a spectrum and sweeps over the loading parameters.
//!
//! The quality `Q` of a spectrum is the summed squared distance of the first
//! `n_max` frequencies, normalized so the first overtone sits at 2, to their
//! nearest integers. Degenerate partners are counted separately.

use serde::Serialize;

use crate::density::LoadingParams;
use crate::eigensolver::{normalize_spectrum, solve_lambdas, Normalization};
use crate::error::{Error, Result};
use crate::par::map_ordered;
use crate::spectral_disk::{DiscreteOperators, DiskGrid};

pub const DEFAULT_N_MAX: usize = 15;

/// Nearest integer with halves rounded up.
pub fn nearest_integer(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// `sum (w_i - round(w_i))^2` over the first `n_max` normalized frequencies.
pub fn quality(normalized: &[f64], n_max: usize) -> Result<f64> {
    if n_max == 0 || normalized.len() < n_max {
        return Err(Error::invalid(format!(
            "quality needs {n_max} frequencies, got {}",
            normalized.len()
        )));
    }
    Ok(normalized[..n_max]
        .iter()
        .map(|w| (w - nearest_integer(*w)).powi(2))
        .sum())
}

/// `1200 log2(value / reference)`.
pub fn cents_deviation(value: f64, reference: f64) -> Result<f64> {
    if !(value > 0.0 && reference > 0.0) {
        return Err(Error::invalid(format!(
            "cents need positive ratios, got {value} and {reference}"
        )));
    }
    Ok(1200.0 * (value / reference).log2())
}

/// Deviation in cents from the nearest integer, if that integer is positive.
pub fn cents_vs_nearest_integer(value: f64) -> Option<f64> {
    let h = nearest_integer(value);
    cents_deviation(value, h).ok()
}

/// Grid resolution and parallelism for the solves inside a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSettings {
    pub n_r: usize,
    pub n_theta: usize,
    pub workers: usize,
}

impl SweepSettings {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        Self {
            n_r,
            n_theta,
            workers: 1,
        }
    }

    pub fn workers(self, workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            ..self
        }
    }

    fn grid(&self) -> Result<DiskGrid> {
        DiskGrid::new(self.n_r, self.n_theta)
    }
}

/// `n_modes` ascending eigenvalues for one parameter set.
pub fn spectrum_at(params: &LoadingParams, grid: &DiskGrid, n_modes: usize) -> Result<Vec<f64>> {
    let ops = DiscreteOperators::assemble(grid.clone(), params)?;
    solve_lambdas(&ops, n_modes)
}

/// `Q` for one parameter set.
pub fn quality_at(params: &LoadingParams, grid: &DiskGrid, n_max: usize) -> Result<f64> {
    let lambdas = spectrum_at(params, grid, n_max)?;
    let normalized = normalize_spectrum(&lambdas, Normalization::Overtone2)?;
    quality(&normalized.values, n_max)
}

fn at_point(point: String) -> impl FnOnce(Error) -> Error {
    move |e| Error::AtPoint {
        point,
        source: Box::new(e),
    }
}

/// `n` evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::invalid(format!("{name} axis is empty")));
    }
    if !axis.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid(format!("{name} axis must be strictly ascending")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimizer {
    pub sigma: f64,
    pub k: f64,
    pub q: f64,
}

/// `Q` over a rectangular `(sigma, k)` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityMap {
    pub sigma_axis: Vec<f64>,
    pub k_axis: Vec<f64>,
    /// `q_values[a][b]` is `Q(sigma_axis[a], k_axis[b])`.
    pub q_values: Vec<Vec<f64>>,
    pub n_max: usize,
    pub xi: f64,
    pub epsilon: f64,
    pub minimizer: Minimizer,
}

impl QualityMap {
    /// Grid indices of the minimizer (first in row-major order on ties).
    pub fn argmin(&self) -> (usize, usize) {
        let mut best = (0, 0);
        for (a, row) in self.q_values.iter().enumerate() {
            for (b, &q) in row.iter().enumerate() {
                if q < self.q_values[best.0][best.1] {
                    best = (a, b);
                }
            }
        }
        best
    }
}

/// Evaluates `Q` at every `(sigma, k)` pair; solves run independently on
/// `settings.workers` threads and are gathered by grid index.
pub fn scan_sigma_k(
    sigma_axis: &[f64],
    k_axis: &[f64],
    xi: f64,
    epsilon: f64,
    n_max: usize,
    settings: SweepSettings,
) -> Result<QualityMap> {
    check_axis("sigma", sigma_axis)?;
    check_axis("k", k_axis)?;
    let grid = settings.grid()?;
    let points: Vec<(f64, f64)> = sigma_axis
        .iter()
        .flat_map(|&s| k_axis.iter().map(move |&k| (s, k)))
        .collect();
    let results = map_ordered(&points, settings.workers, |&(sigma, k)| {
        LoadingParams::new(sigma, k, xi, epsilon)
            .and_then(|p| quality_at(&p, &grid, n_max))
            .map_err(at_point(format!("sigma={sigma}, k={k}")))
    });
    let flat = results.into_iter().collect::<Result<Vec<f64>>>()?;
    let q_values: Vec<Vec<f64>> = flat.chunks(k_axis.len()).map(|c| c.to_vec()).collect();
    let mut map = QualityMap {
        sigma_axis: sigma_axis.to_vec(),
        k_axis: k_axis.to_vec(),
        q_values,
        n_max,
        xi,
        epsilon,
        minimizer: Minimizer {
            sigma: f64::NAN,
            k: f64::NAN,
            q: f64::NAN,
        },
    };
    let (a, b) = map.argmin();
    map.minimizer = Minimizer {
        sigma: map.sigma_axis[a],
        k: map.k_axis[b],
        q: map.q_values[a][b],
    };
    Ok(map)
}

/// Rescans a `points x points` window centred on the minimizer of `coarse`
/// with steps `factor` times finer than the coarse axes, clipped to the
/// coarse range. Returns the fine map.
pub fn refine_minimizer(
    coarse: &QualityMap,
    points: usize,
    factor: f64,
    settings: SweepSettings,
) -> Result<QualityMap> {
    let step = |axis: &[f64]| {
        if axis.len() > 1 {
            (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64 / factor
        } else {
            0.0
        }
    };
    let window = |axis: &[f64], centre: f64| -> Vec<f64> {
        let h = step(axis);
        if h == 0.0 {
            return vec![centre];
        }
        let (lo, hi) = (axis[0], axis[axis.len() - 1]);
        let half = (points.saturating_sub(1)) as f64 / 2.0;
        let mut v: Vec<f64> = (0..points)
            .map(|i| centre + (i as f64 - half) * h)
            .filter(|x| *x >= lo - 1e-12 && *x <= hi + 1e-12)
            .collect();
        v.dedup();
        v
    };
    let sigma_axis = window(&coarse.sigma_axis, coarse.minimizer.sigma);
    let k_axis = window(&coarse.k_axis, coarse.minimizer.k);
    scan_sigma_k(
        &sigma_axis,
        &k_axis,
        coarse.xi,
        coarse.epsilon,
        coarse.n_max,
        settings,
    )
}

/// `Q` as a function of the smoothness `xi` at fixed `(sigma, k, epsilon)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiScan {
    pub xi_axis: Vec<f64>,
    pub q_values: Vec<f64>,
    pub xi_opt: f64,
    pub q_opt: f64,
}

pub fn optimize_xi(
    sigma: f64,
    k: f64,
    epsilon: f64,
    xi_axis: &[f64],
    n_max: usize,
    settings: SweepSettings,
) -> Result<XiScan> {
    check_axis("xi", xi_axis)?;
    let grid = settings.grid()?;
    let q_values = map_ordered(xi_axis, settings.workers, |&xi| {
        LoadingParams::new(sigma, k, xi, epsilon)
            .and_then(|p| quality_at(&p, &grid, n_max))
            .map_err(at_point(format!("xi={xi}")))
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let best = (0..q_values.len())
        .min_by(|&a, &b| q_values[a].total_cmp(&q_values[b]))
        .expect("axis is non-empty");
    Ok(XiScan {
        xi_axis: xi_axis.to_vec(),
        xi_opt: xi_axis[best],
        q_opt: q_values[best],
        q_values,
    })
}

/// Ascending eigenvalues at each point of a one-parameter sweep, aligned by
/// rank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSweep {
    pub parameter: String,
    pub axis: Vec<f64>,
    /// `lambdas[p]` is the raw spectrum at `axis[p]`.
    pub lambdas: Vec<Vec<f64>>,
}

impl SpectrumSweep {
    /// Each spectrum rescaled by `convention`.
    pub fn normalized(&self, convention: Normalization) -> Result<Vec<Vec<f64>>> {
        self.lambdas
            .iter()
            .map(|l| normalize_spectrum(l, convention).map(|n| n.values))
            .collect()
    }
}

fn sweep(
    parameter: &str,
    axis: &[f64],
    n_modes: usize,
    settings: SweepSettings,
    params_at: impl Fn(f64) -> Result<LoadingParams> + Sync + Send,
) -> Result<SpectrumSweep> {
    check_axis(parameter, axis)?;
    let grid = settings.grid()?;
    // Validate every point before spending time on solves.
    for &x in axis {
        params_at(x).map_err(at_point(format!("{parameter}={x}")))?;
    }
    let lambdas = map_ordered(axis, settings.workers, |&x| {
        params_at(x)
            .and_then(|p| spectrum_at(&p, &grid, n_modes))
            .map_err(at_point(format!("{parameter}={x}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumSweep {
        parameter: parameter.to_string(),
        axis: axis.to_vec(),
        lambdas,
    })
}

/// Spectra against the density contrast for concentric loading.
pub fn scan_sigma(
    k: f64,
    xi: f64,
    sigma_axis: &[f64],
    n_modes: usize,
    settings: SweepSettings,
) -> Result<SpectrumSweep> {
    sweep("sigma", sigma_axis, n_modes, settings, |sigma| {
        LoadingParams::new(sigma, k, xi, 0.0)
    })
}

/// Spectra against the eccentricity of the loaded patch.
pub fn scan_eccentricity(
    sigma: f64,
    k: f64,
    xi: f64,
    epsilon_axis: &[f64],
    n_modes: usize,
    settings: SweepSettings,
) -> Result<SpectrumSweep> {
    sweep("epsilon", epsilon_axis, n_modes, settings, |epsilon| {
        LoadingParams::new(sigma, k, xi, epsilon)
    })
}
