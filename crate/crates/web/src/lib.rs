//! Browser bindings: a density preview, the spectrum of one loading with its
//! harmonicity score, and rendered eigenfunctions.
//!
//! Rasters are `size x size` RGBA buffers covering the square around the unit
//! disk; pixels outside the membrane are transparent.

use drumhead::harmonicity::{quality, DEFAULT_N_MAX};
use drumhead::{
    normalize_spectrum, solve_modes, DiscreteOperators, DiskGrid, LoadingParams, Mode,
    Normalization, SpectrumReport,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_RASTER: usize = 1024;

fn js_error(e: drumhead::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn check_size(size: usize) -> drumhead::Result<()> {
    if size == 0 || size > MAX_RASTER {
        return Err(drumhead::Error::InvalidParameter(format!(
            "raster size must lie in 1..={MAX_RASTER}, got {size}"
        )));
    }
    Ok(())
}

/// Polar coordinates of the centre of pixel `(px, py)`, `y` pointing up.
fn pixel_polar(px: usize, py: usize, size: usize) -> (f64, f64) {
    let h = 2.0 / size as f64;
    let x = -1.0 + (px as f64 + 0.5) * h;
    let y = 1.0 - (py as f64 + 0.5) * h;
    (x.hypot(y), y.atan2(x).rem_euclid(std::f64::consts::TAU))
}

/// Samples `f(r, theta)` on the raster; `None` outside the disk.
pub fn sample_raster(size: usize, f: impl Fn(f64, f64) -> f64) -> Vec<Option<f64>> {
    let mut out = Vec::with_capacity(size * size);
    for py in 0..size {
        for px in 0..size {
            let (r, t) = pixel_polar(px, py, size);
            out.push((r < 1.0).then(|| f(r, t)));
        }
    }
    out
}

/// Linear interpolation of node values at an arbitrary point of the disk.
///
/// Angles interpolate between neighbouring grid angles. Radii interpolate
/// between neighbouring circles, with the clamped rim as the outermost one;
/// inside the innermost circle the value runs linearly along the diameter
/// through the point.
pub fn interpolate(values: &[f64], grid: &DiskGrid, r: f64, theta: f64) -> f64 {
    let nt = grid.n_theta();
    let step = std::f64::consts::TAU / nt as f64;
    let pos = theta.rem_euclid(std::f64::consts::TAU) / step;
    let i0 = (pos.floor() as usize) % nt;
    let w = pos - pos.floor();
    let on_circle = |j: usize, shift: usize| {
        let a = (i0 + shift) % nt;
        let b = (i0 + shift + 1) % nt;
        (1.0 - w) * values[grid.index(j, a)] + w * values[grid.index(j, b)]
    };

    let radii = grid.radii();
    let innermost = radii.len() - 1;
    if r >= 1.0 {
        return 0.0;
    }
    if r >= radii[0] {
        return on_circle(0, 0) * (1.0 - r) / (1.0 - radii[0]);
    }
    if r <= radii[innermost] {
        let near = on_circle(innermost, 0);
        let far = on_circle(innermost, nt / 2);
        let s = r / radii[innermost];
        return 0.5 * (1.0 + s) * near + 0.5 * (1.0 - s) * far;
    }
    // radii are stored outermost first
    let j = radii.iter().position(|&rj| rj <= r).unwrap_or(innermost);
    let (outer, inner) = (radii[j - 1], radii[j]);
    let t = (r - inner) / (outer - inner);
    t * on_circle(j - 1, 0) + (1.0 - t) * on_circle(j, 0)
}

/// Blue-white-red for signed values in [-1, 1].
pub fn diverging(v: f64) -> [u8; 4] {
    let v = v.clamp(-1.0, 1.0);
    let fade = |x: f64| (255.0 * (1.0 - x.abs())).round() as u8;
    if v >= 0.0 {
        [255, fade(v), fade(v), 255]
    } else {
        [fade(v), fade(v), 255, 255]
    }
}

/// White to dark amber for values in [0, 1].
pub fn sequential(v: f64) -> [u8; 4] {
    let v = v.clamp(0.0, 1.0);
    let mix = |a: f64, b: f64| (a + (b - a) * v).round() as u8;
    [mix(255.0, 120.0), mix(255.0, 60.0), mix(255.0, 10.0), 255]
}

fn to_rgba(samples: &[Option<f64>], color: impl Fn(f64) -> [u8; 4]) -> Vec<u8> {
    samples
        .iter()
        .flat_map(|s| s.map(&color).unwrap_or([0, 0, 0, 0]))
        .collect()
}

/// Density raster scaled so white is the rim density and the darkest shade
/// `sigma^2`.
pub fn density_rgba(params: &LoadingParams, size: usize) -> drumhead::Result<Vec<u8>> {
    check_size(size)?;
    let top = params.sigma * params.sigma - 1.0;
    let samples = sample_raster(size, |r, t| {
        if top > 0.0 {
            (params.density_at(r, t) - 1.0) / top
        } else {
            0.0
        }
    });
    Ok(to_rgba(&samples, sequential))
}

#[wasm_bindgen]
pub fn render_density(
    sigma: f64,
    k: f64,
    xi: f64,
    eps: f64,
    size: usize,
) -> Result<Vec<u8>, JsError> {
    let params = LoadingParams::new(sigma, k, xi, eps).map_err(js_error)?;
    density_rgba(&params, size).map_err(js_error)
}

#[derive(Debug, Serialize)]
pub struct Summary {
    #[serde(flatten)]
    pub report: SpectrumReport,
    /// Harmonicity score over the first 15 frequencies, when that many modes
    /// were solved.
    pub quality: Option<f64>,
}

/// One solved membrane, kept so modes can be drawn without solving again.
#[wasm_bindgen]
pub struct Membrane {
    params: LoadingParams,
    grid: DiskGrid,
    modes: Vec<Mode>,
}

impl Membrane {
    pub fn solve(params: LoadingParams, grid: DiskGrid, n_modes: usize) -> drumhead::Result<Self> {
        let ops = DiscreteOperators::assemble(grid.clone(), &params)?;
        let modes = solve_modes(&ops, n_modes)?;
        Ok(Self {
            params,
            grid,
            modes,
        })
    }

    pub fn summary(&self, convention: Normalization) -> drumhead::Result<Summary> {
        let report = SpectrumReport::new(&self.params, &self.grid, &self.modes, convention)?;
        let quality = if self.modes.len() >= DEFAULT_N_MAX {
            let lambdas: Vec<f64> = self.modes.iter().map(|m| m.lambda).collect();
            let normalized = normalize_spectrum(&lambdas, Normalization::Overtone2)?;
            Some(quality(&normalized.values, DEFAULT_N_MAX)?)
        } else {
            None
        };
        Ok(Summary { report, quality })
    }

    pub fn mode_rgba(&self, rank: usize, size: usize) -> drumhead::Result<Vec<u8>> {
        check_size(size)?;
        let mode = rank
            .checked_sub(1)
            .and_then(|i| self.modes.get(i))
            .ok_or_else(|| {
                drumhead::Error::InvalidParameter(format!(
                    "rank must lie in 1..={}, got {rank}",
                    self.modes.len()
                ))
            })?;
        let samples = sample_raster(size, |r, t| interpolate(&mode.values, &self.grid, r, t));
        Ok(to_rgba(&samples, diverging))
    }
}

#[wasm_bindgen]
impl Membrane {
    #[wasm_bindgen(constructor)]
    pub fn new(
        sigma: f64,
        k: f64,
        xi: f64,
        eps: f64,
        n_r: usize,
        n_theta: usize,
        n_modes: usize,
    ) -> Result<Membrane, JsError> {
        let params = LoadingParams::new(sigma, k, xi, eps).map_err(js_error)?;
        let grid = DiskGrid::new(n_r, n_theta).map_err(js_error)?;
        Membrane::solve(params, grid, n_modes).map_err(js_error)
    }

    #[wasm_bindgen(js_name = modeCount)]
    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    /// Spectrum report plus `quality` as JSON text.
    #[wasm_bindgen(js_name = spectrumJson)]
    pub fn spectrum_json(&self, normalize: &str) -> Result<String, JsError> {
        let convention: Normalization = normalize.parse().map_err(js_error)?;
        let summary = self.summary(convention).map_err(js_error)?;
        serde_json::to_string(&summary).map_err(|e| JsError::new(&e.to_string()))
    }

    /// RGBA raster of the eigenfunction with 1-based `rank`.
    #[wasm_bindgen(js_name = renderMode)]
    pub fn render_mode(&self, rank: usize, size: usize) -> Result<Vec<u8>, JsError> {
        self.mode_rgba(rank, size).map_err(js_error)
    }
}
