//! Smooth areal density of the loaded membrane.
//!
//! The density falls from roughly `sigma^2` inside a patch of radius `k` to
//! the rim value 1 across a `tanh` transition of width `xi`. The patch centre
//! sits at distance `epsilon` from the membrane centre along `theta = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral_disk::DiskGrid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadingParams {
    pub sigma: f64,
    pub k: f64,
    pub xi: f64,
    pub epsilon: f64,
}

impl LoadingParams {
    pub fn new(sigma: f64, k: f64, xi: f64, epsilon: f64) -> Result<Self> {
        let p = Self {
            sigma,
            k,
            xi,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    /// Concentric loading.
    pub fn concentric(sigma: f64, k: f64, xi: f64) -> Result<Self> {
        Self::new(sigma, k, xi, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.sigma, self.k, self.xi, self.epsilon]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("loading parameters must be finite"));
        }
        if self.sigma < 1.0 {
            return Err(Error::invalid(format!("sigma must be >= 1, got {}", self.sigma)));
        }
        if !(self.k > 0.0 && self.k < 1.0) {
            return Err(Error::invalid(format!("k must lie in (0, 1), got {}", self.k)));
        }
        if self.xi <= 0.0 {
            return Err(Error::invalid(format!("xi must be > 0, got {}", self.xi)));
        }
        if self.epsilon < 0.0 {
            return Err(Error::invalid(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        if self.epsilon + self.k >= 1.0 {
            return Err(Error::invalid(format!(
                "loaded patch leaves the membrane: epsilon + k = {} >= 1",
                self.epsilon + self.k
            )));
        }
        Ok(())
    }

    /// Distance from `(r, theta)` to the patch centre.
    pub fn patch_distance(&self, r: f64, theta: f64) -> f64 {
        if self.epsilon == 0.0 {
            return r;
        }
        let (s, c) = theta.sin_cos();
        (r * c - self.epsilon).hypot(r * s)
    }

    /// Areal density at `(r, theta)` in units of the rim density.
    pub fn density_at(&self, r: f64, theta: f64) -> f64 {
        let distance = self.patch_distance(r, theta);
        let contrast = 0.5 * (self.sigma * self.sigma - 1.0);
        1.0 + contrast * (1.0 - ((distance - self.k) / self.xi).tanh())
    }
}

/// Diagonal of the mass matrix: the density at every grid node.
///
/// Nodes past the half turn are evaluated at minus the angle of their mirror
/// node, so the result is exactly symmetric under `theta -> -theta`.
pub fn assemble_mass(params: &LoadingParams, grid: &DiskGrid) -> Vec<f64> {
    let nt = grid.n_theta();
    let angles = grid.angles();
    grid.radii()
        .iter()
        .flat_map(|&r| {
            (0..nt).map(move |i| {
                let theta = if 2 * i > nt { -angles[nt - i] } else { angles[i] };
                params.density_at(r, theta)
            })
        })
        .collect()
}
