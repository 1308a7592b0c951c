//! Fourier-Chebyshev collocation on the unit disk.
//!
//! The radial direction uses Chebyshev points on `[-1, 1]` and identifies the
//! node `(-r, theta)` with `(r, theta + pi)`, so only the positive interior
//! radii carry unknowns. With an odd radial degree there is no node at the
//! origin, and the rim `r = 1` is dropped to impose the clamped condition.
//!
//! Unknowns are ordered radial-outer, angular-inner: the value at radius
//! index `j` (0-based, outermost first) and angle index `i` lives at
//! `j * n_theta + i`.

use std::f64::consts::PI;

use faer::Mat;

use crate::density::{assemble_mass, LoadingParams};
use crate::error::{Error, Result};

/// Collocation nodes on the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    n_r: usize,
    n_theta: usize,
    radii: Vec<f64>,
    angles: Vec<f64>,
}

impl DiskGrid {
    /// Builds the grid for radial degree `n_r` (odd, `>= 3`) and `n_theta`
    /// angular points (even, `>= 4`).
    pub fn new(n_r: usize, n_theta: usize) -> Result<Self> {
        if n_r < 3 || n_r % 2 == 0 {
            return Err(Error::invalid(format!(
                "radial degree must be odd and at least 3, got {n_r}"
            )));
        }
        if n_theta < 4 || n_theta % 2 == 1 {
            return Err(Error::invalid(format!(
                "angular point count must be even and at least 4, got {n_theta}"
            )));
        }
        let half = (n_r - 1) / 2;
        let radii = (1..=half)
            .map(|j| (j as f64 * PI / n_r as f64).cos())
            .collect();
        let angles = (0..n_theta)
            .map(|i| 2.0 * PI * i as f64 / n_theta as f64)
            .collect();
        Ok(Self {
            n_r,
            n_theta,
            radii,
            angles,
        })
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    /// Positive interior radii, strictly descending.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn n_radii(&self) -> usize {
        self.radii.len()
    }

    /// Total number of unknowns.
    pub fn len(&self) -> usize {
        self.radii.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of the node at radius index `j` and angle index `i`.
    pub fn index(&self, j: usize, i: usize) -> usize {
        j * self.n_theta + i
    }

    /// Polar coordinates of every node in unknown order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.angles.iter().map(move |&t| (r, t)))
    }

    /// Samples `f(r, theta)` at every node in unknown order.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        self.nodes().map(|(r, t)| f(r, t)).collect()
    }

    /// Index of the node reached by the reflection `theta -> -theta`.
    pub fn mirror_index(&self, k: usize) -> usize {
        let (j, i) = (k / self.n_theta, k % self.n_theta);
        self.index(j, (self.n_theta - i) % self.n_theta)
    }
}

/// The discrete Laplacian and the diagonal density (mass) matrix of one
/// loaded membrane on one grid.
#[derive(Debug, Clone)]
pub struct DiscreteOperators {
    grid: DiskGrid,
    laplacian: Mat<f64>,
    mass: Vec<f64>,
}

impl DiscreteOperators {
    pub fn assemble(grid: DiskGrid, params: &LoadingParams) -> Result<Self> {
        params.validate()?;
        let mass = assemble_mass(params, &grid);
        let laplacian = assemble_laplacian(&grid);
        Ok(Self {
            grid,
            laplacian,
            mass,
        })
    }

    /// Pairs a Laplacian with an arbitrary positive mass diagonal.
    pub fn with_mass(grid: DiskGrid, laplacian: Mat<f64>, mass: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if laplacian.nrows() != n || laplacian.ncols() != n || mass.len() != n {
            return Err(Error::invalid(format!(
                "operator sizes do not match the {n} grid unknowns"
            )));
        }
        if let Some(bad) = mass.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::invalid(format!("mass entries must be positive, found {bad}")));
        }
        Ok(Self {
            grid,
            laplacian,
            mass,
        })
    }

    pub fn grid(&self) -> &DiskGrid {
        &self.grid
    }

    pub fn laplacian(&self) -> &Mat<f64> {
        &self.laplacian
    }

    /// Diagonal of the mass matrix in unknown order.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn into_parts(self) -> (DiskGrid, Mat<f64>, Vec<f64>) {
        (self.grid, self.laplacian, self.mass)
    }
}

/// Chebyshev points `x_j = cos(j pi / n)`, `j = 0..=n`.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..=n).map(|j| (j as f64 * PI / n as f64).cos()).collect()
}

/// First-derivative collocation matrix on the `n + 1` Chebyshev points.
///
/// Diagonal entries are set so each row sums to zero.
pub fn chebyshev_diff_matrix(n: usize) -> Result<Mat<f64>> {
    if n < 1 {
        return Err(Error::invalid("Chebyshev degree must be at least 1"));
    }
    let x = chebyshev_nodes(n);
    let c = |i: usize| if i == 0 || i == n { 2.0 } else { 1.0 };
    let sign = |i: usize, j: usize| if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
    let mut d = Mat::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut row_sum = 0.0;
        for j in 0..=n {
            if i != j {
                let v = c(i) / c(j) * sign(i, j) / (x[i] - x[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        d[(i, i)] = -row_sum;
    }
    Ok(d)
}

/// Periodic second-derivative matrix on `n` equispaced points of `[0, 2 pi)`.
pub fn fourier_diff2_matrix(n: usize) -> Result<Mat<f64>> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "Fourier point count must be even and at least 4, got {n}"
        )));
    }
    let h = 2.0 * PI / n as f64;
    let diagonal = -PI * PI / (3.0 * h * h) - 1.0 / 6.0;
    let column: Vec<f64> = (0..n)
        .map(|k| {
            if k == 0 {
                diagonal
            } else {
                let s = (0.5 * k as f64 * h).sin();
                let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                0.5 * sign / (s * s)
            }
        })
        .collect();
    Ok(Mat::from_fn(n, n, |j, k| {
        let d = j.abs_diff(k);
        column[d.min(n - d)]
    }))
}

fn kron_into(out: &mut Mat<f64>, a: &Mat<f64>, b: &Mat<f64>) {
    let (br, bc) = (b.nrows(), b.ncols());
    for ai in 0..a.nrows() {
        for aj in 0..a.ncols() {
            let s = a[(ai, aj)];
            if s == 0.0 {
                continue;
            }
            for bi in 0..br {
                for bj in 0..bc {
                    let v = b[(bi, bj)];
                    if v != 0.0 {
                        out[(ai * br + bi, aj * bc + bj)] += s * v;
                    }
                }
            }
        }
    }
}

/// Dense discrete Laplacian on the grid with the rim eliminated.
pub fn assemble_laplacian(grid: &DiskGrid) -> Mat<f64> {
    let n = grid.n_r;
    let half = grid.n_radii();
    let nt = grid.n_theta;

    let d = chebyshev_diff_matrix(n).expect("grid degree validated");
    let d2 = &d * &d;

    // Rows 1..=half are the positive interior radii; column n - j holds the
    // reflected node -r_j.
    let same = |m: &Mat<f64>| Mat::from_fn(half, half, |a, b| m[(a + 1, b + 1)]);
    let reflected = |m: &Mat<f64>| Mat::from_fn(half, half, |a, b| m[(a + 1, n - 1 - b)]);
    let r_inv: Vec<f64> = grid.radii.iter().map(|r| 1.0 / r).collect();

    let mut radial_same = same(&d2);
    let mut radial_reflected = reflected(&d2);
    let e_same = same(&d);
    let e_reflected = reflected(&d);
    for a in 0..half {
        for b in 0..half {
            radial_same[(a, b)] += r_inv[a] * e_same[(a, b)];
            radial_reflected[(a, b)] += r_inv[a] * e_reflected[(a, b)];
        }
    }

    let identity = Mat::<f64>::identity(nt, nt);
    let half_turn = Mat::from_fn(nt, nt, |i, k| {
        if (i + nt / 2) % nt == k {
            1.0
        } else {
            0.0
        }
    });
    let r_inv_sq = Mat::from_fn(half, half, |a, b| if a == b { r_inv[a] * r_inv[a] } else { 0.0 });
    let d2_theta = fourier_diff2_matrix(nt).expect("grid angle count validated");

    let size = grid.len();
    let mut lap = Mat::<f64>::zeros(size, size);
    kron_into(&mut lap, &radial_same, &identity);
    kron_into(&mut lap, &radial_reflected, &half_turn);
    kron_into(&mut lap, &r_inv_sq, &d2_theta);
    lap
}

/// Coupling of the interior rows to the rim values that the Dirichlet
/// elimination drops: `C` has one column per rim angle, so that for a smooth
/// `u` the full collocation Laplacian is `L u_interior + C u_rim`.
pub fn assemble_rim_coupling(grid: &DiskGrid) -> Mat<f64> {
    let n = grid.n_r;
    let nt = grid.n_theta;
    let d = chebyshev_diff_matrix(n).expect("grid degree validated");
    let d2 = &d * &d;
    let mut c = Mat::<f64>::zeros(grid.len(), nt);
    for (a, r) in grid.radii.iter().enumerate() {
        // x_0 = 1 is the rim at the same angle, x_n = -1 the rim half a turn away.
        let near = d2[(a + 1, 0)] + d[(a + 1, 0)] / r;
        let far = d2[(a + 1, n)] + d[(a + 1, n)] / r;
        for i in 0..nt {
            c[(grid.index(a, i), i)] += near;
            c[(grid.index(a, i), (i + nt / 2) % nt)] += far;
        }
    }
    c
}
