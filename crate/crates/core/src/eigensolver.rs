//! Solution of the pencil `L psi = -lambda^2 B psi`.
//!
//! `B` is diagonal, so the pencil is reduced to the ordinary nonsymmetric
//! problem `B^-1 L psi = mu psi` with `mu = -lambda^2` and solved densely.

use faer::complex::Complex;
use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::classify_mode;
use crate::spectral_disk::{DiscreteOperators, DiskGrid};

/// Largest accepted `|Im mu| / |Re mu|` for a retained eigenvalue.
pub const REALITY_TOL: f64 = 1e-8;
/// Relative gap below which two neighbouring eigenvalues count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-6;
pub const DEFAULT_MODES: usize = 25;

/// One eigenpair of the loaded membrane.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub lambda: f64,
    /// Eigenfunction at the grid nodes, scaled to unit max-norm and positive
    /// at its first extremal node.
    pub values: Vec<f64>,
    /// Nodal lines.
    pub label_m: u32,
    /// Nodal contours, counting the rim.
    pub label_n: u32,
    /// Set when the nodal-line count disagreed between test circles.
    pub label_uncertain: bool,
    /// Rank (0-based) of the degenerate partner, if any.
    pub degeneracy_partner: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Second distinct eigenvalue maps to 2.
    Overtone2,
    /// Third eigenvalue, the upper member of the first-overtone pair, maps to 1.
    Overtone1,
    /// Fundamental maps to 1.
    Fundamental,
    /// Raw eigenvalues.
    None,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Overtone2 => "overtone2",
            Normalization::Overtone1 => "overtone1",
            Normalization::Fundamental => "fundamental",
            Normalization::None => "none",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overtone2" => Ok(Normalization::Overtone2),
            "overtone1" => Ok(Normalization::Overtone1),
            "fundamental" => Ok(Normalization::Fundamental),
            "none" => Ok(Normalization::None),
            other => Err(Error::invalid(format!("unknown normalization {other:?}"))),
        }
    }
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSpectrum {
    pub values: Vec<f64>,
    /// The raw eigenvalue mapped onto the convention's target value.
    pub reference_lambda: f64,
    pub convention: Normalization,
}

fn pencil_matrix(ops: &DiscreteOperators) -> Mat<f64> {
    let lap = ops.laplacian();
    let mass = ops.mass();
    Mat::from_fn(lap.nrows(), lap.ncols(), |i, j| lap[(i, j)] / mass[i])
}

fn check_count(ops: &DiscreteOperators, n_modes: usize) -> Result<()> {
    let size = ops.grid().len();
    if n_modes == 0 || n_modes > size {
        return Err(Error::invalid(format!(
            "mode count must lie in 1..={size}, got {n_modes}"
        )));
    }
    Ok(())
}

// Picks the n smallest -Re(mu) and validates them; returns (index, lambda).
fn select(mu: &[Complex<f64>], n_modes: usize) -> Result<Vec<(usize, f64)>> {
    if let Some(bad) = mu.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::solver(format!("non-finite eigenvalue {bad}")));
    }
    let mut order: Vec<usize> = (0..mu.len()).collect();
    order.sort_by(|&a, &b| (-mu[a].re).total_cmp(&-mu[b].re).then(a.cmp(&b)));
    order.truncate(n_modes);
    let mut out = Vec::with_capacity(n_modes);
    for (rank, idx) in order.into_iter().enumerate() {
        let z = mu[idx];
        if z.re >= 0.0 {
            return Err(Error::solver(format!(
                "eigenvalue {} at rank {} has lambda^2 = {} <= 0",
                z,
                rank + 1,
                -z.re
            )));
        }
        let residue = z.im.abs() / z.re.abs();
        if residue >= REALITY_TOL {
            return Err(Error::solver(format!(
                "eigenvalue at rank {} is not real: lambda^2 = {} with |Im|/|Re| = {residue:.3e}",
                rank + 1,
                -z
            )));
        }
        out.push((idx, (-z.re).sqrt()));
    }
    // mu[idx].re ties are broken by index; re-sort on lambda to be safe.
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(out)
}

/// The `n_modes` smallest eigenvalues `lambda`, ascending, without
/// eigenfunctions.
pub fn solve_lambdas(ops: &DiscreteOperators, n_modes: usize) -> Result<Vec<f64>> {
    check_count(ops, n_modes)?;
    let a = pencil_matrix(ops);
    let mu = a
        .eigenvalues()
        .map_err(|e| Error::solver(format!("eigenvalue iteration failed: {e:?}")))?;
    Ok(select(&mu, n_modes)?.into_iter().map(|(_, l)| l).collect())
}

/// The `n_modes` smallest eigenpairs, ascending in `lambda`, with nodal labels
/// and degenerate partners filled in.
///
/// Equal eigenvalues are ordered with the eigenfunction even in `theta`
/// (extremum on `theta = 0`) before the odd one.
pub fn solve_modes(ops: &DiscreteOperators, n_modes: usize) -> Result<Vec<Mode>> {
    check_count(ops, n_modes)?;
    let grid = ops.grid();
    let a = pencil_matrix(ops);
    let evd = a
        .eigen()
        .map_err(|e| Error::solver(format!("eigendecomposition failed: {e:?}")))?;
    let s = evd.S();
    let u = evd.U();
    let mu: Vec<Complex<f64>> = (0..s.dim()).map(|i| s[i]).collect();
    let selected = select(&mu, n_modes)?;

    let lambdas: Vec<f64> = selected.iter().map(|&(_, l)| l).collect();
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n_modes);
    let mut start = 0;
    while start < selected.len() {
        let mut end = start + 1;
        while end < selected.len() && relative_gap(lambdas[end - 1], lambdas[end]) < DEGENERACY_TOL {
            end += 1;
        }
        let columns: Vec<Vec<Complex<f64>>> = selected[start..end]
            .iter()
            .map(|&(idx, _)| (0..u.nrows()).map(|r| u[(r, idx)]).collect())
            .collect();
        vectors.extend(real_basis(grid, &columns)?);
        start = end;
    }

    let partners = detect_degenerate_pairs(&lambdas, DEGENERACY_TOL);
    let modes = lambdas
        .into_iter()
        .zip(vectors)
        .zip(partners)
        .map(|((lambda, mut values), partner)| {
            normalize_sign(&mut values);
            let c = classify_mode(&values, grid);
            Mode {
                lambda,
                values,
                label_m: c.m,
                label_n: c.n,
                label_uncertain: c.uncertain,
                degeneracy_partner: partner,
            }
        })
        .collect();
    Ok(modes)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (b - a).abs() / a.abs()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

// Modified Gram-Schmidt keeping at most `limit` directions whose residual
// exceeds `tol` relative to the largest candidate.
fn orthonormalize(candidates: &[Vec<f64>], limit: usize) -> Vec<Vec<f64>> {
    let scale = candidates.iter().map(|c| norm(c)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    for c in candidates {
        if basis.len() == limit {
            break;
        }
        let mut v = c.clone();
        for b in &basis {
            let p = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
        let n = norm(&v);
        if n > 1e-6 * scale {
            v.iter_mut().for_each(|x| *x /= n);
            basis.push(v);
        }
    }
    basis
}

// Real eigenfunctions spanning the eigenspace of one (possibly degenerate)
// cluster, split into parts even and odd under theta -> -theta.
fn real_basis(grid: &DiskGrid, columns: &[Vec<Complex<f64>>]) -> Result<Vec<Vec<f64>>> {
    let count = columns.len();
    let mut raw = Vec::with_capacity(2 * count);
    for col in columns {
        // Rotate the phase so the largest entry is real before splitting.
        let pivot = col
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or(Complex::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        let rotated: Vec<Complex<f64>> = col.iter().map(|z| z * phase).collect();
        raw.push(rotated.iter().map(|z| z.re).collect::<Vec<f64>>());
        raw.push(rotated.iter().map(|z| z.im).collect::<Vec<f64>>());
    }
    let mirror: Vec<usize> = (0..grid.len()).map(|k| grid.mirror_index(k)).collect();
    let split = |sign: f64| -> Vec<Vec<f64>> {
        raw.iter()
            .map(|v| (0..v.len()).map(|k| 0.5 * (v[k] + sign * v[mirror[k]])).collect())
            .collect()
    };
    let even = orthonormalize(&split(1.0), count);
    let odd = orthonormalize(&split(-1.0), count);
    if even.len() + odd.len() == count {
        return Ok(even.into_iter().chain(odd).collect());
    }
    // Mirror symmetry broken (asymmetric mass supplied directly): plain basis.
    let plain = orthonormalize(&raw, count);
    if plain.len() != count {
        return Err(Error::solver(format!(
            "could not extract {count} independent real eigenvectors"
        )));
    }
    Ok(plain)
}

fn normalize_sign(values: &mut [f64]) {
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return;
    }
    let first = values
        .iter()
        .position(|v| v.abs() >= (1.0 - 1e-9) * peak)
        .expect("peak exists");
    let scale = values[first].signum() / peak;
    values.iter_mut().for_each(|v| *v *= scale);
}

/// Pairs each eigenvalue with an adjacent one whose relative gap is below
/// `rel_tol`. Returns the partner rank for each entry.
pub fn detect_degenerate_pairs(lambdas: &[f64], rel_tol: f64) -> Vec<Option<usize>> {
    let mut partners = vec![None; lambdas.len()];
    let mut i = 0;
    while i + 1 < lambdas.len() {
        if relative_gap(lambdas[i], lambdas[i + 1]) < rel_tol {
            partners[i] = Some(i + 1);
            partners[i + 1] = Some(i);
            i += 2;
        } else {
            i += 1;
        }
    }
    partners
}

/// Rescales an ascending spectrum by one of the table conventions.
pub fn normalize_spectrum(lambdas: &[f64], convention: Normalization) -> Result<NormalizedSpectrum> {
    if lambdas.is_empty() {
        return Err(Error::invalid("cannot normalize an empty spectrum"));
    }
    let (reference, target) = match convention {
        Normalization::None => (1.0, 1.0),
        Normalization::Fundamental => (lambdas[0], 1.0),
        Normalization::Overtone1 => {
            if lambdas.len() < 3 {
                return Err(Error::invalid(
                    "overtone1 normalization needs at least 3 eigenvalues",
                ));
            }
            (lambdas[2], 1.0)
        }
        Normalization::Overtone2 => {
            let second = lambdas
                .windows(2)
                .position(|w| relative_gap(w[0], w[1]) >= DEGENERACY_TOL)
                .map(|i| lambdas[i + 1])
                .ok_or_else(|| {
                    Error::invalid("overtone2 normalization needs two distinct eigenvalues")
                })?;
            (second, 2.0)
        }
    };
    Ok(NormalizedSpectrum {
        values: lambdas.iter().map(|l| target * l / reference).collect(),
        reference_lambda: reference,
        convention,
    })
}
