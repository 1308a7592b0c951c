//! Nodal labels and field export for eigenfunctions.

use serde::Serialize;

use crate::eigensolver::Mode;
use crate::spectral_disk::DiskGrid;

/// Values below this fraction of the peak are treated as nodal.
const ZERO_FRACTION: f64 = 1e-8;
const PROBE_RADIUS: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Nodal lines: half the sign changes around a circle.
    pub m: u32,
    /// Nodal contours counting the rim, from the number of nodal domains.
    pub n: u32,
    /// The circles used to count `m` disagreed, or the domain count was not
    /// a multiple of `2m`.
    pub uncertain: bool,
}

fn sign_changes(samples: impl Iterator<Item = f64>, threshold: f64) -> usize {
    let signs: Vec<bool> = samples
        .filter(|v| v.abs() > threshold)
        .map(|v| v > 0.0)
        .collect();
    let mut changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    if signs.len() > 1 && signs[0] != signs[signs.len() - 1] {
        changes += 1;
    }
    changes
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Connected same-sign regions of the node values. Nodes are linked to their
/// angular and radial neighbours. When the centre itself is not nodal (the
/// innermost circle is dominated by its mean), the innermost nodes sharing
/// the sign of that mean are joined through it.
fn nodal_domains(values: &[f64], grid: &DiskGrid, threshold: f64) -> usize {
    let nt = grid.n_theta();
    let nrad = grid.n_radii();
    let mut parent: Vec<usize> = (0..values.len()).collect();
    let sign = |k: usize| -> Option<bool> {
        (values[k].abs() > threshold).then(|| values[k] > 0.0)
    };
    let link = |a: usize, b: usize, parent: &mut Vec<usize>| {
        if let (Some(sa), Some(sb)) = (sign(a), sign(b)) {
            if sa == sb {
                let (ra, rb) = (find(parent, a), find(parent, b));
                parent[ra] = rb;
            }
        }
    };
    for j in 0..nrad {
        for i in 0..nt {
            let k = grid.index(j, i);
            link(k, grid.index(j, (i + 1) % nt), &mut parent);
            if j + 1 < nrad {
                link(k, grid.index(j + 1, i), &mut parent);
            }
        }
    }
    let inner: Vec<usize> = (0..nt).map(|i| grid.index(nrad - 1, i)).collect();
    let mean = inner.iter().map(|&k| values[k]).sum::<f64>() / nt as f64;
    let amplitude = inner.iter().fold(0.0_f64, |m, &k| m.max(values[k].abs()));
    if mean.abs() > 0.5 * amplitude {
        let same: Vec<usize> = inner
            .into_iter()
            .filter(|&k| sign(k) == Some(mean > 0.0))
            .collect();
        for w in same.windows(2) {
            link(w[0], w[1], &mut parent);
        }
    }
    let mut roots: Vec<usize> = (0..values.len())
        .filter(|&k| sign(k).is_some())
        .map(|k| find(&mut parent, k))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Counts nodal lines and contours of a grid eigenfunction.
///
/// Nodal lines are counted on the circle nearest `r = 0.75` and on the three
/// outermost circles; the most common count wins, ties going to the
/// outermost circle. A separable mode with `m` lines and `n` contours has
/// `2 m n` nodal domains (`n` when `m = 0`), which also holds for the bent
/// nodal patterns of eccentric loading, so `n` is recovered from the domain
/// count.
pub fn classify_mode(values: &[f64], grid: &DiskGrid) -> Classification {
    let nt = grid.n_theta();
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let threshold = ZERO_FRACTION * peak;

    let radii = grid.radii();
    let probe = (0..radii.len())
        .min_by(|&a, &b| {
            (radii[a] - PROBE_RADIUS)
                .abs()
                .total_cmp(&(radii[b] - PROBE_RADIUS).abs())
        })
        .unwrap_or(0);
    let mut circles: Vec<usize> = (0..radii.len().min(3)).collect();
    if !circles.contains(&probe) {
        circles.push(probe);
    }
    let votes: Vec<u32> = circles
        .iter()
        .map(|&j| {
            let ring = (0..nt).map(|i| values[grid.index(j, i)]);
            (sign_changes(ring, threshold) / 2) as u32
        })
        .collect();
    let tally = |m: u32| votes.iter().filter(|&&v| v == m).count();
    let top = votes.iter().map(|&v| tally(v)).max().unwrap_or(0);
    // votes[0] is the outermost circle
    let m = if tally(votes[0]) == top {
        votes[0]
    } else {
        votes.iter().copied().find(|&v| tally(v) == top).unwrap_or(0)
    };

    let domains = nodal_domains(values, grid, threshold).max(1) as u32;
    let per_contour = if m == 0 { 1 } else { 2 * m };
    let n = ((domains + per_contour / 2) / per_contour).max(1);

    Classification {
        m,
        n,
        uncertain: votes.iter().any(|&v| v != m) || domains % per_contour != 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldRow {
    pub r: f64,
    pub theta: f64,
    pub value: f64,
}

/// Eigenfunction samples as `(r, theta, value)` rows ready for a contour
/// plotter: every interior circle with `theta = 2 pi` repeating `theta = 0`,
/// followed by the clamped rim `r = 1` where the value is zero.
pub fn export_mode_grid(mode: &Mode, grid: &DiskGrid) -> Vec<FieldRow> {
    export_field(&mode.values, grid)
}

/// [`export_mode_grid`] for a bare vector of node values.
pub fn export_field(values: &[f64], grid: &DiskGrid) -> Vec<FieldRow> {
    let nt = grid.n_theta();
    let closing = std::f64::consts::TAU;
    let mut rows = Vec::with_capacity((grid.n_radii() + 1) * (nt + 1));
    for (j, &r) in grid.radii().iter().enumerate() {
        for (i, &theta) in grid.angles().iter().enumerate() {
            rows.push(FieldRow {
                r,
                theta,
                value: values[grid.index(j, i)],
            });
        }
        rows.push(FieldRow {
            r,
            theta: closing,
            value: values[grid.index(j, 0)],
        });
    }
    for &theta in grid.angles().iter().chain(std::iter::once(&closing)) {
        rows.push(FieldRow {
            r: 1.0,
            theta,
            value: 0.0,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn field(grid: &DiskGrid, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        grid.sample(f)
    }

    #[test]
    fn labels_of_separable_test_functions() {
        let g = DiskGrid::new(31, 24).unwrap();
        let fundamental = field(&g, |r, _| (PI * r / 2.0).cos());
        assert_eq!(classify_mode(&fundamental, &g), Classification { m: 0, n: 1, uncertain: false });

        let dipole = field(&g, |r, t| r * (1.0 - r * r) * t.cos());
        assert_eq!(classify_mode(&dipole, &g), Classification { m: 1, n: 1, uncertain: false });

        // one interior nodal circle at r = 0.5
        let ring = field(&g, |r, _| (1.0 - r * r) * (0.5 - r));
        assert_eq!(classify_mode(&ring, &g).n, 2);
        assert_eq!(classify_mode(&ring, &g).m, 0);

        let quad = field(&g, |r, t| r * r * (1.0 - r) * (0.3 - r) * (2.0 * t).sin());
        let c = classify_mode(&quad, &g);
        assert_eq!((c.m, c.n), (2, 2));
    }

    #[test]
    fn mirror_image_has_the_same_label() {
        let g = DiskGrid::new(21, 16).unwrap();
        let f = field(&g, |r, t| r.powi(3) * (1.0 - r) * (3.0 * t + 0.4).cos());
        let mirrored: Vec<f64> = (0..g.len()).map(|k| f[g.mirror_index(k)]).collect();
        assert_eq!(classify_mode(&f, &g), classify_mode(&mirrored, &g));
    }

    #[test]
    fn export_counts_and_rim() {
        let g = DiskGrid::new(3, 4).unwrap();
        let rows = export_field(&[0.1, 0.2, 0.3, 0.4], &g);
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[4].theta, 2.0 * PI);
        assert_eq!(rows[4].value, 0.1);
        assert!(rows[5..].iter().all(|row| row.r == 1.0 && row.value == 0.0));
    }
}
