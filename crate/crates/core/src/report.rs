//! Serialized forms of spectra, sweeps and mode fields.
//!
//! Every number is rounded to 12 significant digits before it is written, so
//! identical inputs give byte-identical files.

use std::fmt::Write as _;

use serde::Serialize;

use crate::density::LoadingParams;
use crate::eigensolver::{normalize_spectrum, Mode, Normalization};
use crate::error::Result;
use crate::harmonicity::{cents_vs_nearest_integer, QualityMap, SpectrumSweep, XiScan};
use crate::modes::FieldRow;
use crate::spectral_disk::DiskGrid;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Text form of [`round12`] used in CSV output.
pub fn fmt12(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSize {
    pub nr: usize,
    pub ntheta: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizationInfo {
    pub convention: Normalization,
    pub reference_lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeEntry {
    /// 1-based rank in the ascending spectrum.
    pub rank: usize,
    pub lambda: f64,
    pub normalized: f64,
    pub m: u32,
    pub n: u32,
    /// Rank of the degenerate partner.
    pub partner: Option<usize>,
    pub cents_vs_nearest_integer: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub params: LoadingParams,
    pub grid: GridSize,
    pub normalization: NormalizationInfo,
    pub modes: Vec<ModeEntry>,
}

impl SpectrumReport {
    pub fn new(
        params: &LoadingParams,
        grid: &DiskGrid,
        modes: &[Mode],
        convention: Normalization,
    ) -> Result<Self> {
        let lambdas: Vec<f64> = modes.iter().map(|m| m.lambda).collect();
        let normalized = normalize_spectrum(&lambdas, convention)?;
        let entries = modes
            .iter()
            .zip(&normalized.values)
            .enumerate()
            .map(|(i, (mode, &w))| ModeEntry {
                rank: i + 1,
                lambda: round12(mode.lambda),
                normalized: round12(w),
                m: mode.label_m,
                n: mode.label_n,
                partner: mode.degeneracy_partner.map(|p| p + 1),
                cents_vs_nearest_integer: cents_vs_nearest_integer(w).map(round12),
            })
            .collect();
        Ok(Self {
            params: LoadingParams {
                sigma: round12(params.sigma),
                k: round12(params.k),
                xi: round12(params.xi),
                epsilon: round12(params.epsilon),
            },
            grid: GridSize {
                nr: grid.n_r(),
                ntheta: grid.n_theta(),
            },
            normalization: NormalizationInfo {
                convention,
                reference_lambda: round12(normalized.reference_lambda),
            },
            modes: entries,
        })
    }

    pub fn raw_lambdas(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.lambda).collect()
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.normalized).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    /// Human-readable table for a terminal.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4}  {:>7}  {:>14}  {:>10}  {:>8}  {:>9}",
            "rank", "mode", "lambda", "normalized", "partner", "cents"
        );
        for m in &self.modes {
            let partner = m.partner.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            let cents = m
                .cents_vs_nearest_integer
                .map(|c| format!("{c:+.2}"))
                .unwrap_or_else(|| "-".into());
            let label = format!("psi{}{}", m.m, m.n);
            let _ = writeln!(
                out,
                "{:>4}  {:>7}  {:>14.10}  {:>10.4}  {:>8}  {:>9}",
                m.rank, label, m.lambda, m.normalized, partner, cents
            );
        }
        out
    }
}

/// `r,theta,value` CSV of an exported mode field.
pub fn field_csv(rows: &[FieldRow]) -> String {
    let mut out = String::from("r,theta,value\n");
    for row in rows {
        let _ = writeln!(out, "{},{},{}", fmt12(row.r), fmt12(row.theta), fmt12(row.value));
    }
    out
}

/// Index of exported modes: one line per rank.
pub fn mode_index_csv(modes: &[Mode], normalized: &[f64]) -> String {
    let mut out = String::from("rank,lambda,normalized,m,n,partner\n");
    for (i, (mode, w)) in modes.iter().zip(normalized).enumerate() {
        let partner = mode
            .degeneracy_partner
            .map(|p| (p + 1).to_string())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            i + 1,
            fmt12(mode.lambda),
            fmt12(*w),
            mode.label_m,
            mode.label_n,
            partner
        );
    }
    out
}

/// `Q` matrix: the first row holds the k axis, the first column the sigma axis.
pub fn quality_map_csv(map: &QualityMap) -> String {
    let mut out = String::from("sigma\\k");
    for k in &map.k_axis {
        let _ = write!(out, ",{}", fmt12(*k));
    }
    out.push('\n');
    for (sigma, row) in map.sigma_axis.iter().zip(&map.q_values) {
        out.push_str(&fmt12(*sigma));
        for q in row {
            let _ = write!(out, ",{}", fmt12(*q));
        }
        out.push('\n');
    }
    out
}

/// One row per sweep point: the parameter value followed by the spectrum.
pub fn sweep_csv(sweep: &SpectrumSweep, values: &[Vec<f64>]) -> String {
    let width = values.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = sweep.parameter.clone();
    for i in 1..=width {
        let _ = write!(out, ",mode{i}");
    }
    out.push('\n');
    for (x, row) in sweep.axis.iter().zip(values) {
        out.push_str(&fmt12(*x));
        for v in row {
            let _ = write!(out, ",{}", fmt12(*v));
        }
        out.push('\n');
    }
    out
}

/// Two-column `xi,Q` CSV.
pub fn xi_scan_csv(scan: &XiScan) -> String {
    let mut out = String::from("xi,Q\n");
    for (xi, q) in scan.xi_axis.iter().zip(&scan.q_values) {
        let _ = writeln!(out, "{},{}", fmt12(*xi), fmt12(*q));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonicity::Minimizer;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(std::f64::consts::PI), 3.14159265359);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(fmt12(2.0), "2");
        assert_eq!(fmt12(-3.2e-17), "-3.2e-17");
        assert_eq!(fmt12(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn quality_map_layout() {
        let map = QualityMap {
            sigma_axis: vec![1.0, 2.0],
            k_axis: vec![0.2, 0.5, 0.8],
            q_values: vec![vec![0.1, 0.2, 0.3], vec![0.4, 0.05, 0.6]],
            n_max: 15,
            xi: 0.091,
            epsilon: 0.0,
            minimizer: Minimizer {
                sigma: 2.0,
                k: 0.5,
                q: 0.05,
            },
        };
        assert_eq!(
            quality_map_csv(&map),
            "sigma\\k,0.2,0.5,0.8\n1,0.1,0.2,0.3\n2,0.4,0.05,0.6\n"
        );
    }

    #[test]
    fn field_csv_header_and_line_endings() {
        let rows = [FieldRow {
            r: 1.0,
            theta: 0.0,
            value: 0.0,
        }];
        let csv = field_csv(&rows);
        assert_eq!(csv, "r,theta,value\n1,0,0\n");
        assert!(!csv.contains('\r'));
    }
}
