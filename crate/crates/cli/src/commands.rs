use std::fs;
use std::path::Path;

use drumhead::eigensolver::DEFAULT_MODES;
use drumhead::harmonicity::{
    optimize_xi, refine_minimizer, scan_eccentricity, scan_sigma, scan_sigma_k, SweepSettings,
    DEFAULT_N_MAX,
};
use drumhead::oracle::uniform_reference;
use drumhead::par::available_workers;
use drumhead::report::{
    field_csv, mode_index_csv, quality_map_csv, sweep_csv, xi_scan_csv,
};
use drumhead::{
    export_mode_grid, normalize_spectrum, solve_lambdas, solve_modes, DiscreteOperators,
    DiskGrid, LoadingParams, Normalization, SpectrumReport,
};

use crate::options::{Axis, BenchmarkArgs, ModesArgs, Range, ScanArgs, SolveArgs};
use crate::recipes::Recipe;
use crate::Failure;

const DEFAULT_XI: f64 = 0.091;
const DEFAULT_NR: usize = 65;
const CONCENTRIC_NTHETA: usize = 30;
const ECCENTRIC_NTHETA: usize = 56;
const DEFAULT_COUNT: usize = 20;
const BENCHMARK_MODES: usize = 10;
const BENCHMARK_TOL: f64 = 1e-8;

fn required(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::invalid(format!("--{flag} is required (or pick a --recipe)")))
}

fn recipe_defaults<T>(recipe: Option<Recipe>, command: &str, pick: impl Fn(Recipe) -> Option<T>) -> Result<Option<T>, Failure> {
    match recipe {
        None => Ok(None),
        Some(r) => pick(r).map(Some).ok_or_else(|| {
            Failure::invalid(format!(
                "recipe {} belongs to the {} command, not {command}",
                r.name(),
                r.command()
            ))
        }),
    }
}

fn grid_for(nr: Option<usize>, ntheta: Option<usize>, eccentric: bool) -> Result<DiskGrid, Failure> {
    let default_nt = if eccentric { ECCENTRIC_NTHETA } else { CONCENTRIC_NTHETA };
    Ok(DiskGrid::new(nr.unwrap_or(DEFAULT_NR), ntheta.unwrap_or(default_nt))?)
}

fn default_normalization(eccentric: bool) -> Normalization {
    if eccentric {
        Normalization::Overtone1
    } else {
        Normalization::Overtone2
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

fn describe(params: &LoadingParams, grid: &DiskGrid) -> String {
    format!(
        "sigma = {}, k = {}, xi = {}, eps = {}; grid {} x {}",
        params.sigma,
        params.k,
        params.xi,
        params.epsilon,
        grid.n_r(),
        grid.n_theta()
    )
}

pub fn solve(args: SolveArgs) -> Result<(), Failure> {
    let args = match recipe_defaults(args.recipe, "solve", Recipe::solve)? {
        Some(base) => args.over(base),
        None => args,
    };
    let params = LoadingParams::new(
        required(args.sigma, "sigma")?,
        required(args.k, "k")?,
        args.xi.unwrap_or(DEFAULT_XI),
        args.eps.unwrap_or(0.0),
    )?;
    let eccentric = params.epsilon > 0.0;
    let grid = grid_for(args.nr, args.ntheta, eccentric)?;
    let convention = args.normalize.unwrap_or(default_normalization(eccentric));
    let ops = DiscreteOperators::assemble(grid.clone(), &params)?;
    let modes = solve_modes(&ops, args.nmodes.unwrap_or(DEFAULT_MODES))?;
    let report = SpectrumReport::new(&params, &grid, &modes, convention)?;
    if let Some(path) = &args.out {
        write_file(path, &report.to_json())?;
    }
    println!("{}", describe(&params, &grid));
    println!(
        "normalization {convention}: reference lambda {}",
        report.normalization.reference_lambda
    );
    print!("{}", report.to_table());
    Ok(())
}

// Rejects range flags that the chosen axis would silently ignore.
fn unused_ranges(args: &ScanArgs, axis: Axis) -> Result<(), Failure> {
    let given = [
        ("sigma-range", args.sigma_range.is_some(), matches!(axis, Axis::SigmaK | Axis::Sigma)),
        ("k-range", args.k_range.is_some(), axis == Axis::SigmaK),
        ("eps-range", args.eps_range.is_some(), axis == Axis::Eccentricity),
        ("xi-range", args.xi_range.is_some(), axis == Axis::Xi),
    ];
    for (flag, set, used) in given {
        if set && !used {
            return Err(Failure::invalid(format!("--{flag} has no effect on this axis")));
        }
    }
    Ok(())
}

fn emit(out: Option<&Path>, csv: &str, summary: &[String]) -> Result<(), Failure> {
    match out {
        Some(path) => {
            write_file(path, csv)?;
            for line in summary {
                println!("{line}");
            }
        }
        None => {
            print!("{csv}");
            for line in summary {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

pub fn scan(args: ScanArgs) -> Result<(), Failure> {
    let args = match recipe_defaults(args.recipe, "scan", Recipe::scan)? {
        Some(base) => args.over(base),
        None => args,
    };
    let axis = args.axis.unwrap_or(Axis::SigmaK);
    unused_ranges(&args, axis)?;
    let xi = args.xi.unwrap_or(DEFAULT_XI);
    let eps = args.eps.unwrap_or(0.0);
    let eps_range = args.eps_range.unwrap_or(Range::new(0.0, 0.5, 26));
    let eccentric = match axis {
        Axis::Eccentricity => eps_range.end > 0.0,
        _ => eps > 0.0,
    };
    let grid = grid_for(args.nr, args.ntheta, eccentric)?;
    let settings = SweepSettings::new(grid.n_r(), grid.n_theta())
        .workers(args.workers.unwrap_or_else(available_workers));
    let nmax = args.nmax.unwrap_or(DEFAULT_N_MAX);
    let nmodes = args.nmodes.unwrap_or(DEFAULT_N_MAX);
    let sigma_range = args.sigma_range.unwrap_or(Range::new(1.0, 5.0, 41));
    let out = args.out.as_deref();

    match axis {
        Axis::SigmaK => {
            let k_range = args.k_range.unwrap_or(Range::new(0.2, 0.8, 31));
            let coarse = scan_sigma_k(&sigma_range.values(), &k_range.values(), xi, eps, nmax, settings)?;
            let mut summary = vec![format!(
                "grid minimum: sigma = {} k = {} Q = {}",
                coarse.minimizer.sigma, coarse.minimizer.k, coarse.minimizer.q
            )];
            let refine = args.refine.unwrap_or(5);
            if refine > 0 {
                let fine = refine_minimizer(&coarse, refine, 10.0, settings)?;
                if let Some(path) = &args.refined_out {
                    write_file(path, &quality_map_csv(&fine))?;
                }
                summary.push(format!(
                    "refined minimum: sigma = {} k = {} Q = {}",
                    fine.minimizer.sigma, fine.minimizer.k, fine.minimizer.q
                ));
            }
            emit(out, &quality_map_csv(&coarse), &summary)
        }
        Axis::Sigma => {
            let k = required(args.k, "k")?;
            let sweep = scan_sigma(k, xi, &sigma_range.values(), nmodes, settings)?;
            let convention = args.normalize.unwrap_or(Normalization::Overtone2);
            let values = sweep.normalized(convention)?;
            let summary = vec![format!(
                "{} spectra against sigma, normalization {convention}",
                sweep.axis.len()
            )];
            emit(out, &sweep_csv(&sweep, &values), &summary)
        }
        Axis::Eccentricity => {
            let sigma = required(args.sigma, "sigma")?;
            let k = required(args.k, "k")?;
            let sweep = scan_eccentricity(sigma, k, xi, &eps_range.values(), nmodes, settings)?;
            let convention = args.normalize.unwrap_or(Normalization::Overtone1);
            let values = sweep.normalized(convention)?;
            let summary = vec![format!(
                "{} spectra against eccentricity, normalization {convention}",
                sweep.axis.len()
            )];
            emit(out, &sweep_csv(&sweep, &values), &summary)
        }
        Axis::Xi => {
            let sigma = required(args.sigma, "sigma")?;
            let k = required(args.k, "k")?;
            let xi_range = args.xi_range.unwrap_or(Range::new(0.02, 0.2, 37));
            let scan = optimize_xi(sigma, k, eps, &xi_range.values(), nmax, settings)?;
            let summary = vec![format!("best xi = {} Q = {}", scan.xi_opt, scan.q_opt)];
            emit(out, &xi_scan_csv(&scan), &summary)
        }
    }
}

pub fn modes(args: ModesArgs) -> Result<(), Failure> {
    let args = match recipe_defaults(args.recipe, "modes", Recipe::modes)? {
        Some(base) => args.over(base),
        None => args,
    };
    let params = LoadingParams::new(
        required(args.sigma, "sigma")?,
        required(args.k, "k")?,
        args.xi.unwrap_or(DEFAULT_XI),
        args.eps.unwrap_or(0.0),
    )?;
    let eccentric = params.epsilon > 0.0;
    let grid = grid_for(args.nr, args.ntheta, eccentric)?;
    let count = args.count.unwrap_or(DEFAULT_COUNT);
    let convention = args.normalize.unwrap_or(default_normalization(eccentric));
    let dir = args.out_dir.unwrap_or_else(|| "modes".into());

    let ops = DiscreteOperators::assemble(grid.clone(), &params)?;
    // one extra so a pair straddling the cut still names its partner
    let mut modes = solve_modes(&ops, (count + 1).min(grid.len()).max(count))?;
    let normalized = normalize_spectrum(
        &modes.iter().map(|m| m.lambda).collect::<Vec<_>>(),
        convention,
    )?;
    let mut report = SpectrumReport::new(&params, &grid, &modes, convention)?;
    report.modes.truncate(count);
    modes.truncate(count);

    fs::create_dir_all(&dir)
        .map_err(|e| Failure::invalid(format!("cannot create {}: {e}", dir.display())))?;
    for (i, mode) in modes.iter().enumerate() {
        let path = dir.join(format!("mode_{:02}.csv", i + 1));
        write_file(&path, &field_csv(&export_mode_grid(mode, &grid)))?;
    }
    write_file(&dir.join("index.csv"), &mode_index_csv(&modes, &normalized.values))?;

    println!("{}", describe(&params, &grid));
    println!("wrote {} mode files and index.csv to {}", modes.len(), dir.display());
    print!("{}", report.to_table());
    Ok(())
}

pub fn benchmark(args: BenchmarkArgs) -> Result<(), Failure> {
    let grid = DiskGrid::new(args.nr.unwrap_or(31), args.ntheta.unwrap_or(20))?;
    let uniform = LoadingParams::concentric(1.0, 0.5, DEFAULT_XI)?;
    let ops = DiscreteOperators::assemble(grid.clone(), &uniform)?;
    let computed = solve_lambdas(&ops, BENCHMARK_MODES)?;
    let reference = uniform_reference(BENCHMARK_MODES)?;

    println!("uniform membrane, grid {} x {}", grid.n_r(), grid.n_theta());
    println!("{:>4}  {:>5}  {:>18}  {:>18}  {:>10}", "rank", "mode", "computed", "bessel zero", "rel error");
    let mut worst = 0.0_f64;
    for (i, (c, r)) in computed.iter().zip(&reference).enumerate() {
        let err = ((c - r.lambda) / r.lambda).abs();
        worst = worst.max(err);
        println!(
            "{:>4}  {:>5}  {:>18.12}  {:>18.12}  {:>10.2e}",
            i + 1,
            format!("{}{}", r.m, r.n),
            c,
            r.lambda,
            err
        );
    }
    println!("max relative error {worst:.3e} (tolerance {BENCHMARK_TOL:e})");
    if worst < BENCHMARK_TOL {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failure::Benchmark(format!(
            "max relative error {worst:.3e} exceeds {BENCHMARK_TOL:e}"
        )))
    }
}
