//! Subcommand implementations.

use crate::records::{open_output, read_records, write_rows, OutputRow};
use crate::{CliError, Format};
use lgfib_core::curve::{sample_curve, CurveSpec};
use lgfib_core::fibration::{contract, invert_projection, kernel_check, lg, ProjectedPoint};
use lgfib_core::metrics::{scan_difference, scan_difference_with, ScanConfig};
use lgfib_core::polysphere::{recover_sphere_angles, SphereAngles};
use lgfib_core::verify::{format_f64, run_verification, VerifyConfig};
use lgfib_core::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

pub fn project(
    order: usize,
    tol: f64,
    format: Format,
    output: Option<PathBuf>,
    input: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    check_order(order)?;
    check_tol(tol)?;
    let angle_width = (1usize << order) - 1;
    let coord_width = 1usize << order;

    let mut rows = Vec::new();
    for record in read_records(input.as_deref())? {
        let angles: SphereAngles = if record.values.len() == angle_width {
            SphereAngles::new(record.values).map_err(|err| line_error(record.line, &err))?
        } else if record.values.len() == coord_width {
            recover_sphere_angles(&record.values, tol)
                .map_err(|err| line_error(record.line, &err))?
        } else {
            return Err(CliError::Input(format!(
                "line {}: expected {angle_width} angles or {coord_width} coordinates, got {} fields",
                record.line,
                record.values.len()
            )));
        };
        let rotor = contract(&angles);
        let status = if kernel_check(&rotor, tol).is_kernel {
            "kernel-proximate"
        } else {
            "ok"
        };
        let point = lg(&angles);
        rows.push(OutputRow {
            values: point.coords().iter().map(|&v| Some(v)).collect(),
            status,
        });
    }

    let columns: Vec<String> = (0..=order).map(|k| format!("e{k}")).collect();
    let mut out = open_output(output.as_ref())?;
    write_rows(&mut out, format, &columns, &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn invert(
    order: usize,
    tol: f64,
    format: Format,
    output: Option<PathBuf>,
    input: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    check_order(order)?;
    check_tol(tol)?;
    let width = order + 1;

    let mut rows = Vec::new();
    for record in read_records(input.as_deref())? {
        if record.values.len() != width {
            return Err(CliError::Input(format!(
                "line {}: expected {width} coordinates, got {} fields",
                record.line,
                record.values.len()
            )));
        }
        // degenerate rows are reported in the status column; the batch runs on
        let row = match ProjectedPoint::from_coords(record.values, tol) {
            Err(Error::NonUnitInput { .. }) => OutputRow {
                values: vec![None; order],
                status: "non-unit",
            },
            Err(err) => return Err(line_error(record.line, &err)),
            Ok(point) => match invert_projection(&point, tol) {
                Ok(angles) => OutputRow {
                    values: angles.theta().iter().map(|&t| Some(t)).collect(),
                    status: "ok",
                },
                Err(Error::KernelAmbiguity { .. }) => OutputRow {
                    values: vec![None; order],
                    status: "kernel-ambiguous",
                },
                Err(Error::OffSurface { .. }) => OutputRow {
                    values: vec![None; order],
                    status: "off-surface",
                },
                Err(err) => return Err(line_error(record.line, &err)),
            },
        };
        rows.push(row);
    }

    let columns: Vec<String> = (1..=order).map(|k| format!("theta_{k}")).collect();
    let mut out = open_output(output.as_ref())?;
    write_rows(&mut out, format, &columns, &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(
    order: Option<usize>,
    tol: f64,
    seed: u64,
    samples: usize,
    format: Format,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    check_tol(tol)?;
    if samples == 0 {
        return Err(CliError::Config("--samples must be positive".into()));
    }
    let orders = match order {
        Some(n) => {
            check_order(n)?;
            vec![n]
        }
        None => (2..=6).collect(),
    };
    let config = VerifyConfig {
        orders,
        seed,
        tolerance: tol,
        samples,
    };
    let report = run_verification(&config)
        .map_err(|err| CliError::Config(format!("verification setup failed: {err}")))?;

    let mut out = open_output(output.as_ref())?;
    let body = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    out.write_all(body.as_bytes())?;
    out.flush()?;
    if report.all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("lgfib: verification failed");
        Ok(ExitCode::from(1))
    }
}

pub fn curve(
    a: u32,
    samples: usize,
    format: Format,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let spec = CurveSpec::new(a, samples)
        .map_err(|err| CliError::Config(format!("invalid curve request: {err}")))?;
    let table = sample_curve(&spec);

    let columns: Vec<String> = ["theta_1", "x_prime", "y_prime", "z_prime", "x", "y", "z"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<OutputRow> = table
        .iter()
        .map(|s| OutputRow {
            values: std::iter::once(s.theta1)
                .chain(s.projected)
                .chain(s.plain)
                .map(Some)
                .collect(),
            status: "ok",
        })
        .collect();
    let mut out = open_output(output.as_ref())?;
    write_rows(&mut out, format, &columns, &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn scan(
    order: usize,
    resolution: usize,
    tol: f64,
    format: Format,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    check_order(order)?;
    check_tol(tol)?;
    let config = ScanConfig::new(order, resolution, tol);
    let mut out = open_output(output.as_ref())?;

    match format {
        Format::Csv => {
            // stream the rows, then append the summary as comment lines
            let alpha_cols: Vec<String> = (1..=order).map(|k| format!("alpha_{k}")).collect();
            let beta_cols: Vec<String> = (1..=order).map(|k| format!("beta_{k}")).collect();
            writeln!(out, "{},{},difference", alpha_cols.join(","), beta_cols.join(","))?;
            let mut io_failure: Option<std::io::Error> = None;
            let summary = scan_difference_with(&config, |alpha, beta, d| {
                if io_failure.is_some() {
                    return;
                }
                let fields: Vec<String> = alpha
                    .iter()
                    .chain(beta)
                    .chain(std::iter::once(&d))
                    .map(|&v| format_f64(v))
                    .collect();
                if let Err(err) = writeln!(out, "{}", fields.join(",")) {
                    io_failure = Some(err);
                }
            })
            .map_err(scan_error)?;
            if let Some(err) = io_failure {
                return Err(err.into());
            }
            writeln!(out, "# evaluations,{}", summary.evaluations)?;
            writeln!(out, "# min_difference,{}", format_f64(summary.min_difference))?;
            writeln!(out, "# max_difference,{}", format_f64(summary.max_difference))?;
            writeln!(out, "# invariant_count,{}", summary.invariant_count)?;
            writeln!(
                out,
                "# invariant_fraction,{}",
                format_f64(summary.invariant_fraction)
            )?;
        }
        Format::Json => {
            let scan = scan_difference(&config).map_err(scan_error)?;
            serde_json::to_writer_pretty(&mut out, &scan)
                .map_err(|err| CliError::Input(format!("cannot serialize scan: {err}")))?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn check_order(order: usize) -> Result<(), CliError> {
    if order == 0 || order > lgfib_core::multicomplex::MAX_ORDER {
        return Err(CliError::Config(format!(
            "--order must be in 1..={}",
            lgfib_core::multicomplex::MAX_ORDER
        )));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(CliError::Config("--tol must be a positive number".into()));
    }
    Ok(())
}

fn line_error(line: usize, err: &Error) -> CliError {
    CliError::Input(format!("line {line}: {err}"))
}

fn scan_error(err: Error) -> CliError {
    CliError::Config(format!("scan rejected: {err}"))
}
