//! Command functions behind the `hardylab` binary.
//!
//! Each command reads an optional JSON descriptor, writes CSV to the given
//! writer, optionally writes report files into an output directory, and
//! returns a process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | every check passed |
//! | 1 | a residual or ordering check failed |
//! | 2 | the descriptor is missing, unreadable or not schema-valid |
//! | 3 | a domain, pair or quadrature precondition failed |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bessel::{j0_first_zero, lamb_constant, BesselError};
use crate::geometry::{Domain, DomainSpec};
use crate::hardy_verify::{run_descriptor, IdentityReport, RunDescriptor};
use crate::mean_distance::{xi, SearchGrid, SphereQuadrature};
use crate::spectral::{bound_report_with, default_spacing, SpectralError};
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Options shared by all commands.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub descriptor: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
}

/// Maps an error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Json(_) | Error::Schema(_) | Error::Io(_) => EXIT_SCHEMA,
        Error::Bessel(BesselError::UnknownFamily(_) | BesselError::MissingField(_)) => EXIT_SCHEMA,
        Error::Spectral(SpectralError::BoundViolation(_)) => EXIT_FAIL,
        _ => EXIT_PRECONDITION,
    }
}

fn fail(err: Error) -> i32 {
    eprintln!("error: {err}");
    exit_code(&err)
}

fn read_descriptor(opts: &RunOptions) -> Result<String, Error> {
    let path = opts
        .descriptor
        .as_ref()
        .ok_or_else(|| Error::Schema("--descriptor is required".into()))?;
    Ok(fs::read_to_string(path)?)
}

fn write_outputs(out: Option<&Path>, files: &[(&str, String)]) -> Result<(), Error> {
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        for (name, body) in files {
            fs::write(dir.join(name), body)?;
        }
    }
    Ok(())
}

fn emit(w: &mut dyn Write, text: &str) -> Result<(), Error> {
    w.write_all(text.as_bytes())?;
    Ok(())
}

/// Optional descriptor for `constants`: `{"xi": [[2, 2.0], [3, 1.5]]}`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsDescriptor {
    #[serde(default)]
    pub xi: Vec<(usize, f64)>,
}

/// Prints `name,N,p,value` rows: λ₀, z₀ and Ξ(N,p) for the requested pairs
/// (default N ∈ {1,2,3} × p ∈ {1.5,2,3}).
pub fn cmd_constants(opts: &RunOptions, w: &mut dyn Write) -> i32 {
    let run = || -> Result<String, Error> {
        let desc: ConstantsDescriptor = match &opts.descriptor {
            Some(_) => serde_json::from_str(&read_descriptor(opts)?)?,
            None => ConstantsDescriptor::default(),
        };
        let pairs = if desc.xi.is_empty() {
            [1usize, 2, 3]
                .iter()
                .flat_map(|n| [1.5, 2.0, 3.0].map(|p| (*n, p)))
                .collect()
        } else {
            desc.xi
        };
        let mut csv = String::from("name,N,p,value\n");
        csv += &format!("lambda0,,,{:.16e}\n", lamb_constant());
        csv += &format!("z0,,,{:.16e}\n", j0_first_zero());
        for (n, p) in pairs {
            csv += &format!("xi,{n},{p:.16e},{:.16e}\n", xi(n, p)?);
        }
        write_outputs(opts.out.as_deref(), &[("constants.csv", csv.clone())])?;
        Ok(csv)
    };
    match run().and_then(|csv| emit(w, &csv)) {
        Ok(()) => EXIT_PASS,
        Err(e) => fail(e),
    }
}

fn verify_once(desc: &RunDescriptor, tolerance: Option<f64>) -> Result<IdentityReport, Error> {
    let report = run_descriptor(desc)?;
    Ok(match tolerance {
        Some(t) => report.with_tolerance(t),
        None => report,
    })
}

/// Runs one identity check. Prints the CSV header and row; writes
/// `report.json` and `report.csv` into `--out`.
pub fn cmd_verify(opts: &RunOptions, w: &mut dyn Write) -> i32 {
    let mut run = || -> Result<IdentityReport, Error> {
        let desc = RunDescriptor::from_json(&read_descriptor(opts)?)?;
        let report = verify_once(&desc, opts.tolerance)?;
        let csv = format!("{}\n{}\n", IdentityReport::CSV_HEADER, report.csv_row());
        write_outputs(
            opts.out.as_deref(),
            &[
                ("report.json", serde_json::to_string_pretty(&report)? + "\n"),
                ("report.csv", csv.clone()),
            ],
        )?;
        emit(w, &csv)?;
        Ok(report)
    };
    match run() {
        Ok(r) if r.pass => EXIT_PASS,
        Ok(_) => EXIT_FAIL,
        Err(e) => fail(e),
    }
}

/// Descriptor for `bounds`:
/// `{"domain": {...}, "sphere_nodes": 256, "search_cells": 64, "spacing": 0.015625}`.
/// Omitted fields use the defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDescriptor {
    pub domain: DomainSpec,
    #[serde(default)]
    pub sphere_nodes: Option<usize>,
    #[serde(default)]
    pub search_cells: Option<usize>,
    #[serde(default)]
    pub spacing: Option<f64>,
}

/// Computes the bound report. Prints its CSV header and row; writes
/// `bounds.json` and `bounds.csv` into `--out`.
pub fn cmd_bounds(opts: &RunOptions, w: &mut dyn Write) -> i32 {
    let mut run = || -> Result<(), Error> {
        let desc: BoundsDescriptor = serde_json::from_str(&read_descriptor(opts)?)?;
        let domain = Domain::try_from(&desc.domain)?;
        let sq = match desc.sphere_nodes {
            Some(m) => SphereQuadrature::new(domain.dim(), m)?,
            None => SphereQuadrature::default_for(domain.dim())?,
        };
        let grid = desc.search_cells.map_or_else(SearchGrid::default, |cells| SearchGrid { cells });
        let spacing = desc.spacing.or_else(|| default_spacing(&domain));
        let report = bound_report_with(&domain, &sq, grid, spacing)?;
        let csv = format!("{}\n{}\n", crate::spectral::BoundReport::CSV_HEADER, report.csv_row());
        write_outputs(
            opts.out.as_deref(),
            &[
                ("bounds.json", serde_json::to_string_pretty(&report)? + "\n"),
                ("bounds.csv", csv.clone()),
            ],
        )?;
        emit(w, &csv)
    };
    match run() {
        Ok(()) => EXIT_PASS,
        Err(e) => fail(e),
    }
}

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    P,
    Lambda,
    Cells,
}

/// Descriptor for `sweep`: a base run, the parameter and its values.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDescriptor {
    pub base: RunDescriptor,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

pub const SWEEP_HEADER: &str = "parameter,value,identity,domain,p,lambda,residual,relative_residual,pass";

fn apply(base: &RunDescriptor, param: SweepParameter, value: f64) -> Result<RunDescriptor, Error> {
    let mut d = base.clone();
    let need_pair = |d: &mut RunDescriptor| {
        d.pair
            .as_mut()
            .map(|_| ())
            .ok_or_else(|| Error::Schema("sweeping a pair parameter needs a `pair`".into()))
    };
    match param {
        SweepParameter::P => {
            need_pair(&mut d)?;
            d.pair.as_mut().unwrap().p = Some(value);
        }
        SweepParameter::Lambda => {
            need_pair(&mut d)?;
            d.pair.as_mut().unwrap().lambda = Some(value);
        }
        SweepParameter::Cells => {
            if !(value >= 1.0 && value.fract() == 0.0) {
                return Err(Error::Schema(format!("cell count {value} is not a positive integer")));
            }
            d.quadrature.cells = Some(value as usize);
        }
    }
    Ok(d)
}

/// Runs the base descriptor once per value. Prints one CSV row per value
/// (columns in [`SWEEP_HEADER`]); writes `sweep.csv` into `--out`. An
/// empty value list is a schema error.
pub fn cmd_sweep(opts: &RunOptions, w: &mut dyn Write) -> i32 {
    let mut run = || -> Result<bool, Error> {
        let desc: SweepDescriptor = serde_json::from_str(&read_descriptor(opts)?)?;
        if desc.values.is_empty() {
            return Err(Error::Schema("sweep has no values".into()));
        }
        let name = match desc.parameter {
            SweepParameter::P => "p",
            SweepParameter::Lambda => "lambda",
            SweepParameter::Cells => "cells",
        };
        let mut csv = format!("{SWEEP_HEADER}\n");
        let mut all = true;
        for v in &desc.values {
            let report = verify_once(&apply(&desc.base, desc.parameter, *v)?, opts.tolerance)?;
            all &= report.pass;
            csv += &format!("{name},{v:.16e},{}\n", report.csv_row());
        }
        write_outputs(opts.out.as_deref(), &[("sweep.csv", csv.clone())])?;
        emit(w, &csv)?;
        Ok(all)
    };
    match run() {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => fail(e),
    }
}
