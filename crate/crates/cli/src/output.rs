//! Rendering of catalog, reproduction and verification results.

use std::io::{self, Write};

use serde_json::json;

use diatomic_spectra::table2::Table2Report;
use diatomic_spectra::verify::Suite;
use diatomic_spectra::{
    chemical_dissociation, write_catalog, Catalog, CatalogFormat, OutputFormat, VerifyReport,
};

fn json_line<W: Write>(out: &mut W, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn catalog<W: Write>(
    out: &mut W,
    catalog: &Catalog,
    format: OutputFormat,
) -> diatomic_spectra::Result<()> {
    match format {
        OutputFormat::Csv => write_catalog(&catalog.molecules, out, CatalogFormat::Csv),
        OutputFormat::Json => write_catalog(&catalog.molecules, out, CatalogFormat::Json),
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<6} {:>6} {:>7} {:>8} {:>10} {:>9} {:>7} {:>8}  source",
                "name", "De/eV", "re/Å", "ωe/cm⁻¹", "μ/amu", "a/Å⁻¹", "a·re", "D0/eV"
            )?;
            for p in &catalog.molecules {
                writeln!(
                    out,
                    "{:<6} {:>6} {:>7} {:>8} {:>10} {:>9.5} {:>7.4} {:>8.5}  {}",
                    p.name,
                    p.de,
                    p.re,
                    p.omega_e,
                    p.mu,
                    p.a,
                    p.reduced_width(),
                    chemical_dissociation(p),
                    p.source.as_deref().unwrap_or("-")
                )?;
            }
            Ok(())
        }
    }
}

pub fn validation<W: Write>(
    out: &mut W,
    catalog: &Catalog,
    format: OutputFormat,
) -> io::Result<()> {
    match format {
        OutputFormat::Json => json_line(
            out,
            &json!({
                "accepted": catalog.names().collect::<Vec<_>>(),
                "diagnostics": catalog.diagnostics,
            }),
        ),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["severity", "row", "molecule", "message"])?;
            for d in &catalog.diagnostics {
                let sev = serde_json::to_value(d.severity)?;
                w.write_record([
                    sev.as_str().unwrap_or_default(),
                    &d.row.to_string(),
                    &d.molecule,
                    &d.message,
                ])?;
            }
            w.flush()
        }
        OutputFormat::Table => {
            for d in &catalog.diagnostics {
                writeln!(out, "{d}")?;
            }
            writeln!(
                out,
                "{} molecules accepted, {} diagnostics",
                catalog.molecules.len(),
                catalog.diagnostics.len()
            )
        }
    }
}

pub fn table2<W: Write>(
    out: &mut W,
    report: &Table2Report,
    format: OutputFormat,
) -> io::Result<()> {
    let graded = report.graded().count();
    let passed = report.passed_count();
    let max = report.max_abs_delta();
    match format {
        OutputFormat::Json => json_line(
            out,
            &json!({
                "tolerance": report.tolerance,
                "graded": graded,
                "passed": passed,
                "all_passed": report.all_passed(),
                "max_abs_delta": max,
                "suspected_typos": report.flagged().collect::<Vec<_>>(),
                "cells": report.cells,
            }),
        ),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "molecule",
                "n",
                "ntilde",
                "m",
                "A",
                "B",
                "potential",
                "reference_ev",
                "computed_ev",
                "delta_ev",
                "flag",
                "status",
            ])?;
            for c in &report.cells {
                let k = &c.cell;
                let flag = serde_json::to_value(k.flag)?;
                let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
                w.write_record([
                    k.molecule.clone(),
                    k.n.to_string(),
                    k.ntilde.to_string(),
                    k.m.to_string(),
                    k.a.to_string(),
                    k.b.to_string(),
                    k.potential.to_string(),
                    k.energy_ev.to_string(),
                    opt(c.computed_ev),
                    opt(c.delta_ev),
                    flag.as_str().unwrap_or_default().to_string(),
                    if c.is_flagged() {
                        "flagged"
                    } else {
                        status(c.passed)
                    }
                    .to_string(),
                ])?;
            }
            w.flush()
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<5} {:<8} {:>2} {:>2} {:>2} {:>2} {:>2} {:>10} {:>10} {:>10}  status",
                "mol", "pot", "n", "ñ", "m", "A", "B", "table", "computed", "delta"
            )?;
            for c in &report.cells {
                let k = &c.cell;
                let tag = if c.is_flagged() {
                    "flagged"
                } else {
                    status(c.passed)
                };
                let computed = c
                    .computed_ev
                    .map(|v| format!("{v:.5}"))
                    .unwrap_or_else(|| "-".into());
                let delta = c
                    .delta_ev
                    .map(|v| format!("{v:+.1e}"))
                    .unwrap_or_else(|| "-".into());
                write!(
                    out,
                    "{:<5} {:<8} {:>2} {:>2} {:>2} {:>2} {:>2} {:>10} {:>10} {:>10}  {tag}",
                    k.molecule,
                    k.potential.to_string(),
                    k.n,
                    k.ntilde,
                    k.m,
                    k.a,
                    k.b,
                    k.energy_ev,
                    computed,
                    delta
                )?;
                match &c.error {
                    Some(e) => writeln!(out, " ({e})")?,
                    None => writeln!(out)?,
                }
            }
            for c in report.flagged() {
                let k = &c.cell;
                writeln!(
                    out,
                    "suspected typo: {} {} n={} ñ={} m={} A={} B={} table {} computed {}",
                    k.molecule,
                    k.potential,
                    k.n,
                    k.ntilde,
                    k.m,
                    k.a,
                    k.b,
                    k.energy_ev,
                    c.computed_ev
                        .map(|v| format!("{v:.5}"))
                        .unwrap_or_else(|| "-".into())
                )?;
            }
            let max = max
                .map(|m| format!("{m:.3e}"))
                .unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{}: {passed}/{graded} cells within {} eV, max |delta| = {max} eV",
                status(report.all_passed()),
                report.tolerance
            )
        }
    }
}

pub fn convergence_table<W: Write>(out: &mut W, report: &VerifyReport) -> io::Result<()> {
    for c in report.unconverged() {
        let orders: Vec<String> = c
            .orders
            .iter()
            .map(|o| o.map(|p| format!("{p:.3}")).unwrap_or_else(|| "-".into()))
            .collect();
        writeln!(
            out,
            "  {} [{} points]: orders {}",
            c.case,
            c.points,
            orders.join(" ")
        )?;
    }
    Ok(())
}

pub fn verify<W: Write>(
    out: &mut W,
    report: &VerifyReport,
    format: OutputFormat,
) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "suite",
                "case",
                "index",
                "expected",
                "oracle",
                "extrapolated",
                "delta",
                "tolerance",
                "relative",
                "passed",
            ])?;
            for c in &report.checks {
                w.write_record([
                    c.suite.to_string(),
                    c.case.clone(),
                    c.index.to_string(),
                    c.expected.to_string(),
                    c.oracle.to_string(),
                    c.extrapolated.to_string(),
                    c.delta.to_string(),
                    c.tolerance.to_string(),
                    c.relative.to_string(),
                    c.passed.to_string(),
                ])?;
            }
            w.flush()
        }
        OutputFormat::Table => {
            for c in &report.checks {
                let unit = if c.relative { "rel" } else { "eV" };
                writeln!(
                    out,
                    "{} {:<13} {:<40} {:>2} expected {:>12.6} oracle {:>12.6} delta {:+.2e} (tol {} {unit})",
                    status(c.passed),
                    c.suite.to_string(),
                    c.case,
                    c.index,
                    c.expected,
                    c.oracle,
                    c.delta,
                    c.tolerance
                )?;
            }
            for s in [Suite::Angular, Suite::Kratzer, Suite::MorsePekeris] {
                if let Some(m) = report.max_delta(s) {
                    writeln!(out, "max |delta| {s}: {m:.3e}")?;
                }
            }
            if let Some(g) = report
                .approximation_gap
                .iter()
                .map(|g| g.gap_ev.abs())
                .reduce(f64::max)
            {
                writeln!(
                    out,
                    "Pekeris approximation gap (informational): max {g:.3e} eV"
                )?;
            }
            let failures = report.failures().count();
            let unconverged = report.unconverged().count();
            writeln!(
                out,
                "{}: {} checks, {failures} outside tolerance, {unconverged} unconverged solves",
                status(failures == 0 && unconverged == 0),
                report.checks.len()
            )
        }
    }
}
