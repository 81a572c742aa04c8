//! Machine-readable level reports in JSON, CSV and aligned-text form.
//!
//! Floating-point fields are rounded to [`SIGNIFICANT_DIGITS`] when a row is
//! built and written in shortest round-trip form, so parsing an emitted
//! report and writing it again reproduces the same bytes.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::{AngularChannel, Parity};
use crate::catalog::MoleculeParams;
use crate::error::{Error, Result};
use crate::radial::{energy_level, EnergyLevel, LevelAux, PotentialKind};
use crate::units::CONSTANTS_VERSION;

pub const SIGNIFICANT_DIGITS: usize = 6;

pub const CSV_COLUMNS: [&str; 14] = [
    "molecule",
    "potential",
    "n",
    "ntilde",
    "m",
    "A",
    "B",
    "e_theta",
    "ell_tilde",
    "energy_ev",
    "c_nm",
    "d_nm",
    "n_max",
    "bound_count",
];

/// Rounds to `SIGNIFICANT_DIGITS` significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub catalog_hash: String,
    pub constants_version: String,
    pub timestamp: String,
}

impl ReportMetadata {
    pub fn new(catalog_hash: impl Into<String>, timestamp: impl Into<String>) -> Self {
        Self {
            catalog_hash: catalog_hash.into(),
            constants_version: CONSTANTS_VERSION.into(),
            timestamp: timestamp.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    UnboundLevel,
    SuspectedTypo,
    ParityIgnored,
    Catalog,
}

impl DiagnosticKind {
    fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::UnboundLevel => "unbound_level",
            DiagnosticKind::SuspectedTypo => "suspected_typo",
            DiagnosticKind::ParityIgnored => "parity_ignored",
            DiagnosticKind::Catalog => "catalog",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            DiagnosticKind::UnboundLevel,
            DiagnosticKind::SuspectedTypo,
            DiagnosticKind::ParityIgnored,
            DiagnosticKind::Catalog,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDiagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl ReportDiagnostic {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into().replace(['\n', '\r'], " "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub molecule: String,
    pub potential: PotentialKind,
    pub n: u32,
    pub ntilde: u32,
    pub m: i32,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub e_theta: f64,
    pub ell_tilde: f64,
    pub energy_ev: f64,
    pub aux: LevelAux<f64>,
}

impl From<&EnergyLevel<f64>> for ReportRow {
    fn from(l: &EnergyLevel<f64>) -> Self {
        Self {
            molecule: l.molecule.clone(),
            potential: l.potential,
            n: l.n,
            ntilde: l.channel.n_tilde,
            m: l.channel.m,
            a: round_sig(l.channel.a),
            b: round_sig(l.channel.b),
            e_theta: round_sig(l.solution.e_theta),
            ell_tilde: round_sig(l.solution.ell_tilde),
            energy_ev: round_sig(l.energy),
            aux: LevelAux {
                c_nm: l.aux.c_nm.map(round_sig),
                d_nm: l.aux.d_nm.map(round_sig),
                n_max: l.aux.n_max.map(round_sig),
                bound_count: l.aux.bound_count,
            },
        }
    }
}

impl ReportRow {
    fn sort_key(&self) -> (&str, PotentialKind, u32, u32, i32) {
        (&self.molecule, self.potential, self.n, self.ntilde, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Input(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
    pub diagnostics: Vec<ReportDiagnostic>,
}

impl SpectrumReport {
    pub fn new(metadata: ReportMetadata) -> Self {
        Self {
            metadata,
            rows: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn push_level(&mut self, level: &EnergyLevel<f64>) {
        self.rows.push(level.into());
    }

    pub fn push_diagnostic(&mut self, kind: DiagnosticKind, message: impl Into<String>) {
        self.diagnostics.push(ReportDiagnostic::new(kind, message));
    }

    /// Stable order: molecule, potential, n, ñ, m.
    pub fn sort_rows(&mut self) {
        self.rows.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    }

    pub fn write<W: Write>(&self, out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Json => self.write_json(out),
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Table => self.write_table(out),
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf, format)?;
        Ok(String::from_utf8(buf).expect("report output is UTF-8"))
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(source: R) -> Result<Self> {
        Ok(serde_json::from_reader(source)?)
    }

    /// Metadata and diagnostics go in leading `# key=value` lines.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let md = &self.metadata;
        writeln!(out, "# catalog_hash={}", md.catalog_hash)?;
        writeln!(out, "# constants_version={}", md.constants_version)?;
        writeln!(out, "# timestamp={}", md.timestamp)?;
        for d in &self.diagnostics {
            writeln!(out, "# diagnostic={}: {}", d.kind.as_str(), d.message)?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for r in &self.rows {
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                r.molecule.clone(),
                r.potential.to_string(),
                r.n.to_string(),
                r.ntilde.to_string(),
                r.m.to_string(),
                r.a.to_string(),
                r.b.to_string(),
                r.e_theta.to_string(),
                r.ell_tilde.to_string(),
                r.energy_ev.to_string(),
                opt(r.aux.c_nm),
                opt(r.aux.d_nm),
                opt(r.aux.n_max),
                r.aux.bound_count.map(|c| c.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(source: R) -> Result<Self> {
        let mut reader = BufReader::new(source);
        let (mut hash, mut version, mut stamp) = (None, None, None);
        let mut diagnostics = Vec::new();
        let mut line = String::new();
        let mut body = String::new();
        loop {
            line.clear();
            if reader.read_line(&mut line)? == 0 {
                break;
            }
            let Some(meta) = line.strip_prefix("# ") else {
                body.push_str(&line);
                break;
            };
            let meta = meta.trim_end_matches(['\n', '\r']);
            let (key, value) = meta
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("malformed metadata line `{meta}`")))?;
            match key {
                "catalog_hash" => hash = Some(value.to_string()),
                "constants_version" => version = Some(value.to_string()),
                "timestamp" => stamp = Some(value.to_string()),
                "diagnostic" => {
                    let (kind, message) = value
                        .split_once(": ")
                        .and_then(|(k, m)| Some((DiagnosticKind::parse(k)?, m)))
                        .ok_or_else(|| Error::Input(format!("malformed diagnostic `{value}`")))?;
                    diagnostics.push(ReportDiagnostic::new(kind, message));
                }
                other => return Err(Error::Input(format!("unknown metadata key `{other}`"))),
            }
        }
        reader.read_to_string(&mut body)?;
        let missing = |k: &str| Error::Input(format!("missing metadata `{k}`"));
        let metadata = ReportMetadata {
            catalog_hash: hash.ok_or_else(|| missing("catalog_hash"))?,
            constants_version: version.ok_or_else(|| missing("constants_version"))?,
            timestamp: stamp.ok_or_else(|| missing("timestamp"))?,
        };

        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        if rdr.headers()?.iter().ne(CSV_COLUMNS) {
            return Err(Error::Input("unexpected report columns".into()));
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let row = i + 1;
            let field = |j: usize| rec.get(j).unwrap_or("");
            let bad = |j: usize, e: String| Error::Parse {
                row,
                field: CSV_COLUMNS[j].into(),
                message: e,
            };
            let num = |j: usize| field(j).parse::<f64>().map_err(|e| bad(j, e.to_string()));
            let opt = |j: usize| -> Result<Option<f64>> {
                if field(j).is_empty() {
                    Ok(None)
                } else {
                    num(j).map(Some)
                }
            };
            rows.push(ReportRow {
                molecule: field(0).to_string(),
                potential: field(1).parse().map_err(|e: Error| bad(1, e.to_string()))?,
                n: field(2).parse().map_err(|e| bad(2, format!("{e}")))?,
                ntilde: field(3).parse().map_err(|e| bad(3, format!("{e}")))?,
                m: field(4).parse().map_err(|e| bad(4, format!("{e}")))?,
                a: num(5)?,
                b: num(6)?,
                e_theta: num(7)?,
                ell_tilde: num(8)?,
                energy_ev: num(9)?,
                aux: LevelAux {
                    c_nm: opt(10)?,
                    d_nm: opt(11)?,
                    n_max: opt(12)?,
                    bound_count: match field(13) {
                        "" => None,
                        s => Some(s.parse().map_err(|e| bad(13, format!("{e}")))?),
                    },
                },
            });
        }
        Ok(Self {
            metadata,
            rows,
            diagnostics,
        })
    }

    /// Aligned text for terminals; not meant to be parsed.
    pub fn write_table<W: Write>(&self, mut out: W) -> Result<()> {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<6} {:<8} {:>3} {:>3} {:>4} {:>6} {:>6} {:>12} {:>10} {:>12} {:>10}",
            "mol", "pot", "n", "ñ", "m", "A", "B", "E_θ", "ℓ̃", "E (eV)", "C/D"
        );
        for r in &self.rows {
            let cd = r
                .aux
                .c_nm
                .or(r.aux.d_nm)
                .map(|v| v.to_string())
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "{:<6} {:<8} {:>3} {:>3} {:>4} {:>6} {:>6} {:>12} {:>10} {:>12} {:>10}",
                r.molecule,
                r.potential.to_string(),
                r.n,
                r.ntilde,
                r.m,
                r.a,
                r.b,
                r.e_theta,
                r.ell_tilde,
                r.energy_ev,
                cd
            );
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "# {}: {}", d.kind.as_str(), d.message);
        }
        out.write_all(s.as_bytes())?;
        Ok(())
    }
}

/// A rectangular (potential × n × ñ × m) request for one molecule.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelGrid {
    pub potentials: Vec<PotentialKind>,
    pub n: RangeInclusive<u32>,
    pub ntilde: RangeInclusive<u32>,
    pub m: RangeInclusive<i32>,
    pub a: f64,
    pub b: f64,
    pub parity: Parity,
}

impl LevelGrid {
    pub fn len(&self) -> usize {
        self.potentials.len()
            * self.n.clone().count()
            * self.ntilde.clone().count()
            * self.m.clone().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Evaluates every cell of `grid`. Unbound Morse levels are skipped with a
/// diagnostic; any other failure aborts.
pub fn levels_report(
    p: &MoleculeParams,
    grid: &LevelGrid,
    metadata: ReportMetadata,
) -> Result<SpectrumReport> {
    let mut report = SpectrumReport::new(metadata);
    if grid.b > 0.0 && grid.parity != Parity::default() {
        report.push_diagnostic(
            DiagnosticKind::ParityIgnored,
            format!("parity {:?} has no effect for B = {}", grid.parity, grid.b).to_lowercase(),
        );
    }
    let mut cells = Vec::with_capacity(grid.len());
    for &kind in &grid.potentials {
        for n in grid.n.clone() {
            for nt in grid.ntilde.clone() {
                for m in grid.m.clone() {
                    cells.push((
                        kind,
                        n,
                        AngularChannel::with_parity(nt, m, grid.a, grid.b, grid.parity)?,
                    ));
                }
            }
        }
    }
    let results: Vec<_> = cells
        .par_iter()
        .map(|(kind, n, ch)| energy_level(p, *kind, *n, ch))
        .collect();
    for ((kind, n, ch), res) in cells.iter().zip(results) {
        match res {
            Ok(level) => report.push_level(&level),
            Err(Error::UnboundLevel {
                n_max, bound_count, ..
            }) => report.push_diagnostic(
                DiagnosticKind::UnboundLevel,
                format!(
                    "{} {kind} n={n} ñ={} m={}: unbound (n_max = {}, {bound_count} bound levels)",
                    p.name,
                    ch.n_tilde,
                    ch.m,
                    round_sig(n_max)
                ),
            ),
            Err(Error::Domain(msg)) if *kind == PotentialKind::Morse => report.push_diagnostic(
                DiagnosticKind::UnboundLevel,
                format!("{} {kind} n={n} ñ={} m={}: {msg}", p.name, ch.n_tilde, ch.m),
            ),
            Err(e) => return Err(e),
        }
    }
    report.sort_rows();
    Ok(report)
}
