//! Spectroscopic parameter sets for diatomic molecules.
//!
//! A catalog is read from CSV or JSON, validated row by row, and completed
//! with the Morse width `a` when a row does not carry one. The ten
//! transition-metal molecules used throughout the crate ship as a bundled
//! default so that everything runs offline.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::units::{ev_to_wavenumber, hbar2_over_2mu, wavenumber_to_ev};

const BUNDLED_CSV: &str = include_str!("../data/molecules.csv");

pub const CSV_HEADER: [&str; 7] = [
    "name",
    "De_eV",
    "re_angstrom",
    "omega_e_cm1",
    "mu_amu",
    "a_inv_angstrom",
    "source",
];

/// Relative mismatch between a supplied and a derived Morse width above
/// which a warning is attached.
pub const WIDTH_MISMATCH_WARNING: f64 = 5e-3;

/// Rows with a·r_e at or below this get a warning.
pub const MIN_REDUCED_WIDTH: f64 = 1.5;

/// One diatomic molecule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeParams<T = f64> {
    pub name: String,
    /// Electronic dissociation energy D_e (eV).
    pub de: T,
    /// Equilibrium internuclear distance r_e (Å).
    pub re: T,
    /// Harmonic vibrational parameter ω_e (cm⁻¹).
    pub omega_e: T,
    /// Reduced mass μ (amu).
    pub mu: T,
    /// Morse width a (Å⁻¹).
    pub a: T,
    pub source: Option<String>,
}

impl<T: Scalar> MoleculeParams<T> {
    /// Dimensionless α = a·r_e.
    pub fn reduced_width(&self) -> T {
        self.a * self.re
    }

    /// ħ²/2μ for this molecule (eV·Å²).
    pub fn kinetic_prefactor(&self) -> T {
        hbar2_over_2mu(self.mu).expect("validated reduced mass")
    }

    pub fn cast<U: Scalar>(&self) -> MoleculeParams<U> {
        let c = |x: T| U::from(x).expect("scalar cast");
        MoleculeParams {
            name: self.name.clone(),
            de: c(self.de),
            re: c(self.re),
            omega_e: c(self.omega_e),
            mu: c(self.mu),
            a: c(self.a),
            source: self.source.clone(),
        }
    }
}

/// Rotational constant B_e = ħ/(4π c μ r_e²) in cm⁻¹.
///
/// Evaluated as ħ²/(2μ r_e²) in eV and converted, which is the same quantity.
pub fn rotational_constant<T: Scalar>(p: &MoleculeParams<T>) -> T {
    ev_to_wavenumber(p.kinetic_prefactor() / (p.re * p.re))
}

/// Morse width a = ω_e / (2 r_e √(B_e D_e)) with every energy in cm⁻¹.
///
/// Ignores the `a` stored on `p`.
pub fn morse_width<T: Scalar>(p: &MoleculeParams<T>) -> T {
    let be = rotational_constant(p);
    let de = ev_to_wavenumber(p.de);
    p.omega_e / (lit::<T>(2.0) * p.re * (be * de).sqrt())
}

/// Chemical dissociation energy D_0 = D_e − ħω_e/2 (eV).
pub fn chemical_dissociation<T: Scalar>(p: &MoleculeParams<T>) -> T {
    p.de - wavenumber_to_ev(p.omega_e) / lit(2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    /// The row was dropped from the catalog.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based data row the diagnostic refers to (header excluded).
    pub row: usize,
    pub molecule: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Rejected => "rejected",
        };
        write!(
            f,
            "{tag}: row {} ({}): {}",
            self.row, self.molecule, self.message
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Csv,
    Json,
}

impl CatalogFormat {
    /// Guesses the format from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => CatalogFormat::Json,
            _ => CatalogFormat::Csv,
        }
    }
}

/// Validated, immutable molecule set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    pub molecules: Vec<MoleculeParams<f64>>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Catalog {
    /// The ten molecules shipped with the crate.
    pub fn bundled() -> Self {
        load_catalog(BUNDLED_CSV.as_bytes(), CatalogFormat::Csv).expect("bundled catalog is valid")
    }

    pub fn get(&self, name: &str) -> Option<&MoleculeParams<f64>> {
        self.molecules.iter().find(|m| m.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.molecules.iter().map(|m| m.name.as_str())
    }

    pub fn has_rejections(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Rejected)
    }

    /// SHA-256 of the canonical CSV serialization.
    pub fn hash(&self) -> String {
        let mut buf = Vec::new();
        write_catalog(&self.molecules, &mut buf, CatalogFormat::Csv).expect("write to memory");
        hex::encode(Sha256::digest(&buf))
    }
}

/// Raw, unvalidated row as it appears in the file.
#[derive(Debug, Default)]
struct RawRow {
    name: String,
    de: f64,
    re: f64,
    omega_e: f64,
    mu: f64,
    a: Option<f64>,
    source: Option<String>,
}

pub fn load_catalog<R: Read>(source: R, format: CatalogFormat) -> Result<Catalog> {
    let rows = match format {
        CatalogFormat::Csv => read_csv_rows(source)?,
        CatalogFormat::Json => read_json_rows(source)?,
    };
    let mut catalog = Catalog::default();
    let mut seen = HashSet::new();
    for (idx, raw) in rows.into_iter().enumerate() {
        let row = idx + 1;
        if !seen.insert(raw.name.clone()) {
            return Err(Error::Conflict(raw.name));
        }
        if let Some(p) = validate_row(row, raw, &mut catalog.diagnostics) {
            catalog.molecules.push(p);
        }
    }
    Ok(catalog)
}

fn validate_row(row: usize, raw: RawRow, diags: &mut Vec<Diagnostic>) -> Option<MoleculeParams> {
    let mut push = |severity, message: String| {
        diags.push(Diagnostic {
            severity,
            row,
            molecule: raw.name.clone(),
            message,
        })
    };

    let mut positive = vec![
        ("De_eV", raw.de),
        ("re_angstrom", raw.re),
        ("omega_e_cm1", raw.omega_e),
        ("mu_amu", raw.mu),
    ];
    if let Some(a) = raw.a {
        positive.push(("a_inv_angstrom", a));
    }
    let bad: Vec<String> = positive
        .iter()
        .filter(|(_, v)| !(*v > 0.0))
        .map(|(f, v)| format!("{f} = {v}"))
        .collect();
    if !bad.is_empty() {
        push(
            Severity::Rejected,
            format!("must be strictly positive: {}", bad.join(", ")),
        );
        return None;
    }

    let mut p = MoleculeParams {
        name: raw.name.clone(),
        de: raw.de,
        re: raw.re,
        omega_e: raw.omega_e,
        mu: raw.mu,
        a: 0.0,
        source: raw.source.clone(),
    };
    let derived = morse_width(&p);
    p.a = match raw.a {
        Some(a) => {
            let rel = (a - derived).abs() / derived;
            if rel > WIDTH_MISMATCH_WARNING {
                push(
                    Severity::Warning,
                    format!(
                        "supplied a = {a} differs from derived {derived:.5} by {:.2}%",
                        rel * 100.0
                    ),
                );
            }
            a
        }
        None => derived,
    };

    let alpha = p.reduced_width();
    if alpha <= MIN_REDUCED_WIDTH {
        push(
            Severity::Warning,
            format!("a·r_e = {alpha:.4} is at or below {MIN_REDUCED_WIDTH}"),
        );
    }
    let d0 = chemical_dissociation(&p);
    if d0 <= 0.0 {
        push(
            Severity::Warning,
            format!("chemical dissociation energy D_0 = {d0:.5} eV is not positive"),
        );
    }
    Some(p)
}

/// Accepts `[+-]digits[.digits]` only: no exponents, separators or specials.
fn parse_plain_decimal(s: &str) -> Option<f64> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    if int.len() + frac.len() == 0 || !digits(int) || !digits(frac) {
        return None;
    }
    s.parse().ok()
}

fn read_csv_rows<R: Read>(source: R) -> Result<Vec<RawRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        // empty file
        return Ok(Vec::new());
    }
    let column = |name: &str| headers.iter().position(|h| h == name);
    for h in headers.iter() {
        if !CSV_HEADER.contains(&h) {
            return Err(Error::Parse {
                row: 0,
                field: h.to_string(),
                message: "unknown column".into(),
            });
        }
    }
    let mut idx = [0usize; 5];
    for (slot, name) in idx.iter_mut().zip(&CSV_HEADER[..5]) {
        *slot = column(name).ok_or_else(|| Error::Parse {
            row: 0,
            field: name.to_string(),
            message: "required column missing from header".into(),
        })?;
    }
    let a_col = column("a_inv_angstrom");
    let src_col = column("source");

    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec?;
        let text = |col: usize| rec.get(col).unwrap_or("");
        let number = |col: usize, field: &str| -> Result<f64> {
            let s = text(col);
            parse_plain_decimal(s).ok_or_else(|| Error::Parse {
                row,
                field: field.to_string(),
                message: format!("`{s}` is not a plain decimal number"),
            })
        };
        let name = text(idx[0]).to_string();
        if name.is_empty() {
            return Err(Error::Parse {
                row,
                field: "name".into(),
                message: "empty molecule name".into(),
            });
        }
        let a = match a_col.map(text) {
            None | Some("") => None,
            Some(_) => Some(number(a_col.unwrap(), "a_inv_angstrom")?),
        };
        let source = src_col
            .map(text)
            .filter(|s| !s.is_empty())
            .map(str::to_string);
        rows.push(RawRow {
            name,
            de: number(idx[1], "De_eV")?,
            re: number(idx[2], "re_angstrom")?,
            omega_e: number(idx[3], "omega_e_cm1")?,
            mu: number(idx[4], "mu_amu")?,
            a,
            source,
        });
    }
    Ok(rows)
}

fn read_json_rows<R: Read>(mut source: R) -> Result<Vec<RawRow>> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let value: Value = serde_json::from_str(&text)?;
    let items = value.as_array().ok_or_else(|| Error::Parse {
        row: 0,
        field: "<root>".into(),
        message: "expected a JSON array of molecule objects".into(),
    })?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let row = i + 1;
            let err = |field: &str, message: &str| Error::Parse {
                row,
                field: field.to_string(),
                message: message.to_string(),
            };
            let obj = item
                .as_object()
                .ok_or_else(|| err("<row>", "expected an object"))?;
            if let Some(k) = obj.keys().find(|k| !CSV_HEADER.contains(&k.as_str())) {
                return Err(err(k, "unknown field"));
            }
            let number = |field: &str| -> Result<f64> {
                obj.get(field)
                    .ok_or_else(|| err(field, "missing"))?
                    .as_f64()
                    .ok_or_else(|| err(field, "expected a number"))
            };
            let name = obj
                .get("name")
                .and_then(Value::as_str)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| err("name", "expected a non-empty string"))?
                .to_string();
            let a = match obj.get("a_inv_angstrom") {
                None | Some(Value::Null) => None,
                Some(v) => Some(
                    v.as_f64()
                        .ok_or_else(|| err("a_inv_angstrom", "expected a number or null"))?,
                ),
            };
            let source = match obj.get("source") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) if s.is_empty() => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return Err(err("source", "expected a string or null")),
            };
            Ok(RawRow {
                name,
                de: number("De_eV")?,
                re: number("re_angstrom")?,
                omega_e: number("omega_e_cm1")?,
                mu: number("mu_amu")?,
                a,
                source,
            })
        })
        .collect()
}

/// Serializes molecules in the catalog schema, `a` always filled in.
pub fn write_catalog<W: Write>(
    molecules: &[MoleculeParams<f64>],
    out: W,
    format: CatalogFormat,
) -> Result<()> {
    match format {
        CatalogFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for m in molecules {
                w.write_record([
                    m.name.clone(),
                    m.de.to_string(),
                    m.re.to_string(),
                    m.omega_e.to_string(),
                    m.mu.to_string(),
                    m.a.to_string(),
                    m.source.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        CatalogFormat::Json => {
            let rows: Vec<Value> = molecules
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "name": m.name,
                        "De_eV": m.de,
                        "re_angstrom": m.re,
                        "omega_e_cm1": m.omega_e,
                        "mu_amu": m.mu,
                        "a_inv_angstrom": m.a,
                        "source": m.source,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(out, &rows)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sch() -> MoleculeParams {
        Catalog::bundled().get("ScH").unwrap().clone()
    }

    #[test]
    fn csv_row_is_ingested_verbatim() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,a_inv_angstrom,source\n\
                    ScH,2.25,1.776,1572,0.986040,1.41113,lab-a\n";
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Csv).unwrap();
        assert_eq!(
            cat.molecules,
            vec![MoleculeParams {
                name: "ScH".into(),
                de: 2.25,
                re: 1.776,
                omega_e: 1572.0,
                mu: 0.986040,
                a: 1.41113,
                source: Some("lab-a".into()),
            }]
        );
        assert!(cat.diagnostics.is_empty());
    }

    #[test]
    fn empty_inputs_give_empty_catalog() {
        assert!(load_catalog(&b""[..], CatalogFormat::Csv)
            .unwrap()
            .molecules
            .is_empty());
        assert!(load_catalog(&b""[..], CatalogFormat::Json)
            .unwrap()
            .molecules
            .is_empty());
        assert!(load_catalog(&b"[]"[..], CatalogFormat::Json)
            .unwrap()
            .molecules
            .is_empty());
        let header_only = CSV_HEADER.join(",") + "\n";
        assert!(load_catalog(header_only.as_bytes(), CatalogFormat::Csv)
            .unwrap()
            .molecules
            .is_empty());
    }

    #[test]
    fn negative_de_is_rejected_with_diagnostic() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,a_inv_angstrom,source\n\
                    Bad,-1,1.776,1572,0.986040,,\n\
                    ScH,2.25,1.776,1572,0.986040,,\n";
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Csv).unwrap();
        assert_eq!(cat.molecules.len(), 1);
        assert!(cat.has_rejections());
        let d = &cat.diagnostics[0];
        assert_eq!((d.row, d.severity), (1, Severity::Rejected));
        assert!(d.message.contains("De_eV"), "{}", d.message);
    }

    #[test]
    fn malformed_number_names_row_and_field() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu\n\
                    ScH,2.25,1.776,1572,0.986040\n\
                    TiH,2.05,1,781,1407,0.987371\n";
        // extra column makes this row ragged
        assert!(load_catalog(text.as_bytes(), CatalogFormat::Csv).is_err());

        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu\n\
                    ScH,2.25,1.776,1572,0.986040\n\
                    TiH,2.05,1.781,1.407e3,0.987371\n";
        match load_catalog(text.as_bytes(), CatalogFormat::Csv) {
            Err(Error::Parse { row, field, .. }) => {
                assert_eq!(row, 2);
                assert_eq!(field, "omega_e_cm1");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn plain_decimal_only() {
        assert_eq!(parse_plain_decimal("1572"), Some(1572.0));
        assert_eq!(parse_plain_decimal("-0.5"), Some(-0.5));
        assert_eq!(parse_plain_decimal(".5"), Some(0.5));
        for bad in ["1,5", "1e3", "inf", "NaN", "", "-", ".", "1 000", "0x10"] {
            assert_eq!(parse_plain_decimal(bad), None, "{bad}");
        }
    }

    #[test]
    fn duplicate_names_conflict() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu\n\
                    ScH,2.25,1.776,1572,0.986040\n\
                    ScH,2.25,1.776,1572,0.986040\n";
        assert!(matches!(
            load_catalog(text.as_bytes(), CatalogFormat::Csv),
            Err(Error::Conflict(name)) if name == "ScH"
        ));
    }

    #[test]
    fn unknown_or_missing_columns_fail() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1\nScH,2.25,1.776,1572\n";
        assert!(matches!(
            load_catalog(text.as_bytes(), CatalogFormat::Csv),
            Err(Error::Parse { field, .. }) if field == "mu_amu"
        ));
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,colour\nScH,2.25,1.776,1572,1,x\n";
        assert!(load_catalog(text.as_bytes(), CatalogFormat::Csv).is_err());
    }

    #[test]
    fn missing_width_is_derived() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,a_inv_angstrom,source\n\
                    ScH,2.25,1.776,1572,0.986040,,\n";
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Csv).unwrap();
        assert_relative_eq!(cat.molecules[0].a, morse_width(&cat.molecules[0]));
        assert_eq!(cat.molecules[0].source, None);
    }

    #[test]
    fn supplied_width_wins_with_warning() {
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,a_inv_angstrom\n\
                    ScH,2.25,1.776,1572,0.986040,1.5\n";
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Csv).unwrap();
        assert_eq!(cat.molecules[0].a, 1.5);
        assert_eq!(cat.diagnostics.len(), 1);
        assert_eq!(cat.diagnostics[0].severity, Severity::Warning);
    }

    #[test]
    fn soft_width_warns() {
        // α = a·r_e ≈ 1.2
        let text = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu\nSoft,20,1.0,1000,1.0\n";
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Csv).unwrap();
        assert_eq!(cat.molecules.len(), 1);
        assert!(cat.diagnostics.iter().any(|d| d.message.contains("a·r_e")));
    }

    #[test]
    fn json_catalog() {
        let text = r#"[{"name":"ScH","De_eV":2.25,"re_angstrom":1.776,"omega_e_cm1":1572,
                        "mu_amu":0.98604,"a_inv_angstrom":null,"source":"lab-a"}]"#;
        let cat = load_catalog(text.as_bytes(), CatalogFormat::Json).unwrap();
        assert_eq!(cat.molecules[0].source.as_deref(), Some("lab-a"));
        assert_relative_eq!(cat.molecules[0].a, 1.41113, max_relative = 2e-3);

        let text =
            r#"[{"name":"ScH","De_eV":"2.25","re_angstrom":1.776,"omega_e_cm1":1572,"mu_amu":1}]"#;
        assert!(matches!(
            load_catalog(text.as_bytes(), CatalogFormat::Json),
            Err(Error::Parse { row: 1, field, .. }) if field == "De_eV"
        ));
    }

    #[test]
    fn bundled_has_ten_clean_molecules() {
        let cat = Catalog::bundled();
        assert_eq!(cat.molecules.len(), 10);
        assert!(cat.diagnostics.is_empty(), "{:?}", cat.diagnostics);
        for m in &cat.molecules {
            let alpha = m.reduced_width();
            assert!((2.3..=3.7).contains(&alpha), "{} α = {alpha}", m.name);
        }
    }

    #[test]
    fn rotational_constant_sch() {
        // hand evaluation: ħ²/(2μ r_e²) = 2.11967e-3 / 1.776² eV = 6.7203e-4 eV = 5.4202 cm⁻¹
        let p = sch();
        assert!((rotational_constant(&p) - 5.42).abs() < 0.01);

        // ħ/(4π c μ r_e²) with SI-style inputs gives the same number
        let k = crate::units::CODATA_2018;
        let hbar = k.hbar_ev_s();
        let mu_ev_s2_per_cm2 = p.mu * k.amu_c2 / (k.speed_of_light * k.speed_of_light);
        let re_cm = p.re * 1e-8;
        let direct = hbar
            / (4.0 * std::f64::consts::PI * k.speed_of_light * mu_ev_s2_per_cm2 * re_cm * re_cm);
        assert_relative_eq!(rotational_constant(&p), direct, max_relative = 1e-8);
    }

    #[test]
    fn rotational_constant_scaling() {
        let p = sch();
        let mut q = p.clone();
        q.re *= 2.0;
        assert_relative_eq!(
            rotational_constant(&q),
            rotational_constant(&p) / 4.0,
            max_relative = 1e-14
        );
        let mut q = p.clone();
        q.mu *= 2.0;
        assert_relative_eq!(
            rotational_constant(&q),
            rotational_constant(&p) / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn morse_width_matches_tabulated() {
        let cat = Catalog::bundled();
        for name in ["ScH", "NiC"] {
            let p = cat.get(name).unwrap();
            assert_relative_eq!(morse_width(p), p.a, max_relative = 2e-3);
        }
        let p = sch();
        let mut q = p.clone();
        q.omega_e *= 2.0;
        assert_relative_eq!(morse_width(&q), 2.0 * morse_width(&p), max_relative = 1e-14);
        assert!((morse_width(&p.cast::<f32>()) - 1.41113).abs() < 3e-3);
    }

    #[test]
    fn dissociation_energies() {
        let cat = Catalog::bundled();
        assert!((chemical_dissociation(cat.get("ScH").unwrap()) - 2.1526).abs() < 1e-3);
        assert!((chemical_dissociation(cat.get("MnH").unwrap()) - 1.5752).abs() < 1e-3);
        let mut p = sch();
        p.omega_e = 0.0;
        assert_eq!(chemical_dissociation(&p), p.de);
        for m in &cat.molecules {
            assert!(chemical_dissociation(m) < m.de);
        }
    }

    #[test]
    fn serialization_is_idempotent() {
        let cat = Catalog::bundled();
        for fmt in [CatalogFormat::Csv, CatalogFormat::Json] {
            let mut buf = Vec::new();
            write_catalog(&cat.molecules, &mut buf, fmt).unwrap();
            let again = load_catalog(buf.as_slice(), fmt).unwrap();
            assert_eq!(again.molecules, cat.molecules);
            let mut buf2 = Vec::new();
            write_catalog(&again.molecules, &mut buf2, fmt).unwrap();
            assert_eq!(buf, buf2);
        }
        assert_eq!(cat.hash().len(), 64);
    }
}
