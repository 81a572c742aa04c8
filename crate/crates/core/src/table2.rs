//! Reference bound-state energies for the ten bundled molecules and their
//! recomputation from the closed forms.

use std::io::Read;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::AngularChannel;
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::radial::{energy_level, PotentialKind};

const BUNDLED_CSV: &str = include_str!("../data/table2_reference.csv");

pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellFlag {
    #[default]
    Ok,
    /// Inconsistent with its neighbours; reported but never fails a run.
    SuspectedTypo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCell {
    pub molecule: String,
    pub n: u32,
    pub ntilde: u32,
    pub m: i32,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub potential: PotentialKind,
    pub energy_ev: f64,
    pub flag: CellFlag,
}

/// Reads `molecule,n,ntilde,m,A,B,potential,energy_ev,flag` rows.
pub fn load_reference<R: Read>(source: R) -> Result<Vec<ReferenceCell>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut cells = Vec::new();
    for (i, rec) in rdr.deserialize().enumerate() {
        let cell: ReferenceCell = rec.map_err(|e| Error::Parse {
            row: i + 1,
            field: "record".into(),
            message: e.to_string(),
        })?;
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(Error::Input("reference table has no rows".into()));
    }
    Ok(cells)
}

pub fn bundled_reference() -> Vec<ReferenceCell> {
    load_reference(BUNDLED_CSV.as_bytes()).expect("bundled reference table is valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    #[serde(flatten)]
    pub cell: ReferenceCell,
    pub computed_ev: Option<f64>,
    pub delta_ev: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CellComparison {
    pub fn is_flagged(&self) -> bool {
        self.cell.flag == CellFlag::SuspectedTypo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2Report {
    pub tolerance: f64,
    pub cells: Vec<CellComparison>,
}

impl Table2Report {
    /// Cells that take part in pass/fail.
    pub fn graded(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(|c| !c.is_flagged())
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(|c| c.is_flagged())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellComparison> {
        self.graded().filter(|c| !c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.graded().filter(|c| c.passed).count()
    }

    /// Largest |delta| over graded cells.
    pub fn max_abs_delta(&self) -> Option<f64> {
        self.graded()
            .filter_map(|c| c.delta_ev)
            .map(f64::abs)
            .reduce(f64::max)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn compare(catalog: &Catalog, cell: &ReferenceCell, tol: f64) -> CellComparison {
    let computed = catalog
        .get(&cell.molecule)
        .ok_or_else(|| Error::Input(format!("unknown molecule `{}`", cell.molecule)))
        .and_then(|p| {
            let ch = AngularChannel::new(cell.ntilde, cell.m, cell.a, cell.b)?;
            energy_level(p, cell.potential, cell.n, &ch)
        });
    match computed {
        Ok(level) => {
            let delta = level.energy - cell.energy_ev;
            CellComparison {
                cell: cell.clone(),
                computed_ev: Some(level.energy),
                delta_ev: Some(delta),
                passed: delta.abs() <= tol,
                error: None,
            }
        }
        Err(e) => CellComparison {
            cell: cell.clone(),
            computed_ev: None,
            delta_ev: None,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

/// Recomputes every reference cell, optionally restricted to one molecule.
pub fn reproduce(
    catalog: &Catalog,
    reference: &[ReferenceCell],
    tolerance: f64,
    molecule: Option<&str>,
) -> Result<Table2Report> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    if let Some(name) = molecule {
        if !reference.iter().any(|c| c.molecule == name) {
            return Err(Error::Input(format!("unknown molecule `{name}`")));
        }
    }
    let cells = reference
        .par_iter()
        .filter(|c| molecule.is_none_or(|name| c.molecule == name))
        .map(|c| compare(catalog, c, tolerance))
        .collect();
    Ok(Table2Report { tolerance, cells })
}
