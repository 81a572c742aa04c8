//! Grid-refinement study: per-grid eigenvalues, pairwise Richardson
//! extrapolation and observed order over successive triples.

use serde::Serialize;

use super::{angular_eigenvalues, observed_order, radial_eigenvalues, GridSpec, GridSpectrum};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A one-dimensional eigenproblem to be studied over several grids.
pub enum Problem<'a, T> {
    Radial {
        potential: &'a (dyn Fn(T) -> T + Sync),
        mu: T,
        k: usize,
    },
    Angular {
        a: T,
        b: T,
        m: i32,
        k: usize,
    },
}

impl<T: Scalar> Problem<'_, T> {
    fn levels(&self) -> usize {
        match self {
            Problem::Radial { k, .. } | Problem::Angular { k, .. } => *k,
        }
    }

    fn eigenvalues(&self, grid: &GridSpec<T>) -> Result<GridSpectrum<T>> {
        match self {
            Problem::Radial { potential, mu, k } => radial_eigenvalues(*potential, *mu, grid, *k),
            Problem::Angular { a, b, m, k } => angular_eigenvalues(*a, *b, *m, grid, *k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow<T = f64> {
    pub grid: GridSpec<T>,
    pub eigenvalues: Vec<T>,
    /// Second-order extrapolation against the previous (coarser) grid.
    pub richardson: Option<Vec<T>>,
    /// Observed order from this grid and the two before it.
    pub orders: Option<Vec<Option<T>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable<T = f64> {
    pub rows: Vec<ConvergenceRow<T>>,
    /// Eigenvalue indices whose last two extrapolations differ by more than
    /// the requested tolerance.
    pub flagged: Vec<usize>,
    pub tolerance: T,
}

impl<T: Scalar> ConvergenceTable<T> {
    /// Observed orders on the finest triple.
    pub fn final_orders(&self) -> &[Option<T>] {
        self.rows
            .last()
            .and_then(|r| r.orders.as_deref())
            .unwrap_or(&[])
    }

    pub fn final_estimate(&self) -> &[T] {
        let last = self.rows.last().expect("study has at least three rows");
        last.richardson.as_deref().unwrap_or(&last.eigenvalues)
    }
}

pub fn convergence_study<T: Scalar>(
    problem: &Problem<'_, T>,
    grids: &[GridSpec<T>],
    tolerance: T,
) -> Result<ConvergenceTable<T>> {
    if grids.len() < 3 {
        return Err(Error::Domain(format!(
            "a convergence study needs at least 3 grids, got {}",
            grids.len()
        )));
    }
    if grids.windows(2).any(|w| w[1].points <= w[0].points) {
        return Err(Error::Domain(
            "grid point counts must be strictly increasing".into(),
        ));
    }
    let k = problem.levels();
    if let Some(g) = grids.iter().find(|g| g.points / 4 < k || k == 0) {
        return Err(Error::Domain(format!(
            "cannot extract {k} eigenvalues from a {}-point grid",
            g.points
        )));
    }

    let solved: Vec<GridSpectrum<T>> = grids
        .iter()
        .map(|g| problem.eigenvalues(g))
        .collect::<Result<_>>()?;
    let spectra: Vec<&Vec<T>> = solved.iter().map(|s| &s.values).collect();

    let mut rows: Vec<ConvergenceRow<T>> = Vec::with_capacity(grids.len());
    for (i, (grid, ev)) in grids.iter().zip(&spectra).enumerate() {
        let richardson = (i >= 1).then(|| {
            let r = grids[i - 1].spacing() / grid.spacing();
            let r2 = r * r;
            ev.iter()
                .zip(spectra[i - 1])
                .map(|(&f, &c)| (r2 * f - c) / (r2 - T::one()))
                .collect()
        });
        // ratio taken from the finer pair
        let orders = (i >= 2).then(|| {
            let ratio = grids[i - 1].spacing() / grid.spacing();
            let floor = solved[i - 2..=i]
                .iter()
                .map(|s| s.resolution)
                .fold(T::zero(), T::max);
            (0..k)
                .map(|j| observed_order(spectra[i - 2][j], spectra[i - 1][j], ev[j], ratio, floor))
                .collect()
        });
        rows.push(ConvergenceRow {
            grid: *grid,
            eigenvalues: (*ev).clone(),
            richardson,
            orders,
        });
    }

    let n = rows.len();
    let last = rows[n - 1].richardson.as_ref().expect("row ≥ 1");
    let prev = rows[n - 2].richardson.as_ref().expect("row ≥ 1");
    let flagged = (0..k)
        .filter(|&j| !((last[j] - prev[j]).abs() <= tolerance))
        .collect();

    Ok(ConvergenceTable {
        rows,
        flagged,
        tolerance,
    })
}
