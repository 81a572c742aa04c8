//! Finite-difference eigensolver used to check every closed form.
//!
//! Each one-dimensional problem is discretized with the three-point
//! conservative stencil, reduced to a symmetric tridiagonal matrix and
//! diagonalized by Sturm bisection. A solve always runs the requested grid
//! plus two coarsenings by 2, which gives a Richardson-extrapolated value and
//! the observed order of convergence for each eigenvalue.

mod convergence;
mod grid;
mod tridiag;

pub use convergence::{convergence_study, ConvergenceRow, ConvergenceTable, Problem};
pub use grid::{assemble, Boundary, GridSpec, ANGULAR_EPSILON, MIN_POINTS, RADIAL_FLOOR};
pub use tridiag::SymTridiagonal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::units::hbar2_over_2mu;

/// Accepted window for the observed order of the three-point stencil.
pub const ORDER_WINDOW: (f64, f64) = (1.5, 2.5);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<T = f64> {
    /// Lowest eigenvalues on `grid`, ascending.
    pub eigenvalues: Vec<T>,
    pub grid: GridSpec<T>,
    /// (4E_h − E_2h)/3 per eigenvalue.
    pub richardson_estimate: Vec<T>,
    /// Observed order per eigenvalue from the h, 2h, 4h sequence; `None`
    /// when the eigenvalue does not move under refinement (resolved exactly).
    pub orders: Vec<Option<T>>,
    /// Order of the lowest eigenvalue that moves under refinement.
    pub convergence_order: Option<T>,
}

impl<T: Scalar> OracleResult<T> {
    /// All measurable orders lie inside `ORDER_WINDOW`.
    pub fn is_converged(&self) -> bool {
        let (lo, hi) = (lit::<T>(ORDER_WINDOW.0), lit::<T>(ORDER_WINDOW.1));
        self.orders.iter().flatten().all(|&p| p >= lo && p <= hi)
    }
}

/// Observed order from three successive values on h₁ = r·h₂ = r²·h₃.
///
/// `None` when both differences sit at rounding level (`floor` being the
/// solver's absolute resolution); NaN when the sequence is not monotone,
/// which no asymptotic regime produces.
pub(crate) fn observed_order<T: Scalar>(
    coarse: T,
    mid: T,
    fine: T,
    ratio: T,
    floor: T,
) -> Option<T> {
    let e1 = coarse - mid;
    let e2 = mid - fine;
    let noise = (lit::<T>(1e-12) * fine.abs().max(T::one())).max(floor);
    if e1.abs() <= noise && e2.abs() <= noise {
        return None;
    }
    if e1 * e2 <= T::zero() {
        return Some(T::nan());
    }
    Some((e1 / e2).ln() / ratio.ln())
}

fn check_k<T: Scalar>(grid: &GridSpec<T>, k: usize) -> Result<()> {
    if k == 0 || k > grid.points / 4 {
        return Err(Error::Domain(format!(
            "cannot extract {k} eigenvalues from a {}-point grid (limit points/4)",
            grid.points
        )));
    }
    if grid.points % 4 != 0 {
        return Err(Error::Domain(format!(
            "grid points must be a multiple of 4 for nested refinement, got {}",
            grid.points
        )));
    }
    Ok(())
}

/// Diagonalizes on `grid` and its two coarsenings.
fn refine<T, F>(grid: &GridSpec<T>, k: usize, solve: F) -> Result<OracleResult<T>>
where
    T: Scalar,
    F: Fn(&GridSpec<T>) -> Result<GridSpectrum<T>> + Sync,
{
    check_k(grid, k)?;
    let ((fine, mid), coarse) = rayon::join(
        || rayon::join(|| solve(grid), || solve(&grid.with_points(grid.points / 2))),
        || solve(&grid.with_points(grid.points / 4)),
    );
    let (fine, mid, coarse) = (fine?, mid?, coarse?);
    let floor = fine.resolution.max(mid.resolution).max(coarse.resolution);
    let (fine, mid, coarse) = (fine.values, mid.values, coarse.values);
    let two: T = lit(2.0);
    let richardson_estimate = fine
        .iter()
        .zip(&mid)
        .map(|(&f, &c)| (lit::<T>(4.0) * f - c) / lit(3.0))
        .collect();
    let orders: Vec<Option<T>> = (0..k)
        .map(|j| observed_order(coarse[j], mid[j], fine[j], two, floor))
        .collect();
    let convergence_order = orders.iter().flatten().next().copied();
    Ok(OracleResult {
        eigenvalues: fine,
        grid: *grid,
        richardson_estimate,
        orders,
        convergence_order,
    })
}

/// Eigenvalues from one grid with the absolute accuracy of their extraction.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct GridSpectrum<T> {
    pub values: Vec<T>,
    pub resolution: T,
}

impl<T: Scalar> GridSpectrum<T> {
    fn of(m: &SymTridiagonal<T>, k: usize) -> Self {
        Self {
            values: m.lowest_eigenvalues(k),
            resolution: m.resolution(),
        }
    }
}

/// Lowest `k` eigenvalues (eV) on a single grid of −(ħ²/2μ) d²/dr² + V(r).
pub(crate) fn radial_eigenvalues<T, V>(
    potential: &V,
    mu: T,
    grid: &GridSpec<T>,
    k: usize,
) -> Result<GridSpectrum<T>>
where
    T: Scalar,
    V: Fn(T) -> T + ?Sized,
{
    let c = hbar2_over_2mu(mu)?;
    let m = assemble(grid, c, |_| T::one(), |_| T::one(), potential)?;
    Ok(GridSpectrum::of(&m, k))
}

/// Lowest `k` separation constants on a single grid of the polar equation
/// (1/sinθ)(sinθ Θ′)′ + [E_θ − (m² + A)/sin²θ − B/cos²θ]Θ = 0.
pub(crate) fn angular_eigenvalues<T: Scalar>(
    a: T,
    b: T,
    m: i32,
    grid: &GridSpec<T>,
    k: usize,
) -> Result<GridSpectrum<T>> {
    if !(a >= T::zero() && b >= T::zero()) {
        return Err(Error::Domain(format!(
            "A and B must be non-negative, got A = {a}, B = {b}"
        )));
    }
    if grid.lower < T::zero() || grid.upper > T::FRAC_PI_2() {
        return Err(Error::Domain(format!(
            "polar grid must lie within [0, π/2], got [{}, {}]",
            grid.lower, grid.upper
        )));
    }
    let mf: T = lit(f64::from(m));
    let a_tilde = mf * mf + a;
    let q = |t: T| {
        let s = t.sin();
        let mut v = a_tilde / (s * s);
        if b > T::zero() {
            let c = t.cos();
            v = v + b / (c * c);
        }
        v
    };
    let mat = assemble(grid, T::one(), T::sin, T::sin, q)?;
    Ok(GridSpectrum::of(&mat, k))
}

/// Finite-difference spectrum of the radial equation with Dirichlet ends.
pub fn solve_radial_fd<T, V>(
    potential: V,
    mu: T,
    grid: &GridSpec<T>,
    k: usize,
) -> Result<OracleResult<T>>
where
    T: Scalar,
    V: Fn(T) -> T + Sync,
{
    hbar2_over_2mu(mu)?;
    refine(grid, k, |g| radial_eigenvalues(&potential, mu, g, k))
}

/// Finite-difference spectrum of the polar equation; the discrete operator
/// is the conservative form symmetrized by √sinθ.
pub fn solve_angular_fd<T: Scalar>(
    a: T,
    b: T,
    m: i32,
    grid: &GridSpec<T>,
    k: usize,
) -> Result<OracleResult<T>> {
    refine(grid, k, |g| angular_eigenvalues(a, b, m, g, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::Parity;
    use std::f64::consts::PI;

    #[test]
    fn particle_in_a_box() {
        let (lo, hi) = (1.0, 3.0);
        let g = GridSpec::new(lo, hi, 4096, Boundary::DirichletBoth).unwrap();
        let r = solve_radial_fd(|_| 0.0, 1.0, &g, 4).unwrap();
        let c = hbar2_over_2mu(1.0).unwrap();
        for (j, e) in r.eigenvalues.iter().enumerate() {
            let exact = c * ((j + 1) as f64 * PI / (hi - lo)).powi(2);
            assert!((e / exact - 1.0).abs() < 1e-4, "{j}: {e} vs {exact}");
            assert!((r.richardson_estimate[j] / exact - 1.0).abs() < 1e-9);
        }
        assert!(r.is_converged());
        let p = r.convergence_order.unwrap();
        assert!((p - 2.0).abs() < 0.05, "{p}");
    }

    #[test]
    fn harmonic_oscillator() {
        // κ = 10 eV/Å², μ = 1 amu: ħω = √(2·(ħ²/2μ)·κ)
        let kappa = 10.0_f64;
        let c = hbar2_over_2mu(1.0).unwrap();
        let hw = (2.0 * c * kappa).sqrt();
        let g = GridSpec::new(0.0, 4.0, 2048, Boundary::DirichletBoth).unwrap();
        let r = solve_radial_fd(|x: f64| 0.5 * kappa * (x - 2.0).powi(2), 1.0, &g, 4).unwrap();
        for n in 0..4 {
            let exact = hw * (n as f64 + 0.5);
            assert!((r.richardson_estimate[n] / exact - 1.0).abs() < 1e-4);
        }
        assert!(r.is_converged());
    }

    #[test]
    fn legendre_even_and_odd() {
        for (parity, expected) in [
            (Parity::Even, [0.0_f64, 6.0, 20.0]),
            (Parity::Odd, [2.0, 12.0, 30.0]),
        ] {
            let g = GridSpec::angular_default(0.0, 0.0, parity, 1024).unwrap();
            let r = solve_angular_fd(0.0, 0.0, 0, &g, 3).unwrap();
            for (e, x) in r.richardson_estimate.iter().zip(expected) {
                assert!((e - x).abs() <= 1e-3 * x.max(1.0), "{parity:?}: {e} vs {x}");
            }
        }
    }

    #[test]
    fn k_limits() {
        let g = GridSpec::new(0.0, 1.0, 64, Boundary::DirichletBoth).unwrap();
        assert!(matches!(
            solve_radial_fd(|_| 0.0, 1.0, &g, 17),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_radial_fd(|_| 0.0, 1.0, &g, 0),
            Err(Error::Domain(_))
        ));
        assert!(solve_radial_fd(|_| 0.0, 1.0, &g, 16).is_ok());
        let g = GridSpec::new(0.0, 1.0, 66, Boundary::DirichletBoth).unwrap();
        assert!(solve_radial_fd(|_| 0.0, 1.0, &g, 2).is_err());
    }

    #[test]
    fn non_finite_potential() {
        let g = GridSpec::new(0.0, 1.0, 64, Boundary::DirichletBoth).unwrap();
        assert!(matches!(
            solve_radial_fd(|x: f64| 1.0 / (x - x), 1.0, &g, 2),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn polar_grid_outside_quadrant_rejected() {
        let g = GridSpec::new(0.0, 2.0, 64, Boundary::DirichletBoth).unwrap();
        assert!(solve_angular_fd(1.0, 1.0, 0, &g, 2).is_err());
    }

    #[test]
    fn order_helper() {
        assert_eq!(observed_order(1.0_f64, 1.0, 1.0, 2.0, 0.0), None);
        let p = observed_order(1.16_f64, 1.04, 1.01, 2.0, 0.0).unwrap();
        assert!((p - 2.0).abs() < 1e-9);
        assert!(observed_order(1.0_f64, 1.1, 1.0, 2.0, 0.0)
            .unwrap()
            .is_nan());
        assert_eq!(observed_order(0.0_f64, 1e-10, -2e-9, 2.0, 1e-8), None);
    }
}
