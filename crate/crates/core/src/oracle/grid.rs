//! Uniform cell-centered grids and the three-point Sturm–Liouville stencil.

use serde::{Deserialize, Serialize};

use super::tridiag::SymTridiagonal;
use crate::angular::Parity;
use crate::catalog::MoleculeParams;
use crate::error::{Error, Result};
use crate::radial::PotentialKind;
use crate::scalar::{lit, Scalar};

pub const MIN_POINTS: usize = 64;

/// Clipping distance (rad) from the singular ends of the polar domain.
pub const ANGULAR_EPSILON: f64 = 1e-4;

/// Closest approach to r = 0 for radial grids (Å).
pub const RADIAL_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    DirichletBoth,
    DirichletLowerNeumannUpper,
}

/// `points` unknowns at the cell centers lower + (i + ½)h, h = (upper − lower)/points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T = f64> {
    pub lower: T,
    pub upper: T,
    pub points: usize,
    pub boundary: Boundary,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(lower: T, upper: T, points: usize, boundary: Boundary) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && upper > lower) {
            return Err(Error::Domain(format!(
                "grid needs finite bounds with upper > lower, got [{lower}, {upper}]"
            )));
        }
        if points < MIN_POINTS {
            return Err(Error::Domain(format!(
                "grid needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            points,
            boundary,
        })
    }

    /// Default radial window: Morse [max(10⁻³, r_e − 10/a), r_e + 25/a],
    /// Kratzer [10⁻³, 40 r_e].
    pub fn radial_default(
        p: &MoleculeParams<T>,
        kind: PotentialKind,
        points: usize,
    ) -> Result<Self> {
        let floor: T = lit(RADIAL_FLOOR);
        let (lo, hi) = match kind {
            PotentialKind::Morse => (
                floor.max(p.re - lit::<T>(10.0) / p.a),
                p.re + lit::<T>(25.0) / p.a,
            ),
            PotentialKind::Kratzer => (floor, lit::<T>(40.0) * p.re),
        };
        Self::new(lo, hi, points, Boundary::DirichletBoth)
    }

    /// Polar window on (0, π/2): clipped by `epsilon` at an end whose
    /// centrifugal-like term is present, open at θ = 0 when Ã = 0, and
    /// closed at θ = π/2 by Neumann (even) or Dirichlet (odd) when B = 0.
    pub fn angular_with_epsilon(
        a_tilde: T,
        b: T,
        parity: Parity,
        points: usize,
        epsilon: T,
    ) -> Result<Self> {
        let half_pi = T::FRAC_PI_2();
        let lower = if a_tilde > T::zero() {
            epsilon
        } else {
            T::zero()
        };
        let (upper, boundary) = if b > T::zero() {
            (half_pi - epsilon, Boundary::DirichletBoth)
        } else {
            match parity {
                Parity::Even => (half_pi, Boundary::DirichletLowerNeumannUpper),
                Parity::Odd => (half_pi, Boundary::DirichletBoth),
            }
        };
        Self::new(lower, upper, points, boundary)
    }

    pub fn angular_default(a_tilde: T, b: T, parity: Parity, points: usize) -> Result<Self> {
        Self::angular_with_epsilon(a_tilde, b, parity, points, lit(ANGULAR_EPSILON))
    }

    pub fn spacing(&self) -> T {
        (self.upper - self.lower) / lit(self.points as f64)
    }

    pub fn node(&self, i: usize) -> T {
        self.lower + (lit::<T>(i as f64) + lit(0.5)) * self.spacing()
    }

    pub fn face(&self, j: usize) -> T {
        self.lower + lit::<T>(j as f64) * self.spacing()
    }

    pub fn with_points(&self, points: usize) -> Self {
        Self { points, ..*self }
    }
}

/// Discretizes −scale·(1/w)(p u′)′ + q u in conservative form and symmetrizes
/// it with √w, so the result is a symmetric tridiagonal matrix with the same
/// spectrum.
///
/// Dirichlet ends use an antisymmetric ghost node, Neumann ends carry no flux.
/// Where `stiffness` vanishes on the boundary face the end condition drops out.
pub fn assemble<T, P, W, Q>(
    grid: &GridSpec<T>,
    scale: T,
    stiffness: P,
    weight: W,
    potential: Q,
) -> Result<SymTridiagonal<T>>
where
    T: Scalar,
    P: Fn(T) -> T,
    W: Fn(T) -> T,
    Q: Fn(T) -> T,
{
    let n = grid.points;
    let h = grid.spacing();
    let inv_h2 = (h * h).recip();
    let (ghost_lo, ghost_hi) = match grid.boundary {
        Boundary::DirichletBoth => (lit::<T>(2.0), lit::<T>(2.0)),
        Boundary::DirichletLowerNeumannUpper => (lit::<T>(2.0), T::zero()),
    };

    let mut weights = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.node(i);
        let w = weight(x);
        let q = potential(x);
        if !(w > T::zero()) || !w.is_finite() {
            return Err(Error::Input(format!(
                "weight must be positive at x = {x}, got {w}"
            )));
        }
        if !q.is_finite() {
            return Err(Error::Input(format!(
                "potential is not finite at x = {x}: {q}"
            )));
        }
        let left = stiffness(grid.face(i)) * if i == 0 { ghost_lo } else { T::one() };
        let right = stiffness(grid.face(i + 1)) * if i + 1 == n { ghost_hi } else { T::one() };
        diag.push(scale * (left + right) * inv_h2 / w + q);
        weights.push(w);
    }
    let off = (0..n.saturating_sub(1))
        .map(|i| {
            -scale * stiffness(grid.face(i + 1)) * inv_h2 / (weights[i] * weights[i + 1]).sqrt()
        })
        .collect();
    Ok(SymTridiagonal::new(diag, off))
}
