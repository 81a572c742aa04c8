//! Closed-form solution of the polar equation with the ring-shaped term
//! A/sin²θ + B/cos²θ.
//!
//! With E_φ = m² the polar equation only sees Ã = m² + A. Its eigenvalues are
//! E_θ = ℓ̃(ℓ̃ + 1) with the modified angular momentum
//!
//! ```text
//! ℓ̃ = 1/2 + 2ñ + √Ã + √(1/4 + B)          (B > 0)
//! ℓ̃ = ν + √Ã,  ν = 2ñ (even) | 2ñ + 1 (odd)   (B = 0)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

/// Tolerance for deciding that a recovered ñ is an integer.
pub const QUANTA_TOLERANCE: f64 = 1e-9;

/// Which solution family to use when B = 0 (θ ↦ π − θ symmetry).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

/// Quantum numbers and potential strengths of the angular problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularChannel<T = f64> {
    /// Oscillation quanta ñ.
    pub n_tilde: u32,
    /// Magnetic quantum number.
    pub m: i32,
    /// Strength of the sin⁻²θ term.
    pub a: T,
    /// Strength of the cos⁻²θ term.
    pub b: T,
    /// Consulted only when `b == 0`.
    pub parity: Parity,
}

impl<T: Scalar> AngularChannel<T> {
    /// Channel with the default (even) parity.
    pub fn new(n_tilde: u32, m: i32, a: T, b: T) -> Result<Self> {
        Self::with_parity(n_tilde, m, a, b, Parity::Even)
    }

    pub fn with_parity(n_tilde: u32, m: i32, a: T, b: T, parity: Parity) -> Result<Self> {
        check_strength("A", a)?;
        check_strength("B", b)?;
        Ok(Self {
            n_tilde,
            m,
            a,
            b,
            parity,
        })
    }

    /// Ã = m² + A.
    pub fn a_tilde(&self) -> T {
        let m: T = lit(f64::from(self.m));
        m * m + self.a
    }

    /// True when a parity was requested that the B > 0 formula ignores.
    pub fn parity_ignored(&self) -> bool {
        self.b > T::zero() && self.parity != Parity::Even
    }
}

fn check_strength<T: Scalar>(label: &str, v: T) -> Result<()> {
    if !v.is_finite() || v < T::zero() {
        return Err(Error::Domain(format!(
            "angular strength {label} must be finite and non-negative, got {v}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularSolution<T = f64> {
    /// Separation constant E_θ.
    pub e_theta: T,
    /// Modified orbital angular momentum ℓ̃.
    pub ell_tilde: T,
}

impl<T: Scalar> AngularSolution<T> {
    /// Builds the solution for a given ℓ̃; ℓ̃ is kept as-is, never rounded.
    pub fn from_ell(ell_tilde: T) -> Self {
        Self {
            e_theta: ell_tilde * (ell_tilde + T::one()),
            ell_tilde,
        }
    }
}

/// Separation constant and modified ℓ for a channel.
pub fn angular_eigenvalue<T: Scalar>(ch: &AngularChannel<T>) -> AngularSolution<T> {
    let half: T = lit(0.5);
    let two_n: T = lit(2.0 * f64::from(ch.n_tilde));
    let root_a = ch.a_tilde().sqrt();
    let ell = if ch.b > T::zero() {
        half + two_n + root_a + (lit::<T>(0.25) + ch.b).sqrt()
    } else {
        let nu = match ch.parity {
            Parity::Even => two_n,
            Parity::Odd => two_n + T::one(),
        };
        nu + root_a
    };
    AngularSolution::from_ell(ell)
}

/// Recovers ñ from ℓ̃ for a B > 0 channel.
pub fn oscillation_quanta<T: Scalar>(ell_tilde: T, m: i32, a: T, b: T) -> Result<u32> {
    check_strength("A", a)?;
    if !(b > T::zero()) || !b.is_finite() {
        return Err(Error::Domain(format!(
            "oscillation quanta need B > 0, got {b}"
        )));
    }
    let mf: T = lit(f64::from(m));
    let floor = lit::<T>(0.5) + (mf * mf + a).sqrt() + (lit::<T>(0.25) + b).sqrt();
    let slack: T = lit(QUANTA_TOLERANCE);
    if !ell_tilde.is_finite() || ell_tilde < floor - slack {
        return Err(Error::Domain(format!(
            "ℓ̃ = {ell_tilde} lies below the channel minimum {floor}"
        )));
    }
    let quanta = (ell_tilde - floor) / lit(2.0);
    let nearest = quanta.round();
    // Relative slack for large ℓ̃ where absolute 1e-9 is below one ulp.
    let tol = slack * T::one().max(ell_tilde.abs() * lit(1e-6));
    if (quanta - nearest).abs() > tol {
        return Err(Error::NonQuantized {
            ell_tilde: to_f64(ell_tilde),
            quanta: to_f64(quanta),
        });
    }
    nearest
        .to_u32()
        .ok_or_else(|| Error::Domain(format!("ñ = {nearest} out of range")))
}

/// Coefficients of the quadratic α_q x² − β_q x + γ_q under the root of π(x)
/// and the two roots k₁ > k₂ that make it a perfect square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuRootCheck<T = f64> {
    pub alpha_q: T,
    pub beta_q: T,
    pub gamma_q: T,
    pub k1: T,
    pub k2: T,
}

impl<T: Scalar> NuRootCheck<T> {
    /// β_q² − 4 α_q γ_q at the selected root k₂.
    pub fn discriminant(&self) -> T {
        self.beta_q * self.beta_q - lit::<T>(4.0) * self.alpha_q * self.gamma_q
    }
}

/// Roots k₁,₂ = −(Ã + B − E_θ)/2 ± √(Ã(1 + 4B))/2 with the π-polynomial
/// coefficients evaluated at k₂, the branch that makes τ′ negative.
pub fn nu_k_roots<T: Scalar>(a_tilde: T, b: T, e_theta: T) -> Result<NuRootCheck<T>> {
    check_strength("Ã", a_tilde)?;
    check_strength("B", b)?;
    let (one, two, four, eight) = (T::one(), lit::<T>(2.0), lit::<T>(4.0), lit::<T>(8.0));
    let center = -(a_tilde + b - e_theta) / two;
    let spread = (a_tilde * (one + four * b)).sqrt() / two;
    let (k1, k2) = (center + spread, center - spread);
    Ok(NuRootCheck {
        alpha_q: four * e_theta - eight * k2 + one,
        beta_q: four * e_theta - four * a_tilde + four * b - eight * k2 + two,
        gamma_q: one + four * b,
        k1,
        k2,
    })
}

/// τ′ for the selected π branch, −(4 + 2√Ã + √(1 + 4B)); negative for every
/// admissible Ã, B.
pub fn tau_slope<T: Scalar>(a_tilde: T, b: T) -> T {
    -(lit::<T>(4.0) + lit::<T>(2.0) * a_tilde.sqrt() + (T::one() + lit::<T>(4.0) * b).sqrt())
}
