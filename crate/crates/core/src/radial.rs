//! Closed-form radial spectra.
//!
//! Morse: the centrifugal term E_θ/r² is replaced by the three-term
//! exponential series E_θ/r_e² (d₀ + d₁e^{−αx} + d₂e^{−2αx}), x = (r − r_e)/r_e,
//! after which the radial problem is exactly solvable. Kratzer: exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angular::{angular_eigenvalue, AngularChannel, AngularSolution};
use crate::catalog::MoleculeParams;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Morse,
    Kratzer,
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PotentialKind::Morse => "morse",
            PotentialKind::Kratzer => "kratzer",
        })
    }
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "morse" => Ok(PotentialKind::Morse),
            "kratzer" => Ok(PotentialKind::Kratzer),
            other => Err(Error::Input(format!("unknown potential `{other}`"))),
        }
    }
}

/// Expansion coefficients of r_e²/r² in powers of e^{−αx}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PekerisCoefficients<T = f64> {
    /// α = a·r_e.
    pub alpha: T,
    pub d0: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Scalar> PekerisCoefficients<T> {
    /// d₀ + d₁e^{−αx} + d₂e^{−2αx}.
    pub fn series(&self, x: T) -> T {
        let e = (-self.alpha * x).exp();
        self.d0 + e * (self.d1 + e * self.d2)
    }
}

/// Coefficients matching r_e²/r² through second order at r = r_e.
pub fn pekeris_coefficients<T: Scalar>(alpha: T) -> Result<PekerisCoefficients<T>> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "reduced Morse width a·r_e must be positive, got {alpha}"
        )));
    }
    let (three, four, six) = (lit::<T>(3.0), lit::<T>(4.0), lit::<T>(6.0));
    let inv = alpha.recip();
    let inv2 = inv * inv;
    Ok(PekerisCoefficients {
        alpha,
        d0: T::one() - three * inv + three * inv2,
        d1: four * inv - six * inv2,
        d2: -inv + three * inv2,
    })
}

/// Location of the Morse parabola vertex and the number of levels below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseBound<T = f64> {
    /// C_{ñm}.
    pub c_nm: T,
    /// n_max = C_{ñm} − 1/2.
    pub n_max: T,
    /// n_max rounded to the nearest integer; levels n = 0..bound_count are
    /// the admissible ones.
    pub bound_count: u32,
}

/// Pekeris-substituted Morse spectrum for one molecule and angular solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseSpectrum<T = f64> {
    pub bound: MorseBound<T>,
    /// ħ²E_θ d₀ / (2μ r_e²): energy at the vertex.
    pub offset: T,
    /// ħ²a²/2μ.
    pub scale: T,
}

impl<T: Scalar> MorseSpectrum<T> {
    pub fn new(p: &MoleculeParams<T>, sol: &AngularSolution<T>) -> Result<Self> {
        let coef = pekeris_coefficients(p.reduced_width())?;
        let c = p.kinetic_prefactor();
        let well = p.de / c; // 2μD_e/ħ² (Å⁻²)
        let rot = sol.e_theta / (p.re * p.re); // E_θ/r_e² (Å⁻²)
        let radicand = well + rot * coef.d2;
        if !(radicand > T::zero()) {
            return Err(Error::Domain(format!(
                "E_θ = {} removes the repulsive wall of the substituted Morse potential for {}",
                sol.e_theta, p.name
            )));
        }
        let c_nm = (well - rot * coef.d1 / lit(2.0)) / (p.a * radicand.sqrt());
        let n_max = c_nm - lit(0.5);
        let bound_count = if c_nm > T::zero() {
            c_nm.floor().to_u32().unwrap_or(u32::MAX)
        } else {
            0
        };
        Ok(Self {
            bound: MorseBound {
                c_nm,
                n_max,
                bound_count,
            },
            offset: c * rot * coef.d0,
            scale: c * p.a * p.a,
        })
    }

    /// Energy of level n in eV; refuses levels past the vertex.
    pub fn energy(&self, n: u32) -> Result<T> {
        if n >= self.bound.bound_count {
            return Err(Error::UnboundLevel {
                n,
                n_max: to_f64(self.bound.n_max),
                bound_count: self.bound.bound_count,
            });
        }
        Ok(self.energy_unchecked(n))
    }

    /// The closed form without the bound check.
    pub fn energy_unchecked(&self, n: u32) -> T {
        let gap = self.bound.c_nm - (lit::<T>(f64::from(n)) + lit(0.5));
        self.offset - self.scale * gap * gap
    }
}

pub fn morse_nmax<T: Scalar>(
    p: &MoleculeParams<T>,
    sol: &AngularSolution<T>,
) -> Result<MorseBound<T>> {
    Ok(MorseSpectrum::new(p, sol)?.bound)
}

pub fn morse_energy<T: Scalar>(
    p: &MoleculeParams<T>,
    n: u32,
    sol: &AngularSolution<T>,
) -> Result<T> {
    MorseSpectrum::new(p, sol)?.energy(n)
}

/// D_{ñm} = 2μD_e r_e²/ħ² + ℓ̃(ℓ̃ + 1).
pub fn kratzer_d_nm<T: Scalar>(p: &MoleculeParams<T>, sol: &AngularSolution<T>) -> T {
    p.de * p.re * p.re / p.kinetic_prefactor() + sol.e_theta
}

/// Exact Kratzer level: −(ħ²/2μ)(4μD_e r_e/ħ²)² / (1 + 2n + √(1 + 4D_{ñm}))².
pub fn kratzer_energy<T: Scalar>(p: &MoleculeParams<T>, n: u32, sol: &AngularSolution<T>) -> T {
    let c = p.kinetic_prefactor();
    let (one, two, four) = (T::one(), lit::<T>(2.0), lit::<T>(4.0));
    let strength = two * p.de * p.re / c;
    let denom = one + two * lit(f64::from(n)) + (one + four * kratzer_d_nm(p, sol)).sqrt();
    -c * strength * strength / (denom * denom)
}

/// Potential-specific by-products carried alongside an energy.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LevelAux<T = f64> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_nm: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_nm: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_count: Option<u32>,
}

/// One bound-state energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLevel<T = f64> {
    pub molecule: String,
    pub potential: PotentialKind,
    pub n: u32,
    pub channel: AngularChannel<T>,
    pub solution: AngularSolution<T>,
    /// eV.
    pub energy: T,
    pub aux: LevelAux<T>,
}

/// Full level record for (molecule, potential, n, channel).
pub fn energy_level<T: Scalar>(
    p: &MoleculeParams<T>,
    potential: PotentialKind,
    n: u32,
    channel: &AngularChannel<T>,
) -> Result<EnergyLevel<T>> {
    let solution = angular_eigenvalue(channel);
    let (energy, aux) = match potential {
        PotentialKind::Morse => {
            let spec = MorseSpectrum::new(p, &solution)?;
            let aux = LevelAux {
                c_nm: Some(spec.bound.c_nm),
                n_max: Some(spec.bound.n_max),
                bound_count: Some(spec.bound.bound_count),
                d_nm: None,
            };
            (spec.energy(n)?, aux)
        }
        PotentialKind::Kratzer => (
            kratzer_energy(p, n, &solution),
            LevelAux {
                d_nm: Some(kratzer_d_nm(p, &solution)),
                ..LevelAux::default()
            },
        ),
    };
    Ok(EnergyLevel {
        molecule: p.name.clone(),
        potential,
        n,
        channel: *channel,
        solution,
        energy,
        aux,
    })
}

/// Potential-energy curves (eV, r in Å) used by the finite-difference checks.
pub mod curves {
    use super::*;

    /// D_e(e^{−2a(r−r_e)} − 2e^{−a(r−r_e)}).
    pub fn morse<T: Scalar>(p: &MoleculeParams<T>, r: T) -> T {
        let e = (-p.a * (r - p.re)).exp();
        p.de * (e * e - lit::<T>(2.0) * e)
    }

    /// −D_e + D_e((r − r_e)/r)².
    pub fn kratzer<T: Scalar>(p: &MoleculeParams<T>, r: T) -> T {
        let q = (r - p.re) / r;
        p.de * (q * q - T::one())
    }

    /// ħ²E_θ/(2μr²).
    pub fn centrifugal<T: Scalar>(p: &MoleculeParams<T>, e_theta: T, r: T) -> T {
        p.kinetic_prefactor() * e_theta / (r * r)
    }

    /// ħ²E_θ/(2μr_e²) · (d₀ + d₁e^{−αx} + d₂e^{−2αx}).
    pub fn pekeris_centrifugal<T: Scalar>(
        p: &MoleculeParams<T>,
        coef: &PekerisCoefficients<T>,
        e_theta: T,
        r: T,
    ) -> T {
        let x = (r - p.re) / p.re;
        p.kinetic_prefactor() * e_theta / (p.re * p.re) * coef.series(x)
    }
}
