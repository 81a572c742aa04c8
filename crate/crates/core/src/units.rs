//! Physical constants and the handful of unit conversions the spectra need.
//!
//! Everything inside the crate is expressed in eV, Å and amu. Values are
//! CODATA 2018 and frozen here so that reproduced energies do not drift with
//! whatever a platform library happens to ship.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Frozen constant set used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħc in eV·Å.
    pub hbar_c: f64,
    /// Atomic mass constant m_u c² in eV.
    pub amu_c2: f64,
    /// cm⁻¹ per eV, i.e. 1 / (hc in eV·cm).
    pub wavenumber_per_ev: f64,
    /// Speed of light in cm/s.
    pub speed_of_light: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar_c: 1973.269804,
    amu_c2: 931_494_102.42,
    wavenumber_per_ev: 8065.543937,
    speed_of_light: 2.997_924_58e10,
};

pub const CONSTANTS_VERSION: &str = "CODATA-2018";

impl PhysicalConstants {
    /// ħ in eV·s.
    pub fn hbar_ev_s(&self) -> f64 {
        // ħc [eV·Å] → eV·cm, then divide by c [cm/s]
        self.hbar_c * 1e-8 / self.speed_of_light
    }
}

/// ħ²/2μ in eV·Å² for a reduced mass given in amu.
pub fn hbar2_over_2mu<T: Scalar>(mu: T) -> Result<T> {
    if !(mu > T::zero()) || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "reduced mass must be positive and finite, got {mu}"
        )));
    }
    let hc: T = lit(CODATA_2018.hbar_c);
    let mc2: T = lit(CODATA_2018.amu_c2);
    Ok(hc * hc / (lit::<T>(2.0) * mu * mc2))
}

pub fn wavenumber_to_ev<T: Scalar>(w: T) -> T {
    w / lit(CODATA_2018.wavenumber_per_ev)
}

pub fn ev_to_wavenumber<T: Scalar>(e: T) -> T {
    e * lit(CODATA_2018.wavenumber_per_ev)
}
