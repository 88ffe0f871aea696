//! Physical constants, dispersion relations, power-law action spectra, and the
//! exponent coordinate systems.
//!
//! Everything here is nondimensionalized: the dispersion constant `c0` stands
//! for g/(rho0 N) and `vertex_prefactor` for N/(4 sqrt(2 g)). Both default to 1
//! since the steady-state problem only cares about zeros and signs of a
//! homogeneous functional; they stay configurable for dimensional work.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn default_c0() -> f64 {
    1.0
}

fn default_vertex_prefactor() -> f64 {
    1.0
}

/// Nondimensional physical constants of the wave field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Coriolis (inertial) frequency, >= 0. Zero selects the scale-invariant,
    /// non-rotating limit.
    #[serde(default)]
    pub f: f64,
    /// Dispersion constant g/(rho0 N), > 0.
    #[serde(default = "default_c0")]
    pub c0: f64,
    /// Overall interaction-coefficient constant N/(4 sqrt(2 g)), > 0.
    #[serde(default = "default_vertex_prefactor")]
    pub vertex_prefactor: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            f: 0.0,
            c0: 1.0,
            vertex_prefactor: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(f: f64, c0: f64, vertex_prefactor: f64) -> Result<Self> {
        let p = PhysicalParams {
            f,
            c0,
            vertex_prefactor,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Coriolis frequency must be >= 0, got {}",
                self.f
            )));
        }
        if !(self.c0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dispersion constant c0 must be > 0, got {}",
                self.c0
            )));
        }
        if !(self.vertex_prefactor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "vertex prefactor must be > 0, got {}",
                self.vertex_prefactor
            )));
        }
        Ok(())
    }

    /// Read parameters from a JSON file with keys `f`, `c0`, `vertex_prefactor`.
    /// Missing keys take the defaults (0, 1, 1). Unknown keys are ignored so the
    /// same file can hold quadrature settings.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let p: PhysicalParams = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }
}

/// A wavevector reduced to horizontal magnitude and signed vertical component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavevector {
    /// Horizontal wavenumber magnitude, >= 0.
    pub k: f64,
    /// Signed vertical wavenumber.
    pub m: f64,
}

impl Wavevector {
    pub fn new(k: f64, m: f64) -> Self {
        Wavevector { k, m }
    }
}

/// Linear dispersion relation `omega = sqrt(f^2 + c0^2 k^2 / m^2)`.
///
/// Reduces to the hydrostatic scale-invariant form `c0 k / |m|` at f = 0.
/// The vertical-mean mode m = 0 is rejected.
pub fn dispersion(w: Wavevector, params: &PhysicalParams) -> Result<f64> {
    if w.m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    if w.k < 0.0 {
        return Err(Error::NonpositiveWavenumber(w.k));
    }
    let ratio = params.c0 * w.k / w.m.abs();
    Ok((params.f * params.f + ratio * ratio).sqrt())
}

/// Spectral power-law exponent pair (a, b) of the action density in
/// horizontal/vertical wavenumber space, `n = k^-a |m|^-b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub a: f64,
    pub b: f64,
}

impl Exponents {
    pub fn new(a: f64, b: f64) -> Self {
        Exponents { a, b }
    }

    /// Map to the frequency/vertical-wavenumber exponents used by the
    /// rotation-regularized analysis: `a~ = -a`, `b~ = -a-b`.
    pub fn to_omega_m(self) -> OmegaExponents {
        OmegaExponents {
            a_tilde: -self.a,
            b_tilde: -self.a - self.b,
        }
    }

    /// Exponents from a two-dimensional energy spectrum
    /// `e(m, omega) ~ omega^-c m^-d`: a = c + 2, b = d - c.
    pub fn from_energy_slopes(c: f64, d: f64) -> Self {
        Exponents {
            a: c + 2.0,
            b: d - c,
        }
    }
}

impl std::fmt::Display for Exponents {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a, b) = ({}, {})", self.a, self.b)
    }
}

/// Power-law exponents of the action density in (omega, m) space,
/// `n ~ omega^a~ |m|^b~` (signs are direct powers, typically negative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaExponents {
    pub a_tilde: f64,
    pub b_tilde: f64,
}

impl OmegaExponents {
    pub fn new(a_tilde: f64, b_tilde: f64) -> Self {
        OmegaExponents { a_tilde, b_tilde }
    }

    /// Inverse of [`Exponents::to_omega_m`].
    pub fn to_km(self) -> Exponents {
        Exponents {
            a: -self.a_tilde,
            b: self.a_tilde - self.b_tilde,
        }
    }
}

/// Scale-invariant action density `n(k, m) = k^-a |m|^-b`.
///
/// Symmetric under m -> -m. Requires k > 0 and m != 0 so that negative
/// exponents of zero never appear.
pub fn action_power_law(w: Wavevector, e: Exponents) -> Result<f64> {
    if w.k <= 0.0 {
        return Err(Error::NonpositiveWavenumber(w.k));
    }
    if w.m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    Ok(w.k.powf(-e.a) * w.m.abs().powf(-e.b))
}
