//! Observational power-law catalog: literature-quoted spectral slopes per
//! program, exponent conversion, and per-point classification.
//!
//! Energy-spectrum slopes are stored as quoted: `e(m, omega) ~ omega^-c m^-d`
//! with optional ranges. The action exponents follow from a = c + 2,
//! b = d - c, taken at range midpoints. One program (IWEX) quotes its
//! horizontal slope against k rather than m and therefore carries no derived
//! (a, b).

use serde::{Deserialize, Serialize};

use crate::convergence::{
    divergence_signs, ir_classify, opposite_sign_region, uv_classify, ConvergenceVerdict,
};
use crate::error::{Error, Result};
use crate::spectral::Exponents;

/// A quoted slope, possibly a band. `lo == hi` for point estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeRange {
    pub lo: f64,
    pub hi: f64,
}

impl SlopeRange {
    pub fn point(v: f64) -> Self {
        SlopeRange { lo: v, hi: v }
    }

    pub fn band(lo: f64, hi: f64) -> Self {
        SlopeRange { lo, hi }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::InvalidParameter(format!(
                "slope range [{}, {}] has lo > hi",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// Whether a catalog row is an observation or a reference spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Observation,
    Reference,
}

/// One observational program (or reference spectrum) with its quoted slopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub program: String,
    #[serde(default = "default_kind")]
    pub kind: EntryKind,
    /// Frequency slope c of the energy spectrum omega^-c.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_slope: Option<SlopeRange>,
    /// Vertical-wavenumber slope d of the energy spectrum m^-d.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_slope: Option<SlopeRange>,
    /// Horizontal-wavenumber slope, for programs quoted against k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_slope: Option<SlopeRange>,
    /// Directly specified action exponents for reference spectra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_ab: Option<Exponents>,
    #[serde(default)]
    pub note: String,
}

fn default_kind() -> EntryKind {
    EntryKind::Observation
}

impl Observation {
    /// Derived action exponents: (c + 2, d - c) at range midpoints when both
    /// energy slopes are quoted, or the fixed pair for reference rows.
    pub fn derived_ab(&self) -> Option<Exponents> {
        if let Some(e) = self.fixed_ab {
            return Some(e);
        }
        match (self.omega_slope, self.m_slope) {
            (Some(c), Some(d)) => Some(Exponents::from_energy_slopes(
                c.midpoint(),
                d.midpoint(),
            )),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for r in [self.omega_slope, self.m_slope, self.k_slope].into_iter().flatten() {
            r.validate()?;
        }
        Ok(())
    }
}

/// Classification summary attached to a catalog point.
#[derive(Debug, Clone, Serialize)]
pub struct PointClassification {
    pub exponents: Exponents,
    pub ir: ConvergenceVerdict,
    pub uv: ConvergenceVerdict,
    pub ir_sign: i8,
    pub uv_sign: i8,
    pub opposite_signs: bool,
    /// Both ends divergent with equal nonzero signs (no balance possible).
    pub same_sign_divergent: bool,
    /// |b|: distance to the b = 0 stationary line.
    pub dist_b0: f64,
    /// Point-line distance to 9 - 2a - 3b = 0.
    pub dist_id_line: f64,
}

/// Classify a catalog point against the convergence map and the
/// induced-diffusion stationary lines.
pub fn classify_point(obs: &Observation) -> Result<PointClassification> {
    let e = obs.derived_ab().ok_or_else(|| {
        Error::NotClassifiable(format!(
            "{}: no derived (a, b); both energy slopes must be quoted against omega and m",
            obs.program
        ))
    })?;
    Ok(classify_exponents(e))
}

pub fn classify_exponents(e: Exponents) -> PointClassification {
    let ir = ir_classify(e);
    let uv = uv_classify(e);
    let (ir_sign, uv_sign) = divergence_signs(e);
    PointClassification {
        exponents: e,
        ir,
        uv,
        ir_sign,
        uv_sign,
        opposite_signs: opposite_sign_region(e),
        same_sign_divergent: ir_sign != 0 && ir_sign == uv_sign,
        dist_b0: e.b.abs(),
        dist_id_line: (9.0 - 2.0 * e.a - 3.0 * e.b).abs() / 13.0_f64.sqrt(),
    }
}

/// The built-in catalog: twelve observational points from ten programs, plus
/// the three reference spectra.
pub fn builtin_catalog() -> Vec<Observation> {
    let point = SlopeRange::point;
    let obs = |program: &str,
               c: Option<SlopeRange>,
               d: Option<SlopeRange>,
               k: Option<SlopeRange>,
               note: &str| Observation {
        program: program.into(),
        kind: EntryKind::Observation,
        omega_slope: c,
        m_slope: d,
        k_slope: k,
        fixed_ab: None,
        note: note.into(),
    };
    let reference = |program: &str, a: f64, b: f64, note: &str| Observation {
        program: program.into(),
        kind: EntryKind::Reference,
        omega_slope: None,
        m_slope: None,
        k_slope: None,
        fixed_ab: Some(Exponents::new(a, b)),
        note: note.into(),
    };
    vec![
        obs(
            "Site-D",
            Some(point(2.0)),
            Some(point(2.0)),
            None,
            "moored array, western North Atlantic north of the Gulf Stream",
        ),
        obs(
            "FASINEX",
            Some(point(1.85)),
            Some(point(2.3)),
            None,
            "Frontal Air-Sea Interaction Experiment",
        ),
        obs(
            "IWEX",
            Some(point(1.75)),
            None,
            Some(SlopeRange::band(2.0, 2.8)),
            "horizontal slope quoted against k (2.4 +/- 0.4), not m; \
             no derived (a, b), map placement approximate",
        ),
        obs(
            "SFTRE/PMIII",
            Some(point(1.9)),
            Some(point(2.4)),
            None,
            "Salt Finger Tracer Release Experiment / Polymode IIIc",
        ),
        obs(
            "NATRE1",
            Some(point(1.35)),
            Some(point(2.55)),
            None,
            "North Atlantic Tracer Release Experiment, observed spectrum",
        ),
        obs(
            "NATRE2",
            Some(point(1.35)),
            Some(point(2.75)),
            None,
            "NATRE minus the quasi-permanent finestructure (vortical) part",
        ),
        obs(
            "PATCHEX1",
            Some(SlopeRange::band(1.65, 2.0)),
            Some(point(1.75)),
            None,
            "Patches Experiment, profiler + current meters; \
             omega slope quoted as a band, classified at the midpoint",
        ),
        obs(
            "PATCHEX2",
            Some(SlopeRange::band(1.65, 2.0)),
            Some(point(1.75)),
            None,
            "Patches Experiment, two-dimensional displacement spectrum",
        ),
        obs(
            "SWAPP",
            Some(point(2.0)),
            Some(point(1.9)),
            None,
            "Surface Wave Process Program, two-dimensional spectrum",
        ),
        obs(
            "STREX/OS",
            Some(point(2.2)),
            Some(point(2.3)),
            None,
            "Storm Transfer and Response / Ocean Storms",
        ),
        obs(
            "MATE",
            Some(point(1.7)),
            Some(point(2.1)),
            None,
            "Midocean Acoustic Transmission Experiment",
        ),
        obs(
            "AIWEX",
            Some(point(1.2)),
            Some(point(2.25)),
            None,
            "Arctic Internal Wave Experiment",
        ),
        reference("PR", 3.5, 0.5, "Pelinovsky-Raevsky formal steady spectrum"),
        reference("C", 3.7, 0.0, "convergent steady solution on the b = 0 segment"),
        reference("GM", 4.0, 0.0, "Garrett-Munk high-wavenumber form"),
    ]
}

/// Load a catalog from JSON text in the same schema the export writes.
pub fn catalog_from_json(text: &str) -> Result<Vec<Observation>> {
    let entries: Vec<Observation> = serde_json::from_str(text)?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

/// One flattened export row.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRow {
    pub program: String,
    pub kind: EntryKind,
    pub omega_slope_lo: Option<f64>,
    pub omega_slope_hi: Option<f64>,
    pub m_slope_lo: Option<f64>,
    pub m_slope_hi: Option<f64>,
    pub k_slope_lo: Option<f64>,
    pub k_slope_hi: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub ir_status: Option<String>,
    pub uv_status: Option<String>,
    pub ir_sign: Option<i8>,
    pub uv_sign: Option<i8>,
    pub opposite_signs: Option<bool>,
    pub same_sign_divergent: Option<bool>,
    pub dist_b0: Option<f64>,
    pub dist_id_line: Option<f64>,
    pub note: String,
}

/// Flatten the catalog with classifications into a column-stable table.
pub fn catalog_rows(entries: &[Observation]) -> Vec<CatalogRow> {
    entries
        .iter()
        .map(|o| {
            let cls = o.derived_ab().map(classify_exponents);
            let r = |s: Option<SlopeRange>| (s.map(|x| x.lo), s.map(|x| x.hi));
            let (c_lo, c_hi) = r(o.omega_slope);
            let (d_lo, d_hi) = r(o.m_slope);
            let (k_lo, k_hi) = r(o.k_slope);
            CatalogRow {
                program: o.program.clone(),
                kind: o.kind,
                omega_slope_lo: c_lo,
                omega_slope_hi: c_hi,
                m_slope_lo: d_lo,
                m_slope_hi: d_hi,
                k_slope_lo: k_lo,
                k_slope_hi: k_hi,
                a: cls.as_ref().map(|c| c.exponents.a),
                b: cls.as_ref().map(|c| c.exponents.b),
                ir_status: cls.as_ref().map(|c| c.ir.status.to_string()),
                uv_status: cls.as_ref().map(|c| c.uv.status.to_string()),
                ir_sign: cls.as_ref().map(|c| c.ir_sign),
                uv_sign: cls.as_ref().map(|c| c.uv_sign),
                opposite_signs: cls.as_ref().map(|c| c.opposite_signs),
                same_sign_divergent: cls.as_ref().map(|c| c.same_sign_divergent),
                dist_b0: cls.as_ref().map(|c| c.dist_b0),
                dist_id_line: cls.as_ref().map(|c| c.dist_id_line),
                note: o.note.clone(),
            }
        })
        .collect()
}
