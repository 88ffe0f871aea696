//! Numerical evaluation of the azimuthally-integrated collision integral on
//! the resonant manifold.
//!
//! The canonical integral is
//! `dn/dt = (1/k) \int (T^0_{1,2} - T^1_{2,0} - T^2_{0,1}) dk1 dk2`
//! over the kinematic box, each T summing its branch root pair. The box is
//! tiled into four exactly-abutting regions with a tailored substitution each:
//!
//! * two IR corner bands `min(k1, k2) < r0 k` (mapped into each other by the
//!   exact k1 <-> k2 symmetry of the integrand, so one is computed and
//!   doubled), swept in k1 octaves with the transverse coordinate
//!   `k2 = k + k1 sin(psi)`, which cancels the inverse-square-root area
//!   singularity on both box edges;
//! * a compact central region `u = k1 + k2 - k < u0`, with `u = s^2` removing
//!   the collinear-edge singularity;
//! * the UV strip `u > u0`, swept in u octaves with `v = k1 - k2 = k sin(psi)`.
//!
//! Octave sweeps toward an open end (no cutoff) stop once the panel sums
//! decay geometrically and the remainder is added from the measured ratio,
//! cross-checked against the exact asymptotic ratio implied by the
//! convergence classifier; the disagreement feeds the error estimate. With a
//! cutoff the sweep simply stops there: divergent cases are never silently
//! principal-valued.
//!
//! Rounding noise is tracked explicitly: the branch terms cancel strongly
//! near the IR corners, so each panel carries a floor of machine epsilon
//! times the largest uncancelled term it saw.

mod corner;
mod gk;

pub use corner::{corner_integral, ke6_epsilon_integral, ke6_prefactor, ke6_value};

use serde::{Deserialize, Serialize};
use std::cell::Cell;
use std::f64::consts::FRAC_PI_2;

use crate::convergence::{ir_classify, uv_classify, Status};
use crate::error::{Error, Result, SpectralEnd};
use crate::resonance::{jacobian, kinematic_box_contains, solve_branch, BoxPosition, BranchId};
use crate::spectral::{action_power_law, Exponents, PhysicalParams, Wavevector};
use crate::vertex::{f_factor, triangle_area, v_squared, ResonanceKind};

/// Corner bands cover min(k1, k2) <= R0 * k; the UV strip starts at
/// u0 = 2 R0 k. Interior tiling detail, not part of the cutoff contract.
const R0: f64 = 0.25;

/// Hard cap on octave sweeps toward an open end (k1 down to 2^-160 k).
const MAX_OCTAVES: usize = 160;

/// Octaves required before trusting measured panel ratios.
const MIN_OCTAVES: usize = 6;

fn default_rel_tol() -> f64 {
    1e-6
}
fn default_abs_tol() -> f64 {
    1e-12
}
fn default_uv_cut() -> f64 {
    f64::INFINITY
}
fn default_max_subdivisions() -> usize {
    400
}

/// Tolerances and cutoffs for the collision-integral quadrature.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Relative error target.
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Absolute error floor.
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    /// IR cutoff delta: excludes min(k1, k2) < delta * k. 0 means none.
    #[serde(default)]
    pub ir_cut: f64,
    /// UV cutoff Lambda: excludes max(k1, k2) > Lambda * k. Infinite means none.
    #[serde(default = "default_uv_cut")]
    pub uv_cut: f64,
    /// Panel cap per one-dimensional adaptive pass.
    #[serde(default = "default_max_subdivisions")]
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            ir_cut: 0.0,
            uv_cut: f64::INFINITY,
            max_subdivisions: default_max_subdivisions(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerances must be positive, got rel_tol = {}, abs_tol = {}",
                self.rel_tol, self.abs_tol
            )));
        }
        if !(0.0..1.0).contains(&self.ir_cut) {
            return Err(Error::InvalidConfig(format!(
                "IR cutoff must satisfy 0 <= delta < 1, got {}",
                self.ir_cut
            )));
        }
        if !(self.uv_cut > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "UV cutoff must satisfy Lambda > 1, got {}",
                self.uv_cut
            )));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::InvalidConfig(
                "max_subdivisions must be at least 8".into(),
            ));
        }
        Ok(())
    }

    fn with_ir_cut(mut self, delta: f64) -> Self {
        self.ir_cut = delta;
        self
    }

    fn with_uv_cut(mut self, lambda: f64) -> Self {
        self.uv_cut = lambda;
        self
    }
}

/// A (possibly cutoff-regularized) collision-integral value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    /// IR cutoff actually applied (0 = none).
    pub ir_cut: f64,
    /// UV cutoff actually applied (infinity = none).
    pub uv_cut: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// The collision integrand context at fixed (k, m) and exponents.
struct CollisionIntegrand<'a> {
    e: Exponents,
    k: f64,
    m: f64,
    params: &'a PhysicalParams,
    /// Peak |T| sum seen since the last reset, for rounding-noise floors.
    peak_terms: Cell<f64>,
    evaluations: Cell<usize>,
}

impl<'a> CollisionIntegrand<'a> {
    fn new(e: Exponents, k: f64, m: f64, params: &'a PhysicalParams) -> Self {
        CollisionIntegrand {
            e,
            k,
            m,
            params,
            peak_terms: Cell::new(0.0),
            evaluations: Cell::new(0),
        }
    }

    /// Signed branch sum `T^0 - T^1 - T^2` WITHOUT the 1/S area factor
    /// (handled analytically by the region substitutions) and without the
    /// overall 1/k. Returns (value, sum of |term|).
    fn numerator(&self, k1: f64, k2: f64) -> (f64, f64) {
        self.evaluations.set(self.evaluations.get() + 1);
        let mut total = 0.0;
        let mut magnitude = 0.0;
        let n0 = match action_power_law(Wavevector::new(self.k, self.m), self.e) {
            Ok(v) => v,
            Err(_) => return (f64::NAN, f64::NAN),
        };
        for branch in BranchId::all() {
            let sign = match branch.kind {
                ResonanceKind::Sum => 1.0,
                _ => -1.0,
            };
            let term = (|| -> Result<f64> {
                let root = solve_branch(branch, self.k, k1, k2, self.m)?;
                let gp = jacobian(&root)?;
                let triad = root.triad(self.params);
                let vv = v_squared(&triad, self.params)?;
                let n1 = action_power_law(Wavevector::new(k1, root.m1), self.e)?;
                let n2 = action_power_law(Wavevector::new(k2, root.m2), self.e)?;
                let ff = f_factor(n0, n1, n2, branch.kind.parent());
                Ok(self.k * k1 * k2 * vv.v_sq * ff / gp)
            })();
            match term {
                Ok(t) => {
                    total += sign * t;
                    magnitude += t.abs();
                }
                Err(_) => return (f64::NAN, f64::NAN),
            }
        }
        let peak = self.peak_terms.get();
        if magnitude > peak {
            self.peak_terms.set(magnitude);
        }
        (total, magnitude)
    }

    /// Transverse integral of the corner band at fixed k1, with
    /// k2 = k + k1 sin(psi). The combined substitution/area ratio
    /// 4 / sqrt((2k - k1(1-sin))(2k + k1(1+sin))) is regular on both edges.
    fn corner_inner(&self, k1: f64, rel: f64, max_panels: usize) -> gk::QuadOutcome {
        let k = self.k;
        gk::integrate(
            |psi: f64| {
                let s = psi.sin();
                let k2 = k + k1 * s;
                let (n, _) = self.numerator(k1, k2);
                let denom = (2.0 * k - k1 * (1.0 - s)) * (2.0 * k + k1 * (1.0 + s));
                4.0 * n / denom.sqrt()
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            rel,
            f64::MIN_POSITIVE,
            max_panels,
        )
    }

    /// Transverse integral at fixed u = k1 + k2 - k over v = V sin(phi),
    /// |v| <= V. Covers both the UV strip (V = k) and the central region /
    /// UV trim zone (V < k).
    fn strip_inner(&self, u: f64, v_max: f64, rel: f64, max_panels: usize) -> gk::QuadOutcome {
        let k = self.k;
        gk::integrate(
            |phi: f64| {
                let v = v_max * phi.sin();
                let k1 = 0.5 * (u + k + v);
                let k2 = 0.5 * (u + k - v);
                let (n, _) = self.numerator(k1, k2);
                let denom = k * k - v * v;
                n * v_max * phi.cos() / denom.sqrt()
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            rel,
            f64::MIN_POSITIVE,
            max_panels,
        )
    }
}

/// One octave (or partial octave) panel result.
#[derive(Debug, Clone, Copy)]
struct PanelOut {
    value: f64,
    error: f64,
    noise: f64,
}

#[derive(Debug, Clone, Copy)]
struct RegionSum {
    value: f64,
    error: f64,
}

/// Direction of an octave sweep relative to its starting edge.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Sweep {
    /// Toward 0 (IR corner): panels [edge/2, edge].
    Down,
    /// Toward infinity (UV strip): panels [edge, 2 edge].
    Up,
}

/// Sum octave panels toward an open or cutoff end.
///
/// `cutoff` is the final boundary (delta*k going down, u_max going up); None
/// sweeps until the panel sequence decays and extrapolates the geometric
/// tail. `asymptotic_ratio` is the octave-to-octave ratio implied by the
/// classifier order (2^-order), used as a fallback and as a cross-check.
fn octave_sweep(
    mut panel: impl FnMut(f64, f64) -> PanelOut,
    start: f64,
    sweep: Sweep,
    cutoff: Option<f64>,
    asymptotic_ratio: Option<f64>,
    tail_tol: f64,
    end: SpectralEnd,
) -> Result<RegionSum> {
    let mut edge = start;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut history: Vec<PanelOut> = Vec::new();
    for _ in 0..MAX_OCTAVES {
        let (lo, hi, last) = match sweep {
            Sweep::Down => {
                let mut lo = 0.5 * edge;
                let mut last = false;
                if let Some(c) = cutoff {
                    if lo <= c {
                        lo = c;
                        last = true;
                    }
                }
                (lo, edge, last)
            }
            Sweep::Up => {
                let mut hi = 2.0 * edge;
                let mut last = false;
                if let Some(c) = cutoff {
                    if hi >= c {
                        hi = c;
                        last = true;
                    }
                }
                (edge, hi, last)
            }
        };
        if lo >= hi {
            return Ok(RegionSum { value, error });
        }
        let p = panel(lo, hi);
        value += p.value;
        error += p.error + p.noise;
        history.push(p);
        if last {
            return Ok(RegionSum { value, error });
        }
        edge = match sweep {
            Sweep::Down => lo,
            Sweep::Up => hi,
        };
        if cutoff.is_none() && history.len() > MIN_OCTAVES {
            let n = history.len();
            let (p2, p1, p0) = (
                history[n - 3].value,
                history[n - 2].value,
                history[n - 1].value,
            );
            let noise = history[n - 1].noise;
            let r1 = p0 / p1;
            let r0 = p1 / p2;
            let ratios_ok = r1.is_finite()
                && r0.is_finite()
                && r1 > 0.0
                && r0 > 0.0
                && r1 < 0.9995
                && (r1 - r0).abs() < 0.03 * (1.0 - r1) + 0.003;
            let noise_dominated = noise > 0.25 * p0.abs();
            let r_meas = if ratios_ok { Some(r1) } else { None };
            let r_cls = asymptotic_ratio.filter(|&ra| ra < 0.9995);
            let r_best = r_meas.or(r_cls);
            if let Some(r) = r_best {
                let tail = p0 * r / (1.0 - r);
                // Disagreement between the measured and asymptotic ratios
                // bounds the extrapolation model error.
                let model_err = match (r_meas, r_cls) {
                    (Some(rm), Some(ra)) => {
                        (p0 * rm / (1.0 - rm) - p0 * ra / (1.0 - ra)).abs()
                    }
                    _ => 0.3 * tail.abs(),
                };
                let tail_err = model_err + noise * r / (1.0 - r).max(1e-3);
                let good_enough = tail_err <= tail_tol || tail.abs() + tail_err <= tail_tol;
                if good_enough || noise_dominated {
                    value += tail;
                    error += tail_err;
                    return Ok(RegionSum { value, error });
                }
            } else if noise_dominated {
                // No usable decay rate and the panels sit in rounding noise:
                // bound the unresolved tail crudely by the last panel.
                error += 8.0 * p0.abs() + 8.0 * noise;
                return Ok(RegionSum { value, error });
            }
        }
    }
    // Ran out of octaves without a usable tail.
    match asymptotic_ratio {
        Some(ra) if ra < 0.9999 => {
            let p0 = history.last().map(|p| p.value).unwrap_or(0.0);
            let tail = p0 * ra / (1.0 - ra);
            Ok(RegionSum {
                value: value + tail,
                error: error + tail.abs(),
            })
        }
        _ => Err(Error::TailNotConvergent(end)),
    }
}

/// Collision integrand at a single in-box point: branch sum divided by the
/// triangle area, without the integral-level 1/k prefactor.
///
/// Errors on boundary or outside points; quadrature never samples the
/// boundary, where the area vanishes.
pub fn collision_integrand(
    k1: f64,
    k2: f64,
    k: f64,
    m: f64,
    e: Exponents,
    params: &PhysicalParams,
) -> Result<f64> {
    if kinematic_box_contains(k, k1, k2) != BoxPosition::Inside {
        return Err(Error::OutsideKinematicBox { k, k1, k2 });
    }
    if m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    let ctx = CollisionIntegrand::new(e, k, m, params);
    let (n, _) = ctx.numerator(k1, k2);
    if n.is_nan() {
        return Err(Error::OutsideKinematicBox { k, k1, k2 });
    }
    let area = triangle_area(k, k1, k2)?;
    Ok(n / area)
}

/// Scale-invariant collision integral C(a, b) at the wavenumber (k, m),
/// canonically (1, 1).
///
/// Divergent or marginal ends require an explicit cutoff in the config; the
/// result then carries the cutoffs used. Requires the non-rotating limit
/// (params.f = 0), where the hydrostatic resonant-manifold reduction holds.
pub fn collision_integral(
    e: Exponents,
    cfg: &QuadratureConfig,
    k: f64,
    m: f64,
    params: &PhysicalParams,
) -> Result<IntegralResult> {
    cfg.validate()?;
    params.validate()?;
    if params.f != 0.0 {
        return Err(Error::InvalidParameter(
            "the scale-invariant collision integral requires f = 0; \
             rotation enters through the corner integral instead"
                .into(),
        ));
    }
    if k <= 0.0 {
        return Err(Error::NonpositiveWavenumber(k));
    }
    if m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    let ir = ir_classify(e);
    let uv = uv_classify(e);
    let delta = cfg.ir_cut;
    let lambda = cfg.uv_cut;
    if ir.status != Status::Convergent && delta == 0.0 {
        return Err(Error::CutoffRequired(SpectralEnd::Ir));
    }
    if uv.status != Status::Convergent && lambda.is_infinite() {
        return Err(Error::CutoffRequired(SpectralEnd::Uv));
    }
    if delta >= R0 {
        return Err(Error::InvalidConfig(format!(
            "IR cutoff delta = {delta} must be below the corner-band fraction {R0}"
        )));
    }
    if lambda <= 1.0 + R0 {
        return Err(Error::InvalidConfig(format!(
            "UV cutoff Lambda = {lambda} must exceed {}",
            1.0 + R0
        )));
    }

    let ctx = CollisionIntegrand::new(e, k, m, params);
    let inner_rel = (cfg.rel_tol * 1e-2).clamp(1e-12, 1e-7);
    let outer_rel = (cfg.rel_tol * 0.25).clamp(1e-11, 1e-5);
    let max_panels = cfg.max_subdivisions;

    // Rough scale from a central sample, for absolute tail budgets.
    let probe = {
        let (n, mag) = ctx.numerator(0.75 * k, 0.75 * k);
        let area = triangle_area(k, 0.75 * k, 0.75 * k).unwrap_or(k * k);
        (n.abs().max(1e-3 * mag) / area).max(f64::MIN_POSITIVE)
    };
    let tail_tol = (cfg.rel_tol * probe * k * k * 0.1).max(cfg.abs_tol * k * 0.01);

    let eps = f64::EPSILON;

    // IR corner band in k1 octaves (doubled by symmetry afterwards).
    let corner_panel = |lo: f64, hi: f64| -> PanelOut {
        ctx.peak_terms.set(0.0);
        let out = gk::integrate(
            |w: f64| {
                let k1 = w.exp();
                k1 * ctx.corner_inner(k1, inner_rel, max_panels).value
            },
            lo.ln(),
            hi.ln(),
            outer_rel,
            f64::MIN_POSITIVE,
            16,
        );
        // Peak uncancelled term over the panel, scaled like the integrand.
        let noise = eps * ctx.peak_terms.get() * 4.0 / k * hi * (hi / lo).ln() * FRAC_PI_2;
        PanelOut {
            value: out.value,
            error: out.error,
            noise,
        }
    };
    let ir_ratio = if ir.order > 0.0 {
        Some(0.5_f64.powf(ir.order))
    } else {
        None
    };
    let corner = octave_sweep(
        corner_panel,
        R0 * k,
        Sweep::Down,
        if delta > 0.0 { Some(delta * k) } else { None },
        ir_ratio,
        tail_tol,
        SpectralEnd::Ir,
    )?;

    // Central region: u = s^2 up to u0 = 2 R0 k, v_max(u) = k + u - 2 R0 k.
    let u0 = 2.0 * R0 * k;
    ctx.peak_terms.set(0.0);
    let central_out = gk::integrate(
        |s: f64| {
            let u = s * s;
            let v_max = k + u - u0;
            let inner = ctx.strip_inner(u, v_max, inner_rel, max_panels);
            // (1/2) du dv with du = 2s ds cancels, and s/S leaves
            // 4 / sqrt(2k + s^2); the 1/sqrt(k^2 - v^2) lives in strip_inner.
            4.0 / (2.0 * k + u).sqrt() * inner.value
        },
        0.0,
        u0.sqrt(),
        outer_rel,
        f64::MIN_POSITIVE,
        64,
    );
    let central = RegionSum {
        value: central_out.value,
        error: central_out.error
            + eps * ctx.peak_terms.get() * 8.0 / k.sqrt() * u0.sqrt() * FRAC_PI_2,
    };

    // UV strip in u octaves from u0, full width V = k, then cutoff trim.
    let uv_panel = |lo: f64, hi: f64| -> PanelOut {
        ctx.peak_terms.set(0.0);
        let out = gk::integrate(
            |t: f64| {
                let u = t.exp();
                let inner = ctx.strip_inner(u, k, inner_rel, max_panels);
                u * 2.0 / (u * (2.0 * k + u)).sqrt() * inner.value
            },
            lo.ln(),
            hi.ln(),
            outer_rel,
            f64::MIN_POSITIVE,
            16,
        );
        let noise = eps * ctx.peak_terms.get() * 2.0 / lo.max(k) * hi * (hi / lo).ln() * FRAC_PI_2;
        PanelOut {
            value: out.value,
            error: out.error,
            noise,
        }
    };
    let uv_ratio = if uv.order > 0.0 {
        Some(0.5_f64.powf(uv.order))
    } else {
        None
    };
    // With a finite cutoff max(k1, k2) <= Lambda k, full-width panels stop at
    // u_full = 2(Lambda - 1)k and a trimmed zone runs to (2 Lambda - 1)k.
    let (uv_stop, trim) = if lambda.is_finite() {
        (Some(2.0 * (lambda - 1.0) * k), true)
    } else {
        (None, false)
    };
    let uv_sum = octave_sweep(
        uv_panel,
        u0,
        Sweep::Up,
        uv_stop,
        uv_ratio,
        tail_tol,
        SpectralEnd::Uv,
    )?;
    let uv_trim = if trim {
        let u_full = 2.0 * (lambda - 1.0) * k;
        let u_end = (2.0 * lambda - 1.0) * k;
        ctx.peak_terms.set(0.0);
        let out = gk::integrate(
            |u: f64| {
                let v_max = 2.0 * lambda * k - k - u;
                let inner = ctx.strip_inner(u, v_max, inner_rel, max_panels);
                2.0 / (u * (2.0 * k + u)).sqrt() * inner.value
            },
            u_full,
            u_end,
            outer_rel,
            f64::MIN_POSITIVE,
            32,
        );
        RegionSum {
            value: out.value,
            error: out.error,
        }
    } else {
        RegionSum {
            value: 0.0,
            error: 0.0,
        }
    };

    if std::env::var_os("IWKIN_DEBUG_REGIONS").is_some() {
        eprintln!(
            "regions @ {e}: corner = {:+.6e} ({:.1e})  central = {:+.6e} ({:.1e})  \
             uv = {:+.6e} ({:.1e})  trim = {:+.6e}",
            corner.value,
            corner.error,
            central.value,
            central.error,
            uv_sum.value,
            uv_sum.error,
            uv_trim.value
        );
    }
    let value = (2.0 * corner.value + central.value + uv_sum.value + uv_trim.value) / k;
    let error =
        (2.0 * corner.error + central.error + uv_sum.error + uv_trim.error) / k;
    let converged = error <= cfg.rel_tol * value.abs() + cfg.abs_tol;
    let result = IntegralResult {
        value,
        error_estimate: error,
        ir_cut: delta,
        uv_cut: lambda,
        converged,
        evaluations: ctx.evaluations.get(),
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::ToleranceNotReached(Box::new(result)))
    }
}

/// Value and error from either a converged result or a
/// tolerance-miss carrying its best estimate.
pub fn integral_best_estimate(r: Result<IntegralResult>) -> Result<IntegralResult> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::ToleranceNotReached(best)) => Ok(*best),
        Err(e) => Err(e),
    }
}

/// Log-log slope diagnostics of the cutoff-regularized integral.
#[derive(Debug, Clone, Serialize)]
pub struct CutoffScaling {
    pub end: SpectralEnd,
    /// Small-parameter values: the IR cutoff delta itself, or 1/Lambda.
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    /// Reported slope: the fitted power of the cutoff-dependent part when it
    /// diverges, 0 when the integral saturates (convergent or logarithmic).
    pub slope: f64,
    /// Raw exponent of the cutoff-dependent part from differencing.
    pub differenced_slope: f64,
    /// Raw slope of log|C| against log eps.
    pub direct_slope: f64,
}

fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Evaluate the regularized integral over a list of cutoffs at one end and
/// fit the scaling exponent of the divergent part.
///
/// `cuts` are direct cutoff parameters: delta values for the IR end, Lambda
/// values for the UV end. The opposite end keeps the cutoff from `cfg`; if it
/// is divergent there and no cutoff is set, this fails rather than guessing.
pub fn cutoff_scaling(
    e: Exponents,
    end: SpectralEnd,
    cuts: &[f64],
    cfg: &QuadratureConfig,
    k: f64,
    m: f64,
    params: &PhysicalParams,
) -> Result<CutoffScaling> {
    if cuts.len() < 3 {
        return Err(Error::InsufficientRange(
            "need at least three cutoff values".into(),
        ));
    }
    let verdict = match end {
        SpectralEnd::Ir => ir_classify(e),
        SpectralEnd::Uv => uv_classify(e),
    };
    if verdict.status == Status::Convergent {
        return Err(Error::InvalidParameter(format!(
            "the {end} end is convergent at {e}; nothing to regularize"
        )));
    }
    let mut eps: Vec<f64> = cuts
        .iter()
        .map(|&c| match end {
            SpectralEnd::Ir => c,
            SpectralEnd::Uv => 1.0 / c,
        })
        .collect();
    eps.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eps.dedup();
    let span = eps.first().unwrap() / eps.last().unwrap();
    if eps.len() < 3 || span < 10.0 {
        return Err(Error::InsufficientRange(format!(
            "cutoffs span a factor {span:.2}; need at least a decade and three points"
        )));
    }

    let mut values = Vec::with_capacity(eps.len());
    let mut errors = Vec::with_capacity(eps.len());
    for &ep in &eps {
        let run_cfg = match end {
            SpectralEnd::Ir => cfg.with_ir_cut(ep),
            SpectralEnd::Uv => cfg.with_uv_cut(1.0 / ep),
        };
        let r = integral_best_estimate(collision_integral(e, &run_cfg, k, m, params))?;
        values.push(r.value);
        errors.push(r.error_estimate);
    }

    // Differenced fit removes any additive constant: for C = C0 + c eps^s the
    // successive differences scale exactly like eps^s.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..eps.len() - 1 {
        let d = values[i + 1] - values[i];
        if d != 0.0 {
            xs.push((eps[i] * eps[i + 1]).sqrt().ln());
            ys.push(d.abs().ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientRange(
            "regularized values do not vary across the cutoffs".into(),
        ));
    }
    let differenced_slope = lsq_slope(&xs, &ys);
    let direct_xs: Vec<f64> = eps.iter().map(|x| x.ln()).collect();
    let direct_ys: Vec<f64> = values.iter().map(|v| v.abs().max(1e-300).ln()).collect();
    let direct_slope = lsq_slope(&direct_xs, &direct_ys);
    // A positive fitted power means the cutoff dependence dies out: no
    // divergent part, slope 0 by convention.
    let slope = if differenced_slope < 0.0 {
        differenced_slope
    } else {
        0.0
    };
    Ok(CutoffScaling {
        end,
        eps,
        values,
        errors,
        slope,
        differenced_slope,
        direct_slope,
    })
}

/// Bracketing root refinement (bisection with secant acceleration) on a
/// noisy function. `f` returns (value, noise); the iteration stops when the
/// bracket is below `x_tol` or the value sits inside its own noise band.
pub fn bracket_root(
    mut f: impl FnMut(f64) -> Result<(f64, f64)>,
    lo: f64,
    hi: f64,
    x_tol: f64,
) -> Result<(f64, usize)> {
    let (mut a, mut b) = (lo, hi);
    let (fa0, _) = f(a)?;
    let (fb0, _) = f(b)?;
    if fa0 == 0.0 {
        return Ok((a, 2));
    }
    if fb0 == 0.0 {
        return Ok((b, 2));
    }
    if fa0.signum() == fb0.signum() {
        return Err(Error::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa0,
            f_hi: fb0,
        });
    }
    let mut fa = fa0;
    let mut fb = fb0;
    let mut iterations = 2;
    while (b - a).abs() > x_tol {
        // Secant proposal clipped into the middle 80% of the bracket, else
        // bisect.
        let mut x = b - fb * (b - a) / (fb - fa);
        let lo_ok = a + 0.1 * (b - a);
        let hi_ok = b - 0.1 * (b - a);
        if !(x > lo_ok && x < hi_ok) {
            x = 0.5 * (a + b);
        }
        let (fx, noise) = f(x)?;
        iterations += 1;
        if fx == 0.0 || fx.abs() <= noise && (b - a).abs() < 16.0 * x_tol {
            return Ok((x, iterations));
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if iterations > 200 {
            break;
        }
    }
    Ok((0.5 * (a + b), iterations))
}

/// Result of the steady-exponent search on the b = 0 segment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SteadyRoot {
    pub a: f64,
    pub c_value: f64,
    pub c_error: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// Find the steady power-law exponent a* with b = 0 by bracketing the sign
/// change of a -> C(a, 0).
///
/// Endpoints landing exactly on a marginal classification (where the
/// unregularized integral does not exist) are nudged inward by 1% of the
/// bracket before evaluation.
pub fn find_steady_a(
    bracket: (f64, f64),
    a_tol: f64,
    cfg: &QuadratureConfig,
    params: &PhysicalParams,
) -> Result<SteadyRoot> {
    let (lo, hi) = bracket;
    if !(hi > lo) || !(a_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bad bracket [{lo}, {hi}] or tolerance {a_tol}"
        )));
    }
    let nudge = 0.01 * (hi - lo);
    let evaluable = |a: f64| {
        let e = Exponents::new(a, 0.0);
        ir_classify(e).status == Status::Convergent && uv_classify(e).status == Status::Convergent
    };
    let lo_eff = if evaluable(lo) { lo } else { lo + nudge };
    let hi_eff = if evaluable(hi) { hi } else { hi - nudge };
    let mut last = (f64::NAN, f64::NAN);
    let eval = |a: f64| -> Result<(f64, f64)> {
        let r = integral_best_estimate(collision_integral(
            Exponents::new(a, 0.0),
            cfg,
            1.0,
            1.0,
            params,
        ))?;
        Ok((r.value, r.error_estimate))
    };
    let (a_star, iterations) = bracket_root(
        |a| {
            let out = eval(a)?;
            last = out;
            Ok(out)
        },
        lo_eff,
        hi_eff,
        a_tol,
    )?;
    let (c_value, c_error) = if last.0.is_nan() { eval(a_star)? } else { last };
    Ok(SteadyRoot {
        a: a_star,
        c_value,
        c_error,
        iterations,
        bracket: (lo_eff, hi_eff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            ir_cut: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            uv_cut: 0.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn integrand_rejects_boundary() {
        let params = PhysicalParams::default();
        let e = Exponents::new(3.7, 0.0);
        assert!(matches!(
            collision_integrand(0.5, 0.5, 1.0, 1.0, e, &params),
            Err(Error::OutsideKinematicBox { .. })
        ));
    }

    #[test]
    fn integrand_finite_and_symmetric() {
        let params = PhysicalParams::default();
        let e = Exponents::new(3.7, 0.0);
        let v1 = collision_integrand(0.5, 0.6, 1.0, 1.0, e, &params).unwrap();
        let v2 = collision_integrand(0.6, 0.5, 1.0, 1.0, e, &params).unwrap();
        assert!(v1.is_finite());
        assert!((v1 - v2).abs() <= 1e-9 * v1.abs());
    }

    #[test]
    fn integrand_constant_spectrum_finite() {
        // a = b = 0: all f-factors equal -n^2; the branch sum stays finite.
        let params = PhysicalParams::default();
        let e = Exponents::new(0.0, 0.0);
        let v = collision_integrand(0.8, 0.9, 1.0, 1.0, e, &params).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn divergent_exponents_require_cutoffs() {
        let params = PhysicalParams::default();
        let cfg = QuadratureConfig::default();
        let pr = Exponents::new(3.5, 0.5);
        assert!(matches!(
            collision_integral(pr, &cfg, 1.0, 1.0, &params),
            Err(Error::CutoffRequired(SpectralEnd::Ir))
        ));
        let cfg_ir = QuadratureConfig {
            ir_cut: 1e-3,
            ..cfg
        };
        assert!(matches!(
            collision_integral(pr, &cfg_ir, 1.0, 1.0, &params),
            Err(Error::CutoffRequired(SpectralEnd::Uv))
        ));
    }

    #[test]
    fn rotation_is_rejected() {
        let params = PhysicalParams::new(0.1, 1.0, 1.0).unwrap();
        let cfg = QuadratureConfig::default();
        assert!(collision_integral(Exponents::new(3.7, 0.0), &cfg, 1.0, 1.0, &params).is_err());
    }

    #[test]
    fn bracket_root_synthetic_linear() {
        let (root, _) = bracket_root(|a| Ok((a - 3.7, 0.0)), 3.5, 4.0, 1e-9).unwrap();
        assert!((root - 3.7).abs() < 1e-8);
    }

    #[test]
    fn bracket_root_requires_sign_change() {
        assert!(matches!(
            bracket_root(|a| Ok((a * a + 1.0, 0.0)), -1.0, 1.0, 1e-6),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn slope_fit_recovers_pure_power() {
        let xs: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|x: &f64| x.ln()).collect();
        let ys: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|x: &f64| (3.0 * x.powf(-0.25)).ln())
            .collect();
        assert!((lsq_slope(&xs, &ys) + 0.25).abs() < 1e-12);
    }
}
