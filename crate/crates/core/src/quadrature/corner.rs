//! Coriolis-regularized induced-diffusion corner integral in the
//! (omega1, m1) domain, and the closed-form leading-order expression it is
//! validated against.
//!
//! The two near-inertial corners of the kinematic box contribute
//!
//! `dn/dt = (2/k) [ int_f^{f+ws} dw1 int_0^1 dmu P1
//!               - int_{w-f-ws}^{w-f} dw1 int_0^1 dmu P2 ]`
//!
//! with `P1 = J |V|^2 / S * n1 (n2 - n) * (E1 - E3)` on
//! `m1 = E3 + mu (E1 - E3)` and `P2 = J |V|^2 / S * n2 (n - n1) * (E2 - E3)`
//! on `m1 = E3 + mu (E2 - E3)`; the first corner carries its mirror image's
//! contribution through the overall factor 2. J is the (k1, k2) ->
//! (omega1, omega2) transformation Jacobian times k k1 k2. Everything is
//! evaluated at the nondimensional defaults c0 = vertex_prefactor = 1.

use std::f64::consts::{FRAC_PI_2, PI};

use super::gk;
use super::{IntegralResult, QuadratureConfig};
use crate::error::{Error, Result};
use crate::resonance::OmegaBoxCurves;
use crate::spectral::{OmegaExponents, PhysicalParams, Wavevector};
use crate::vertex::{triangle_area, v_squared, ResonanceKind, Triad};

/// Closed-form prefactor `(a~ - b~)(a~ - 3(3 + b~))`.
///
/// In (a, b) terms this is `b (2a + 3b - 9)`: it vanishes exactly on the two
/// induced-diffusion stationary lines b = 0 and 9 - 2a - 3b = 0.
pub fn ke6_prefactor(oe: OmegaExponents) -> f64 {
    (oe.a_tilde - oe.b_tilde) * (oe.a_tilde - 3.0 * (3.0 + oe.b_tilde))
}

/// The epsilon integral of the closed form,
/// `int_0^mu (eps + f)^(4 + a~ + b~) (eps^2 + 2 eps f + 17 f^2) d eps`,
/// by analytic antiderivative (the quadratic factor is `(eps+f)^2 + 16 f^2`).
pub fn ke6_epsilon_integral(oe: OmegaExponents, f: f64, mu: f64) -> Result<f64> {
    if !(f > 0.0) {
        return Err(Error::InvalidParameter(
            "the closed-form epsilon integral requires f > 0".into(),
        ));
    }
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "upper limit mu must be positive, got {mu}"
        )));
    }
    let q = 4.0 + oe.a_tilde + oe.b_tilde;
    let hi = mu + f;
    let lo = f;
    // int (eps+f)^(q+2) d eps
    let part1 = if (q + 3.0).abs() < 1e-12 {
        (hi / lo).ln()
    } else {
        (hi.powf(q + 3.0) - lo.powf(q + 3.0)) / (q + 3.0)
    };
    // 16 f^2 int (eps+f)^q d eps
    let part2 = if (q + 1.0).abs() < 1e-12 {
        16.0 * f * f * (hi / lo).ln()
    } else {
        16.0 * f * f * (hi.powf(q + 1.0) - lo.powf(q + 1.0)) / (q + 1.0)
    };
    Ok(part1 + part2)
}

/// Closed-form leading-order corner value:
/// `pi/(4k) * prefactor * m^(5+2b~) * omega^(-3+a~-b~) * epsilon integral`,
/// with `k = m sqrt(omega^2 - f^2)`.
pub fn ke6_value(oe: OmegaExponents, f: f64, mu: f64, omega: f64, m: f64) -> Result<f64> {
    if !(f > 0.0) || !(omega > f) {
        return Err(Error::InvalidParameter(format!(
            "require omega > f > 0, got omega = {omega}, f = {f}"
        )));
    }
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "require m > 0, got {m}"
        )));
    }
    let k = m * (omega * omega - f * f).sqrt();
    let eps_int = ke6_epsilon_integral(oe, f, mu)?;
    Ok(PI / (4.0 * k)
        * ke6_prefactor(oe)
        * m.powf(5.0 + 2.0 * oe.b_tilde)
        * omega.powf(-3.0 + oe.a_tilde - oe.b_tilde)
        * eps_int)
}

/// Context for the corner integrand at fixed spectrum and reference wave.
struct CornerCtx {
    oe: OmegaExponents,
    omega: f64,
    m: f64,
    f: f64,
    curves: OmegaBoxCurves,
    params: PhysicalParams,
}

impl CornerCtx {
    fn action(&self, omega: f64, m: f64) -> f64 {
        omega.powf(self.oe.a_tilde) * m.abs().powf(self.oe.b_tilde)
    }

    fn horizontal(&self, omega: f64, m: f64) -> f64 {
        m.abs() * (omega * omega - self.f * self.f).max(0.0).sqrt()
    }

    /// Shared part of P1/P2: J |V|^2 / S at the sum-closure triad
    /// (omega, m) = (omega1, m1) + (omega2, m2).
    fn kernel(&self, omega1: f64, m1: f64) -> f64 {
        let omega2 = self.omega - omega1;
        let m2 = self.m - m1;
        let k = self.horizontal(self.omega, self.m);
        let k1 = self.horizontal(omega1, m1);
        let k2 = self.horizontal(omega2, m2);
        let area = match triangle_area(k, k1, k2) {
            Ok(a) if a > 0.0 => a,
            _ => return f64::NAN,
        };
        let triad = Triad {
            kind: ResonanceKind::Sum,
            p: Wavevector::new(k, self.m),
            p1: Wavevector::new(k1, m1),
            p2: Wavevector::new(k2, m2),
            omega: self.omega,
            omega1,
            omega2,
        };
        let v_sq = match v_squared(&triad, &self.params) {
            Ok(v) => v.v_sq,
            Err(_) => return f64::NAN,
        };
        // dk_i/domega_i = |m_i| omega_i / sqrt(omega_i^2 - f^2)
        let dk1 = m1.abs() * omega1 / (omega1 * omega1 - self.f * self.f).sqrt();
        let dk2 = m2.abs() * omega2 / (omega2 * omega2 - self.f * self.f).sqrt();
        let jac = k * k1 * k2 * dk1 * dk2;
        jac * v_sq / area
    }

    /// P1 integrated over mu at fixed omega1 (near-inertial omega1 corner).
    fn inner_p1(&self, omega1: f64, rel: f64, max_panels: usize) -> gk::QuadOutcome {
        let e3 = self.curves.e3(omega1).unwrap_or(f64::NAN);
        let width = self.curves.e1_minus_e3(omega1).unwrap_or(f64::NAN);
        let n = self.action(self.omega, self.m);
        gk::integrate(
            |phi: f64| {
                let mu = 0.5 * (1.0 + phi.sin());
                let m1 = e3 + mu * width;
                let omega2 = self.omega - omega1;
                let m2 = self.m - m1;
                let n1 = self.action(omega1, m1);
                let n2 = self.action(omega2, m2);
                // d mu = cos(phi)/2 d phi
                self.kernel(omega1, m1) * n1 * (n2 - n) * width * 0.5 * phi.cos()
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            rel,
            f64::MIN_POSITIVE,
            max_panels,
        )
    }

    /// P2 integrated over mu at fixed omega1 (near-inertial omega2 corner).
    fn inner_p2(&self, omega1: f64, rel: f64, max_panels: usize) -> gk::QuadOutcome {
        let e3 = self.curves.e3(omega1).unwrap_or(f64::NAN);
        let width = self.curves.e2_minus_e3(omega1).unwrap_or(f64::NAN);
        let n = self.action(self.omega, self.m);
        gk::integrate(
            |phi: f64| {
                let mu = 0.5 * (1.0 + phi.sin());
                let m1 = e3 + mu * width;
                let omega2 = self.omega - omega1;
                let m2 = self.m - m1;
                let n1 = self.action(omega1, m1);
                let n2 = self.action(omega2, m2);
                self.kernel(omega1, m1) * n2 * (n - n1) * width * 0.5 * phi.cos()
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            rel,
            f64::MIN_POSITIVE,
            max_panels,
        )
    }
}

/// Numerical induced-diffusion corner integral of the rotation-regularized
/// kinetic equation, restricted to a frequency shell of width `omega_s`
/// around the two near-inertial corners (the mirror pair enters through the
/// overall factor 2).
///
/// Requires f > 0; the non-rotating path is the scale-invariant collision
/// integral. Evaluated at the nondimensional defaults c0 = 1,
/// vertex_prefactor = 1.
pub fn corner_integral(
    oe: OmegaExponents,
    omega: f64,
    m: f64,
    f: f64,
    omega_s: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if !(f > 0.0) {
        return Err(Error::InvalidParameter(
            "corner integral requires f > 0; uses the f-free collision integral otherwise".into(),
        ));
    }
    if !(omega > 2.0 * f) {
        return Err(Error::InvalidParameter(format!(
            "require omega > 2 f, got omega = {omega}, f = {f}"
        )));
    }
    if !(omega_s > 0.0) || !(omega_s < 0.5 * omega - f) {
        return Err(Error::InvalidParameter(format!(
            "corner width omega_s = {omega_s} must lie in (0, omega/2 - f)"
        )));
    }
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "require m > 0, got {m}"
        )));
    }
    let ctx = CornerCtx {
        oe,
        omega,
        m,
        f,
        curves: OmegaBoxCurves::new(omega, m, f)?,
        params: PhysicalParams {
            f,
            c0: 1.0,
            vertex_prefactor: 1.0,
        },
    };
    let inner_rel = (cfg.rel_tol * 1e-2).clamp(1e-12, 1e-7);
    let outer_rel = cfg.rel_tol.clamp(1e-11, 1e-4);
    let max_panels = cfg.max_subdivisions;

    // omega1 = f + omega_s tau^2 opens the square-root corner of the band.
    let i1 = gk::integrate(
        |tau: f64| {
            let omega1 = f + omega_s * tau * tau;
            let inner = ctx.inner_p1(omega1, inner_rel, max_panels);
            2.0 * omega_s * tau * inner.value
        },
        0.0,
        1.0,
        outer_rel,
        f64::MIN_POSITIVE,
        128,
    );
    // Mirror corner: omega1 = omega - f - omega_s tau^2.
    let i2 = gk::integrate(
        |tau: f64| {
            let omega1 = omega - f - omega_s * tau * tau;
            let inner = ctx.inner_p2(omega1, inner_rel, max_panels);
            2.0 * omega_s * tau * inner.value
        },
        0.0,
        1.0,
        outer_rel,
        f64::MIN_POSITIVE,
        128,
    );
    let k = ctx.horizontal(omega, m);
    let value = 2.0 / k * (i1.value - i2.value);
    let error = 2.0 / k * (i1.error + i2.error);
    let converged = i1.converged && i2.converged;
    let result = IntegralResult {
        value,
        error_estimate: error,
        ir_cut: 0.0,
        uv_cut: f64::INFINITY,
        converged,
        evaluations: i1.evaluations + i2.evaluations,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::ToleranceNotReached(Box::new(result)))
    }
}
