//! The resonant manifold: closed-form vertical-wavenumber roots for the six
//! branches, delta-function Jacobians, scale-separated limit classification,
//! and the kinematic boxes in (k1, k2) and (omega1, m1).

use crate::error::{Error, Result, SpectralEnd};
use crate::spectral::{PhysicalParams, Wavevector};
use crate::vertex::{ResonanceKind, Triad};

/// Which of the two quadratic roots of a resonance type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootIndex {
    First,
    Second,
}

/// One of the six resonant-manifold branches (a1, a2, b1, b2, c1, c2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchId {
    pub kind: ResonanceKind,
    pub root: RootIndex,
}

impl BranchId {
    pub const A1: BranchId = BranchId {
        kind: ResonanceKind::Sum,
        root: RootIndex::First,
    };
    pub const A2: BranchId = BranchId {
        kind: ResonanceKind::Sum,
        root: RootIndex::Second,
    };
    pub const B1: BranchId = BranchId {
        kind: ResonanceKind::Difference1,
        root: RootIndex::First,
    };
    pub const B2: BranchId = BranchId {
        kind: ResonanceKind::Difference1,
        root: RootIndex::Second,
    };
    pub const C1: BranchId = BranchId {
        kind: ResonanceKind::Difference2,
        root: RootIndex::First,
    };
    pub const C2: BranchId = BranchId {
        kind: ResonanceKind::Difference2,
        root: RootIndex::Second,
    };

    pub fn all() -> [BranchId; 6] {
        [
            BranchId::A1,
            BranchId::A2,
            BranchId::B1,
            BranchId::B2,
            BranchId::C1,
            BranchId::C2,
        ]
    }
}

impl std::fmt::Display for BranchId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let idx = match self.root {
            RootIndex::First => "1",
            RootIndex::Second => "2",
        };
        write!(f, "{}{}", self.kind, idx)
    }
}

/// Scale-separated triad mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Mechanism {
    /// Elastic scattering: backscatter off a low-frequency wave of twice the
    /// vertical wavenumber.
    Es,
    /// Induced diffusion: scattering off a small-wavenumber, near-inertial wave.
    Id,
    /// Parametric subharmonic instability: decay into two half-frequency,
    /// high-vertical-wavenumber waves.
    Psi,
}

impl std::fmt::Display for Mechanism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mechanism::Es => write!(f, "ES"),
            Mechanism::Id => write!(f, "ID"),
            Mechanism::Psi => write!(f, "PSI"),
        }
    }
}

/// Position relative to the (k1, k2) kinematic box of Eq.-style triangle
/// inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxPosition {
    Inside,
    Boundary,
    Outside,
}

/// Strict triangle inequalities put (k1, k2) inside the kinematic box of k;
/// any equality is the boundary.
pub fn kinematic_box_contains(k: f64, k1: f64, k2: f64) -> BoxPosition {
    if k < 0.0 || k1 < 0.0 || k2 < 0.0 {
        return BoxPosition::Outside;
    }
    let e0 = k1 + k2 - k;
    let e1 = k + k2 - k1;
    let e2 = k + k1 - k2;
    if e0 > 0.0 && e1 > 0.0 && e2 > 0.0 {
        BoxPosition::Inside
    } else if e0 < 0.0 || e1 < 0.0 || e2 < 0.0 {
        BoxPosition::Outside
    } else {
        BoxPosition::Boundary
    }
}

/// A solved resonant triad on the hydrostatic manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadRoot {
    pub branch: BranchId,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub m: f64,
    pub m1: f64,
    pub m2: f64,
}

impl TriadRoot {
    /// Frequency-resonance residual `g(m1)` of the branch's type, evaluated in
    /// the hydrostatic aspect-ratio form (independent of c0).
    pub fn residual(&self) -> f64 {
        resonance_g(self.branch.kind, self.k, self.k1, self.k2, self.m, self.m1)
    }

    /// The triad with hydrostatic frequencies `c0 k_i / |m_i|`.
    pub fn triad(&self, params: &PhysicalParams) -> Triad {
        let w = |k: f64, m: f64| params.c0 * k / m.abs();
        Triad {
            kind: self.branch.kind,
            p: Wavevector::new(self.k, self.m),
            p1: Wavevector::new(self.k1, self.m1),
            p2: Wavevector::new(self.k2, self.m2),
            omega: w(self.k, self.m),
            omega1: w(self.k1, self.m1),
            omega2: w(self.k2, self.m2),
        }
    }
}

/// `g(m1)` whose zeros are the resonant manifold for the given type, with all
/// frequencies in aspect-ratio form k/|m| (m > 0 assumed by the caller's
/// reflection convention; the expression itself accepts any signs).
fn resonance_g(kind: ResonanceKind, k: f64, k1: f64, k2: f64, m: f64, m1: f64) -> f64 {
    match kind {
        ResonanceKind::Sum => k / m.abs() - k1 / m1.abs() - k2 / (m - m1).abs(),
        ResonanceKind::Difference1 => k1 / m1.abs() - k2 / (m1 - m).abs() - k / m.abs(),
        ResonanceKind::Difference2 => k2 / (m + m1).abs() - k / m.abs() - k1 / m1.abs(),
    }
}

/// d g / d m1 at fixed (k, k1, k2, m).
fn resonance_g_prime(kind: ResonanceKind, k1: f64, k2: f64, m: f64, m1: f64) -> f64 {
    let sgn = |x: f64| if x >= 0.0 { 1.0 } else { -1.0 };
    match kind {
        ResonanceKind::Sum => {
            k1 * sgn(m1) / (m1 * m1) - k2 * sgn(m - m1) / ((m - m1) * (m - m1))
        }
        ResonanceKind::Difference1 => {
            -k1 * sgn(m1) / (m1 * m1) + k2 * sgn(m1 - m) / ((m1 - m) * (m1 - m))
        }
        ResonanceKind::Difference2 => {
            k1 * sgn(m1) / (m1 * m1) - k2 * sgn(m + m1) / ((m + m1) * (m + m1))
        }
    }
}

/// Solve the branch's quadratic for (m1, m2) given in-box (k, k1, k2) and
/// m != 0.
///
/// Internally m is taken positive; for m < 0 the solution is reflected,
/// (m1, m2) -> (-m1, -m2), which preserves both closures and all frequencies.
pub fn solve_branch(branch: BranchId, k: f64, k1: f64, k2: f64, m: f64) -> Result<TriadRoot> {
    if k <= 0.0 || k1 <= 0.0 || k2 <= 0.0 {
        return Err(Error::NonpositiveWavenumber(k.min(k1).min(k2)));
    }
    if m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    if kinematic_box_contains(k, k1, k2) == BoxPosition::Outside {
        return Err(Error::OutsideKinematicBox { k, k1, k2 });
    }
    let ma = m.abs();
    let half = ma / (2.0 * k);
    let (m1, m2) = match (branch.kind, branch.root) {
        (ResonanceKind::Sum, RootIndex::First) => {
            let s = k + k1 + k2;
            let disc = s * s - 4.0 * k * k1;
            debug_assert!(disc >= 0.0, "sum-branch discriminant negative inside the box");
            let m1 = half * (s + disc.sqrt());
            (m1, ma - m1)
        }
        (ResonanceKind::Sum, RootIndex::Second) => {
            let s = k - k1 - k2;
            let m1 = half * (s - (s * s + 4.0 * k * k1).sqrt());
            (m1, ma - m1)
        }
        (ResonanceKind::Difference1, RootIndex::First) => {
            let s = k - k1 - k2;
            let m2 = -half * (s + (s * s + 4.0 * k * k2).sqrt());
            (ma + m2, m2)
        }
        (ResonanceKind::Difference1, RootIndex::Second) => {
            let s = k + k1 - k2;
            let m2 = -half * (s + (s * s + 4.0 * k * k2).sqrt());
            (ma + m2, m2)
        }
        (ResonanceKind::Difference2, RootIndex::First) => {
            let s = k - k1 - k2;
            let m1 = -half * (s + (s * s + 4.0 * k * k1).sqrt());
            (m1, ma + m1)
        }
        (ResonanceKind::Difference2, RootIndex::Second) => {
            let s = k - k1 + k2;
            let m1 = -half * (s + (s * s + 4.0 * k * k1).sqrt());
            (m1, ma + m1)
        }
    };
    let (m_out, m1_out, m2_out) = if m > 0.0 {
        (m, m1, m2)
    } else {
        (m, -m1, -m2)
    };
    Ok(TriadRoot {
        branch,
        k,
        k1,
        k2,
        m: m_out,
        m1: m1_out,
        m2: m2_out,
    })
}

/// `|g'(m1*)|`, the delta-function reduction factor of the branch.
///
/// Strictly positive inside the box; values below 1e-14 are reported as a
/// double root so quadrature can subdivide around them.
pub fn jacobian(root: &TriadRoot) -> Result<f64> {
    let ma = root.m.abs();
    let m1 = if root.m > 0.0 { root.m1 } else { -root.m1 };
    let gp = resonance_g_prime(root.branch.kind, root.k1, root.k2, ma, m1).abs();
    if gp < 1e-14 {
        return Err(Error::DoubleRoot(root.branch.to_string()));
    }
    Ok(gp)
}

/// Dominant scale-separated mechanism of a branch in the IR (k1 -> 0) or UV
/// (k1, k2 -> infinity) limit.
pub fn classify_limit(branch: BranchId, end: SpectralEnd) -> Mechanism {
    use Mechanism::*;
    match end {
        SpectralEnd::Ir => match (branch.kind, branch.root) {
            (ResonanceKind::Sum, RootIndex::First) => Es,
            (ResonanceKind::Sum, RootIndex::Second) => Id,
            (ResonanceKind::Difference1, _) => Psi,
            (ResonanceKind::Difference2, RootIndex::First) => Id,
            (ResonanceKind::Difference2, RootIndex::Second) => Es,
        },
        SpectralEnd::Uv => match (branch.kind, branch.root) {
            (ResonanceKind::Sum, _) => Psi,
            (ResonanceKind::Difference1, RootIndex::First) => Es,
            (ResonanceKind::Difference1, RootIndex::Second) => Id,
            (ResonanceKind::Difference2, RootIndex::First) => Es,
            (ResonanceKind::Difference2, RootIndex::Second) => Id,
        },
    }
}

/// The four boundary curves of the kinematic box in the (omega1, m1) plane,
/// for a reference wave (omega, m) and Coriolis frequency f.
///
/// Each curve maps omega1 to a vertical wavenumber. They are real only where
/// both omega1 and |omega - omega1| sit above f.
#[derive(Debug, Clone, Copy)]
pub struct OmegaBoxCurves {
    pub omega: f64,
    pub m: f64,
    pub f: f64,
}

impl OmegaBoxCurves {
    pub fn new(omega: f64, m: f64, f: f64) -> Result<Self> {
        if !(f >= 0.0) || !(omega > f) {
            return Err(Error::InvalidParameter(format!(
                "require omega > f >= 0, got omega = {omega}, f = {f}"
            )));
        }
        if m == 0.0 {
            return Err(Error::ZeroVerticalWavenumber);
        }
        Ok(OmegaBoxCurves { omega, m, f })
    }

    /// Horizontal-wavenumber factors s_i = sqrt(omega_i^2 - f^2) for the
    /// reference wave, omega1, and |omega - omega1|. None if either root is
    /// evanescent.
    fn s_factors(&self, omega1: f64) -> Option<(f64, f64, f64)> {
        let s = |w: f64| -> Option<f64> {
            let d = w * w - self.f * self.f;
            if d < 0.0 {
                None
            } else {
                Some(d.sqrt())
            }
        };
        let s0 = s(self.omega)?;
        let s1 = s(omega1)?;
        let s2 = s(self.omega - omega1)?;
        Some((s0, s1, s2))
    }

    pub fn e1(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * (-s0 + s2) / (s1 + s2))
    }

    pub fn e2(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * (s0 + s2) / (s1 + s2))
    }

    pub fn e3(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * (-s0 + s2) / (-s1 + s2))
    }

    pub fn e4(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * (s0 + s2) / (-s1 + s2))
    }

    /// E1 - E3 in a product form free of the near-corner cancellation.
    pub fn e1_minus_e3(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * (s2 - s0) * (-2.0 * s1) / ((s1 + s2) * (s2 - s1)))
    }

    /// E2 - E3 in a product form free of the near-corner cancellation.
    pub fn e2_minus_e3(&self, omega1: f64) -> Option<f64> {
        let (s0, s1, s2) = self.s_factors(omega1)?;
        Some(self.m * 2.0 * s2 * (s0 - s1) / ((s1 + s2) * (s2 - s1)))
    }
}

/// Region of the (omega1, m1) kinematic box, numbered as in the
/// frequency-domain region list: 1 and 4 are difference resonances
/// (omega1 > omega), 2 and 3 are sum resonances (omega1 < omega).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaRegion {
    /// m1 < 0, omega1 > omega (difference).
    R1,
    /// m1 < 0, omega1 < omega (sum).
    R2,
    /// m1 > 0, omega1 < omega (sum).
    R3,
    /// m1 > 0, omega1 > omega (difference).
    R4,
}

impl OmegaRegion {
    pub fn id(self) -> u8 {
        match self {
            OmegaRegion::R1 => 1,
            OmegaRegion::R2 => 2,
            OmegaRegion::R3 => 3,
            OmegaRegion::R4 => 4,
        }
    }
}

/// Membership of (omega1, m1) in the kinematic box expressed in the
/// (omega1, m1) plane: the partner wave is built by the sum closure for
/// omega1 < omega and the difference closure for omega1 > omega, horizontal
/// magnitudes come from the rotating dispersion relation, and the triangle
/// inequalities decide membership. Evanescent partners (square root of a
/// negative) are outside. Box edges count as outside.
pub fn omega_box(omega1: f64, m1: f64, omega: f64, m: f64, f: f64) -> Result<Option<OmegaRegion>> {
    if !(f >= 0.0) || !(omega > f) {
        return Err(Error::InvalidParameter(format!(
            "require omega > f >= 0, got omega = {omega}, f = {f}"
        )));
    }
    if m == 0.0 {
        return Err(Error::ZeroVerticalWavenumber);
    }
    // Reflect so the reference wave has m > 0.
    let (m, m1) = if m > 0.0 { (m, m1) } else { (-m, -m1) };
    if m1 == 0.0 || omega1 == omega {
        return Ok(None);
    }
    let (omega2, m2) = if omega1 < omega {
        (omega - omega1, m - m1)
    } else {
        (omega1 - omega, m1 - m)
    };
    if omega1 < f || omega2 < f || m2 == 0.0 {
        return Ok(None);
    }
    let kh = |w: f64, mv: f64| mv.abs() * (w * w - f * f).sqrt();
    let k = kh(omega, m);
    let k1 = kh(omega1, m1);
    let k2 = kh(omega2, m2);
    if kinematic_box_contains(k, k1, k2) != BoxPosition::Inside {
        return Ok(None);
    }
    Ok(Some(match (m1 < 0.0, omega1 > omega) {
        (true, true) => OmegaRegion::R1,
        (true, false) => OmegaRegion::R2,
        (false, false) => OmegaRegion::R3,
        (false, true) => OmegaRegion::R4,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const RESIDUAL_TOL: f64 = 1e-12;

    #[test]
    fn branch_a1_golden() {
        let r = solve_branch(BranchId::A1, 1.0, 0.5, 0.5, 1.0).unwrap();
        assert!((r.m1 - (1.0 + std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-12);
        assert!((r.m2 - (-std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-12);
        // 0.5/1.70711 + 0.5/0.70711 = 1
        assert!((0.5 / r.m1.abs() + 0.5 / r.m2.abs() - 1.0).abs() < RESIDUAL_TOL);
        assert!(r.residual().abs() < RESIDUAL_TOL);
    }

    #[test]
    fn branch_a2_is_index_swap_of_a1() {
        let r = solve_branch(BranchId::A2, 1.0, 0.5, 0.5, 1.0).unwrap();
        assert!((r.m1 - (-std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-12);
        assert!((r.m2 - (1.0 + std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn branch_pairs_swap_under_exchange() {
        // a1 <-> a2 with k1 <-> k2, b <-> c likewise.
        let (k, k1, k2, m) = (1.0, 0.45, 0.8, 1.0);
        let a1 = solve_branch(BranchId::A1, k, k1, k2, m).unwrap();
        let a2 = solve_branch(BranchId::A2, k, k2, k1, m).unwrap();
        assert!((a1.m1 - a2.m2).abs() < 1e-12);
        assert!((a1.m2 - a2.m1).abs() < 1e-12);
        let b1 = solve_branch(BranchId::B1, k, k1, k2, m).unwrap();
        let c1 = solve_branch(BranchId::C1, k, k2, k1, m).unwrap();
        assert!((b1.m1 - c1.m2).abs() < 1e-12);
        assert!((b1.m2 - c1.m1).abs() < 1e-12);
        let b2 = solve_branch(BranchId::B2, k, k1, k2, m).unwrap();
        let c2 = solve_branch(BranchId::C2, k, k2, k1, m).unwrap();
        assert!((b2.m1 - c2.m2).abs() < 1e-12);
        assert!((b2.m2 - c2.m1).abs() < 1e-12);
    }

    #[test]
    fn all_branches_satisfy_their_closure_and_resonance() {
        for &(k, k1, k2, m) in &[
            (1.0, 0.5, 0.6, 1.0),
            (1.0, 0.9, 1.7, 2.5),
            (3.0, 2.0, 1.5, -0.7),
            (0.2, 0.15, 0.1, 0.01),
        ] {
            for branch in BranchId::all() {
                let r = solve_branch(branch, k, k1, k2, m).unwrap();
                let closure = match branch.kind {
                    ResonanceKind::Sum => r.m - r.m1 - r.m2,
                    ResonanceKind::Difference1 => r.m1 - r.m2 - r.m,
                    ResonanceKind::Difference2 => r.m2 - r.m - r.m1,
                };
                assert!(
                    closure.abs() < 1e-12 * m.abs().max(r.m1.abs()),
                    "closure violated for {branch} at ({k},{k1},{k2},{m})"
                );
                assert!(
                    r.residual().abs() < 1e-10,
                    "residual {} for {branch} at ({k},{k1},{k2},{m})",
                    r.residual()
                );
            }
        }
    }

    #[test]
    fn ir_limit_of_a1_is_elastic_scattering() {
        // k1 -> 0 forces k2 -> k; branch a1 approaches (m1, m2) = (2m, -m).
        let m = 1.0;
        let r = solve_branch(BranchId::A1, 1.0, 1e-8, 1.0 - 0.5e-8, m).unwrap();
        assert!((r.m1 - 2.0 * m).abs() < 1e-3);
        assert!((r.m2 + m).abs() < 1e-3);
    }

    #[test]
    fn ir_limit_of_a2_is_induced_diffusion() {
        let m = 1.0;
        let r = solve_branch(BranchId::A2, 1.0, 1e-6, 1.0, m).unwrap();
        assert!(r.m1 < 0.0 && r.m1.abs() < 1e-2 * m);
        assert!((r.m2 - m).abs() < 1e-2);
    }

    #[test]
    fn jacobian_golden_and_finite_difference() {
        let r = solve_branch(BranchId::A1, 1.0, 0.5, 0.5, 1.0).unwrap();
        let gp = jacobian(&r).unwrap();
        let expect = 0.5 / (r.m1 * r.m1) + 0.5 / (r.m2 * r.m2);
        assert!((gp - expect).abs() < 1e-12);
        assert!((gp - 1.1715728752538097).abs() < 1e-10);

        // Central finite difference of g.
        for branch in BranchId::all() {
            let r = solve_branch(branch, 1.0, 0.7, 0.9, 1.0).unwrap();
            let gp = jacobian(&r).unwrap();
            let h = 1e-6;
            let g = |m1: f64| resonance_g(branch.kind, r.k, r.k1, r.k2, r.m, m1);
            let fd = (g(r.m1 + h) - g(r.m1 - h)) / (2.0 * h);
            assert!(
                (gp - fd.abs()).abs() < 1e-6 * gp,
                "jacobian mismatch on {branch}: {gp} vs {fd}"
            );
        }
    }

    #[test]
    fn jacobian_index_swap_symmetry() {
        let a1 = solve_branch(BranchId::A1, 1.0, 0.5, 0.5, 1.0).unwrap();
        let a2 = solve_branch(BranchId::A2, 1.0, 0.5, 0.5, 1.0).unwrap();
        assert!((jacobian(&a1).unwrap() - jacobian(&a2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn solve_branch_scaling_power_law() {
        // (k, k1, k2) -> alpha * and m -> beta * scales m1, m2 by beta and
        // |g'| by alpha / beta^2.
        let (k, k1, k2, m) = (1.0, 0.5, 0.6, 1.0);
        let base = solve_branch(BranchId::A1, k, k1, k2, m).unwrap();
        let gp_base = jacobian(&base).unwrap();
        for &(alpha, beta) in &[(2.0, 1.0), (1.0, 4.0), (8.0, 2.0)] {
            let r = solve_branch(BranchId::A1, alpha * k, alpha * k1, alpha * k2, beta * m)
                .unwrap();
            assert!((r.m1 - beta * base.m1).abs() < 1e-12 * beta * base.m1.abs());
            let gp = jacobian(&r).unwrap();
            let expect = gp_base * alpha / (beta * beta);
            assert!((gp - expect).abs() < 1e-12 * expect.abs());
        }
    }

    #[test]
    fn negative_m_reflection() {
        let pos = solve_branch(BranchId::B2, 1.0, 0.6, 0.7, 1.5).unwrap();
        let neg = solve_branch(BranchId::B2, 1.0, 0.6, 0.7, -1.5).unwrap();
        assert_eq!(neg.m1, -pos.m1);
        assert_eq!(neg.m2, -pos.m2);
        assert!(neg.residual().abs() < 1e-12);
    }

    #[test]
    fn out_of_box_is_rejected() {
        assert!(matches!(
            solve_branch(BranchId::A1, 1.0, 0.2, 0.5, 1.0),
            Err(Error::OutsideKinematicBox { .. })
        ));
    }

    #[test]
    fn classification_table() {
        use Mechanism::*;
        use SpectralEnd::*;
        assert_eq!(classify_limit(BranchId::A1, Ir), Es);
        assert_eq!(classify_limit(BranchId::A2, Ir), Id);
        assert_eq!(classify_limit(BranchId::B1, Ir), Psi);
        assert_eq!(classify_limit(BranchId::B2, Ir), Psi);
        assert_eq!(classify_limit(BranchId::C1, Ir), Id);
        assert_eq!(classify_limit(BranchId::C2, Ir), Es);
        assert_eq!(classify_limit(BranchId::A1, Uv), Psi);
        assert_eq!(classify_limit(BranchId::A2, Uv), Psi);
        assert_eq!(classify_limit(BranchId::B1, Uv), Es);
        assert_eq!(classify_limit(BranchId::B2, Uv), Id);
        assert_eq!(classify_limit(BranchId::C1, Uv), Es);
        assert_eq!(classify_limit(BranchId::C2, Uv), Id);
    }

    #[test]
    fn box_positions() {
        assert_eq!(kinematic_box_contains(1.0, 0.5, 0.6), BoxPosition::Inside);
        assert_eq!(kinematic_box_contains(1.0, 0.5, 0.5), BoxPosition::Boundary);
        assert_eq!(kinematic_box_contains(1.0, 0.2, 0.5), BoxPosition::Outside);
    }

    #[test]
    fn omega_curves_at_f0() {
        let c = OmegaBoxCurves::new(1.0, 1.0, 0.0).unwrap();
        assert!((c.e1(0.25).unwrap() + 0.25).abs() < 1e-14);
        assert!((c.e2(0.25).unwrap() - 1.75).abs() < 1e-14);
        assert!((c.e3(0.25).unwrap() + 0.5).abs() < 1e-14);
        assert!((c.e4(0.25).unwrap() - 3.5).abs() < 1e-14);
    }

    #[test]
    fn omega_curve_mirror_symmetries() {
        let c = OmegaBoxCurves::new(1.0, 1.3, 0.07).unwrap();
        for &w1 in &[0.1, 0.22, 0.35, 0.48, 0.61, 0.86] {
            let lhs1 = c.e1(c.omega - w1).unwrap();
            let rhs1 = c.m - c.e2(w1).unwrap();
            assert!((lhs1 - rhs1).abs() < 1e-12, "E1 mirror at {w1}");
            let lhs3 = c.e3(c.omega - w1).unwrap();
            let rhs3 = c.m - c.e3(w1).unwrap();
            assert!((lhs3 - rhs3).abs() < 1e-12, "E3 mirror at {w1}");
            let lhs4 = c.e4(c.omega - w1).unwrap();
            let rhs4 = c.m - c.e4(w1).unwrap();
            assert!((lhs4 - rhs4).abs() < 1e-10, "E4 mirror at {w1}");
        }
    }

    #[test]
    fn omega_curve_differences_match_direct() {
        // omega1 = omega/2 is excluded: E3 and E4 have a genuine pole there.
        let c = OmegaBoxCurves::new(1.0, 1.0, 0.05).unwrap();
        for &w1 in &[0.07, 0.1, 0.35, 0.93] {
            let d13 = c.e1_minus_e3(w1).unwrap();
            let direct = c.e1(w1).unwrap() - c.e3(w1).unwrap();
            assert!((d13 - direct).abs() < 1e-10 * d13.abs().max(1e-12));
            let d23 = c.e2_minus_e3(w1).unwrap();
            let direct = c.e2(w1).unwrap() - c.e3(w1).unwrap();
            assert!((d23 - direct).abs() < 1e-10 * d23.abs().max(1e-12));
        }
    }

    #[test]
    fn omega_box_regions_and_bounds() {
        // Sum-side interior point found earlier by direct construction.
        let r = omega_box(0.15, -0.182, 1.0, 1.0, 0.1).unwrap();
        assert_eq!(r, Some(OmegaRegion::R2));
        // Its mirror on the other sum lobe.
        let r = omega_box(0.85, 1.182, 1.0, 1.0, 0.1).unwrap();
        assert_eq!(r, Some(OmegaRegion::R3));
        // Outside: below the inertial frequency.
        assert_eq!(omega_box(0.05, -0.2, 1.0, 1.0, 0.1).unwrap(), None);
        // Outside: beyond the allowed band at that omega1.
        assert_eq!(omega_box(0.15, -0.25, 1.0, 1.0, 0.1).unwrap(), None);
        assert_eq!(omega_box(0.15, -0.10, 1.0, 1.0, 0.1).unwrap(), None);
    }

    #[test]
    fn omega_box_interior_matches_e_curve_band_on_sum_side() {
        // For omega1 < omega the in-box band at fixed omega1 is exactly
        // (E3, E1) on the m1 < 0 side.
        let (omega, m, f) = (1.0, 1.0, 0.1);
        let c = OmegaBoxCurves::new(omega, m, f).unwrap();
        for &w1 in &[0.12, 0.2, 0.3, 0.4] {
            let e1 = c.e1(w1).unwrap();
            let e3 = c.e3(w1).unwrap();
            assert!(e3 < e1 && e1 < 0.0);
            let inside = 0.5 * (e1 + e3);
            assert_eq!(
                omega_box(w1, inside, omega, m, f).unwrap(),
                Some(OmegaRegion::R2),
                "midpoint of (E3, E1) at omega1 = {w1} must lie in region 2"
            );
            let eps = 1e-6;
            assert_eq!(omega_box(w1, e1 + eps, omega, m, f).unwrap(), None);
            assert_eq!(omega_box(w1, e3 - eps, omega, m, f).unwrap(), None);
        }
    }

    #[test]
    fn omega_box_two_disconnected_sum_lobes() {
        // At f = 0.1 omega the omega1 < omega part of the box splits into two
        // lobes: one at small omega1 (m1 < 0), one near omega (m1 > m).
        let (omega, m, f) = (1.0, 1.0, 0.1);
        let mut lobes = [false, false];
        let mut gap_hit = false;
        for i in 0..200 {
            let w1 = f + (omega - 2.0 * f) * (i as f64 + 0.5) / 200.0;
            for j in 0..400 {
                let m1 = -2.0 + 4.0 * (j as f64 + 0.5) / 400.0;
                if let Some(region) = omega_box(w1, m1, omega, m, f).unwrap() {
                    match region {
                        OmegaRegion::R2 => lobes[0] = true,
                        OmegaRegion::R3 => lobes[1] = true,
                        _ => {}
                    }
                }
                // Point between the lobes, around m1 ~ 0.5 at mid frequencies.
                if (w1 - 0.5).abs() < 0.1 && (m1 - 0.5).abs() < 0.05 {
                    gap_hit |= omega_box(w1, m1, omega, m, f).unwrap().is_some();
                }
            }
        }
        assert!(lobes[0] && lobes[1], "both sum lobes must be populated");
        assert!(!gap_hit, "the band between the lobes must stay empty");
    }
}
