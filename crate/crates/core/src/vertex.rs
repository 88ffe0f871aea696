//! Interaction matrix elements and triad kinematics entering the collision
//! integrand.
//!
//! The azimuthal average of the kinetic equation fixes only horizontal
//! magnitudes, so dot products between the triad members are recovered by the
//! law of cosines under the tagged vector closure. Explicit 2-D vectors exist
//! only in test oracles.

use crate::error::{Error, Result};
use crate::spectral::{PhysicalParams, Wavevector};

/// Which member of the triad is the vector sum of the other two.
///
/// `Sum`: p = p1 + p2 (omega = omega1 + omega2),
/// `Difference1`: p1 = p2 + p (omega1 = omega2 + omega),
/// `Difference2`: p2 = p + p1 (omega2 = omega + omega1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResonanceKind {
    Sum,
    Difference1,
    Difference2,
}

impl ResonanceKind {
    /// Index (0, 1, 2) of the wave standing on the "sum" side of the closure.
    pub fn parent(self) -> usize {
        match self {
            ResonanceKind::Sum => 0,
            ResonanceKind::Difference1 => 1,
            ResonanceKind::Difference2 => 2,
        }
    }

    pub const ALL: [ResonanceKind; 3] = [
        ResonanceKind::Sum,
        ResonanceKind::Difference1,
        ResonanceKind::Difference2,
    ];
}

impl std::fmt::Display for ResonanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResonanceKind::Sum => write!(f, "a"),
            ResonanceKind::Difference1 => write!(f, "b"),
            ResonanceKind::Difference2 => write!(f, "c"),
        }
    }
}

/// A resolved resonant triad: wavevectors, closure tag, and frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    pub kind: ResonanceKind,
    pub p: Wavevector,
    pub p1: Wavevector,
    pub p2: Wavevector,
    pub omega: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl Triad {
    pub fn new(
        kind: ResonanceKind,
        p: Wavevector,
        p1: Wavevector,
        p2: Wavevector,
        omega: f64,
        omega1: f64,
        omega2: f64,
    ) -> Result<Self> {
        if omega <= 0.0 || omega1 <= 0.0 || omega2 <= 0.0 {
            return Err(Error::ZeroFrequency);
        }
        Ok(Triad {
            kind,
            p,
            p1,
            p2,
            omega,
            omega1,
            omega2,
        })
    }

    pub fn wavenumbers(&self) -> [f64; 3] {
        [self.p.k, self.p1.k, self.p2.k]
    }

    pub fn frequencies(&self) -> [f64; 3] {
        [self.omega, self.omega1, self.omega2]
    }
}

/// Heron's formula for the triangle with sides (k, k1, k2), in the numerically
/// stable product form. Returns 0 exactly on the collinear boundary and an
/// error when the triangle inequality fails.
pub fn triangle_area(k: f64, k1: f64, k2: f64) -> Result<f64> {
    if k < 0.0 || k1 < 0.0 || k2 < 0.0 {
        return Err(Error::NonpositiveWavenumber(k.min(k1).min(k2)));
    }
    let p0 = -k + k1 + k2;
    let p1 = k - k1 + k2;
    let p2 = k + k1 - k2;
    if p0 < 0.0 || p1 < 0.0 || p2 < 0.0 {
        return Err(Error::DegenerateTriangle(k, k1, k2));
    }
    let s = k + k1 + k2;
    Ok(0.25 * (s * p0 * p1 * p2).sqrt())
}

/// Pairwise dot products of the triad wavevectors under the tagged closure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotProducts {
    /// k1 . k2
    pub d12: f64,
    /// k . k1
    pub d01: f64,
    /// k . k2
    pub d02: f64,
}

/// Law-of-cosines dot products for magnitudes (k, k1, k2) closing as `kind`.
///
/// For the sum closure k = k1 + k2 (as vectors):
/// k1.k2 = (k^2 - k1^2 - k2^2)/2, k.k1 = (k^2 + k1^2 - k2^2)/2,
/// k.k2 = (k^2 + k2^2 - k1^2)/2; the difference closures follow by moving the
/// parent to the other side of the identity.
pub fn closure_dot_products(k: f64, k1: f64, k2: f64, kind: ResonanceKind) -> Result<DotProducts> {
    let p0 = -k + k1 + k2;
    let p1 = k - k1 + k2;
    let p2 = k + k1 - k2;
    if p0 < 0.0 || p1 < 0.0 || p2 < 0.0 {
        return Err(Error::DegenerateTriangle(k, k1, k2));
    }
    let (q0, q1, q2) = (k * k, k1 * k1, k2 * k2);
    Ok(match kind {
        // k = k1 + k2
        ResonanceKind::Sum => DotProducts {
            d12: 0.5 * (q0 - q1 - q2),
            d01: 0.5 * (q0 + q1 - q2),
            d02: 0.5 * (q0 + q2 - q1),
        },
        // k1 = k2 + k
        ResonanceKind::Difference1 => DotProducts {
            d12: 0.5 * (q1 + q2 - q0),
            d01: 0.5 * (q1 + q0 - q2),
            d02: 0.5 * (q1 - q2 - q0),
        },
        // k2 = k + k1
        ResonanceKind::Difference2 => DotProducts {
            d12: 0.5 * (q2 + q1 - q0),
            d01: 0.5 * (q2 - q0 - q1),
            d02: 0.5 * (q2 + q0 - q1),
        },
    })
}

/// The rotation-free interaction term: the cyclic sum
/// `-sqrt(w_j w_k / w_i) k_i^2 (k_j . k_k)` over i = 0, 1, 2.
///
/// Fully symmetric under any permutation of the triad slots.
pub fn i_term(t: &Triad) -> Result<f64> {
    let [k, k1, k2] = t.wavenumbers();
    let [w0, w1, w2] = t.frequencies();
    if w0 <= 0.0 || w1 <= 0.0 || w2 <= 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let d = closure_dot_products(k, k1, k2, t.kind)?;
    Ok(-(w1 * w2 / w0).sqrt() * k * k * d.d12
        - (w2 * w0 / w1).sqrt() * k1 * k1 * d.d02
        - (w0 * w1 / w2).sqrt() * k2 * k2 * d.d01)
}

/// Rotation correction J for a given parent slot:
/// `f^2 / sqrt(w0 w1 w2) * (k_i^2 (k_j.k_k) - k_j^2 (k_k.k_i) - k_k^2 (k_i.k_j))`
/// with (i, j, k) cyclic from the parent index.
fn j_term_for_parent(t: &Triad, params: &PhysicalParams, parent: usize, negate_parent: bool) -> f64 {
    if params.f == 0.0 {
        return 0.0;
    }
    let [k0, k1, k2] = t.wavenumbers();
    let [w0, w1, w2] = t.frequencies();
    let q = [k0 * k0, k1 * k1, k2 * k2];
    let d = closure_dot_products(k0, k1, k2, t.kind).expect("triad closure already validated");
    // dot(i, j) lookup, symmetric in its arguments
    let dot = |i: usize, j: usize| -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => d.d01,
            (0, 2) => d.d02,
            (1, 2) => d.d12,
            _ => unreachable!(),
        }
    };
    let (i, j, k) = (parent, (parent + 1) % 3, (parent + 2) % 3);
    // Negating the parent wavevector flips the two dot products involving it.
    let s = if negate_parent { -1.0 } else { 1.0 };
    params.f * params.f / (w0 * w1 * w2).sqrt()
        * (q[i] * dot(j, k) - s * q[j] * dot(k, i) - s * q[k] * dot(i, j))
}

/// Magnitude of the purely imaginary rotation term K.
///
/// Each cyclic term carries a perpendicular dot product `k_j . k_k^perp`; on a
/// closed triangle these all equal +/- twice the triangle area, with the term
/// pairing the two non-parent members taking the opposite orientation from the
/// other two.
fn k_term_magnitude(t: &Triad, params: &PhysicalParams) -> Result<f64> {
    if params.f == 0.0 {
        return Ok(0.0);
    }
    let [k0, k1, k2] = t.wavenumbers();
    let [w0, w1, w2] = t.frequencies();
    let area = triangle_area(k0, k1, k2)?;
    let q = [k0 * k0, k1 * k1, k2 * k2];
    let w = [w0, w1, w2];
    let mut acc = 0.0;
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // Orientation: the cyclic term whose perpendicular dot pairs the two
        // summand (non-parent) members is odd against the other two.
        let sigma = if i == t.kind.parent() { -1.0 } else { 1.0 };
        acc += sigma * (w[i] / (w[j] * w[k])).sqrt() * (q[j] - q[k]);
    }
    Ok(params.f * 2.0 * area * acc.abs())
}

/// Rotation corrections (J, |K|) for the triad's own closure. Both vanish
/// identically at f = 0.
pub fn jk_terms(t: &Triad, params: &PhysicalParams) -> Result<(f64, f64)> {
    let [w0, w1, w2] = t.frequencies();
    if w0 <= 0.0 || w1 <= 0.0 || w2 <= 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let j = j_term_for_parent(t, params, t.kind.parent(), false);
    let k_mag = k_term_magnitude(t, params)?;
    Ok((j, k_mag))
}

/// Assembled squared matrix element together with its pieces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexValue {
    pub i: f64,
    pub j: f64,
    pub k_mag: f64,
    /// `vertex_prefactor^2 ((I+J)^2 + |K|^2) / (k k1 k2)^2`
    pub v_sq: f64,
}

/// `|V|^2` for the triad: I and J are real, K purely imaginary, so the squared
/// magnitude is `((I+J)^2 + |K|^2)` times the prefactors. At f = 0 this reduces
/// to `vertex_prefactor^2 I^2 / (k k1 k2)^2`.
pub fn v_squared(t: &Triad, params: &PhysicalParams) -> Result<VertexValue> {
    let [k0, k1, k2] = t.wavenumbers();
    if k0 <= 0.0 || k1 <= 0.0 || k2 <= 0.0 {
        return Err(Error::NonpositiveWavenumber(k0.min(k1).min(k2)));
    }
    let i = i_term(t)?;
    let (j, k_mag) = jk_terms(t, params)?;
    let denom = k0 * k1 * k2;
    let pref = params.vertex_prefactor / denom;
    let v_sq = pref * pref * ((i + j) * (i + j) + k_mag * k_mag);
    Ok(VertexValue { i, j, k_mag, v_sq })
}

/// `|U|^2` for the triple-sum vertex: same assembly as `|V|^2` but with J
/// evaluated at the negated parent and an overall 1/3. Unused by the kinetic
/// equation; exposed for completeness.
pub fn u_squared(t: &Triad, params: &PhysicalParams) -> Result<f64> {
    let [k0, k1, k2] = t.wavenumbers();
    if k0 <= 0.0 || k1 <= 0.0 || k2 <= 0.0 {
        return Err(Error::NonpositiveWavenumber(k0.min(k1).min(k2)));
    }
    let i = i_term(t)?;
    let j = j_term_for_parent(t, params, t.kind.parent(), true);
    let k_mag = k_term_magnitude(t, params)?;
    let pref = params.vertex_prefactor / (3.0 * k0 * k1 * k2);
    Ok(pref * pref * ((i + j) * (i + j) + k_mag * k_mag))
}

/// Quadratic action combination of the kinetic equation,
/// `n_j n_k - n_i (n_j + n_k)` with (i, j, k) cyclic from `which`.
pub fn f_factor(n: f64, n1: f64, n2: f64, which: usize) -> f64 {
    let ns = [n, n1, n2];
    let (i, j, k) = (which % 3, (which + 1) % 3, (which + 2) % 3);
    ns[j] * ns[k] - ns[i] * (ns[j] + ns[k])
}
