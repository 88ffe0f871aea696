//! Brute-force oracle for the collision integrand, deliberately independent
//! of the library's closed-form manifold solutions and law-of-cosines vertex
//! path: resonance roots come from bisection on the residual, all dot and
//! cross products from explicit 2-D horizontal vectors.

#![allow(dead_code)]

use iwkin::resonance::{BranchId, RootIndex};
use iwkin::spectral::{Exponents, PhysicalParams};
use iwkin::vertex::ResonanceKind;

pub type Vec2 = [f64; 2];

pub fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross_z(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn perp(a: Vec2) -> Vec2 {
    [-a[1], a[0]]
}

/// Explicit horizontal vectors (v0, v1, v2) with magnitudes (k, k1, k2)
/// satisfying the closure of `kind`: parent = sum of the other two.
pub fn closure_vectors(kind: ResonanceKind, k: f64, k1: f64, k2: f64) -> [Vec2; 3] {
    // Parent along x; first summand at the triangle angle; second by closure.
    let (pk, sa, _sb) = match kind {
        ResonanceKind::Sum => (k, k1, k2),
        ResonanceKind::Difference1 => (k1, k2, k),
        ResonanceKind::Difference2 => (k2, k, k1),
    };
    let (_, _, sb) = match kind {
        ResonanceKind::Sum => (k, k1, k2),
        ResonanceKind::Difference1 => (k1, k2, k),
        ResonanceKind::Difference2 => (k2, k, k1),
    };
    let cos_a = ((pk * pk + sa * sa - sb * sb) / (2.0 * pk * sa)).clamp(-1.0, 1.0);
    let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
    let vp: Vec2 = [pk, 0.0];
    let va: Vec2 = [sa * cos_a, sa * sin_a];
    let vb: Vec2 = [vp[0] - va[0], vp[1] - va[1]];
    match kind {
        ResonanceKind::Sum => [vp, va, vb],
        ResonanceKind::Difference1 => [vb, vp, va],
        ResonanceKind::Difference2 => [va, vb, vp],
    }
}

/// Residual of the frequency resonance for the kind, hydrostatic form.
pub fn residual(kind: ResonanceKind, k: f64, k1: f64, k2: f64, m: f64, m1: f64) -> f64 {
    match kind {
        ResonanceKind::Sum => k / m.abs() - k1 / m1.abs() - k2 / (m - m1).abs(),
        ResonanceKind::Difference1 => k1 / m1.abs() - k2 / (m1 - m).abs() - k / m.abs(),
        ResonanceKind::Difference2 => k2 / (m + m1).abs() - k / m.abs() - k1 / m1.abs(),
    }
}

/// Solve the branch root by bisection on the residual, independently of the
/// closed forms. Assumes m > 0.
pub fn bisect_root(branch: BranchId, k: f64, k1: f64, k2: f64, m: f64) -> (f64, f64) {
    assert!(m > 0.0);
    let big = 2.0 * m / k * (k + k1 + k2) + 2.0 * m;
    let tiny = 1e-14 * m;
    let (mut lo, mut hi) = match (branch.kind, branch.root) {
        (ResonanceKind::Sum, RootIndex::First) => (m + tiny, big),
        (ResonanceKind::Sum, RootIndex::Second) => (-big, -tiny),
        (ResonanceKind::Difference1, RootIndex::First) => (tiny, m - tiny),
        (ResonanceKind::Difference1, RootIndex::Second) => (-big, -tiny),
        (ResonanceKind::Difference2, RootIndex::First) => (-m + tiny, -tiny),
        (ResonanceKind::Difference2, RootIndex::Second) => (-big, -m - tiny),
    };
    let g = |m1: f64| residual(branch.kind, k, k1, k2, m, m1);
    let (glo, ghi) = (g(lo), g(hi));
    assert!(
        glo.signum() != ghi.signum(),
        "no sign change for {branch} on [{lo}, {hi}]: {glo}, {ghi}"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m1 = 0.5 * (lo + hi);
    let m2 = match branch.kind {
        ResonanceKind::Sum => m - m1,
        ResonanceKind::Difference1 => m1 - m,
        ResonanceKind::Difference2 => m + m1,
    };
    (m1, m2)
}

pub struct OracleVertex {
    pub i: f64,
    pub j: f64,
    pub k_mag: f64,
    pub v_sq: f64,
    pub u_sq: f64,
}

/// Interaction coefficients from explicit vectors. Frequencies are the
/// hydrostatic c0 k/|m| of the triad (m-values signed).
pub fn vertex_from_vectors(
    kind: ResonanceKind,
    k: f64,
    k1: f64,
    k2: f64,
    m: [f64; 3],
    params: &PhysicalParams,
) -> OracleVertex {
    let v = closure_vectors(kind, k, k1, k2);
    let kk = [k, k1, k2];
    let w: Vec<f64> = (0..3).map(|i| params.c0 * kk[i] / m[i].abs()).collect();
    let mut i_sum = 0.0;
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        i_sum += -(w[j] * w[l] / w[i]).sqrt() * kk[i] * kk[i] * dot(v[j], v[l]);
    }
    let parent = kind.parent();
    let (pj, pl) = ((parent + 1) % 3, (parent + 2) % 3);
    let j_term = if params.f == 0.0 {
        0.0
    } else {
        params.f * params.f / (w[0] * w[1] * w[2]).sqrt()
            * (kk[parent] * kk[parent] * dot(v[pj], v[pl])
                - kk[pj] * kk[pj] * dot(v[pl], v[parent])
                - kk[pl] * kk[pl] * dot(v[parent], v[pj]))
    };
    let j_term_neg = if params.f == 0.0 {
        0.0
    } else {
        params.f * params.f / (w[0] * w[1] * w[2]).sqrt()
            * (kk[parent] * kk[parent] * dot(v[pj], v[pl])
                + kk[pj] * kk[pj] * dot(v[pl], v[parent])
                + kk[pl] * kk[pl] * dot(v[parent], v[pj]))
    };
    let k_term = if params.f == 0.0 {
        0.0
    } else {
        let mut acc = 0.0;
        for i in 0..3 {
            let (j, l) = ((i + 1) % 3, (i + 2) % 3);
            acc += (w[i] / (w[j] * w[l])).sqrt()
                * (kk[j] * kk[j] - kk[l] * kk[l])
                * dot(v[j], perp(v[l]));
        }
        params.f * acc
    };
    let denom = k * k1 * k2;
    let pref = params.vertex_prefactor / denom;
    let v_sq = pref * pref * ((i_sum + j_term) * (i_sum + j_term) + k_term * k_term);
    let pref_u = params.vertex_prefactor / (3.0 * denom);
    let u_sq = pref_u * pref_u * ((i_sum + j_term_neg) * (i_sum + j_term_neg) + k_term * k_term);
    OracleVertex {
        i: i_sum,
        j: j_term,
        k_mag: k_term.abs(),
        v_sq,
        u_sq,
    }
}

fn action(k: f64, m: f64, e: Exponents) -> f64 {
    k.powf(-e.a) * m.abs().powf(-e.b)
}

/// One branch term T = k k1 k2 |V|^2 f / (|g'| S) with the finite-difference
/// Jacobian and the vector triangle area.
pub fn branch_term(
    branch: BranchId,
    k: f64,
    k1: f64,
    k2: f64,
    m: f64,
    e: Exponents,
    params: &PhysicalParams,
) -> f64 {
    let (m1, m2) = bisect_root(branch, k, k1, k2, m);
    let vert = vertex_from_vectors(branch.kind, k, k1, k2, [m, m1, m2], params);
    let n0 = action(k, m, e);
    let n1 = action(k1, m1, e);
    let n2 = action(k2, m2, e);
    let ns = [n0, n1, n2];
    let p = branch.kind.parent();
    let (pj, pl) = ((p + 1) % 3, (p + 2) % 3);
    let ff = ns[pj] * ns[pl] - ns[p] * (ns[pj] + ns[pl]);
    // Central finite difference of the residual.
    let h = 1e-7 * m1.abs().max(1e-3 * m);
    let gp = (residual(branch.kind, k, k1, k2, m, m1 + h)
        - residual(branch.kind, k, k1, k2, m, m1 - h))
        / (2.0 * h);
    let v = closure_vectors(branch.kind, k, k1, k2);
    let area = 0.5 * cross_z(v[1], v[2]).abs();
    k * k1 * k2 * vert.v_sq * ff / (gp.abs() * area)
}

/// The full signed integrand (without the integral-level 1/k), brute force.
pub fn oracle_integrand(
    k1: f64,
    k2: f64,
    k: f64,
    m: f64,
    e: Exponents,
    params: &PhysicalParams,
) -> f64 {
    let mut total = 0.0;
    for branch in BranchId::all() {
        let sign = match branch.kind {
            ResonanceKind::Sum => 1.0,
            _ => -1.0,
        };
        total += sign * branch_term(branch, k, k1, k2, m, e, params);
    }
    total
}
