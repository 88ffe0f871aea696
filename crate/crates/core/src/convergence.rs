//! Closed-form classification of the (a, b) exponent plane: IR/UV convergence,
//! divergence signs, dominant mechanisms, and the leading-order table of the
//! branch integrands.
//!
//! Conventions. The "order" is the power s in the cutoff dependence of the
//! collision integral: the cutoff-dependent part behaves like eps^s for a small
//! parameter eps (the IR cutoff itself, or 1/Lambda at the UV end). Divergent
//! means s < 0, marginal s = 0 (at most logarithmic), convergent s > 0.
//!
//! Signs follow the displayed asymptotic prefactors: IR proportional to
//! -b(1-b), UV to b (induced diffusion) or -b (elastic scattering, b > 2).
//! Only that sign choice renders the published opposite-sign balance region
//! opposite-signed, which is also how this module reproduces it. Where the
//! asymptotics display no prefactor (the parametric-subharmonic ranges and the
//! special lines b = 0, 1) the sign is reported as 0, i.e. indeterminate at
//! leading order.

use serde::Serialize;

use crate::error::SpectralEnd;
use crate::resonance::{BranchId, Mechanism, RootIndex};
use crate::spectral::Exponents;
use crate::vertex::ResonanceKind;

/// Convergence status of one end of the collision integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Convergent,
    Divergent,
    Marginal,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Convergent => write!(f, "convergent"),
            Status::Divergent => write!(f, "divergent"),
            Status::Marginal => write!(f, "marginal"),
        }
    }
}

/// Verdict for one end: status, dominant mechanism, cutoff-power order, and
/// the sign of the divergent contribution (0 when convergent or indeterminate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceVerdict {
    pub status: Status,
    pub mechanism: Mechanism,
    pub order: f64,
    pub sign: i8,
}

fn status_from_order(order: f64) -> Status {
    if order < 0.0 {
        Status::Divergent
    } else if order == 0.0 {
        Status::Marginal
    } else {
        Status::Convergent
    }
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign of the displayed IR asymptotic prefactor, -b(1-b).
fn ir_prefactor_sign(b: f64) -> i8 {
    sign_of(-b * (1.0 - b))
}

/// Convergence at the IR end (k1 or k2 -> 0).
///
/// Piecewise by b: the induced-diffusion order 7/2 - a - b/2 governs |b| < 3,
/// with the special lines b = 0 (order 4 - a) and b = 1 (order 7/2 - a) where
/// the -b(1-b) prefactor kills the leading term; parametric subharmonic
/// instability governs b > 3 (order 5 - a - b) and elastic scattering b < -3
/// (order 5 - a). Boundary equalities land on order 0 and are reported
/// marginal.
pub fn ir_classify(e: Exponents) -> ConvergenceVerdict {
    let Exponents { a, b } = e;
    let (mechanism, order) = if b == 0.0 {
        (Mechanism::Id, 4.0 - a)
    } else if b == 1.0 {
        (Mechanism::Id, 3.5 - a)
    } else if b.abs() < 3.0 {
        (Mechanism::Id, 3.5 - a - 0.5 * b)
    } else if b >= 3.0 {
        (Mechanism::Psi, 5.0 - a - b)
    } else {
        (Mechanism::Es, 5.0 - a)
    };
    let status = status_from_order(order);
    let sign = if status == Status::Divergent && mechanism == Mechanism::Id {
        ir_prefactor_sign(b)
    } else {
        0
    };
    ConvergenceVerdict {
        status,
        mechanism,
        order,
        sign,
    }
}

/// Convergence at the UV end (k1 and k2 -> infinity).
///
/// Induced diffusion governs |b| < 2 (order a + b/2 - 4, special line b = 0
/// with order a - 7/2), elastic scattering b > 2 (order a - 3), parametric
/// subharmonic instability b < -2 (order a + b - 3).
pub fn uv_classify(e: Exponents) -> ConvergenceVerdict {
    let Exponents { a, b } = e;
    let (mechanism, order) = if b == 0.0 {
        (Mechanism::Id, a - 3.5)
    } else if b.abs() < 2.0 {
        (Mechanism::Id, a + 0.5 * b - 4.0)
    } else if b >= 2.0 {
        (Mechanism::Es, a - 3.0)
    } else {
        (Mechanism::Psi, a + b - 3.0)
    };
    let status = status_from_order(order);
    let sign = if status == Status::Divergent {
        match mechanism {
            Mechanism::Id => sign_of(b),
            Mechanism::Es => sign_of(-b),
            Mechanism::Psi => 0,
        }
    } else {
        0
    };
    ConvergenceVerdict {
        status,
        mechanism,
        order,
        sign,
    }
}

/// Signs of the IR and UV divergences, 0 when an end is convergent or its
/// sign is not fixed by the displayed leading-order prefactors.
///
/// The IR sign is the -b(1-b) prefactor of the induced-diffusion asymptotics
/// and is attached whenever that contribution itself diverges
/// (a + b/2 > 7/2), which reproduces the published opposite-sign balance
/// regions exactly; where only the other mechanisms diverge the sign is left
/// indeterminate.
pub fn divergence_signs(e: Exponents) -> (i8, i8) {
    let Exponents { a, b } = e;
    let ir = ir_classify(e);
    let id_part_divergent = 3.5 - a - 0.5 * b < 0.0;
    let ir_sign = if ir.status == Status::Divergent && id_part_divergent {
        ir_prefactor_sign(b)
    } else {
        0
    };
    let uv_sign = uv_classify(e).sign;
    (ir_sign, uv_sign)
}

/// Leading-order exponent of a single branch integrand T^i_{j,k} in the
/// scale-separation parameter, per the asymptotics tables.
///
/// IR rows: elastic scattering 2 - a; induced diffusion 1 - a - b/2 with the
/// b = 0 special value 3/2 - a; parametric subharmonic 3 - a - b. UV rows:
/// parametric subharmonic a + b - 2; elastic a - 2; induced diffusion
/// a + b/2 - 3 with b = 0 special a - 5/2. The b = 1 gain appears only after
/// the transverse integration and therefore lives in [`ir_classify`], not in
/// the pointwise rows.
pub fn leading_order_table(branch: BranchId, end: SpectralEnd, e: Exponents) -> f64 {
    let Exponents { a, b } = e;
    match end {
        SpectralEnd::Ir => match (branch.kind, branch.root) {
            (ResonanceKind::Sum, RootIndex::First)
            | (ResonanceKind::Difference2, RootIndex::Second) => 2.0 - a,
            (ResonanceKind::Sum, RootIndex::Second)
            | (ResonanceKind::Difference2, RootIndex::First) => {
                if b == 0.0 {
                    1.5 - a
                } else {
                    1.0 - a - 0.5 * b
                }
            }
            (ResonanceKind::Difference1, _) => 3.0 - a - b,
        },
        SpectralEnd::Uv => match (branch.kind, branch.root) {
            (ResonanceKind::Sum, _) => a + b - 2.0,
            (ResonanceKind::Difference1, RootIndex::First)
            | (ResonanceKind::Difference2, RootIndex::First) => a - 2.0,
            (ResonanceKind::Difference1, RootIndex::Second)
            | (ResonanceKind::Difference2, RootIndex::Second) => {
                if b == 0.0 {
                    a - 2.5
                } else {
                    a + 0.5 * b - 3.0
                }
            }
        },
    }
}

/// Direct evaluation of the IR convergence inequality set, used as an
/// independent cross-check of [`ir_classify`]. Returns true when the integral
/// converges at the IR end.
pub fn ir_convergent_inequalities(e: Exponents) -> bool {
    let Exponents { a, b } = e;
    (a + b / 2.0 - 3.5 < 0.0 && -3.0 < b && b < 3.0)
        || (a - 4.0 < 0.0 && b == 0.0)
        || (a - 3.5 < 0.0 && b == 1.0)
        || (a + b - 5.0 < 0.0 && b > 3.0)
        || (a - 5.0 < 0.0 && b < -3.0)
}

/// Direct evaluation of the UV convergence inequality set.
pub fn uv_convergent_inequalities(e: Exponents) -> bool {
    let Exponents { a, b } = e;
    (a + b / 2.0 - 4.0 > 0.0 && -2.0 < b && b < 2.0)
        || (a - 3.5 > 0.0 && b == 0.0)
        || (a - 3.0 > 0.0 && b > 2.0)
        || (a + b - 3.0 > 0.0 && b < -2.0)
}

/// Membership in the opposite-sign balance regions,
/// 7 < 2a + b < 8 with -2 < b < 1, or 2a + b > 7 with a < 3 and b > 2.
pub fn opposite_sign_region(e: Exponents) -> bool {
    let Exponents { a, b } = e;
    let r1 = 7.0 < 2.0 * a + b && 2.0 * a + b < 8.0 && -2.0 < b && b < 1.0;
    let r2 = 7.0 < 2.0 * a + b && a < 3.0 && b > 2.0;
    r1 || r2
}
