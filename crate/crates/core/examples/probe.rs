//! Scratch probe for development; not part of the public surface.
use iwkin::quadrature::{collision_integral, integral_best_estimate, QuadratureConfig};
use iwkin::spectral::{Exponents, PhysicalParams};
use std::time::Instant;

fn main() {
    let params = PhysicalParams::default();
    let cfg = QuadratureConfig::default();
    for &a in &[3.52, 3.55, 3.6, 3.65, 3.7, 3.75, 3.8, 3.85, 3.9, 3.95] {
        let t0 = Instant::now();
        let r = integral_best_estimate(collision_integral(
            Exponents::new(a, 0.0),
            &cfg,
            1.0,
            1.0,
            &params,
        ));
        match r {
            Ok(r) => println!(
                "a = {a:5.2}  C = {:+.6e}  err = {:.2e}  conv = {}  evals = {}  ({:.2?})",
                r.value,
                r.error_estimate,
                r.converged,
                r.evaluations,
                t0.elapsed()
            ),
            Err(e) => println!("a = {a:5.2}  ERROR: {e}"),
        }
    }
}
