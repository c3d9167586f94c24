//! Energy bounds: exact zeroth-order bound for φ and a fitted bound for ν.

use vosa::analytic::{energy_bound_fit, zeroth_order_certificate};
use vosa::fock::HalfInt;
use vosa::models::build_free_fermion;
use vosa::unitarity::{PctCandidate, ScalarProduct};

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::int(10));
    let mut sp = ScalarProduct::new(&f, PctCandidate::default_for(&f))?;
    let (bound, cert) = zeroth_order_certificate(&mut sp, &f.generator_state(0), HalfInt::int(5))?;
    println!("‖φ_m c‖ ≤ {}‖c‖ ({} records, passed = {})", bound.m, cert.records.len(), cert.passed());
    let fit = energy_bound_fit(&mut sp, f.conformal(), HalfInt::int(6), 4)?;
    println!("ν: M = {:.3}, s = {:.3}, k = {:.3}", fit.bound.m, fit.bound.s, fit.bound.k);
    Ok(())
}
