//! Bisognano-Wichmann boundary values and real dilations of two-point functions.

use vosa::analytic::{bw_check, seeded_bump_pair, BwTolerances, TwoPointSetup};
use vosa::fock::HalfInt;
use vosa::models::build_free_fermion;
use vosa::unitarity::{PctCandidate, ScalarProduct};

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::int(4));
    let mut sp = ScalarProduct::new(&f, PctCandidate::default_for(&f))?;
    let phi = f.generator_state(0);
    let (fa, gb) = seeded_bump_pair(HalfInt::from_twice(1), 128, 9)?;
    let s = TwoPointSetup::new(&mut sp, &phi, &phi, fa, gb)?;
    let r = bw_check(&s, &[0.05, -0.03], BwTolerances::default())?;
    for rec in &r.records {
        println!("{:<14} {:<28} {:?} {}", rec.tag, rec.inputs, rec.residual, rec.verdict);
    }
    Ok(())
}
