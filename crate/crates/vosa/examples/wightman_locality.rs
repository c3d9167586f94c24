//! Smeared fermion fields on disjoint arcs graded-commute on low-weight states.

use vosa::analytic::{
    basis_states, make_bump, quarter_arcs, wightman_locality_check, zeroth_order_certificate, Arc, BumpProfile,
    HilbertSpace, LocalityOptions, Twist,
};
use vosa::fock::HalfInt;
use vosa::models::build_free_fermion;
use vosa::unitarity::{PctCandidate, ScalarProduct};

fn main() -> vosa::Result<()> {
    let small = build_free_fermion(HalfInt::int(8));
    let mut sp = ScalarProduct::new(&small, PctCandidate::default_for(&small))?;
    let (bound, _) = zeroth_order_certificate(&mut sp, &small.generator_state(0), HalfInt::int(4))?;

    let f = small.with_cutoff(HalfInt::int(76))?;
    let phi = f.generator_state(0);
    let (qa, qb) = quarter_arcs();
    let shrink = |q: Arc| Arc { start: q.start + 0.05, end: q.end - 0.05 };
    let fa = make_bump(shrink(qa), BumpProfile::default(), Twist::Twisted, 64, None)?;
    let gb = make_bump(shrink(qb), BumpProfile::default(), Twist::Twisted, 64, None)?;
    let mut hs = HilbertSpace::new(&f)?;
    let states = basis_states(&f, HalfInt::int(3));
    let opts = LocalityOptions { bound_a: bound, bound_b: bound, tol: 1e-6 };
    let r = wightman_locality_check(&mut hs, &phi, &fa, &phi, &gb, &states, &opts)?;
    for rec in &r.records {
        println!("{:<22} {:?} budget {:.2e} {}", rec.tag, rec.residual, rec.truncation_budget, rec.verdict);
    }
    Ok(())
}
