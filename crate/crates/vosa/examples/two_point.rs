//! Two-point functions of seeded bump functions: Fourier series against boundary integral.

use vosa::analytic::{seeded_bump_pair, series_integral_check, two_point_series, TwoPointSetup};
use vosa::fock::HalfInt;
use vosa::models::build_free_fermion;
use vosa::unitarity::{PctCandidate, ScalarProduct};

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::int(4));
    let mut sp = ScalarProduct::new(&f, PctCandidate::default_for(&f))?;
    for a in [f.generator_state(0), f.conformal().clone()] {
        let d = a.weight().expect("homogeneous");
        let (fa, gb) = seeded_bump_pair(d, 128, 5)?;
        let s = TwoPointSetup::new(&mut sp, &a, &a, fa, gb)?;
        let series = two_point_series(&s);
        let r = series_integral_check(&s, 1e-6)?;
        println!("d = {d}: series {:.6e}, {:?} {}", series.value, r.residual, r.verdict);
    }
    Ok(())
}
