//! Mode actions of the free fermion and the Virasoro relations of its conformal vector.

use vosa::fock::{Gq, HalfInt, Vector};
use vosa::models::{build_free_fermion, virasoro_check};
use vosa::modes::{Evaluator, VertexModel};

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::from_twice(15));
    println!("central charge c = {}", f.central_charge());

    let mut ev = Evaluator::new(&f);
    let phi = f.generator_state(0);
    let nu = f.conformal().clone();
    for n in [-3, -2, -1] {
        let v = ev.apply_mode(&phi, n, &phi)?;
        println!("φ_({n}) φ = {}", v.display(f.alphabet()));
    }
    let l_m2 = ev.apply_mode(&nu, -1, &Vector::vacuum())?;
    let back = ev.apply_mode(&nu, 3, &l_m2)?;
    println!("L_2 L_-2 Ω = {}", back.display(f.alphabet()));
    assert_eq!(back, Vector::vacuum().scale(&Gq::ratio(1, 4)));

    let report = virasoro_check(&f, 3, HalfInt::int(4))?;
    println!("Virasoro relations: {} records, passed = {}", report.records.len(), report.passed());
    Ok(())
}
