//! Möbius covariance: cocycle identities and the action on test functions.

use vosa::analytic::{mobius_action, mobius_suite, seeded_bump_pair, MobiusElement};
use vosa::fock::HalfInt;

fn main() -> vosa::Result<()> {
    let r = mobius_suite(1, 8, 64, 1e-6)?;
    println!("{} records, max residual {:.2e}, passed = {}", r.records.len(), r.max_residual(), r.passed());

    let d = HalfInt::int(2);
    let (f, _) = seeded_bump_pair(d, 64, 3)?;
    let g = MobiusElement::dilation(0.2).compose(&MobiusElement::rotation(0.7));
    let moved = mobius_action(d, &g, &f);
    let back = mobius_action(d, &g.inverse(), &moved);
    let err = (-64..=64).map(|n| (back.coefficient(HalfInt::int(n)) - f.coefficient(HalfInt::int(n))).norm()).fold(0.0, f64::max);
    println!("round trip through γ and γ⁻¹: max coefficient error {err:.2e}");
    Ok(())
}
