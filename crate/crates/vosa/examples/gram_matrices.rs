//! Gram matrices of the invariant form: the Verma kernel and the positive quotient.

use vosa::fock::{Gq, HalfInt};
use vosa::models::{build, ModelDescriptor, VermaKind};
use vosa::unitarity::{gram, PctCandidate, ScalarProduct};

fn main() -> vosa::Result<()> {
    for quotient in [false, true] {
        let m = build(&ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(7, 10), HalfInt::int(5), quotient))?;
        let mut sp = ScalarProduct::new(&m, PctCandidate::default_for(&m))?;
        println!("{}", if quotient { "simple quotient" } else { "Verma model" });
        for t in 0..=10 {
            let g = gram(&mut sp, HalfInt::from_twice(t))?;
            let (p, n, z) = g.signature;
            println!("  weight {:>3}: dim {:>2}, signature (+{p}, -{n}, 0:{z}), kernel {}", g.weight, g.basis.len(), g.kernel.len());
        }
    }
    Ok(())
}
