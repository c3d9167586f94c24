//! Neveu-Schwarz relations in a universal Verma model.

use vosa::fock::{Gq, HalfInt};
use vosa::models::{build, superalgebra_check, ModelDescriptor, VermaKind};

fn main() -> vosa::Result<()> {
    for c in [Gq::ratio(7, 10), Gq::ratio(3, 2)] {
        let m = build(&ModelDescriptor::verma(VermaKind::Ns, c.clone(), HalfInt::int(8), false))?;
        let r = superalgebra_check(&m, VermaKind::Ns, HalfInt::int(2), HalfInt::int(3))?;
        println!("c = {c}: {} exact records, passed = {}", r.records.len(), r.passed());
    }
    Ok(())
}
