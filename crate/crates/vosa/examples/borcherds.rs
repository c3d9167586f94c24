//! Randomly sampled Borcherds identities with exact rational residuals.

use vosa::fock::{Gq, HalfInt};
use vosa::models::{build, build_free_fermion, ModelDescriptor, VermaKind};
use vosa::modes::sampled_borcherds;

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::int(6));
    let v = build(&ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(7, 10), HalfInt::int(6), false))?;
    for (name, model) in [("free fermion", &f), ("NS Verma c=7/10", &v)] {
        let r = sampled_borcherds(model, HalfInt::int(2), 40, 2, 7, &model.fingerprint())?;
        println!("{name}: {} samples, passed = {}", r.records.len(), r.passed());
        if let Some(rec) = r.records.first() {
            println!("  e.g. {}", rec.inputs);
        }
    }
    Ok(())
}
