//! Locality orders N(a,b) of generating fields.

use vosa::fock::HalfInt;
use vosa::models::build_free_fermion;
use vosa::modes::field_locality_order;

fn main() -> vosa::Result<()> {
    let f = build_free_fermion(HalfInt::int(6));
    let phi = f.generator_state(0);
    let nu = f.conformal().clone();
    println!("N(φ,φ) = {}", field_locality_order(&f, &phi, &phi, HalfInt::int(4), 16)?);
    println!("N(φ,ν) = {}", field_locality_order(&f, &phi, &nu, HalfInt::int(4), 16)?);
    println!("N(ν,ν) = {}", field_locality_order(&f, &nu, &nu, HalfInt::int(4), 16)?);
    Ok(())
}
