//! Build models from JSON descriptors and tabulate graded dimensions.

use vosa::cli::cmd_dims;
use vosa::models::ModelDescriptor;

fn main() -> vosa::Result<()> {
    for json in [
        r#"{"kind":"free_fermion","cutoff":"4"}"#,
        r#"{"kind":"ns_verma","c":"7/10","cutoff":"4"}"#,
        r#"{"kind":"ns_verma","c":"7/10","cutoff":"4","quotient":true}"#,
    ] {
        let desc = ModelDescriptor::parse(json)?;
        println!("{json}");
        for row in cmd_dims(&desc, None, false)? {
            println!("  weight {:>3}: dim {:>3} (even {}, odd {})", row.weight, row.dim, row.even, row.odd);
        }
    }
    Ok(())
}
