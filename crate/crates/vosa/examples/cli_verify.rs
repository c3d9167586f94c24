//! Drive the CLI in-process: build a model, then run the unitarity suite as CSV.

use std::fs;

fn main() {
    let dir = std::env::temp_dir().join("vosa-example-cli");
    fs::create_dir_all(&dir).unwrap();
    let model = dir.join("ns.json");
    fs::write(&model, r#"{"kind":"ns_verma","c":"7/10","cutoff":"4","quotient":true}"#).unwrap();
    let model = model.to_str().unwrap();
    let build = vosa::cli::run(["vosa", "build", "--model", model]);
    let verify = vosa::cli::run(["vosa", "verify", "--model", model, "--suite", "unitarity", "--format", "csv"]);
    println!("build exit {build}, verify exit {verify}");
}
