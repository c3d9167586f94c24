use std::fs;
use std::path::PathBuf;

use vosa::cli::{self, cmd_build, cmd_dims, descriptor_fingerprint, SuiteConfig, TwoPointRow};
use vosa::models::ModelDescriptor;
use vosa::report::{CheckReport, Verdict};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vosa-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &PathBuf, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> i32 {
    cli::run(std::iter::once("vosa").chain(args.iter().copied()))
}

const FERMION: &str = r#"{"kind":"free_fermion","cutoff":"13/2"}"#;

#[test]
fn build_prints_fingerprint_and_caches_dims() {
    let dir = workdir("build");
    let model = write(&dir, "f.json", FERMION);
    let out = dir.join("build.json");
    assert_eq!(run(&["build", "--model", &model, "--out", out.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let desc = ModelDescriptor::parse(FERMION).unwrap();
    assert_eq!(v["fingerprint"], descriptor_fingerprint(&desc));
    assert_eq!(v["dims"].as_array().unwrap().len(), 14);

    let cache = dir.join("cache");
    let (_, summary) = cmd_build(&desc, Some(&cache)).unwrap();
    assert!(cache.join(format!("{}.json", summary.fingerprint)).exists());
    let rows = cmd_dims(&desc, Some(&cache), false).unwrap();
    assert_eq!(rows.iter().map(|r| r.dim).collect::<Vec<_>>(), summary.dims.iter().map(|d| d.dim).collect::<Vec<_>>());
}

#[test]
fn quotient_dims_never_exceed_verma_dims() {
    let verma = ModelDescriptor::parse(r#"{"kind":"ns_verma","c":"7/10","cutoff":"6"}"#).unwrap();
    let quot = ModelDescriptor::parse(r#"{"kind":"ns_verma","c":"7/10","cutoff":"6","quotient":true}"#).unwrap();
    let v = cmd_dims(&verma, None, false).unwrap();
    let q = cmd_dims(&quot, None, true).unwrap();
    assert!(v.iter().zip(&q).all(|(a, b)| b.dim <= a.dim));
    assert!(v.iter().zip(&q).any(|(a, b)| b.dim < a.dim));
    assert!(q.iter().all(|r| r.negative == Some(0) && r.null == Some(0)));
}

#[test]
fn malformed_input_exits_nonzero() {
    let dir = workdir("malformed");
    let bad = write(&dir, "bad.json", r#"{"kind":"ns_verma","c":"seven","cutoff":"6"}"#);
    assert_eq!(run(&["build", "--model", &bad]), cli::EXIT_DATA);
    let model = write(&dir, "f.json", FERMION);
    assert_eq!(run(&["verify", "--model", &model, "--suite", "bogus"]), cli::EXIT_USAGE);
    let cfg = write(&dir, "cfg.json", r#"{"suite":"bogus"}"#);
    assert_eq!(run(&["verify", "--model", &model, "--config", &cfg]), cli::EXIT_DATA);
    assert_eq!(run(&["build", "--model", "/nonexistent/model.json"]), cli::EXIT_IO);
}

#[test]
fn fermion_passes_every_suite_reproducibly() {
    let dir = workdir("verify");
    let model = write(&dir, "f.json", FERMION);
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    assert_eq!(run(&["verify", "--model", &model, "--seed", "3", "--out", a.to_str().unwrap()]), 0);
    assert_eq!(run(&["verify", "--model", &model, "--seed", "3", "--jobs", "2", "--out", b.to_str().unwrap()]), 0);
    let (ja, jb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let report: CheckReport = serde_json::from_slice(&ja).unwrap();
    for tag in ["virasoro", "borcherds-identity", "gram-positivity", "wightman.commutator", "bw.boundary"] {
        assert!(report.records.iter().any(|r| r.tag == tag), "missing {tag}");
    }
}

#[test]
fn degenerate_verma_fails_unitarity_with_a_kernel_witness() {
    let dir = workdir("verma");
    let model = write(&dir, "v.json", r#"{"kind":"ns_verma","c":"7/10","cutoff":"5"}"#);
    let out = dir.join("r.csv");
    let code = run(&["verify", "--model", &model, "--suite", "unitarity", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    let csv = fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("suite,tag,inputs,domain,residual"));
    assert!(csv.lines().any(|l| l.contains(",fail,kernel vector")));
}

#[test]
fn overlapping_supports_are_inconclusive() {
    let dir = workdir("overlap");
    write(&dir, "f.json", FERMION);
    let cfg = write(
        &dir,
        "cfg.json",
        r#"{"model":"f.json","suite":"locality","band":32,
            "locality":{"f":{"arc":[-1.0,0.5]},"g":{"arc":[0.0,1.2]},"state_weight":"1"}}"#,
    );
    let out = dir.join("r.json");
    assert_eq!(run(&["verify", "--config", &cfg, "--out", out.to_str().unwrap()]), 2);
    let report: CheckReport = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    let rec = report.records.iter().find(|r| r.verdict == Verdict::Inconclusive).unwrap();
    assert_eq!(rec.witness.as_deref(), Some("supports not disjoint"));
}

#[test]
fn twopoint_rows() {
    let dir = workdir("twopoint");
    let model = write(&dir, "f.json", FERMION);
    let out = dir.join("row.json");
    assert_eq!(run(&["twopoint", "--model", &model, "--band", "128", "--out", out.to_str().unwrap()]), 0);
    let row: TwoPointRow = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(row.series_vs_integral < 1e-6, "{row:?}");
    assert!(row.bw_vs_reflected < 1e-5, "{row:?}");

    let ns = write(&dir, "ns.json", r#"{"kind":"ns_verma","c":"7/10","cutoff":"4","quotient":true}"#);
    let cfg = SuiteConfig::parse(r#"{"twopoint":{"a":"G","b":"L"},"band":32}"#, None).unwrap();
    let model = cmd_build(&ModelDescriptor::parse(&fs::read_to_string(&ns).unwrap()).unwrap(), None).unwrap().0;
    let row = cli::cmd_twopoint(&model, &cfg).unwrap();
    assert_eq!((row.series.re, row.integral.re, row.bw.re, row.series_vs_integral), (0.0, 0.0, 0.0, 0.0));

    let strip = write(&dir, "z.json", r#"{"twopoint":{"z":[[0.0,0.25]]},"band":32}"#);
    let fermion = write(&dir, "f2.json", FERMION);
    assert_eq!(run(&["twopoint", "--model", &fermion, "--config", &strip]), cli::EXIT_DATA);
}
