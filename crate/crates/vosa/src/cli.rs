//! Command-line driver: `vosa build|verify|twopoint|dims`.
//!
//! Every command reads a model descriptor (`--model`) and an optional JSON
//! [`SuiteConfig`] (`--config`); command-line flags override config values.
//! Reports are JSON by default and CSV with `--format csv`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    self, basis_states, bw_check, bw_value, make_bump, mobius_suite, rotation_covariance_check, seeded_bump_pair,
    series_integral_check, two_point_integral, two_point_series, wightman_locality_check, zeroth_order_certificate,
    Arc, BumpProfile, BwTolerances, EnergyBound, HilbertSpace, LocalityOptions, TestFunction, Twist, TwoPointSetup,
};
use crate::error::{Error, Result};
use crate::fock::{Gq, HalfInt, Vector};
use crate::models::{
    build, cft_type_check, superalgebra_check, translation_check, virasoro_check, GradedDim, ModelDescriptor,
    VermaKind, VosaModel,
};
use crate::modes::{check_skew_symmetry, field_locality_order, sampled_borcherds, Evaluator, VertexModel};
use crate::report::{digest, CheckRecord, CheckReport, Residual};
use crate::unitarity::{gram, is_quasi_primary, verify_unitarity, PctCandidate, ScalarProduct};

/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 64;
/// Exit code for descriptors or configs that fail validation.
pub const EXIT_DATA: i32 = 65;
/// Exit code for internal failures of a computation.
pub const EXIT_SOFTWARE: i32 = 70;
/// Exit code for file-system errors.
pub const EXIT_IO: i32 = 74;

/// Named verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Unitarity,
    Locality,
    Analytic,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Axioms, Suite::Unitarity, Suite::Locality, Suite::Analytic],
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A model given as a path to a descriptor file or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSource {
    Path(PathBuf),
    Inline(ModelDescriptor),
}

/// A test function given as a bump on an arc or by its coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Bump {
        arc: Arc,
        #[serde(default)]
        profile: BumpProfile,
    },
    Coefficients(TestFunction),
}

impl FunctionSpec {
    fn realize(&self, twist: Twist, band: usize) -> Result<TestFunction> {
        match self {
            FunctionSpec::Bump { arc, profile } => make_bump(*arc, *profile, twist, band, None),
            FunctionSpec::Coefficients(f) if f.twist() == twist => Ok(f.clone()),
            FunctionSpec::Coefficients(f) => {
                Err(Error::Argument(format!("test function is {:?}, the field needs {twist:?}", f.twist())))
            }
        }
    }
}

/// Tolerances of the numerical checks; `--tol` sets all of them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub wightman: f64,
    pub rotation: f64,
    pub twopoint: f64,
    pub bw_real: f64,
    pub bw_boundary: f64,
    pub bw_continuity: f64,
    pub mobius: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let bw = BwTolerances::default();
        Tolerances {
            wightman: 1e-9,
            rotation: 1e-9,
            twopoint: 1e-6,
            bw_real: bw.real,
            bw_boundary: bw.boundary,
            bw_continuity: bw.continuity,
            mobius: 1e-6,
        }
    }
}

impl Tolerances {
    fn uniform(t: f64) -> Self {
        Tolerances {
            wightman: t,
            rotation: t,
            twopoint: t,
            bw_real: t,
            bw_boundary: t,
            bw_continuity: t,
            mobius: t,
        }
    }

    fn bw(&self) -> BwTolerances {
        BwTolerances { real: self.bw_real, boundary: self.bw_boundary, continuity: self.bw_continuity }
    }
}

/// Options of the `axioms` suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AxiomOptions {
    /// Mode range |m|, |n| of the relation checks.
    pub range: HalfInt,
    /// States of weight up to this are used by the relation checks.
    pub state_weight: HalfInt,
    pub borcherds_samples: usize,
    pub borcherds_box: i64,
    pub borcherds_weight: HalfInt,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            range: HalfInt::int(2),
            state_weight: HalfInt::int(3),
            borcherds_samples: 25,
            borcherds_box: 2,
            borcherds_weight: HalfInt::int(2),
        }
    }
}

/// Options of the `locality` suite.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LocalityConfig {
    /// Generator smeared in the Wightman check; defaults to the first weight-½ generator.
    pub field: Option<String>,
    pub f: Option<FunctionSpec>,
    pub g: Option<FunctionSpec>,
    /// Largest weight of the states the smeared commutator is applied to.
    pub state_weight: Option<HalfInt>,
    /// Largest weight of the matrix elements probed for the algebraic locality order.
    pub order_weight: Option<HalfInt>,
}

/// Options of the `analytic` suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyticConfig {
    /// Quasi-primary generator used for the two-point and rotation checks.
    pub field: Option<String>,
    pub mobius_pairs: usize,
    pub mobius_samples: usize,
    /// Real dilation parameters t at which F(t) is compared with the dilated pairing.
    pub dilations: Vec<f64>,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig { field: None, mobius_pairs: 5, mobius_samples: 64, dilations: vec![0.05, -0.03] }
    }
}

/// Setup of the `twopoint` command.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TwoPointConfig {
    pub a: Option<String>,
    pub b: Option<String>,
    pub f: Option<FunctionSpec>,
    pub g: Option<FunctionSpec>,
    /// Extra points of the strip at which F is evaluated, as [re, im].
    pub z: Vec<[f64; 2]>,
}

/// Everything a command needs besides the subcommand itself.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub model: Option<ModelSource>,
    pub suite: Option<Suite>,
    pub cutoff: Option<HalfInt>,
    pub tol: Option<f64>,
    pub tolerances: Option<Tolerances>,
    pub band: Option<usize>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub axioms: AxiomOptions,
    pub locality: LocalityConfig,
    pub analytic: AnalyticConfig,
    pub twopoint: TwoPointConfig,
}

impl SuiteConfig {
    /// Parses a config; relative model paths resolve against `base`.
    pub fn parse(json: &str, base: Option<&Path>) -> Result<Self> {
        let mut cfg: SuiteConfig = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
        if let (Some(ModelSource::Path(p)), Some(base)) = (&mut cfg.model, base) {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?, path.parent())
    }

    pub fn band(&self) -> usize {
        self.band.unwrap_or(256)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn tolerances(&self) -> Tolerances {
        match self.tol {
            Some(t) => Tolerances::uniform(t),
            None => self.tolerances.unwrap_or_default(),
        }
    }

    /// The descriptor with the cutoff override applied.
    pub fn descriptor(&self) -> Result<ModelDescriptor> {
        let desc = match &self.model {
            None => return Err(Error::Argument("no model given (use --model or the config's \"model\")".into())),
            Some(ModelSource::Path(p)) => ModelDescriptor::parse(&fs::read_to_string(p)?)?,
            Some(ModelSource::Inline(d)) => {
                d.validate()?;
                d.clone()
            }
        };
        let desc = match self.cutoff {
            Some(c) => desc.with_cutoff(c),
            None => desc,
        };
        desc.validate()?;
        Ok(desc)
    }
}

/// Fingerprint and graded dimensions of a built model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub fingerprint: String,
    pub name: String,
    pub central_charge: Gq,
    pub cutoff: HalfInt,
    pub dims: Vec<GradedDim>,
}

impl BuildSummary {
    pub fn of(model: &VosaModel) -> Self {
        BuildSummary {
            fingerprint: model.fingerprint(),
            name: model.name().to_string(),
            central_charge: model.central_charge().clone(),
            cutoff: model.cutoff(),
            dims: model.graded_dimensions(),
        }
    }
}

/// Row of the `dims` table; the signature columns need `--signatures`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimRow {
    pub weight: HalfInt,
    pub dim: usize,
    pub even: usize,
    pub odd: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub positive: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub negative: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub null: Option<usize>,
}

/// Fingerprint of a descriptor, equal to that of the model it builds.
pub fn descriptor_fingerprint(desc: &ModelDescriptor) -> String {
    digest(&serde_json::to_string(&desc.without_generators()).unwrap_or_default())
}

fn cache_path(dir: &Path, fingerprint: &str) -> PathBuf {
    dir.join(format!("{fingerprint}.json"))
}

/// Builds the model and, with a cache directory, stores its summary there.
pub fn cmd_build(desc: &ModelDescriptor, cache: Option<&Path>) -> Result<(VosaModel, BuildSummary)> {
    let model = build(desc)?;
    let summary = BuildSummary::of(&model);
    if let Some(dir) = cache {
        fs::create_dir_all(dir)?;
        fs::write(cache_path(dir, &summary.fingerprint), serde_json::to_string_pretty(&summary)?)?;
    }
    Ok((model, summary))
}

/// Graded dimensions, read from the cache when present, with the inertia of the
/// Gram matrices when `signatures` is set.
pub fn cmd_dims(desc: &ModelDescriptor, cache: Option<&Path>, signatures: bool) -> Result<Vec<DimRow>> {
    let cached = cache
        .and_then(|dir| fs::read_to_string(cache_path(dir, &descriptor_fingerprint(desc))).ok())
        .and_then(|s| serde_json::from_str::<BuildSummary>(&s).ok());
    let plain = |d: &GradedDim| DimRow {
        weight: d.weight,
        dim: d.dim,
        even: d.even,
        odd: d.odd,
        positive: None,
        negative: None,
        null: None,
    };
    if !signatures {
        if let Some(s) = cached {
            return Ok(s.dims.iter().map(plain).collect());
        }
    }
    let (model, summary) = cmd_build(desc, cache)?;
    if !signatures {
        return Ok(summary.dims.iter().map(plain).collect());
    }
    let mut sp = ScalarProduct::new(&model, PctCandidate::default_for(&model))?;
    summary
        .dims
        .iter()
        .map(|d| {
            let (p, n, z) = gram(&mut sp, d.weight)?.signature;
            Ok(DimRow { positive: Some(p), negative: Some(n), null: Some(z), ..plain(d) })
        })
        .collect()
}

fn generator_named(model: &VosaModel, name: &str) -> Result<Vector> {
    model.generator_by_name(name).ok_or_else(|| {
        let known: Vec<&str> = model.alphabet().iter().map(|g| g.name.as_str()).collect();
        Error::Argument(format!("model has no generator {name:?} (known: {known:?})"))
    })
}

fn generators(model: &VosaModel) -> Vec<(String, Vector)> {
    model.alphabet().iter().map(|g| (g.name.clone(), model.generator_state(g.id))).collect()
}

fn default_field(model: &VosaModel, name: &Option<String>, weight: Option<HalfInt>) -> Result<Option<Vector>> {
    if let Some(n) = name {
        return generator_named(model, n).map(Some);
    }
    Ok(model
        .alphabet()
        .iter()
        .find(|g| weight.is_none_or(|w| g.weight == w))
        .map(|g| model.generator_state(g.id)))
}

fn axioms_suite(model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    let fp = model.fingerprint();
    let opts = &cfg.axioms;
    let mut report = CheckReport::new("axioms", &fp);
    report.extend(cft_type_check(model).1);
    let state_weight = opts.state_weight.min(model.cutoff());
    let range = opts.range.floor();
    report.extend(virasoro_check(model, range, state_weight)?);
    if let Some((kind, _)) = model.descriptor().verma_params() {
        if kind != VermaKind::Virasoro {
            report.extend(superalgebra_check(model, kind, opts.range, state_weight)?);
        }
    }
    let gens = generators(model);
    let states: Vec<Vector> = gens.iter().map(|(_, v)| v.clone()).collect();
    report.extend(translation_check(model, &states, range)?);
    let mut ev = Evaluator::new(model);
    for (_, a) in &gens {
        for (_, b) in &gens {
            let top = model.cutoff() - a.weight().unwrap_or_default() - b.weight().unwrap_or_default();
            report.extend(check_skew_symmetry(&mut ev, a, b, top.floor().min(3), &fp)?);
        }
    }
    report.extend(sampled_borcherds(
        model,
        opts.borcherds_weight.min(model.cutoff()),
        opts.borcherds_samples,
        opts.borcherds_box,
        cfg.seed(),
        &fp,
    )?);
    Ok(report)
}

fn unitarity_suite(model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    verify_unitarity(model, PctCandidate::default_for(model), HalfInt::int(2), cfg.seed())
}

/// Model used for smearing: non-quotient models are extended so that the images of
/// all band modes on the probed states are represented exactly.
fn smearing_model(model: &VosaModel, band: usize, state_weight: HalfInt) -> Result<Option<VosaModel>> {
    if model.is_quotient() {
        return Ok(None);
    }
    let needed = HalfInt::int(band as i64 + 2) + state_weight + state_weight;
    if needed <= model.cutoff() {
        return Ok(None);
    }
    model.with_cutoff(needed).map(Some)
}

fn energy_bound(model: &VosaModel, a: &Vector, band: usize) -> Result<(EnergyBound, CheckReport)> {
    let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model))?;
    let top = model.cutoff().min(HalfInt::int(6));
    if a.weight() == Some(HalfInt::HALF) {
        return zeroth_order_certificate(&mut sp, a, top);
    }
    let fit = analytic::energy_bound_fit(&mut sp, a, top, band.min(4))?;
    Ok((fit.bound, CheckReport::new("energy.fit", &model.fingerprint())))
}

fn locality_suite(model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    let fp = model.fingerprint();
    let lc = &cfg.locality;
    let mut report = CheckReport::new("locality", &fp);
    let cover = model.quotient_parts().map_or(model, |(base, _)| base);
    let order_weight = lc.order_weight.unwrap_or(HalfInt::int(3)).min(model.cutoff());
    let gens = generators(model);
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let bound = (a.weight().unwrap_or_default() + b.weight().unwrap_or_default()).ceil() as usize;
            let order = field_locality_order(cover, a, b, order_weight, 4 * bound + 4)?;
            report.push(CheckRecord::exact(
                "locality-order",
                format!("a={na} b={nb} weights<={order_weight} bound={bound}"),
                order <= bound,
                if order <= bound { "0".into() } else { format!("N={order}") },
            ));
        }
    }
    let Some(a) = default_field(model, &lc.field, lc.field.is_none().then_some(HalfInt::HALF))? else {
        return Ok(report);
    };
    let band = cfg.band();
    let d = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
    let twist = Twist::for_weight(d);
    let (bound, cert) = energy_bound(model, &a, band)?;
    report.extend(cert);
    let (qa, qb) = analytic::quarter_arcs();
    let shrink = |q: Arc| Arc { start: q.start + 0.05, end: q.end - 0.05 };
    let default_f = FunctionSpec::Bump { arc: shrink(qa), profile: BumpProfile::default() };
    let default_g = FunctionSpec::Bump { arc: shrink(qb), profile: BumpProfile::default() };
    let f = lc.f.as_ref().unwrap_or(&default_f).realize(twist, band)?;
    let g = lc.g.as_ref().unwrap_or(&default_g).realize(twist, band)?;
    let state_weight = lc.state_weight.unwrap_or(HalfInt::int(4)).min(model.cutoff());
    let extended = smearing_model(model, band, state_weight)?;
    let m = extended.as_ref().unwrap_or(model);
    let a = m.generator_state(a.iter().next().expect("generator").0.modes()[0].gen);
    let mut hs = HilbertSpace::new(m)?;
    let states = basis_states(m, state_weight);
    let opts = LocalityOptions { bound_a: bound, bound_b: bound, tol: cfg.tolerances().wightman };
    report.extend(wightman_locality_check(&mut hs, &a, &f, &a, &g, &states, &opts)?);
    Ok(report)
}

fn quasi_primary_field(model: &VosaModel, name: &Option<String>) -> Result<Option<Vector>> {
    let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model))?;
    if let Some(n) = name {
        return generator_named(model, n).map(Some);
    }
    let mut gens: Vec<_> = model.alphabet().iter().collect();
    gens.sort_by_key(|g| g.weight);
    for g in gens {
        let v = model.generator_state(g.id);
        if is_quasi_primary(&mut sp, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn two_point_setup(model: &VosaModel, a: &Vector, b: &Vector, f: TestFunction, g: TestFunction) -> Result<TwoPointSetup> {
    let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model))?;
    TwoPointSetup::new(&mut sp, a, b, f, g)
}

fn analytic_suite(model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    let ac = &cfg.analytic;
    let tol = cfg.tolerances();
    let mut report = CheckReport::new("analytic", &model.fingerprint());
    let mobius = mobius_suite(cfg.seed(), ac.mobius_pairs, ac.mobius_samples, tol.mobius)?;
    report.extend(mobius);
    let Some(a) = quasi_primary_field(model, &ac.field)? else {
        return Ok(report);
    };
    let d = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
    let band = cfg.band().max(16);
    let (f, g) = seeded_bump_pair(d, band, cfg.seed())?;

    let mut hs = HilbertSpace::new(model)?;
    let state_weight = HalfInt::int(2).min(HalfInt::from_twice(model.cutoff().twice() / 4 * 2));
    let states = basis_states(model, state_weight);
    let rot_band = (hs.exact_weight - state_weight - d).floor().clamp(1, 16) as usize;
    let rot_f = f.with_band(rot_band);
    report.extend(rotation_covariance_check(
        &mut hs,
        &a,
        &rot_f,
        &states,
        &[0.7, 2.0 * std::f64::consts::PI],
        tol.rotation,
    )?);

    let setup = two_point_setup(model, &a, &a, f, g)?;
    report.push(series_integral_check(&setup, tol.twopoint)?);
    report.extend(bw_check(&setup, &ac.dilations, tol.bw())?);
    Ok(report)
}

fn run_suite(suite: Suite, model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = match suite {
        Suite::Axioms => axioms_suite(model, cfg),
        Suite::Unitarity => unitarity_suite(model, cfg),
        Suite::Locality => locality_suite(model, cfg),
        Suite::Analytic => analytic_suite(model, cfg),
        Suite::All => unreachable!("expanded before dispatch"),
    }?;
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Runs the selected suites in parallel and assembles one report in suite order.
pub fn cmd_verify(model: &VosaModel, cfg: &SuiteConfig) -> Result<CheckReport> {
    let suite = cfg.suite.unwrap_or(Suite::All);
    let parts: Vec<Result<CheckReport>> =
        suite.expand().into_par_iter().map(|s| run_suite(s, model, cfg)).collect();
    let name = serde_json::to_value(suite)?.as_str().unwrap_or("all").to_string();
    let mut report = CheckReport::new(&name, &model.fingerprint());
    let mut ms = 0;
    for p in parts {
        let p = p?;
        ms += p.wall_time_ms.unwrap_or(0);
        report.extend(p);
    }
    report.wall_time_ms = Some(ms);
    Ok(report)
}

/// A complex value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl Estimate {
    fn new(z: Complex64, err: f64) -> Self {
        Estimate { re: z.re, im: z.im, err }
    }

    fn zero() -> Self {
        Estimate { re: 0.0, im: 0.0, err: 0.0 }
    }
}

/// F(z) at an extra point of the strip.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripValue {
    pub z: [f64; 2],
    pub value: Estimate,
}

/// Report row of the `twopoint` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPointRow {
    pub d_a: HalfInt,
    pub d_b: HalfInt,
    pub pairing: [f64; 2],
    /// The mode series (Y(a,f)Ω|Y(b,g)Ω) with its certified tail.
    pub series: Estimate,
    /// The momentum-space integral with its quadrature error.
    pub integral: Estimate,
    /// F at z = −i/2, i.e. (Y(b,g)Ω|e^{K/2}Y(a,f)Ω).
    pub bw: Estimate,
    /// i^{2d} (Y(b,g)Ω|Y(a,f∘j)Ω) from the series.
    pub reflected: Estimate,
    pub series_vs_integral: f64,
    pub bw_vs_reflected: f64,
    pub strip: Vec<StripValue>,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / b.norm().max(1e-300)
    }
}

/// The series, the integral and the boundary value at −i/2 for one configured setup.
pub fn cmd_twopoint(model: &VosaModel, cfg: &SuiteConfig) -> Result<TwoPointRow> {
    let tc = &cfg.twopoint;
    let a = match &tc.a {
        Some(n) => generator_named(model, n)?,
        None => quasi_primary_field(model, &None)?
            .ok_or_else(|| Error::Argument("model has no quasi-primary generator".into()))?,
    };
    let b = match &tc.b {
        Some(n) => generator_named(model, n)?,
        None => a.clone(),
    };
    let weight = |v: &Vector| v.weight().ok_or_else(|| Error::Inhomogeneous(format!("{v:?}")));
    let (da, db) = (weight(&a)?, weight(&b)?);
    let band = cfg.band();
    let (sf, sg) = seeded_bump_pair(da, band, cfg.seed())?;
    let f = match &tc.f {
        Some(spec) => spec.realize(Twist::for_weight(da), band)?,
        None => sf,
    };
    let g = match &tc.g {
        Some(spec) => spec.realize(Twist::for_weight(db), band)?,
        None if da == db => sg,
        None => seeded_bump_pair(db, band, cfg.seed())?.1,
    };
    for z in &tc.z {
        if !(-0.5..=0.0).contains(&z[1]) {
            return Err(Error::Argument(format!("z = {}{:+}i lies outside the strip -1/2 <= Im z <= 0", z[0], z[1])));
        }
    }
    if da != db {
        let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model))?;
        for v in [&a, &b] {
            if !is_quasi_primary(&mut sp, v)? {
                return Err(Error::NotQuasiPrimary(format!("{v:?}")));
            }
        }
        let zero = Estimate::zero();
        return Ok(TwoPointRow {
            d_a: da,
            d_b: db,
            pairing: [0.0, 0.0],
            series: zero,
            integral: zero,
            bw: zero,
            reflected: zero,
            series_vs_integral: 0.0,
            bw_vs_reflected: 0.0,
            strip: tc.z.iter().map(|&z| StripValue { z, value: zero }).collect(),
        });
    }
    let s = two_point_setup(model, &a, &b, f, g)?;
    let series = two_point_series(&s);
    let integral = two_point_integral(&s)?;
    let half = Complex64::new(0.0, -0.5);
    let bw_quad = analytic::bw_continuation(&s, half)?;
    let bw = bw_value(&s, half)?;
    let refl = two_point_series(&s.with_f(s.f.reflected()));
    let reflected = analytic::twopoint::i_pow_2d(s.d) * refl.value.conj();
    let scale = s.constant().norm();
    let strip = tc
        .z
        .iter()
        .map(|&z| {
            let zc = Complex64::new(z[0], z[1]);
            let q = analytic::bw_continuation(&s, zc)?;
            Ok(StripValue { z, value: Estimate::new(bw_value(&s, zc)?, q.error * scale) })
        })
        .collect::<Result<_>>()?;
    let row = TwoPointRow {
        d_a: da,
        d_b: db,
        pairing: [s.pairing.re, s.pairing.im],
        series: Estimate::new(series.value, series.tail),
        integral: Estimate::new(integral.value, integral.error),
        bw: Estimate::new(bw, bw_quad.error * scale),
        reflected: Estimate::new(reflected, refl.tail),
        series_vs_integral: rel(series.value, integral.value),
        bw_vs_reflected: rel(bw, reflected),
        strip,
    };
    Ok(row)
}

/// Per-record CSV rendering of a report.
pub fn report_csv(report: &CheckReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "tag", "inputs", "domain", "residual", "tolerance", "budget", "truncated", "verdict", "witness"])?;
    for r in &report.records {
        let (domain, residual) = match &r.residual {
            Residual::Exact(s) => ("exact", s.clone()),
            Residual::Approx(x) => ("approx", format!("{x:e}")),
        };
        w.write_record([
            report.suite.as_str(),
            &r.tag,
            &r.inputs,
            domain,
            &residual,
            &format!("{:e}", r.tolerance),
            &format!("{:e}", r.truncation_budget),
            &r.truncated.to_string(),
            &r.verdict.to_string(),
            r.witness.as_deref().unwrap_or(""),
        ])?;
    }
    finish_csv(w)
}

/// CSV table of graded dimensions (and signatures, when present).
pub fn dims_csv(rows: &[DimRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    finish_csv(w)
}

/// Single-row CSV rendering of a two-point report.
pub fn twopoint_csv(row: &TwoPointRow) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head: Vec<String> = ["d_a", "d_b", "pairing_re", "pairing_im"].iter().map(|s| s.to_string()).collect();
    let mut vals = vec![row.d_a.to_string(), row.d_b.to_string(), row.pairing[0].to_string(), row.pairing[1].to_string()];
    for (name, e) in [("series", row.series), ("integral", row.integral), ("bw", row.bw), ("reflected", row.reflected)] {
        for (suffix, x) in [("re", e.re), ("im", e.im), ("err", e.err)] {
            head.push(format!("{name}_{suffix}"));
            vals.push(format!("{x:e}"));
        }
    }
    head.extend(["series_vs_integral".into(), "bw_vs_reflected".into()]);
    vals.extend([format!("{:e}", row.series_vs_integral), format!("{:e}", row.bw_vs_reflected)]);
    w.write_record(&head)?;
    w.write_record(&vals)?;
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Parser, Debug)]
#[command(name = "vosa", version, about = "Build vertex operator superalgebra models and verify them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a model and print its fingerprint and graded dimensions.
    Build(Common),
    /// Run verification suites and write a check report.
    Verify(Common),
    /// Compare the two-point series, integral and boundary value.
    Twopoint(Common),
    /// Print the graded-dimension table.
    Dims {
        #[command(flatten)]
        common: Common,
        /// Add the inertia (positive, negative, null) of each Gram matrix.
        #[arg(long)]
        signatures: bool,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Model descriptor (JSON).
    #[arg(long)]
    model: Option<PathBuf>,
    /// Suite config (JSON); flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Weight cutoff, e.g. 6 or 13/2.
    #[arg(long)]
    cutoff: Option<HalfInt>,
    /// Tolerance of every numerical check.
    #[arg(long)]
    tol: Option<f64>,
    /// Fourier band of the test functions (default 256).
    #[arg(long)]
    band: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for sampled checks and test functions (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Keep wall times in the report (makes it non-reproducible).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn config(&self) -> Result<SuiteConfig> {
        let mut cfg = match &self.config {
            Some(p) => SuiteConfig::load(p)?,
            None => SuiteConfig::default(),
        };
        if let Some(m) = &self.model {
            cfg.model = Some(ModelSource::Path(m.clone()));
        }
        cfg.suite = self.suite.or(cfg.suite);
        cfg.cutoff = self.cutoff.or(cfg.cutoff);
        cfg.tol = self.tol.or(cfg.tol);
        cfg.band = self.band.or(cfg.band);
        cfg.jobs = self.jobs.or(cfg.jobs);
        cfg.seed = self.seed.or(cfg.seed);
        cfg.out = self.out.clone().or(cfg.out);
        cfg.format = self.format.or(cfg.format);
        Ok(cfg)
    }
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
        Error::Schema(_) | Error::Parse(_) | Error::Json(_) | Error::Argument(_) => EXIT_DATA,
        _ => EXIT_SOFTWARE,
    }
}

fn emit(cfg: &SuiteConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json(v: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn execute(command: Command) -> Result<i32> {
    let cache = std::env::var_os("VOSA_CACHE_DIR").map(PathBuf::from);
    let (common, signatures) = match &command {
        Command::Build(c) | Command::Verify(c) | Command::Twopoint(c) => (c, false),
        Command::Dims { common, signatures } => (common, *signatures),
    };
    let cfg = common.config()?;
    if let Some(j) = cfg.jobs {
        // a pool that is already initialized keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let desc = cfg.descriptor()?;
    let format = cfg.format.unwrap_or_default();
    match command {
        Command::Build(_) => {
            let (_, summary) = cmd_build(&desc, cache.as_deref())?;
            let text = match format {
                Format::Json => json(&summary)?,
                Format::Csv => {
                    let rows: Vec<DimRow> = summary
                        .dims
                        .iter()
                        .map(|d| DimRow {
                            weight: d.weight,
                            dim: d.dim,
                            even: d.even,
                            odd: d.odd,
                            positive: None,
                            negative: None,
                            null: None,
                        })
                        .collect();
                    let mut s = String::new();
                    let _ = writeln!(s, "# fingerprint {}", summary.fingerprint);
                    s + &dims_csv(&rows)?
                }
            };
            emit(&cfg, &text)?;
            Ok(0)
        }
        Command::Dims { .. } => {
            let rows = cmd_dims(&desc, cache.as_deref(), signatures)?;
            let text = match format {
                Format::Json => json(&rows)?,
                Format::Csv => dims_csv(&rows)?,
            };
            emit(&cfg, &text)?;
            Ok(0)
        }
        Command::Verify(_) => {
            let (model, _) = cmd_build(&desc, cache.as_deref())?;
            let mut report = cmd_verify(&model, &cfg)?;
            if !common.timings {
                report.wall_time_ms = None;
            }
            let text = match format {
                Format::Json => json(&report)?,
                Format::Csv => report_csv(&report)?,
            };
            emit(&cfg, &text)?;
            eprintln!("{}", report.summary());
            Ok(report.exit_code())
        }
        Command::Twopoint(_) => {
            let (model, _) = cmd_build(&desc, cache.as_deref())?;
            let row = cmd_twopoint(&model, &cfg)?;
            let text = match format {
                Format::Json => json(&row)?,
                Format::Csv => twopoint_csv(&row)?,
            };
            emit(&cfg, &text)?;
            Ok(0)
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_of(&e)
        }
    }
}
