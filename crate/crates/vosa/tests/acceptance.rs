//! End-to-end acceptance suite: one line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use vosa::analytic::{
    basis_states, bw_check, energy_bound_fit, make_bump, mobius_suite, quarter_arcs, seeded_bump_pair,
    series_integral_check, wightman_locality_check, zeroth_order_certificate, Arc, BumpProfile, BwTolerances,
    HilbertSpace, LocalityOptions, Twist, TwoPointSetup,
};
use vosa::fock::{Gq, HalfInt, Vector};
use vosa::models::{build, build_free_fermion, superalgebra_check, virasoro_check, ModelDescriptor, VermaKind, VosaModel};
use vosa::modes::{field_locality_order, sampled_borcherds, Evaluator};
use vosa::report::{CheckReport, Residual, Verdict};
use vosa::unitarity::{gram, PctCandidate, ScalarProduct};
use vosa::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn ns(c: &str, cutoff: HalfInt, quotient: bool) -> Result<VosaModel> {
    build(&ModelDescriptor::verma(VermaKind::Ns, c.parse()?, cutoff, quotient))
}

fn scalar_product(model: &VosaModel) -> Result<ScalarProduct<'_>> {
    ScalarProduct::new(model, PctCandidate::default_for(model))
}

fn untruncated(r: &CheckReport) -> bool {
    r.records.iter().all(|x| !x.truncated)
}

fn virasoro_in_fermion() -> Result<Outcome> {
    let f = build_free_fermion(h(27));
    let report = virasoro_check(&f, 4, h(11))?;
    let mut ev = Evaluator::new(&f);
    let nu = f.conformal().clone();
    let l_m2 = ev.apply_mode(&nu, -1, &Vector::vacuum())?;
    let l2l_m2 = ev.apply_mode(&nu, 3, &l_m2)?;
    let central = l2l_m2 == Vector::vacuum().scale(&Gq::ratio(1, 4));
    outcome(
        report.passed() && untruncated(&report) && central,
        format!("{} exact records, L_2 L_-2 vacuum = (c/2) vacuum with c = 1/2: {central}", report.records.len()),
    )
}

fn ns_relations() -> Result<Outcome> {
    let mut total = 0;
    let mut ok = true;
    for c in ["7/10", "3/2"] {
        let m = ns(c, HalfInt::int(12), false)?;
        let r = superalgebra_check(&m, VermaKind::Ns, HalfInt::int(3), HalfInt::int(5))?;
        ok &= r.passed() && untruncated(&r);
        total += r.records.len();
    }
    outcome(ok, format!("{total} exact records for c = 7/10 and c = 3/2"))
}

fn borcherds() -> Result<Outcome> {
    let f = build_free_fermion(HalfInt::int(6));
    let v = ns("7/10", HalfInt::int(6), false)?;
    let rf = sampled_borcherds(&f, HalfInt::int(2), 120, 3, 11, &f.fingerprint())?;
    let rv = sampled_borcherds(&v, HalfInt::int(2), 120, 3, 11, &v.fingerprint())?;
    outcome(
        rf.passed() && rv.passed() && rf.records.len() >= 100 && rv.records.len() >= 100,
        format!("{} samples in F, {} in V^7/10(NS), all residuals zero", rf.records.len(), rv.records.len()),
    )
}

fn unitarity() -> Result<Outcome> {
    let f = build_free_fermion(HalfInt::int(6));
    let mut sp = scalar_product(&f)?;
    let mut fermion_pd = true;
    for t in 0..=12 {
        fermion_pd &= gram(&mut sp, h(t))?.positive_definite;
    }
    let verma = ns("7/10", HalfInt::int(6), false)?;
    let mut sp = scalar_product(&verma)?;
    let mut kernel_at = None;
    for t in 0..=12 {
        let g = gram(&mut sp, h(t))?;
        if !g.kernel.is_empty() {
            kernel_at = Some(h(t));
            break;
        }
    }
    let quotient = ns("7/10", HalfInt::int(6), true)?;
    let mut sq = scalar_product(&quotient)?;
    let mut quotient_pd = true;
    for t in 0..=12 {
        quotient_pd &= gram(&mut sq, h(t))?.positive_definite;
    }
    let nu = quotient.conformal().clone();
    let tau = quotient.superconformal().expect("NS model has τ").clone();
    let c = Gq::ratio(7, 10);
    let nu_ok = sq.inner(&nu, &nu)? == c.clone() * Gq::ratio(1, 2);
    let tau_ok = sq.inner(&tau, &tau)? == c * Gq::ratio(2, 3);
    outcome(
        fermion_pd && kernel_at.is_some() && quotient_pd && nu_ok && tau_ok,
        format!(
            "F positive definite to weight 6: {fermion_pd}; Verma kernel at weight {}; quotient positive definite: {quotient_pd}; (ν|ν) = c/2: {nu_ok}; (τ|τ) = 2c/3: {tau_ok}",
            kernel_at.map_or("none".into(), |w| w.to_string())
        ),
    )
}

fn locality_orders() -> Result<Outcome> {
    let f = build_free_fermion(HalfInt::int(6));
    let phi = f.generator_state(0);
    let nu = f.conformal().clone();
    let n_phi = field_locality_order(&f, &phi, &phi, HalfInt::int(5), 16)?;
    let n_nu = field_locality_order(&f, &nu, &nu, HalfInt::int(5), 16)?;
    outcome(n_phi == 1 && n_nu == 4, format!("N(φ,φ) = {n_phi}, N(ν,ν) = {n_nu}"))
}

fn wightman() -> Result<Outcome> {
    let small = build_free_fermion(HalfInt::int(10));
    let mut sp = scalar_product(&small)?;
    let (bound, cert) = zeroth_order_certificate(&mut sp, &small.generator_state(0), HalfInt::int(6))?;
    let f = small.with_cutoff(HalfInt::int(140))?;
    let phi = f.generator_state(0);
    let (qa, qb) = quarter_arcs();
    let shrink = |q: Arc| Arc { start: q.start + 0.05, end: q.end - 0.05 };
    let fa = make_bump(shrink(qa), BumpProfile::default(), Twist::Twisted, 128, None)?;
    let ga = make_bump(shrink(qb), BumpProfile::default(), Twist::Twisted, 128, None)?;
    let mut hs = HilbertSpace::new(&f)?;
    let states = basis_states(&f, HalfInt::int(4));
    let opts = LocalityOptions { bound_a: bound, bound_b: bound, tol: 1e-9 };
    let r = wightman_locality_check(&mut hs, &phi, &fa, &phi, &ga, &states, &opts)?;
    let budget = r.records.iter().map(|x| x.truncation_budget).fold(0.0, f64::max);
    outcome(
        cert.passed() && r.passed(),
        format!("{} states, max ‖[Y(φ,f),Y(φ,g)]c‖ = {:.2e}, budget {budget:.2e}", states.len(), r.max_residual()),
    )
}

fn two_point_fields() -> Result<Vec<(VosaModel, Vector)>> {
    let (f1, f2) = (build_free_fermion(HalfInt::int(4)), build_free_fermion(HalfInt::int(4)));
    let q = ns("7/10", HalfInt::int(4), true)?;
    let phi = f1.generator_state(0);
    let nu = f2.conformal().clone();
    let tau = q.superconformal().expect("NS model has τ").clone();
    Ok(vec![(f1, phi), (q, tau), (f2, nu)])
}

fn two_point_chain() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (seed, (model, a)) in two_point_fields()?.into_iter().enumerate() {
        let start = Instant::now();
        let d = a.weight().expect("homogeneous");
        let (f, g) = seeded_bump_pair(d, 256, 100 + seed as u64)?;
        let mut sp = scalar_product(&model)?;
        let s = TwoPointSetup::new(&mut sp, &a, &a, f, g)?;
        let r = series_integral_check(&s, 1e-6)?;
        let secs = start.elapsed();
        ok &= r.verdict == Verdict::Pass && secs < Duration::from_secs(60);
        let res = match r.residual {
            Residual::Approx(x) => x,
            _ => f64::NAN,
        };
        parts.push(format!("d={d}: {res:.1e} in {:.1}s", secs.as_secs_f64()));
    }
    outcome(ok, parts.join(", "))
}

fn bisognano_wichmann() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (seed, (model, a)) in two_point_fields()?.into_iter().take(2).enumerate() {
        let d = a.weight().expect("homogeneous");
        let (f, g) = seeded_bump_pair(d, 256, 200 + seed as u64)?;
        let mut sp = scalar_product(&model)?;
        let s = TwoPointSetup::new(&mut sp, &a, &a, f, g)?;
        let r = bw_check(&s, &[0.05, -0.03, 0.12], BwTolerances::default())?;
        ok &= r.passed();
        let worst = |tag: &str| {
            r.records
                .iter()
                .filter(|x| x.tag == tag)
                .map(|x| match x.residual {
                    Residual::Approx(v) => v,
                    _ => f64::NAN,
                })
                .fold(0.0, f64::max)
        };
        parts.push(format!("d={d}: −i/2 {:.1e}, real t {:.1e}", worst("bw.boundary"), worst("bw.dilation")));
    }
    outcome(ok, parts.join(", "))
}

fn energy_bounds() -> Result<Outcome> {
    let f = build_free_fermion(HalfInt::int(7));
    let mut sp = scalar_product(&f)?;
    let (bound, cert) = zeroth_order_certificate(&mut sp, &f.generator_state(0), HalfInt::int(6))?;
    let f10 = build_free_fermion(HalfInt::int(10));
    let mut sp = scalar_product(&f10)?;
    let fit = energy_bound_fit(&mut sp, f10.conformal(), HalfInt::int(6), 4)?;
    let k = fit.bound.k;
    outcome(
        cert.passed() && bound.m == 1.0 && (0.8..=1.2).contains(&k),
        format!("‖φ_m c‖ ≤ {}‖c‖ on weights ≤ 6 ({} records); ν fit k = {k:.3}, s = {:.3}", bound.m, cert.records.len(), fit.bound.s),
    )
}

fn mobius() -> Result<Outcome> {
    let r = mobius_suite(2024, 20, 64, 1e-6)?;
    outcome(r.passed(), format!("{} records over 20 pairs, max relative residual {:.1e}", r.records.len(), r.max_residual()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("Virasoro relations in F", virasoro_in_fermion),
        ("NS relations", ns_relations),
        ("Borcherds identity", borcherds),
        ("unitarity", unitarity),
        ("locality order", locality_orders),
        ("Wightman locality", wightman),
        ("two-point chain", two_point_chain),
        ("Bisognano-Wichmann", bisognano_wichmann),
        ("energy bounds", energy_bounds),
        ("Möbius cocycles", mobius),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<22} {} ({:.1}s) {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
