use vosa::fock::{BasisState, Generator, Gq, HalfInt, Mode, Parity, Scalar, Vector};
use vosa::models::algebras::{Abelian, NS_G, NS_L};
use vosa::models::{
    build, build_custom, build_free_fermion, build_graded_tensor, build_verma, cft_type_check,
    superalgebra_check, translation_check, virasoro_check, ModelDescriptor, VermaKind, VosaModel,
};
use vosa::modes::{Evaluator, VertexModel};

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn monomial(model: &VosaModel, modes: &[(u16, i64)]) -> Vector {
    let ms = modes.iter().map(|&(g, t)| Mode::new(g, h(t))).collect();
    Vector::basis(BasisState::from_sorted(ms, model.alphabet()))
}

fn dims(model: &VosaModel) -> Vec<usize> {
    model.graded_dimensions().iter().map(|r| r.dim).collect()
}

/// Number of partitions of `n` into distinct odd parts.
fn distinct_odd_partitions(n: usize) -> usize {
    let mut c = vec![0usize; n + 1];
    c[0] = 1;
    for part in (1..=n).step_by(2) {
        for w in (part..=n).rev() {
            c[w] += c[w - part];
        }
    }
    c[n]
}

#[test]
fn free_fermion_graded_dimensions() {
    let f = build_free_fermion(HalfInt::int(4));
    assert_eq!(dims(&f), vec![1, 1, 0, 1, 1, 1, 1, 1, 2]);
    let f = build_free_fermion(HalfInt::int(9));
    for (t, d) in dims(&f).into_iter().enumerate() {
        assert_eq!(d, distinct_odd_partitions(t));
    }
}

#[test]
fn free_fermion_mode_examples() {
    let f = build_free_fermion(HalfInt::int(4));
    let mut ev = Evaluator::new(&f);
    let nu = f.conformal().clone();
    let s = monomial(&f, &[(0, -3), (0, -1)]);
    assert_eq!(ev.apply_mode(&nu, 1, &s).unwrap(), s.scale(&Gq::int(2)));
    assert_eq!(ev.apply_mode(&s, -1, &Vector::vacuum()).unwrap(), s);
    let phi = f.generator_state(0);
    let t = ev.apply_shifted(&phi, h(1), &phi).unwrap();
    assert_eq!(t, Vector::vacuum());
    // [L_2, L_-2]Ω = (c/2)Ω
    let l_m2 = ev.apply_mode(&nu, -1, &Vector::vacuum()).unwrap();
    let back = ev.apply_mode(&nu, 3, &l_m2).unwrap();
    assert_eq!(back, Vector::vacuum().scale(&Gq::ratio(1, 4)));
}

#[test]
fn free_fermion_virasoro_and_translation() {
    let f = build_free_fermion(h(9));
    let r = virasoro_check(&f, 2, h(5)).unwrap();
    assert!(r.passed(), "{}", r.summary());
    let phi = f.generator_state(0);
    let t = translation_check(&f, &[phi, f.conformal().clone()], 2).unwrap();
    assert!(t.passed(), "{}", t.summary());
}

#[test]
fn tensor_product_structure() {
    let f2 = build_graded_tensor(build_free_fermion(HalfInt::int(3)), build_free_fermion(HalfInt::int(4)));
    assert_eq!(f2.central_charge(), &Gq::int(1));
    assert_eq!(f2.cutoff(), HalfInt::int(3));
    assert_eq!(f2.basis(HalfInt::ZERO), vec![BasisState::vacuum()]);
    let both = monomial(&f2, &[(0, -1), (1, -1)]);
    assert_eq!(both.parity(), Some(Parity::Even));
    let r = virasoro_check(&f2, 1, h(2)).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn ns_verma_examples() {
    let ns = build_verma(VermaKind::Ns, Gq::ratio(15, 2), HalfInt::int(5));
    let mut ev = Evaluator::new(&ns);
    let tau = ns.superconformal().unwrap().clone();
    let nu = ns.conformal().clone();
    let g = ns.generator_state(NS_G);
    assert_eq!(ev.apply_shifted(&g, h(-1), &tau).unwrap(), nu.scale(&Gq::int(2)));
    assert!(ev.apply_shifted(&nu, HalfInt::int(1), &tau).unwrap().is_zero());
    assert!(ev.apply_shifted(&nu, HalfInt::int(2), &tau).unwrap().is_zero());
    let s = monomial(&ns, &[(NS_L, -4), (NS_G, -3)]);
    assert_eq!(ev.apply_shifted(&nu, HalfInt::ZERO, &s).unwrap(), s.scale(&Gq::ratio(7, 2)));
    let d = dims(&ns);
    assert_eq!(&d[..5], &[1, 0, 0, 1, 1]);
    let r = superalgebra_check(&ns, VermaKind::Ns, h(3), h(3)).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn n2_relations() {
    let n2 = build_verma(VermaKind::N2, Gq::int(1), HalfInt::int(4));
    let r = superalgebra_check(&n2, VermaKind::N2, h(2), h(2)).unwrap();
    assert!(r.passed(), "{}", r.summary());
    let mut ev = Evaluator::new(&n2);
    let j = n2.generator_by_name("J").unwrap();
    let jm = ev.apply_shifted(&j, HalfInt::int(-2), &Vector::vacuum()).unwrap();
    let back = ev.apply_shifted(&j, HalfInt::int(2), &jm).unwrap();
    assert_eq!(back, Vector::vacuum().scale(&Gq::ratio(2, 3)));
}

#[test]
fn quotient_removes_null_vectors_at_unitary_minimal_c() {
    let desc = ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(7, 10), HalfInt::int(6), true);
    let q = build(&desc).unwrap();
    let (verma, kernels) = q.quotient_parts().unwrap();
    let vd = dims(verma);
    let qd = dims(&q);
    assert!(qd.iter().zip(&vd).all(|(a, b)| a <= b));
    assert!(qd.iter().zip(&vd).any(|(a, b)| a < b));
    assert!(kernels.values().any(|k| !k.is_empty()));
    assert_eq!(q.basis(HalfInt::ZERO), vec![BasisState::vacuum()]);
    let r = superalgebra_check(&q, VermaKind::Ns, h(2), h(2)).unwrap();
    assert!(r.passed(), "{}", r.summary());

    let generic = build(&ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(3, 2), HalfInt::int(6), true)).unwrap();
    let (_, k) = generic.quotient_parts().unwrap();
    assert!(k.values().all(|k| k.is_empty()));
}

#[test]
fn quotient_rejects_non_unitary_c() {
    let desc = ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(1, 2), HalfInt::int(3), true);
    assert!(build(&desc).is_err());
}

#[test]
fn cft_type() {
    let f = build_free_fermion(HalfInt::int(2));
    assert!(cft_type_check(&f).0);
    let ns = build_verma(VermaKind::Ns, Gq::ratio(7, 10), HalfInt::int(3));
    assert!(cft_type_check(&ns).0);
    let al = vosa::fock::Alphabet::new(vec![
        Generator::new(0, "φ", HalfInt::HALF, Parity::Odd),
        Generator::new(1, "e", HalfInt::ZERO, Parity::Even),
    ]);
    let bad = build_custom("degenerate", al, Box::new(Abelian), HalfInt::int(1), Gq::zero(), Vector::zero());
    let (ok, report) = cft_type_check(&bad);
    assert!(!ok);
    assert!(!report.passed());
    let trivial = build_free_fermion(HalfInt::ZERO);
    assert_eq!(dims(&trivial), vec![1]);
}

#[test]
fn descriptor_round_trip_builds_same_model() {
    let d = ModelDescriptor::parse(r#"{"kind":"free_fermion","cutoff":"13/2"}"#).unwrap();
    let m = build(&d).unwrap();
    let back = ModelDescriptor::parse(&m.descriptor().to_json()).unwrap();
    assert_eq!(build(&back).unwrap().fingerprint(), m.fingerprint());
}
