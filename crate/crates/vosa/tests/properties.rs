use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use vosa::analytic::testfn::chi;
use vosa::analytic::{smear, two_point_series, HilbertSpace, TestFunction, Twist, TwoPointSetup};
use vosa::fock::{binomial, canonicalize, Alphabet, BasisState, Generator, Gq, HalfInt, Mode, Parity, Scalar, Vector};
use vosa::models::{build, build_free_fermion, ModelDescriptor, VermaKind, VosaModel};
use vosa::modes::{full_basis, locality_order, shifted_to_n, Evaluator, VertexModel};
use vosa::unitarity::{pct_sign, PctCandidate, ScalarProduct};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn ns_alphabet() -> Alphabet {
    Alphabet::new(vec![
        Generator::new(0, "L", HalfInt::int(2), Parity::Even),
        Generator::new(1, "G", h(3), Parity::Odd),
    ])
}

fn ns_verma() -> &'static VosaModel {
    static M: OnceLock<VosaModel> = OnceLock::new();
    M.get_or_init(|| build(&ModelDescriptor::verma(VermaKind::Ns, Gq::ratio(7, 10), HalfInt::int(4), false)).unwrap())
}

fn n2_quotient() -> &'static VosaModel {
    static M: OnceLock<VosaModel> = OnceLock::new();
    M.get_or_init(|| build(&ModelDescriptor::verma(VermaKind::N2, Gq::int(1), HalfInt::int(3), true)).unwrap())
}

fn fermion() -> &'static VosaModel {
    static M: OnceLock<VosaModel> = OnceLock::new();
    M.get_or_init(|| build_free_fermion(HalfInt::int(8)))
}

fn basis_upto(model: &VosaModel, w: HalfInt) -> Vec<BasisState> {
    full_basis(model).into_iter().filter(|b| b.weight() <= w).collect()
}

/// Creation modes L_n (n ≤ −2) and G_n (n ≤ −3/2) with |n| ≤ 6.
fn creation_mode() -> impl Strategy<Value = Mode> {
    prop_oneof![
        (-6i64..=-2).prop_map(|n| Mode::new(0, HalfInt::int(n))),
        (0i64..5).prop_map(|k| Mode::new(1, h(-3 - 2 * k))),
    ]
}

fn coefficients(twist: Twist, band: usize) -> impl Strategy<Value = Vec<(HalfInt, Complex64)>> {
    let slots: Vec<HalfInt> = match twist {
        Twist::Untwisted => (-(band as i64)..=band as i64).map(HalfInt::int).collect(),
        Twist::Twisted => (-(band as i64)..band as i64).map(|k| h(2 * k + 1)).collect(),
    };
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), slots.len())
        .prop_map(move |v| slots.iter().zip(v).map(|(&n, (re, im))| (n, Complex64::new(re, im))).collect())
}

fn twist() -> impl Strategy<Value = Twist> {
    prop_oneof![Just(Twist::Untwisted), Just(Twist::Twisted)]
}

fn koszul_sign(order: &[usize], odd: &[bool]) -> i64 {
    let mut sign = 1;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] && odd[order[i]] && odd[order[j]] {
                sign = -sign;
            }
        }
    }
    sign
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_gadget_matches_the_closed_form(t in -40i64..=40) {
        let d = h(t);
        let want = if d.is_integer() { d.floor() } else { (d + HalfInt::HALF).floor() };
        prop_assert_eq!(pct_sign(d), if want.rem_euclid(2) == 0 { 1 } else { -1 });
    }

    #[test]
    fn canonicalization_is_coherent_under_permutation(
        modes in proptest::collection::vec(creation_mode(), 0..6),
        perm in Just(()).prop_perturb(|_, mut rng| { let mut p: Vec<usize> = (0..6).collect(); p.sort_by_key(|_| rng.next_u32()); p }),
    ) {
        let al = ns_alphabet();
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < modes.len()).collect();
        let shuffled: Vec<Mode> = order.iter().map(|&i| modes[i]).collect();
        let odd: Vec<bool> = modes.iter().map(|m| al.gen(m.gen).parity.is_odd()).collect();
        let a = canonicalize(&modes, &al, None).unwrap();
        let b = canonicalize(&shuffled, &al, None).unwrap();
        match (a, b) {
            (Some((sa, ea)), Some((sb, eb))) => {
                prop_assert_eq!(&sa, &sb);
                prop_assert_eq!(ea * eb, koszul_sign(&order, &odd));
                let weight = modes.iter().fold(HalfInt::ZERO, |w, m| w - m.index);
                prop_assert_eq!(sa.weight(), weight);
                let odd_count = odd.iter().filter(|&&o| o).count();
                prop_assert_eq!(sa.parity().is_odd(), odd_count % 2 == 1);
            }
            (None, None) => {}
            _ => prop_assert!(false, "exclusion depends on the order"),
        }
    }

    #[test]
    fn weight_is_additive_under_concatenation(
        m1 in proptest::collection::vec(creation_mode(), 0..4),
        m2 in proptest::collection::vec(creation_mode(), 0..4),
    ) {
        let al = ns_alphabet();
        let both: Vec<Mode> = m1.iter().chain(&m2).copied().collect();
        let w = |ms: &[Mode]| ms.iter().fold(HalfInt::ZERO, |w, m| w - m.index);
        if let Some((s, _)) = canonicalize(&both, &al, None).unwrap() {
            prop_assert_eq!(s.weight(), w(&m1) + w(&m2));
        }
    }

    #[test]
    fn generator_modes_obey_the_shift_laws(g in 0u16..2, t in -8i64..=8, c in 0usize..64) {
        let model = ns_verma();
        let states = basis_upto(model, HalfInt::int(3));
        let c = &states[c % states.len()];
        let gen = model.alphabet().gen(g);
        let n = if gen.weight.is_integer() { HalfInt::int(t / 2) } else { h(2 * (t / 2) + 1) };
        let out = model.act(g, n, c).unwrap();
        for (b, _) in out.iter() {
            prop_assert_eq!(b.weight(), c.weight() - n);
            prop_assert_eq!(b.parity(), c.parity() + gen.parity);
        }
    }

    #[test]
    fn commutator_formula_matches_the_j_sum(ga in 0u16..2, gb in 0u16..2, m in -3i64..=3, k in -3i64..=3, c in 0usize..32) {
        let model = ns_verma();
        let mut ev = Evaluator::new(model);
        let states = basis_upto(model, HalfInt::int(2));
        let cv = Vector::basis(states[c % states.len()].clone());
        let a = model.generator_state(ga);
        let b = model.generator_state(gb);
        let (da, db) = (a.weight().unwrap(), b.weight().unwrap());
        let shift = |d: HalfInt, i: i64| if d.is_integer() { HalfInt::int(i) } else { h(2 * i + 1) };
        let (ms, ks) = (shift(da, m), shift(db, k));
        let lhs = ev.graded_commutator(&a, ms, &b, ks, &cv).unwrap();
        let (mn, kn) = (shifted_to_n(ms, da).unwrap(), shifted_to_n(ks, db).unwrap());
        let mut rhs = Vector::zero();
        for j in 0..(da + db).ceil() {
            let ab = ev.apply_mode(&a, j, &b).unwrap();
            let t = ev.apply_mode(&ab, mn + kn - j, &cv).unwrap();
            rhs.add_scaled(&t, &Gq::big(binomial(mn, j)));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn locality_order_is_symmetric(ga in 0u16..2, gb in 0u16..2, c in 0usize..32, d in 0usize..32) {
        let model = ns_verma();
        let mut ev = Evaluator::new(model);
        let states = basis_upto(model, HalfInt::int(3));
        let cv = Vector::basis(states[c % states.len()].clone());
        let dv = &states[d % states.len()];
        let a = model.generator_state(ga);
        let b = model.generator_state(gb);
        prop_assert_eq!(
            locality_order(&mut ev, &a, &b, &cv, dv, 16).unwrap(),
            locality_order(&mut ev, &b, &a, &cv, dv, 16).unwrap()
        );
    }

    #[test]
    fn invariant_form_is_symmetric(i in 0usize..64, j in 0usize..64) {
        let model = n2_quotient();
        let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model)).unwrap();
        let states = basis_upto(model, HalfInt::int(3));
        let (a, b) = (&states[i % states.len()], &states[j % states.len()]);
        prop_assert_eq!(sp.form.bilinear_basis(a, b).unwrap(), sp.form.bilinear_basis(b, a).unwrap());
    }

    #[test]
    fn theta_is_antiunitary(i in 0usize..64, j in 0usize..64) {
        let model = n2_quotient();
        let mut sp = ScalarProduct::new(model, PctCandidate::default_for(model)).unwrap();
        let states = basis_upto(model, HalfInt::int(3));
        let a = Vector::basis(states[i % states.len()].clone());
        let b = Vector::basis(states[j % states.len()].clone());
        let (ta, tb) = (sp.theta.apply(&a).unwrap(), sp.theta.apply(&b).unwrap());
        prop_assert_eq!(sp.inner(&ta, &tb).unwrap(), sp.inner(&b, &a).unwrap().conj());
    }

    #[test]
    fn sobolev_norms_are_monotone_and_submultiplicative(
        tf in twist(), tg in twist(),
        s1 in 0.0f64..4.0, ds in 0.0f64..3.0,
        seed_f in coefficients(Twist::Untwisted, 5), seed_g in coefficients(Twist::Untwisted, 4),
        cf in coefficients(Twist::Twisted, 5), cg in coefficients(Twist::Twisted, 4),
    ) {
        let f = TestFunction::from_coefficients(tf, 5, if tf == Twist::Twisted { cf } else { seed_f }).unwrap();
        let g = TestFunction::from_coefficients(tg, 4, if tg == Twist::Twisted { cg } else { seed_g }).unwrap();
        prop_assert!(f.sobolev(s1) <= f.sobolev(s1 + ds) * (1.0 + 1e-12));
        let fg = f.product(&g);
        prop_assert_eq!(fg.twist(), tf.product(tg));
        prop_assert!(fg.sobolev(s1) <= f.sobolev(s1) * g.sobolev(s1) * (1.0 + 1e-12));
    }

    #[test]
    fn twisted_coefficients_shift_by_one_half(c in coefficients(Twist::Untwisted, 5)) {
        let hf = TestFunction::from_coefficients(Twist::Untwisted, 5, c).unwrap();
        let inner = hf.clone();
        let f = TestFunction::from_fn(Twist::Twisted, 8, None, move |x| chi(x) * inner.eval_series(x));
        for k in -8i64..8 {
            let want = hf.coefficient(HalfInt::int(k));
            prop_assert!((f.coefficient(h(2 * k + 1)) - want).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_norm_equals_the_fock_norm(cf in coefficients(Twist::Twisted, 6), cn in coefficients(Twist::Untwisted, 6)) {
        let model = fermion();
        let mut hs = HilbertSpace::new(model).unwrap();
        let omega = vosa::fock::CVector::vacuum();
        let cases = [
            (model.generator_state(0), TestFunction::from_coefficients(Twist::Twisted, 6, cf).unwrap(), 1.0),
            (model.conformal().clone(), TestFunction::from_coefficients(Twist::Untwisted, 6, cn).unwrap(), 0.25),
        ];
        for (a, f, pairing) in cases {
            let d = a.weight().unwrap();
            let v = smear(model, &a, &f, &omega).unwrap();
            let direct = hs.norm(&v).unwrap().powi(2);
            let s = TwoPointSetup::from_parts(d, Complex64::new(pairing, 0.0), f.clone(), f).unwrap();
            let series = two_point_series(&s).value;
            prop_assert!(series.im.abs() <= 1e-12 * direct.max(1.0));
            prop_assert!((series.re - direct).abs() <= 1e-12 * direct.max(1.0), "series {} vs norm {}", series.re, direct);
        }
    }
}
