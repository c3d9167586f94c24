//! The double cover of PSU(1,1) acting on the circle, its cocycles and the
//! representations β_d (untwisted) and α_d (twisted) on test functions.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::testfn::{chi, make_bump, Arc, BumpProfile, Profile, TestFunction, Twist};
use crate::error::Result;
use crate::fock::HalfInt;
use crate::report::{CheckRecord, CheckReport};

/// An element of SU(1,1), z ↦ (αz + β)/(β̄z + ᾱ), with |α|² − |β|² = 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusElement {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// A one-parameter subgroup element, used to describe group words in configs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MobiusWord {
    Rotation(f64),
    Dilation(f64),
    Translation(f64),
}

impl MobiusWord {
    pub fn element(self) -> MobiusElement {
        match self {
            MobiusWord::Rotation(t) => MobiusElement::rotation(t),
            MobiusWord::Dilation(l) => MobiusElement::dilation(l),
            MobiusWord::Translation(t) => MobiusElement::translation(t),
        }
    }
}

impl MobiusElement {
    pub fn identity() -> Self {
        MobiusElement { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    /// r(t): z ↦ e^{it}z, with α = e^{it/2} so that r(2π) is the nontrivial central element.
    pub fn rotation(t: f64) -> Self {
        MobiusElement { alpha: Complex64::from_polar(1.0, 0.5 * t), beta: Complex64::new(0.0, 0.0) }
    }

    /// δ(λ), fixing ±1.
    pub fn dilation(l: f64) -> Self {
        MobiusElement {
            alpha: Complex64::new((0.5 * l).cosh(), 0.0),
            beta: Complex64::new(-(0.5 * l).sinh(), 0.0),
        }
    }

    /// τ(t), fixing −1.
    pub fn translation(t: f64) -> Self {
        MobiusElement { alpha: Complex64::new(1.0, 0.25 * t), beta: Complex64::new(0.0, 0.25 * t) }
    }

    /// Product of a word, applied right to left.
    pub fn from_word(word: &[MobiusWord]) -> Self {
        word.iter().fold(Self::identity(), |acc, w| acc.compose(&w.element()))
    }

    /// self ∘ other as matrices.
    pub fn compose(&self, o: &MobiusElement) -> Self {
        MobiusElement {
            alpha: self.alpha * o.alpha + self.beta * o.beta.conj(),
            beta: self.alpha * o.beta + self.beta * o.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> Self {
        MobiusElement { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// |α|² − |β|².
    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    /// The image of e^{ix} as an angle in (−π, π].
    pub fn apply_angle(&self, x: f64) -> f64 {
        self.apply(Complex64::from_polar(1.0, x)).arg()
    }

    /// X_γ(z) = 1/|β̄z + ᾱ|², the derivative of the angle map.
    pub fn x_factor(&self, z: Complex64) -> f64 {
        1.0 / (self.beta.conj() * z + self.alpha.conj()).norm_sqr()
    }

    /// Y_γ(z) = (α + βz̄)/|α + βz̄|.
    pub fn y_factor(&self, z: Complex64) -> Complex64 {
        let w = self.alpha + self.beta * z.conj();
        w / w.norm()
    }

    /// ε_γ(z) = Y_γ(z)χ(z)/χ(γz) ∈ {±1}.
    pub fn epsilon(&self, z: Complex64) -> f64 {
        let e = self.y_factor(z) * chi(z.arg()) / chi(self.apply(z).arg());
        if e.re >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Distance to another element as matrices.
    pub fn distance(&self, o: &MobiusElement) -> f64 {
        (self.alpha - o.alpha).norm().max((self.beta - o.beta).norm())
    }

    /// A seeded random element (a rotation, dilation and translation product).
    pub fn random(rng: &mut impl Rng) -> Self {
        let t = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let l = rng.gen_range(-1.5..1.5);
        let s = rng.gen_range(-2.0..2.0);
        Self::from_word(&[MobiusWord::Rotation(t), MobiusWord::Dilation(l), MobiusWord::Translation(s)])
    }
}

/// β_d(γ)f or α_d(γ)g, by twist: X_γ(γ⁻¹z)^{d−1}(ε_{γ⁻¹}(z)) f(γ⁻¹z), resampled on the band.
pub fn mobius_action(d: HalfInt, gamma: &MobiusElement, f: &TestFunction) -> TestFunction {
    let support = f.support().map(|a: Arc| a.image(gamma));
    TestFunction::from_profile(
        Profile::Mobius { d, gamma: *gamma, inner: Box::new(f.clone()) },
        f.twist(),
        f.band(),
        support,
    )
}

fn sample_points(samples: usize) -> Vec<Complex64> {
    (0..samples)
        .map(|j| {
            let x = -std::f64::consts::PI + (j as f64 + 0.5) * 2.0 * std::f64::consts::PI / samples as f64;
            Complex64::from_polar(1.0, x)
        })
        .collect()
}

/// Cocycle identities for X and Y, the composition law and the α_d representation
/// property for one pair, on `samples` points of the circle.
pub fn mobius_cocycles_check(
    g1: &MobiusElement,
    g2: &MobiusElement,
    probe: &TestFunction,
    d: HalfInt,
    samples: usize,
    tol: f64,
) -> Vec<CheckRecord> {
    let g12 = g1.compose(g2);
    let pts = sample_points(samples);
    let inputs = format!("γ1={g1:?}, γ2={g2:?}");
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / (1.0 + b.norm());
    let mut x_res: f64 = 0.0;
    let mut y_res: f64 = 0.0;
    let mut c_res: f64 = 0.0;
    for &z in &pts {
        let w = g2.apply(z);
        x_res = x_res.max((g12.x_factor(z) - g1.x_factor(w) * g2.x_factor(z)).abs() / g12.x_factor(z));
        y_res = y_res.max(rel(g12.y_factor(z), g1.y_factor(w) * g2.y_factor(z)));
        c_res = c_res.max(rel(g12.apply(z), g1.apply(w)));
    }
    let mut out = vec![
        CheckRecord::approx("mobius.x_cocycle", inputs.clone(), x_res, tol, 0.0),
        CheckRecord::approx("mobius.y_cocycle", inputs.clone(), y_res, tol, 0.0),
        CheckRecord::approx("mobius.composition", inputs.clone(), c_res, tol, 0.0),
    ];
    let lhs = mobius_action(d, &g12, probe);
    let rhs = mobius_action(d, g1, &mobius_action(d, g2, probe));
    let scale = 1.0 + pts.iter().map(|z| lhs.eval(z.arg()).norm()).fold(0.0, f64::max);
    let rep = pts.iter().map(|z| (lhs.eval(z.arg()) - rhs.eval(z.arg())).norm()).fold(0.0, f64::max) / scale;
    let tag = match probe.twist() {
        Twist::Untwisted => "mobius.beta_representation",
        Twist::Twisted => "mobius.alpha_representation",
    };
    out.push(CheckRecord::approx(tag, format!("{inputs}, d={d}"), rep, tol, 0.0));
    out
}

/// A smooth real vector field f on the circle with its derivative, as (f(x), f'(x)).
pub type VectorField<'a> = &'a (dyn Fn(f64) -> (f64, f64) + Sync);

/// The flow of dφ/dt = v(φ) together with X = ∂φ/∂x, by RK4 with `steps` steps.
pub fn flow(v: VectorField, x: f64, t: f64, steps: usize) -> (f64, f64) {
    let h = t / steps as f64;
    let rhs = |p: f64, q: f64| {
        let (a, da) = v(p);
        (a, da * q)
    };
    let (mut p, mut q) = (x, 1.0);
    for _ in 0..steps {
        let k1 = rhs(p, q);
        let k2 = rhs(p + 0.5 * h * k1.0, q + 0.5 * h * k1.1);
        let k3 = rhs(p + 0.5 * h * k2.0, q + 0.5 * h * k2.1);
        let k4 = rhs(p + h * k3.0, q + h * k3.1);
        p += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        q += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    (p, q)
}

/// (β_d(exp(t v))f)(x) through the flow: γ_t⁻¹ is the time −t map.
pub fn flowed_value(d: f64, v: VectorField, f: &TestFunction, t: f64, x: f64) -> Complex64 {
    let (y, dy) = flow(v, x, -t, 64);
    f.eval_series(y) * (1.0 / dy).powf(d - 1.0)
}

/// d/dt β_d(exp(t f₁)) f₂ at t = 0 against (d−1)f₁′f₂ − f₁f₂′, by a central
/// difference with step `h`; the residual is relative to the sup of the right side.
pub fn beta_derivative_check(d: f64, f1: VectorField, f2: &TestFunction, samples: usize, h: f64, tol: f64) -> CheckRecord {
    let pts = sample_points(samples);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for z in pts {
        let x = z.arg();
        let (a, da) = f1(x);
        let exact = f2.eval_series(x) * ((d - 1.0) * da) - f2.derivative_series(x) * a;
        let fd = (flowed_value(d, f1, f2, h, x) - flowed_value(d, f1, f2, -h, x)) / (2.0 * h);
        worst = worst.max((fd - exact).norm());
        scale = scale.max(exact.norm());
    }
    CheckRecord::approx("mobius.derivative", format!("d={d}, samples={samples}, h={h}"), worst / scale.max(1e-300), tol, 0.0)
}

/// Full cocycle and derivative suite on `pairs` seeded random pairs.
pub fn mobius_suite(seed: u64, pairs: usize, samples: usize, tol: f64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("mobius", &format!("seed={seed}"));
    let bump = make_bump(Arc::new(-1.2, 1.9)?, BumpProfile::default(), Twist::Untwisted, 128, None)?;
    let tbump = make_bump(Arc::new(-1.0, 2.2)?, BumpProfile::default(), Twist::Twisted, 128, None)?;
    for i in 0..pairs {
        let g1 = MobiusElement::random(&mut rng);
        let g2 = MobiusElement::random(&mut rng);
        let (probe, d) = if i % 2 == 0 { (&bump, HalfInt::int(2)) } else { (&tbump, HalfInt::from_twice(3)) };
        report.records.extend(mobius_cocycles_check(&g1, &g2, probe, d, samples, tol));
        let (a, b, c): (f64, f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let field = move |x: f64| (a + b * x.cos() + c * x.sin(), -b * x.sin() + c * x.cos());
        report.push(beta_derivative_check(2.0, &field, &bump, samples, 1e-4, tol));
    }
    let cosine = |x: f64| (x.cos(), -x.sin());
    report.push(beta_derivative_check(2.0, &cosine, &bump, samples, 1e-4, tol));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn group_law_and_inverse() {
        let g = MobiusElement::from_word(&[MobiusWord::Dilation(0.7), MobiusWord::Translation(1.3)]);
        assert!((g.determinant() - 1.0).abs() < 1e-14);
        assert!(g.compose(&g.inverse()).distance(&MobiusElement::identity()) < 1e-14);
        let z = Complex64::from_polar(1.0, 0.4);
        assert!((g.apply(z).norm() - 1.0).abs() < 1e-14);
        let r = MobiusElement::rotation(0.3);
        assert!((r.apply_angle(0.4) - 0.7).abs() < 1e-14);
    }

    #[test]
    fn full_turn_is_minus_one_on_twisted_functions() {
        let r = MobiusElement::rotation(2.0 * PI);
        for x in [-2.0, 0.1, 3.0] {
            assert_eq!(r.epsilon(Complex64::from_polar(1.0, x)), -1.0);
        }
        let g = make_bump(Arc::new(0.2, 1.5).unwrap(), BumpProfile::default(), Twist::Twisted, 32, None).unwrap();
        let h = mobius_action(HalfInt::HALF, &r, &g);
        for (n, c) in g.coefficients() {
            assert!((h.coefficient(n) + c).norm() < 1e-14);
        }
    }

    #[test]
    fn rotations_act_by_phases() {
        let t = 0.37;
        for twist in [Twist::Untwisted, Twist::Twisted] {
            let g = make_bump(Arc::new(-2.0, 1.0).unwrap(), BumpProfile::default(), twist, 48, None).unwrap();
            let h = mobius_action(HalfInt::int(3), &MobiusElement::rotation(t), &g);
            for (n, c) in g.coefficients() {
                let want = c * Complex64::from_polar(1.0, -n.to_f64() * t);
                assert!((h.coefficient(n) - want).norm() < 1e-13, "{twist:?} n={n}");
            }
        }
    }

    #[test]
    fn dilation_flow_matches_the_vector_field() {
        // δ(λ) is generated by the field sin x
        let v = |x: f64| (x.sin(), x.cos());
        let x = 0.9;
        let (y, _) = flow(&v, x, 0.4, 256);
        let want = MobiusElement::dilation(0.4).apply_angle(x);
        assert!((y - want).abs() < 1e-9 || (y + want).abs() < 1e-9, "{y} vs {want}");
    }

    #[test]
    fn seeded_suite_passes() {
        let r = mobius_suite(7, 3, 64, 1e-6).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
