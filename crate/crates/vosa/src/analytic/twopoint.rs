//! Two-point functions (Y(a,f)Ω | Y(b,g)Ω): the mode series, the momentum-space
//! integral through the Cayley transform, and its continuation into the strip
//! −½ ≤ Im z ≤ 0 along the dilation flow.
//!
//! The Cayley transform is C(e^{iθ}) = 2 tan(θ/2), so the upper semicircle maps onto
//! (0, ∞) and f^ℝ(x) = (1 + x²/4)^{d−1} f(C⁻¹x).

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mobius::{mobius_action, MobiusElement};
use super::quadrature::{integrate, integrate_half_line, Quad, QuadOptions};
use super::testfn::{make_bump, Arc, BumpProfile, TestFunction, Twist};
use crate::error::{Error, Result};
use crate::fock::{HalfInt, Scalar, Vector};
use crate::report::{CheckRecord, CheckReport};
use crate::unitarity::{is_quasi_primary, ScalarProduct};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// x = 2 tan(θ/2).
pub fn cayley(theta: f64) -> f64 {
    2.0 * (0.5 * theta).tan()
}

/// θ = 2 arctan(x/2) ∈ (−π, π).
pub fn inverse_cayley(x: f64) -> f64 {
    2.0 * (0.5 * x).atan()
}

fn gamma_2d(d: HalfInt) -> f64 {
    (1..d.twice()).map(|i| i as f64).product()
}

fn support_of(f: &TestFunction) -> Result<Arc> {
    let arc = f
        .support()
        .ok_or_else(|| Error::Argument("the real-line transform needs a compactly supported function".into()))?
        .normalized();
    if !arc.avoids_minus_one() {
        return Err(Error::Argument("the support must avoid −1".into()));
    }
    Ok(arc)
}

/// f̂^ℝ(ζ) = (2π)^{−½} ∫ f^ℝ(x) e^{−iζx} dx for complex ζ, computed in the angle
/// variable as (2π)^{−½} ∫ (1 + x²/4)^d f(θ) e^{−iζx(θ)} dθ over the support.
pub fn real_line_transform(f: &TestFunction, d: HalfInt, zeta: Complex64, opts: QuadOptions) -> Result<Quad> {
    let arc = support_of(f)?;
    let df = d.to_f64();
    let mut q = integrate(
        |t| {
            let x = cayley(t);
            f.eval(t) * (1.0 + 0.25 * x * x).powf(df) * (-I * zeta * x).exp()
        },
        arc.start,
        arc.end,
        opts,
    )?;
    let norm = (2.0 * PI).sqrt().recip();
    q.value *= norm;
    q.error *= norm;
    Ok(q)
}

/// [`real_line_transform`] with values below the resolution floor of `opts` set to zero.
fn resolved_transform(f: &TestFunction, d: HalfInt, zeta: Complex64, opts: QuadOptions) -> Result<Complex64> {
    let v = real_line_transform(f, d, zeta, opts)?.value;
    Ok(if v.norm() <= 8.0 * opts.abs_tol { Complex64::new(0.0, 0.0) } else { v })
}

/// Quadrature options for the transforms of `f`: the absolute tolerance is set to
/// `rel` times ∫|f^ℝ|, the scale below which cancellation in the oscillatory
/// integral cannot resolve the value.
pub fn transform_options(f: &TestFunction, d: HalfInt, rel: f64) -> Result<QuadOptions> {
    let arc = support_of(f)?;
    let df = d.to_f64();
    let l1 = integrate(
        |t| {
            let x = cayley(t);
            Complex64::new(f.eval(t).norm() * (1.0 + 0.25 * x * x).powf(df), 0.0)
        },
        arc.start,
        arc.end,
        QuadOptions::tol(0.0, 1e-8),
    )?;
    Ok(QuadOptions { abs_tol: rel * l1.value.re / (2.0 * PI).sqrt(), rel_tol: rel, max_intervals: 20000, parallel: false })
}

/// The momentum beyond which both transforms stay below their resolution floor:
/// the first p = 2^k where they vanish, confirmed at 2^{k+1}.
fn momentum_cutoff(s: &TwoPointSetup, fo: QuadOptions, go: QuadOptions) -> Result<f64> {
    let mut quiet = 0;
    let mut p: f64 = 1.0;
    let mut first = p;
    while quiet < 2 {
        p *= 2.0;
        if p > 1e9 {
            return Err(Error::Quadrature("real-line transforms do not decay".into()));
        }
        let mz = Complex64::new(-p, 0.0);
        let zero = resolved_transform(&s.f, s.d, mz, fo)?.norm() == 0.0
            && resolved_transform(&s.g, s.d, mz, go)?.norm() == 0.0;
        quiet = if zero { quiet + 1 } else { 0 };
        if quiet == 1 {
            first = p;
        }
    }
    Ok(first)
}

/// Quasi-primary fields of a common weight d with their pairing (a|b) and test functions.
#[derive(Clone, Debug)]
pub struct TwoPointSetup {
    pub d: HalfInt,
    /// (a|b), or 0 when the weights differ.
    pub pairing: Complex64,
    pub f: TestFunction,
    pub g: TestFunction,
    /// Outer (momentum) quadrature options.
    pub quad: QuadOptions,
    /// Relative accuracy of the inner real-line transforms.
    pub inner_rel: f64,
}

/// A series value with the certified bound on the omitted terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail: f64,
}

impl TwoPointSetup {
    /// Checks quasi-primarity of a and b and the twists of f and g.
    pub fn new(sp: &mut ScalarProduct, a: &Vector, b: &Vector, f: TestFunction, g: TestFunction) -> Result<Self> {
        for v in [a, b] {
            if !is_quasi_primary(sp, v)? {
                return Err(Error::NotQuasiPrimary(format!("{v:?}")));
            }
        }
        let da = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
        let db = b.weight().ok_or_else(|| Error::Inhomogeneous(format!("{b:?}")))?;
        let pairing = if da == db { sp.inner(a, b)?.to_complex() } else { Complex64::new(0.0, 0.0) };
        Self::from_parts(da, pairing, f, g)
    }

    /// A setup from the weight and the pairing directly.
    pub fn from_parts(d: HalfInt, pairing: Complex64, f: TestFunction, g: TestFunction) -> Result<Self> {
        if d <= HalfInt::ZERO {
            return Err(Error::Argument(format!("two-point functions need d > 0, got {d}")));
        }
        let twist = Twist::for_weight(d);
        if f.twist() != twist || g.twist() != twist {
            return Err(Error::Argument(format!("test functions must be {twist:?} for d = {d}")));
        }
        Ok(TwoPointSetup { d, pairing, f, g, quad: QuadOptions::tol(0.0, 1e-11), inner_rel: 1e-12 })
    }

    /// Same setup with f replaced.
    pub fn with_f(&self, f: TestFunction) -> Self {
        TwoPointSetup { f, ..self.clone() }
    }

    /// C = (a|b)/(2π Γ(2d)).
    pub fn constant(&self) -> Complex64 {
        self.pairing / (2.0 * PI * gamma_2d(self.d))
    }
}

/// (Y(a,f)Ω|Y(b,g)Ω) = (a|b) Σ_{n ≤ −d} binom(d−n−1, −n−d) conj(f̂_n) ĝ_n over the band.
pub fn two_point_series(s: &TwoPointSetup) -> SeriesValue {
    if s.pairing == Complex64::new(0.0, 0.0) {
        return SeriesValue { value: s.pairing, tail: 0.0 };
    }
    let r = s.d.twice() - 1;
    let mut binom = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let band = s.f.band().min(s.g.band());
    for m in 0..=band {
        let n = -s.d - HalfInt::int(m as i64);
        if n.to_f64().abs() > band as f64 {
            break;
        }
        if m > 0 {
            binom *= (r as f64 + m as f64) / m as f64;
        }
        sum += s.f.coefficient(n).conj() * s.g.coefficient(n) * binom;
    }
    let mut tail = 0.0;
    if !(s.f.exact_band() && s.g.exact_band()) {
        let m0 = match s.f.twist() {
            Twist::Untwisted => band as f64 + 1.0,
            Twist::Twisted => band as f64 + 0.5,
        };
        let (cf, cg) = (s.f.decay_certificate(), s.g.decay_certificate());
        let two_d = s.d.to_f64() * 2.0;
        tail = f64::INFINITY;
        for (k, a) in cf.iter().enumerate() {
            for (j, b) in cg.iter().enumerate() {
                let q = (k + j) as f64 - two_d;
                if q > 0.0 {
                    tail = tail.min(a * b * m0.powf(-q) / q);
                }
            }
        }
        tail *= s.pairing.norm() / gamma_2d(s.d);
    }
    SeriesValue { value: sum * s.pairing, tail }
}

/// C ∫₀^∞ conj(f̂^ℝ(−p)) ĝ^ℝ(−p) p^{2d−1} dp by nested adaptive quadrature.
pub fn two_point_integral(s: &TwoPointSetup) -> Result<Quad> {
    if s.pairing == Complex64::new(0.0, 0.0) {
        return Ok(Quad { value: s.pairing, error: 0.0, evaluations: 0 });
    }
    let e = 2.0 * s.d.to_f64() - 1.0;
    let (fo, go) = (transform_options(&s.f, s.d, s.inner_rel)?, transform_options(&s.g, s.d, s.inner_rel)?);
    let outer = s.quad.parallel(true);
    let p_max = momentum_cutoff(s, fo, go)?;
    let integrand = |p: f64| -> Complex64 {
        if p > p_max {
            return Complex64::new(0.0, 0.0);
        }
        let mz = Complex64::new(-p, 0.0);
        match (resolved_transform(&s.f, s.d, mz, fo), resolved_transform(&s.g, s.d, mz, go)) {
            (Ok(a), Ok(b)) => a.conj() * b * p.powf(e),
            _ => Complex64::new(f64::NAN, 0.0),
        }
    };
    support_of(&s.f)?;
    support_of(&s.g)?;
    let mut q = integrate_half_line(integrand, outer)?;
    if !q.value.is_finite() {
        return Err(Error::Quadrature("inner transform failed".into()));
    }
    let c = s.constant();
    q.value *= c;
    q.error *= c.norm();
    Ok(q)
}

/// The strip −½ ≤ Im z ≤ 0, with a little slack for rounding.
fn in_strip(z: Complex64) -> bool {
    z.im <= 1e-12 && z.im >= -0.5 - 1e-12
}

/// F(z) = ∫₀^∞ conj(ĝ^ℝ(−p)) e^{−2πzd} f̂^ℝ(−e^{−2πz}p) p^{2d−1} dp for z in the strip.
/// Away from the real axis f must be supported in the upper semicircle.
pub fn bw_continuation(s: &TwoPointSetup, z: Complex64) -> Result<Quad> {
    if !in_strip(z) {
        return Err(Error::Argument(format!("z = {z} lies outside the strip −1/2 ≤ Im z ≤ 0")));
    }
    if z.im != 0.0 && !support_of(&s.f)?.in_upper_semicircle() {
        return Err(Error::Argument("continuation off the real axis needs supp f in the upper semicircle".into()));
    }
    support_of(&s.g)?;
    let df = s.d.to_f64();
    let e = 2.0 * df - 1.0;
    let scale = (-2.0 * PI * z).exp();
    let weight = (-2.0 * PI * z * df).exp();
    let (fo, go) = (transform_options(&s.f, s.d, s.inner_rel)?, transform_options(&s.g, s.d, s.inner_rel)?);
    let p_max = momentum_cutoff(s, fo, go)?;
    let integrand = |p: f64| -> Complex64 {
        if p > p_max {
            return Complex64::new(0.0, 0.0);
        }
        let gz = resolved_transform(&s.g, s.d, Complex64::new(-p, 0.0), go);
        let fz = resolved_transform(&s.f, s.d, -scale * p, fo);
        match (gz, fz) {
            (Ok(a), Ok(b)) => a.conj() * weight * b * p.powf(e),
            _ => Complex64::new(f64::NAN, 0.0),
        }
    };
    let q = integrate_half_line(integrand, s.quad.parallel(true))?;
    if !q.value.is_finite() {
        return Err(Error::Quadrature("inner transform failed".into()));
    }
    Ok(q)
}

/// conj(C)·F(z), which equals (Y(b,g)Ω | e^{izK} Y(a,f)Ω) with K the dilation generator.
pub fn bw_value(s: &TwoPointSetup, z: Complex64) -> Result<Complex64> {
    Ok(s.constant().conj() * bw_continuation(s, z)?.value)
}

/// i^{2d}.
pub fn i_pow_2d(d: HalfInt) -> Complex64 {
    I.powi(d.twice() as i32)
}

/// Tolerances for [`bw_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BwTolerances {
    pub real: f64,
    pub boundary: f64,
    pub continuity: f64,
}

impl Default for BwTolerances {
    fn default() -> Self {
        BwTolerances { real: 1e-8, boundary: 1e-5, continuity: 1e-4 }
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// The dilation and boundary identities for F: for real t against the series pairing
/// with β_d(δ(−2πt))f, at z = −i/2 against i^{2d} times the pairing with f∘j, at z = 0
/// against the conjugated series, and continuity towards both edges of the strip.
pub fn bw_check(s: &TwoPointSetup, ts: &[f64], tol: BwTolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("analytic.bisognano_wichmann", &format!("d={}", s.d));
    let d = s.d;
    for &t in ts {
        let moved = mobius_action(d, &MobiusElement::dilation(-2.0 * PI * t), &s.f);
        let series = two_point_series(&s.with_f(moved));
        let want = series.value.conj();
        let got = bw_value(s, Complex64::new(t, 0.0))?;
        let budget = series.tail / want.norm().max(1e-300);
        report.push(CheckRecord::approx("bw.dilation", format!("d={d}, t={t}"), rel(got, want), tol.real, budget));
    }
    let reflected = two_point_series(&s.with_f(s.f.reflected()));
    let want = i_pow_2d(d) * reflected.value.conj();
    let half = Complex64::new(0.0, -0.5);
    let got = bw_value(s, half)?;
    let budget = reflected.tail / want.norm().max(1e-300);
    report.push(CheckRecord::approx("bw.boundary", format!("d={d}, z=-i/2"), rel(got, want), tol.boundary, budget));

    let direct = two_point_series(s);
    let want = direct.value.conj();
    let at_zero = bw_value(s, Complex64::new(0.0, 0.0))?;
    let budget = direct.tail / want.norm().max(1e-300);
    report.push(CheckRecord::approx("bw.origin", format!("d={d}, z=0"), rel(at_zero, want), tol.real, budget));

    let eps = 1e-7;
    let near = bw_value(s, Complex64::new(0.0, -0.5 + eps))?;
    report.push(CheckRecord::approx("bw.continuity", format!("d={d}, z=-i(1/2-{eps})"), rel(near, got), tol.continuity, 0.0));
    let below = bw_value(s, Complex64::new(0.0, -eps))?;
    report.push(CheckRecord::approx("bw.continuity", format!("d={d}, z=-i{eps}"), rel(below, at_zero), tol.continuity, 0.0));
    Ok(report)
}

impl TwoPointSetup {
    /// The setup with the roles of (a, f) and (b, g) exchanged.
    pub fn swapped(&self) -> Self {
        TwoPointSetup { pairing: self.pairing.conj(), f: self.g.clone(), g: self.f.clone(), ..self.clone() }
    }
}

/// Two seeded bumps inside the upper semicircle with the twist required by weight d.
pub fn seeded_bump_pair(d: HalfInt, band: usize, seed: u64) -> Result<(TestFunction, TestFunction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let twist = Twist::for_weight(d);
    let mut draw = || -> Result<TestFunction> {
        let arc = Arc::new(rng.gen_range(0.2..0.6), rng.gen_range(2.5..2.9))?;
        let profile = BumpProfile {
            sharpness: rng.gen_range(0.8..1.5),
            amplitude: [rng.gen_range(0.5..1.0), rng.gen_range(-0.3..0.3)],
            frequency: rng.gen_range(0.0..1.5),
        };
        make_bump(arc, profile, twist, band, None)
    };
    Ok((draw()?, draw()?))
}

/// Relative discrepancy |series − integral| / |integral| with the relative series tail.
pub fn series_integral_check(s: &TwoPointSetup, tol: f64) -> Result<CheckRecord> {
    let series = two_point_series(s);
    let integral = two_point_integral(s)?;
    let scale = integral.value.norm().max(1e-300);
    let budget = (series.tail + integral.error) / scale;
    Ok(CheckRecord::approx(
        "twopoint.series_vs_integral",
        format!("d={}, band={}", s.d, s.f.band().min(s.g.band())),
        (series.value - integral.value).norm() / scale,
        tol,
        budget,
    ))
}
