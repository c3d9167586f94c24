//! Smooth test functions on S¹ and on the χ-twisted bundle, stored by their
//! Fourier coefficients on a band |n| ≤ B.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc as Shared;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::mobius::MobiusElement;
use crate::error::{Error, Result};
use crate::fock::HalfInt;

/// Largest k in the decay certificate max |f̂_n|(1+|n|)^k.
pub const DECAY_ORDERS: usize = 16;

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// Untwisted functions have integer Fourier indices, χ-twisted ones half-odd indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Untwisted,
    Twisted,
}

impl Twist {
    /// The twist matching a field of weight `d` (twisted iff d ∉ ℤ).
    pub fn for_weight(d: HalfInt) -> Twist {
        if d.is_integer() {
            Twist::Untwisted
        } else {
            Twist::Twisted
        }
    }

    /// Combined twist of a pointwise product.
    pub fn product(self, other: Twist) -> Twist {
        if self == other {
            Twist::Untwisted
        } else {
            Twist::Twisted
        }
    }

    fn shift(self) -> f64 {
        match self {
            Twist::Untwisted => 0.0,
            Twist::Twisted => 0.5,
        }
    }
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// χ(e^{ix}) = e^{ix/2} with x ∈ (−π, π].
pub fn chi(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * wrap_angle(x))
}

/// Open arc {e^{iθ} : start < θ < end} of the circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", from = "[f64; 2]")]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl From<Arc> for [f64; 2] {
    fn from(a: Arc) -> Self {
        [a.start, a.end]
    }
}

impl From<[f64; 2]> for Arc {
    fn from(v: [f64; 2]) -> Self {
        Arc { start: v[0], end: v[1] }
    }
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Result<Arc> {
        let width = end - start;
        if !(width > 0.0 && width < 2.0 * PI) || !start.is_finite() {
            return Err(Error::Argument(format!("({start}, {end}) is not a proper arc")));
        }
        Ok(Arc { start, end }.normalized())
    }

    /// The upper semicircle {Im z > 0}, mapped by the Cayley transform onto (0, ∞).
    pub fn upper_semicircle() -> Arc {
        Arc { start: 0.0, end: PI }
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    /// Same arc with `start` in (−π, π].
    pub fn normalized(&self) -> Arc {
        let s = wrap_angle(self.start);
        Arc { start: s, end: s + self.width() }
    }

    /// The representative of the angle `x` in (start, end), if the point lies on the arc.
    pub fn local(&self, x: f64) -> Option<f64> {
        let off = (x - self.start).rem_euclid(2.0 * PI);
        (off > 0.0 && off < self.width()).then_some(self.start + off)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.local(x).is_some()
    }

    /// Whether the closure of the arc avoids −1.
    pub fn avoids_minus_one(&self) -> bool {
        let a = self.normalized();
        a.start > -PI && a.end < PI
    }

    /// Whether the arc lies in the closed upper semicircle.
    pub fn in_upper_semicircle(&self) -> bool {
        let a = self.normalized();
        a.start >= 0.0 && a.end <= PI
    }

    /// Whether two open arcs are disjoint.
    pub fn disjoint(&self, other: &Arc) -> bool {
        let off = (other.start - self.start).rem_euclid(2.0 * PI);
        off >= self.width() - 1e-12 && off + other.width() <= 2.0 * PI + 1e-12
    }

    /// Image under z ↦ z̄.
    pub fn reflected(&self) -> Arc {
        Arc { start: -self.end, end: -self.start }.normalized()
    }

    /// Image under a Möbius transformation.
    pub fn image(&self, g: &MobiusElement) -> Arc {
        let s = g.apply_angle(self.start);
        let e = g.apply_angle(self.end);
        let mut w = (e - s).rem_euclid(2.0 * PI);
        if w == 0.0 {
            w = 2.0 * PI;
        }
        Arc { start: s, end: s + w }.normalized()
    }

    /// Rotation by t.
    pub fn rotated(&self, t: f64) -> Arc {
        Arc { start: self.start + t, end: self.end + t }.normalized()
    }
}

/// Shape of a bump exp(−σ/(1−u²)) with u the affine coordinate (−1, 1) on the arc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BumpProfile {
    /// σ in exp(−σ/(1−u²)).
    pub sharpness: f64,
    pub amplitude: [f64; 2],
    /// Carrier frequency ω of the factor e^{iω(θ − mid)}.
    pub frequency: f64,
}

impl Default for BumpProfile {
    fn default() -> Self {
        BumpProfile { sharpness: 1.0, amplitude: [1.0, 0.0], frequency: 0.0 }
    }
}

impl BumpProfile {
    fn value(&self, arc: &Arc, x: f64) -> Complex64 {
        let Some(t) = arc.local(x) else { return C0 };
        let u = (2.0 * t - arc.start - arc.end) / arc.width();
        let q = 1.0 - u * u;
        if q <= 0.0 {
            return C0;
        }
        let amp = Complex64::new(self.amplitude[0], self.amplitude[1]);
        amp * (-self.sharpness / q).exp() * Complex64::from_polar(1.0, self.frequency * (t - arc.mid()))
    }
}

/// Pointwise rule used to evaluate a test function and to recompute its coefficients.
#[derive(Clone, Default)]
pub(crate) enum Profile {
    #[default]
    Fourier,
    Bump(Arc, BumpProfile),
    Mobius { d: HalfInt, gamma: MobiusElement, inner: Box<TestFunction> },
    Rotated { t: f64, inner: Box<TestFunction> },
    Reflected(Box<TestFunction>),
    Product(Box<TestFunction>, Box<TestFunction>),
    Custom(Shared<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Fourier => f.write_str("Fourier"),
            Profile::Bump(a, p) => write!(f, "Bump({a:?}, {p:?})"),
            Profile::Mobius { d, gamma, .. } => write!(f, "Mobius(d={d}, {gamma:?})"),
            Profile::Rotated { t, .. } => write!(f, "Rotated({t})"),
            Profile::Reflected(_) => f.write_str("Reflected"),
            Profile::Product(..) => f.write_str("Product"),
            Profile::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// A test function with Fourier coefficients f̂_n = (1/2π)∫ f(e^{ix}) e^{−inx} dx on |n| ≤ B,
/// n ∈ ℤ (untwisted) or n ∈ ℤ − ½ (twisted), and a decay certificate.
#[derive(Clone, Debug)]
pub struct TestFunction {
    twist: Twist,
    band: usize,
    coeffs: Vec<Complex64>,
    support: Option<Arc>,
    decay: Vec<f64>,
    /// The coefficients outside the band vanish identically.
    exact_band: bool,
    profile: Profile,
}

impl PartialEq for TestFunction {
    fn eq(&self, other: &Self) -> bool {
        self.twist == other.twist
            && self.band == other.band
            && self.coeffs == other.coeffs
            && self.support == other.support
    }
}

impl TestFunction {
    fn slots(twist: Twist, band: usize) -> usize {
        match twist {
            Twist::Untwisted => 2 * band + 1,
            Twist::Twisted => 2 * band,
        }
    }

    fn first_index(twist: Twist, band: usize) -> HalfInt {
        match twist {
            Twist::Untwisted => HalfInt::int(-(band as i64)),
            Twist::Twisted => HalfInt::from_twice(1 - 2 * band as i64),
        }
    }

    fn slot(&self, n: HalfInt) -> Option<usize> {
        if n.is_integer() != (self.twist == Twist::Untwisted) {
            return None;
        }
        let k = (n - Self::first_index(self.twist, self.band)).twice() / 2;
        (k >= 0 && (k as usize) < self.coeffs.len()).then_some(k as usize)
    }

    fn assemble(
        twist: Twist,
        band: usize,
        coeffs: Vec<Complex64>,
        support: Option<Arc>,
        exact_band: bool,
        profile: Profile,
    ) -> TestFunction {
        let mut f = TestFunction { twist, band, coeffs, support, decay: Vec::new(), exact_band, profile };
        f.decay = f.compute_decay();
        f
    }

    fn compute_decay(&self) -> Vec<f64> {
        (0..=DECAY_ORDERS)
            .map(|k| {
                self.coefficients()
                    .map(|(n, c)| c.norm() * (1.0 + n.to_f64().abs()).powi(k as i32))
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    /// Coefficients from point samples of a pointwise rule, by a midpoint FFT.
    pub(crate) fn from_profile(
        profile: Profile,
        twist: Twist,
        band: usize,
        support: Option<Arc>,
    ) -> TestFunction {
        let n = (32 * band.max(1)).next_power_of_two().max(8192);
        let dx = 2.0 * PI / n as f64;
        let s = twist.shift();
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| {
                let x = -PI + (j as f64 + 0.5) * dx;
                profile_eval(&profile, twist, x) * Complex64::from_polar(1.0, -s * x)
            })
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let first = Self::first_index(twist, band);
        let coeffs = (0..Self::slots(twist, band))
            .map(|i| {
                // ĝ_m = ĥ_{m−s} for the untwisted h = χ^{−s}g
                let m = first.to_f64() + i as f64;
                let k = (m - s).round() as i64;
                let phase = Complex64::from_polar(1.0, k as f64 * (PI - 0.5 * dx));
                buf[k.rem_euclid(n as i64) as usize] * phase / n as f64
            })
            .collect();
        Self::assemble(twist, band, coeffs, support, false, profile)
    }

    /// A test function with the given coefficients (missing indices are zero); the
    /// coefficients outside the band are taken to vanish.
    pub fn from_coefficients(
        twist: Twist,
        band: usize,
        coeffs: impl IntoIterator<Item = (HalfInt, Complex64)>,
    ) -> Result<TestFunction> {
        let mut v = vec![C0; Self::slots(twist, band)];
        let probe = TestFunction::assemble(twist, band, v.clone(), None, true, Profile::Fourier);
        for (n, c) in coeffs {
            let i = probe
                .slot(n)
                .ok_or_else(|| Error::Argument(format!("index {n} outside the {twist:?} band {band}")))?;
            v[i] = c;
        }
        Ok(Self::assemble(twist, band, v, None, true, Profile::Fourier))
    }

    /// A test function sampled from an arbitrary pointwise rule.
    pub fn from_fn(
        twist: Twist,
        band: usize,
        support: Option<Arc>,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> TestFunction {
        Self::from_profile(Profile::Custom(Shared::new(f)), twist, band, support)
    }

    /// The constant function c on the full circle.
    pub fn constant(c: Complex64, band: usize) -> TestFunction {
        Self::from_coefficients(Twist::Untwisted, band, [(HalfInt::ZERO, c)]).expect("index 0 in band")
    }

    /// e_n(z) = zⁿ; twisted when n ∉ ℤ.
    pub fn monomial(n: HalfInt, band: usize) -> Result<TestFunction> {
        let twist = if n.is_integer() { Twist::Untwisted } else { Twist::Twisted };
        Self::from_coefficients(twist, band, [(n, Complex64::new(1.0, 0.0))])
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn support(&self) -> Option<Arc> {
        self.support
    }

    /// Whether the function is a trigonometric polynomial inside the band.
    pub fn exact_band(&self) -> bool {
        self.exact_band
    }

    /// f̂_n, zero outside the band or for indices of the wrong twist.
    pub fn coefficient(&self, n: HalfInt) -> Complex64 {
        self.slot(n).map_or(C0, |i| self.coeffs[i])
    }

    /// (n, f̂_n) over the band in increasing n.
    pub fn coefficients(&self) -> impl Iterator<Item = (HalfInt, Complex64)> + '_ {
        let first = Self::first_index(self.twist, self.band);
        self.coeffs.iter().enumerate().map(move |(i, &c)| (first + HalfInt::int(i as i64), c))
    }

    /// max_{|n| ≤ B} |f̂_n|(1+|n|)^k for k = 0, …, 16.
    pub fn decay_certificate(&self) -> &[f64] {
        &self.decay
    }

    /// f(e^{ix}) for x ∈ (−π, π], from the pointwise rule when one is attached.
    pub fn eval(&self, x: f64) -> Complex64 {
        match self.profile {
            Profile::Fourier => self.eval_series(x),
            _ => profile_eval(&self.profile, self.twist, x),
        }
    }

    /// The truncated Fourier series Σ f̂_n e^{inx} at x ∈ (−π, π].
    pub fn eval_series(&self, x: f64) -> Complex64 {
        let x = wrap_angle(x);
        self.coefficients().map(|(n, c)| c * Complex64::from_polar(1.0, n.to_f64() * x)).sum()
    }

    /// d/dx of the truncated series.
    pub fn derivative_series(&self, x: f64) -> Complex64 {
        let x = wrap_angle(x);
        self.coefficients()
            .map(|(n, c)| c * Complex64::new(0.0, n.to_f64()) * Complex64::from_polar(1.0, n.to_f64() * x))
            .sum()
    }

    /// ‖f‖_s = Σ (1+|n|)^s |f̂_n| over the band.
    pub fn sobolev(&self, s: f64) -> f64 {
        self.coefficients().map(|(n, c)| (1.0 + n.to_f64().abs()).powf(s) * c.norm()).sum()
    }

    /// Bound on Σ_{|n|>B} (1+|n|)^s |f̂_n| from the decay certificate.
    pub fn tail_bound(&self, s: f64) -> f64 {
        if self.exact_band {
            return 0.0;
        }
        let b = self.band as f64;
        let start = match self.twist {
            Twist::Untwisted => 1.0 + b,
            Twist::Twisted => 0.5 + b,
        };
        (0..=DECAY_ORDERS)
            .filter(|&k| k as f64 > s + 1.0)
            .map(|k| {
                let r = k as f64 - s - 1.0;
                2.0 * self.decay[k] * start.powf(-r) / r
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// ‖f‖_s including the certified tail.
    pub fn sobolev_bound(&self, s: f64) -> f64 {
        self.sobolev(s) + self.tail_bound(s)
    }

    /// Least-squares slope of log|f̂_n| against log(1+|n|) for lo ≤ |n| ≤ hi.
    pub fn decay_slope(&self, lo: f64, hi: f64) -> f64 {
        let pts: Vec<(f64, f64)> = self
            .coefficients()
            .filter(|(n, c)| {
                let a = n.to_f64().abs();
                a >= lo && a <= hi && c.norm() > 0.0
            })
            .map(|(n, c)| ((1.0 + n.to_f64().abs()).ln(), c.norm().ln()))
            .collect();
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = pts
            .iter()
            .fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
        num / den
    }

    /// Real-valuedness: f̂_{−n} = conj f̂_n across the band.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coefficients().all(|(n, c)| (self.coefficient(-n) - c.conj()).norm() <= tol)
    }

    /// Largest |Σ f̂_n e^{inx}| over `samples` points outside the support arc.
    pub fn support_leak(&self, samples: usize) -> f64 {
        let Some(arc) = self.support else { return 0.0 };
        (0..samples)
            .map(|j| -PI + (j as f64 + 0.5) * 2.0 * PI / samples as f64)
            .filter(|&x| !arc.contains(x))
            .map(|x| self.eval_series(x).norm())
            .fold(0.0, f64::max)
    }

    /// Whether the series is below `tol` off the support arc.
    pub fn certify_support(&self, tol: f64) -> bool {
        self.support_leak(1024) <= tol
    }

    /// f_t with f_t(z) = f(e^{−it}z); twisted functions g = χh map to e^{−it/2}χh_t.
    pub fn rotated(&self, t: f64) -> TestFunction {
        let support = self.support.map(|a| a.rotated(t));
        Self::from_profile(Profile::Rotated { t, inner: Box::new(self.clone()) }, self.twist, self.band, support)
    }

    /// f∘j with j(z) = z̄.
    pub fn reflected(&self) -> TestFunction {
        let support = self.support.map(|a| a.reflected());
        Self::from_profile(Profile::Reflected(Box::new(self.clone())), self.twist, self.band, support)
    }

    /// Pointwise product, with coefficients from the band-limited convolution.
    pub fn product(&self, other: &TestFunction) -> TestFunction {
        let twist = self.twist.product(other.twist);
        let band = self.band + other.band + 1;
        let mut acc = vec![C0; Self::slots(twist, band)];
        let probe = TestFunction::assemble(twist, band, acc.clone(), None, true, Profile::Fourier);
        for (m, a) in self.coefficients() {
            for (n, b) in other.coefficients() {
                if let Some(i) = probe.slot(m + n) {
                    acc[i] += a * b;
                }
            }
        }
        let support = match (self.support, other.support) {
            (Some(a), Some(b)) if a.width() <= b.width() => Some(a),
            (Some(_), Some(b)) => Some(b),
            (s, None) | (None, s) => s,
        };
        let profile = Profile::Product(Box::new(self.clone()), Box::new(other.clone()));
        Self::assemble(twist, band, acc, support, self.exact_band && other.exact_band, profile)
    }

    /// Same function on a different band, recomputed from the pointwise rule.
    pub fn with_band(&self, band: usize) -> TestFunction {
        match self.profile {
            Profile::Fourier => {
                let coeffs = self.coefficients().filter(|(n, _)| n.abs().to_f64() <= band as f64);
                let mut f = Self::from_coefficients(self.twist, band, coeffs).expect("indices in band");
                f.support = self.support;
                f.exact_band = self.exact_band && band >= self.band;
                f
            }
            _ => Self::from_profile(self.profile.clone(), self.twist, band, self.support),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: Complex64) -> TestFunction {
        let mut f = self.clone();
        for x in f.coeffs.iter_mut() {
            *x *= c;
        }
        f.decay = f.compute_decay();
        let inner = self.clone();
        f.profile = match self.profile {
            Profile::Fourier => Profile::Fourier,
            _ => Profile::Custom(Shared::new(move |x| c * inner.eval(x))),
        };
        f
    }
}

fn profile_eval(profile: &Profile, twist: Twist, x: f64) -> Complex64 {
    let x = wrap_angle(x);
    match profile {
        Profile::Fourier => unreachable!("Fourier profiles evaluate through the series"),
        Profile::Bump(arc, p) => p.value(arc, x),
        Profile::Custom(f) => f(x),
        Profile::Reflected(inner) => inner.eval(-x),
        Profile::Product(a, b) => a.eval(x) * b.eval(x),
        Profile::Rotated { t, inner } => match twist {
            Twist::Untwisted => inner.eval(x - t),
            Twist::Twisted => {
                let y = wrap_angle(x - t);
                let h = inner.eval(y) * chi(y).conj();
                Complex64::from_polar(1.0, -0.5 * t) * chi(x) * h
            }
        },
        Profile::Mobius { d, gamma, inner } => {
            let inv = gamma.inverse();
            let z = Complex64::from_polar(1.0, x);
            let w = inv.apply(z);
            let xf = gamma.x_factor(w).powf(d.to_f64() - 1.0);
            let v = inner.eval(w.arg()) * xf;
            match twist {
                Twist::Untwisted => v,
                Twist::Twisted => v * inv.epsilon(z),
            }
        }
    }
}

/// A smooth bump supported on `arc`, with coefficients on the band |n| ≤ `band`.
///
/// Twisted bumps must avoid −1. With `tol`, fails when the certified ℓ¹ tail
/// exceeds it.
pub fn make_bump(
    arc: Arc,
    profile: BumpProfile,
    twist: Twist,
    band: usize,
    tol: Option<f64>,
) -> Result<TestFunction> {
    let arc = Arc::new(arc.start, arc.end)?;
    if twist == Twist::Twisted && !arc.avoids_minus_one() {
        return Err(Error::Argument("a twisted bump must avoid −1".into()));
    }
    if profile.sharpness <= 0.0 {
        return Err(Error::Argument("bump sharpness must be positive".into()));
    }
    let f = TestFunction::from_profile(Profile::Bump(arc, profile), twist, band, Some(arc));
    if let Some(tol) = tol {
        let tail = f.tail_bound(0.0);
        if tail > tol {
            return Err(Error::Band { band, tail, tol });
        }
    }
    Ok(f)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TestFunctionJson {
    twist: Twist,
    band: usize,
    coefficients: Vec<[f64; 2]>,
    support: Option<Arc>,
    #[serde(default)]
    exact_band: bool,
}

impl Serialize for TestFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TestFunctionJson {
            twist: self.twist,
            band: self.band,
            coefficients: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            support: self.support,
            exact_band: self.exact_band,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TestFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TestFunctionJson::deserialize(d)?;
        let want = TestFunction::slots(j.twist, j.band);
        if j.coefficients.len() != want {
            return Err(serde::de::Error::custom(format!(
                "expected {want} coefficients for band {}, got {}",
                j.band,
                j.coefficients.len()
            )));
        }
        let coeffs = j.coefficients.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        Ok(TestFunction::assemble(j.twist, j.band, coeffs, j.support, j.exact_band, Profile::Fourier))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn constant_and_monomials() {
        let one = TestFunction::constant(Complex64::new(1.0, 0.0), 8);
        assert_eq!(one.coefficient(HalfInt::ZERO), Complex64::new(1.0, 0.0));
        assert!(one.coefficients().filter(|(n, _)| *n != HalfInt::ZERO).all(|(_, c)| c == C0));
        assert_eq!(one.tail_bound(3.0), 0.0);
        let e = TestFunction::monomial(h(-3), 4).unwrap();
        assert_eq!(e.twist(), Twist::Twisted);
        assert_eq!(e.coefficient(h(-3)), Complex64::new(1.0, 0.0));
        let z = e.eval(0.7);
        assert!((z - Complex64::from_polar(1.0, -1.5 * 0.7)).norm() < 1e-14);
        assert!(TestFunction::monomial(HalfInt::int(9), 4).is_err());
    }

    #[test]
    fn fft_recovers_trigonometric_polynomials() {
        let f = TestFunction::from_fn(Twist::Untwisted, 6, None, |x| {
            Complex64::new(2.0 * x.cos(), 0.0) + Complex64::new(0.0, 3.0) * Complex64::from_polar(1.0, -4.0 * x)
        });
        assert!((f.coefficient(HalfInt::int(1)) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((f.coefficient(HalfInt::int(-4)) - Complex64::new(0.0, 3.0)).norm() < 1e-14);
        assert!(f.coefficient(HalfInt::int(2)).norm() < 1e-14);
        let g = TestFunction::from_fn(Twist::Twisted, 6, None, |x| chi(x) * Complex64::from_polar(1.0, 2.0 * x));
        assert!((g.coefficient(h(5)) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn twisted_coefficients_shift_the_untwisted_ones() {
        let arc = Arc::new(-1.0, 2.0).unwrap();
        let g = make_bump(arc, BumpProfile::default(), Twist::Twisted, 32, None).unwrap();
        let hh = TestFunction::from_fn(Twist::Untwisted, 32, Some(arc), move |x| {
            BumpProfile::default().value(&arc, x) * chi(x).conj()
        });
        for k in -31..=31 {
            let n = HalfInt::from_twice(2 * k + 1);
            assert!((g.coefficient(n) - hh.coefficient(HalfInt::int(k))).norm() < 1e-15);
        }
    }

    #[test]
    fn arcs() {
        let a = Arc::new(0.2, 1.0).unwrap();
        let b = Arc::new(1.0, 2.5).unwrap();
        assert!(a.disjoint(&b) && b.disjoint(&a));
        assert!(!a.disjoint(&Arc::new(0.9, 1.2).unwrap()));
        assert!(a.in_upper_semicircle() && a.avoids_minus_one());
        assert!(!Arc::new(3.0, 3.5).unwrap().avoids_minus_one());
        assert!(a.reflected().contains(-0.5));
        assert!(Arc::new(1.0, 0.5).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = make_bump(Arc::new(0.3, 2.0).unwrap(), BumpProfile::default(), Twist::Twisted, 16, None).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: TestFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<TestFunction>(
            r#"{"twist":"untwisted","band":2,"coefficients":[[1,0]],"support":null}"#
        )
        .is_err());
    }
}
