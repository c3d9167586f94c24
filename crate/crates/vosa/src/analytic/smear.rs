//! Smeared vertex operators Y(a, f)c = Σ f̂_n a_n c, covariance and Wightman locality.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;

use super::energy::EnergyBound;
use super::testfn::{Arc, TestFunction, Twist};
use crate::error::{Error, Result};
use crate::fock::{BasisState, CVector, GenId, HalfInt, Parity, Scalar, Vector};
use crate::models::VosaModel;
use crate::modes::{Evaluator, VertexModel};
use crate::report::{CheckRecord, CheckReport, Verdict};
use crate::unitarity::{PctCandidate, ScalarProduct};

/// Exact Gram data of a model, used to measure complex state vectors.
pub struct HilbertSpace<'m> {
    sp: ScalarProduct<'m>,
    cache: HashMap<(BasisState, BasisState), Complex64>,
    gen_norms: HashMap<GenId, f64>,
    /// Weights up to which norms are computed from the exact Gram matrix.
    pub exact_weight: HalfInt,
}

impl<'m> HilbertSpace<'m> {
    pub fn new(model: &'m VosaModel) -> Result<Self> {
        Ok(Self::from_scalar_product(ScalarProduct::new(model, PctCandidate::default_for(model))?))
    }

    pub fn from_scalar_product(mut sp: ScalarProduct<'m>) -> Self {
        sp.form.evaluator().j_ceiling = 4096;
        let exact_weight = sp.model().cutoff().min(HalfInt::int(8));
        HilbertSpace { sp, cache: HashMap::new(), gen_norms: HashMap::new(), exact_weight }
    }

    pub fn scalar_product(&mut self) -> &mut ScalarProduct<'m> {
        &mut self.sp
    }

    pub fn model(&self) -> &'m VosaModel {
        self.sp.model()
    }

    fn basis_inner(&mut self, a: &BasisState, b: &BasisState) -> Result<Complex64> {
        if a.weight() != b.weight() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let v = self.sp.inner_basis(a, b)?.to_complex();
        self.cache.insert(key, v);
        Ok(v)
    }

    /// (u|v) from the exact Gram entries, antilinear in u.
    pub fn inner(&mut self, u: &CVector, v: &CVector) -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                if a.weight() == b.weight() {
                    s += x.conj() * y * self.basis_inner(a, b)?;
                }
            }
        }
        Ok(s)
    }

    pub fn norm(&mut self, v: &CVector) -> Result<f64> {
        Ok(self.inner(v, v)?.re.max(0.0).sqrt())
    }

    fn generator_norm(&mut self, g: GenId) -> Result<f64> {
        if let Some(n) = self.gen_norms.get(&g) {
            return Ok(*n);
        }
        let s = self.model().generator_state(g);
        let n = self.sp.norm_sqr(&s)?.to_complex().re.max(0.0).sqrt();
        self.gen_norms.insert(g, n);
        Ok(n)
    }

    /// Upper bound on ‖b‖: exact at low weight, and ∏‖g‖ for monomials in weight-½
    /// generators, whose modes are bounded by ‖g‖. Infinite otherwise.
    pub fn basis_norm_bound(&mut self, b: &BasisState) -> Result<f64> {
        if b.weight() <= self.exact_weight {
            return Ok(self.basis_inner(b, b)?.re.max(0.0).sqrt());
        }
        let alphabet = self.model().alphabet();
        let mut out = 1.0;
        for m in b.modes() {
            if alphabet.gen(m.gen).weight != HalfInt::HALF {
                return Ok(f64::INFINITY);
            }
            out *= self.generator_norm(m.gen)?;
        }
        Ok(out)
    }

    /// Upper bound on ‖v‖: exact per weight space where the Gram matrix is small,
    /// the triangle inequality over basis states elsewhere.
    pub fn norm_bound(&mut self, v: &CVector) -> Result<f64> {
        let mut by_weight: BTreeMap<HalfInt, CVector> = BTreeMap::new();
        for (b, c) in v.iter() {
            by_weight.entry(b.weight()).or_insert_with(CVector::zero).add_term(b.clone(), *c);
        }
        let mut sq = 0.0;
        let mut lin = 0.0;
        for (w, comp) in by_weight {
            if w <= self.exact_weight && comp.len() <= 64 {
                sq += self.inner(&comp, &comp)?.re.max(0.0);
            } else {
                for (b, c) in comp.iter() {
                    lin += c.norm() * self.basis_norm_bound(b)?;
                }
            }
        }
        Ok(sq.sqrt() + lin)
    }
}

/// A homogeneous state a viewed as the field Y(a, ·).
pub struct Field<'m> {
    model: &'m VosaModel,
    state: Vector,
    weight: HalfInt,
    parity: Parity,
    generator: Option<(GenId, Complex64)>,
}

impl<'m> Field<'m> {
    pub fn new(model: &'m VosaModel, a: &Vector) -> Result<Self> {
        let weight = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
        let parity = a.parity().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
        let generator = (a.len() == 1)
            .then(|| a.iter().next().expect("one term"))
            .and_then(|(b, c)| match b.modes() {
                [m] if model.generator_state(m.gen) == Vector::basis(b.clone()) => Some((m.gen, c.to_complex())),
                _ => None,
            });
        Ok(Field { model, state: a.clone(), weight, parity, generator })
    }

    pub fn weight(&self) -> HalfInt {
        self.weight
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn state(&self) -> &Vector {
        &self.state
    }

    pub fn twist(&self) -> Twist {
        Twist::for_weight(self.weight)
    }

    /// a_n b, exact.
    fn mode(&self, ev: &mut Evaluator<'m>, n: HalfInt, b: &BasisState) -> Result<CVector> {
        if let Some((g, c)) = self.generator {
            return Ok(self.model.act(g, n, b)?.to_complex().scale(&c));
        }
        Ok(ev.apply_shifted(&self.state, n, &Vector::basis(b.clone()))?.to_complex())
    }

    fn evaluator(&self) -> Evaluator<'m> {
        let mut ev = Evaluator::new(self.model);
        ev.j_ceiling = 4096;
        ev
    }

    fn check_twist(&self, f: &TestFunction) -> Result<()> {
        if f.twist() != self.twist() {
            return Err(Error::Argument(format!(
                "a {:?} test function cannot smear a field of weight {}",
                f.twist(),
                self.weight
            )));
        }
        Ok(())
    }

    /// Model weight above which the images of modes are not represented.
    fn headroom(&self) -> Option<HalfInt> {
        self.model.is_quotient().then(|| self.model.cutoff())
    }
}

/// Y(a, f)c over the band, with the bookkeeping for a truncation bound.
#[derive(Clone, Debug)]
pub struct Smeared {
    pub vector: CVector,
    /// Terms f̂_n a_n b skipped because a_n b lies above the model cutoff, as (n, |f̂_n c_b|).
    pub skipped: Vec<(HalfInt, f64)>,
}

fn smear_terms<'m>(field: &Field<'m>, f: &TestFunction, c: &CVector, parallel: bool) -> Result<Smeared> {
    field.check_twist(f)?;
    let headroom = field.headroom();
    let terms: Vec<(&BasisState, Complex64)> = c.iter().map(|(b, x)| (b, *x)).collect();
    let one = |(b, x): &(&BasisState, Complex64), ev: &mut Evaluator<'m>| -> Result<Smeared> {
        let mut out = CVector::zero();
        let mut skipped = Vec::new();
        for (n, fc) in f.coefficients() {
            if fc == Complex64::new(0.0, 0.0) || b.weight() - n < HalfInt::ZERO {
                continue;
            }
            if headroom.is_some_and(|h| b.weight() - n > h) {
                skipped.push((n, (fc * x).norm()));
                continue;
            }
            out.add_scaled(&field.mode(ev, n, b)?, &(fc * x));
        }
        Ok(Smeared { vector: out, skipped })
    };
    let parts: Vec<Smeared> = if parallel && terms.len() > 1 {
        terms.par_iter().map(|t| one(t, &mut field.evaluator())).collect::<Result<_>>()?
    } else {
        let mut ev = field.evaluator();
        terms.iter().map(|t| one(t, &mut ev)).collect::<Result<_>>()?
    };
    let mut acc = Smeared { vector: CVector::zero(), skipped: Vec::new() };
    for p in parts {
        acc.vector.add_scaled(&p.vector, &Complex64::new(1.0, 0.0));
        acc.skipped.extend(p.skipped);
    }
    Ok(acc)
}

/// Y(a, f)c = Σ_{|n| ≤ B} f̂_n a_n c. The twist of f must match the weight of a.
pub fn smear(model: &VosaModel, a: &Vector, f: &TestFunction, c: &CVector) -> Result<CVector> {
    Ok(smear_terms(&Field::new(model, a)?, f, c, true)?.vector)
}

/// Y(a, f)c with a bound on everything left out: the band tail of f and the modes
/// skipped above the cutoff, both estimated from the energy bound of a.
pub fn smear_bounded(
    hs: &mut HilbertSpace,
    a: &Vector,
    f: &TestFunction,
    c: &CVector,
    bound: Option<&EnergyBound>,
) -> Result<(CVector, f64)> {
    let field = Field::new(hs.model(), a)?;
    let out = smear_terms(&field, f, c, true)?;
    let tail = f.tail_bound(0.0);
    if out.skipped.is_empty() && tail == 0.0 {
        return Ok((out.vector, 0.0));
    }
    let bound = bound.ok_or_else(|| {
        Error::Argument("a truncation bound needs an energy-bound certificate for the field".into())
    })?;
    let w = c.max_weight().map_or(0.0, |w| w.to_f64());
    let cn = hs.norm_bound(c)?;
    let skipped: f64 = out.skipped.iter().map(|(n, x)| x * bound.factor(n.to_f64(), w)).sum();
    let tail = bound.m * f.tail_bound(bound.s) * (1.0 + w).powf(bound.k) * cn;
    Ok((out.vector, skipped + tail))
}

/// e^{itL₀} on a complex vector.
pub fn rotate_state(c: &CVector, t: f64) -> CVector {
    CVector::from_terms(c.iter().map(|(b, x)| (b.clone(), x * Complex64::from_polar(1.0, t * b.weight().to_f64()))))
}

/// Compares e^{itL₀}Y(a,f)e^{−itL₀}c with Y(a, f_t)c for each t, where f_t is the
/// rotated function, resampled from its pointwise profile. At t = 2π an odd field
/// additionally picks up the spin-statistics sign −1.
pub fn rotation_covariance_check(
    hs: &mut HilbertSpace,
    a: &Vector,
    f: &TestFunction,
    states: &[CVector],
    ts: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    let model = hs.model();
    let field = Field::new(model, a)?;
    let mut report = CheckReport::new("analytic.rotation", &model.fingerprint());
    for &t in ts {
        let ft = f.rotated(t);
        let mut worst: f64 = 0.0;
        let mut sign_worst: f64 = 0.0;
        for c in states {
            let inner = smear_terms(&field, f, &rotate_state(c, -t), true)?.vector;
            let lhs = rotate_state(&inner, t);
            let rhs = smear_terms(&field, &ft, c, true)?.vector;
            worst = worst.max(hs.norm_bound(&lhs.sub(&rhs))?);
            if (t - 2.0 * std::f64::consts::PI).abs() < 1e-12 && field.parity().is_odd() {
                let plain = smear_terms(&field, f, c, true)?.vector;
                sign_worst = sign_worst.max(hs.norm_bound(&rhs.add(&plain))?);
            }
        }
        let inputs = format!("t={t}, states={}", states.len());
        report.push(CheckRecord::approx("rotation.covariance", inputs.clone(), worst, tol, 0.0));
        if (t - 2.0 * std::f64::consts::PI).abs() < 1e-12 && field.parity().is_odd() {
            report.push(CheckRecord::approx("rotation.spin_statistics", inputs, sign_worst, tol, 0.0));
        }
    }
    Ok(report)
}

/// Inputs of a Wightman locality check beyond the two fields and test functions.
#[derive(Clone, Debug)]
pub struct LocalityOptions {
    pub bound_a: EnergyBound,
    pub bound_b: EnergyBound,
    pub tol: f64,
}

fn product_budget(
    ba: &EnergyBound,
    f: &TestFunction,
    bb: &EnergyBound,
    g: &TestFunction,
    w: f64,
    cn: f64,
) -> f64 {
    let k = (1.0 + w).powf(ba.k + bb.k);
    let a = ba.m * f.tail_bound(ba.s) * bb.m * k * g.sobolev_bound(bb.s + ba.k) * cn;
    let b = ba.m * f.sobolev(ba.s) * bb.m * k * g.tail_bound(bb.s + ba.k) * cn;
    a + b
}

/// ‖[Y(a,f), Y(b,g)]c‖ (graded) on each state, against `tol` plus the band-truncation
/// budget from the energy bounds. Supports that are not disjoint make the check
/// inconclusive.
pub fn wightman_locality_check(
    hs: &mut HilbertSpace,
    a: &Vector,
    f: &TestFunction,
    b: &Vector,
    g: &TestFunction,
    states: &[CVector],
    opts: &LocalityOptions,
) -> Result<CheckReport> {
    let model = hs.model();
    let fa = Field::new(model, a)?;
    let fb = Field::new(model, b)?;
    let sign = if fa.parity().is_odd() && fb.parity().is_odd() { -1.0 } else { 1.0 };
    let disjoint = match (f.support(), g.support()) {
        (Some(x), Some(y)) => x.disjoint(&y),
        _ => false,
    };
    let commutators: Vec<(CVector, usize)> = states
        .par_iter()
        .map(|c| -> Result<(CVector, usize)> {
            let ab = smear_terms(&fa, f, &smear_terms(&fb, g, c, false)?.vector, false)?;
            let ba = smear_terms(&fb, g, &smear_terms(&fa, f, c, false)?.vector, false)?;
            let skipped = ab.skipped.len() + ba.skipped.len();
            Ok((ab.vector.sub(&ba.vector.scale(&Complex64::new(sign, 0.0))), skipped))
        })
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new("analytic.wightman", &model.fingerprint());
    for (c, (comm, skipped)) in states.iter().zip(commutators) {
        let residual = hs.norm_bound(&comm)?;
        let w = c.max_weight().map_or(0.0, |w| w.to_f64());
        let cn = hs.norm_bound(c)?;
        let budget = product_budget(&opts.bound_a, f, &opts.bound_b, g, w, cn)
            + product_budget(&opts.bound_b, g, &opts.bound_a, f, w, cn);
        let inputs = format!("c_weight={w}, c_terms={}, band=({}, {})", c.len(), f.band(), g.band());
        let mut rec = CheckRecord::approx("wightman.commutator", inputs, residual, opts.tol, budget);
        if skipped > 0 {
            rec = rec.flag_truncated(true).with_verdict(Verdict::Inconclusive).with_witness(format!("{skipped} modes above the cutoff"));
        }
        if !disjoint {
            rec = rec.with_verdict(Verdict::Inconclusive).with_witness("supports not disjoint");
        }
        report.push(rec);
    }
    Ok(report)
}

/// Complementary quarter arcs (−π/2, 0) and (0, π/2) used for locality checks.
pub fn quarter_arcs() -> (Arc, Arc) {
    let q = std::f64::consts::FRAC_PI_2;
    (Arc { start: -q, end: 0.0 }, Arc { start: 0.0, end: q })
}

/// Basis states of weight ≤ `max_weight` as complex vectors.
pub fn basis_states(model: &VosaModel, max_weight: HalfInt) -> Vec<CVector> {
    (0..=max_weight.twice().min(model.cutoff().twice()))
        .flat_map(|t| model.basis(HalfInt::from_twice(t)))
        .map(|b| CVector::basis(b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::testfn::{make_bump, BumpProfile};
    use crate::models::build_free_fermion;

    fn fermion() -> VosaModel {
        build_free_fermion(HalfInt::int(6))
    }

    #[test]
    fn vacuum_axiom_and_identity_field() {
        let f = fermion();
        let phi = f.generator_state(0);
        let e = TestFunction::monomial(-HalfInt::HALF, 4).unwrap();
        let out = smear(&f, &phi, &e, &CVector::vacuum()).unwrap();
        assert_eq!(out, phi.to_complex());
        let nu = f.conformal().clone();
        let e2 = TestFunction::monomial(HalfInt::int(-2), 4).unwrap();
        assert_eq!(smear(&f, &nu, &e2, &CVector::vacuum()).unwrap(), nu.to_complex());
        let k = TestFunction::constant(Complex64::new(0.0, 2.0), 3);
        let c = phi.to_complex();
        assert_eq!(smear(&f, &Vector::vacuum(), &k, &c).unwrap(), c.scale(&Complex64::new(0.0, 2.0)));
    }

    #[test]
    fn twist_must_match_weight() {
        let f = fermion();
        let k = TestFunction::constant(Complex64::new(1.0, 0.0), 3);
        assert!(smear(&f, &f.generator_state(0), &k, &CVector::vacuum()).is_err());
    }

    #[test]
    fn zeroth_order_bound_on_smeared_fermion() {
        let f = fermion();
        let mut hs = HilbertSpace::new(&f).unwrap();
        let g = make_bump(Arc::new(0.2, 2.9).unwrap(), BumpProfile::default(), Twist::Twisted, 64, None).unwrap();
        let v = smear(&f, &f.generator_state(0), &g, &CVector::vacuum()).unwrap();
        let l1: f64 = g.coefficients().map(|(_, c)| c.norm()).sum();
        assert!(hs.norm(&v).unwrap() <= l1);
    }

    #[test]
    fn rotation_covariance_for_the_fermion() {
        let f = fermion();
        let mut hs = HilbertSpace::new(&f).unwrap();
        let g = make_bump(Arc::new(-1.0, 1.3).unwrap(), BumpProfile::default(), Twist::Twisted, 32, None).unwrap();
        let states = basis_states(&f, HalfInt::int(2));
        let ts = [0.0, std::f64::consts::PI / 3.0, 2.0 * std::f64::consts::PI];
        let r = rotation_covariance_check(&mut hs, &f.generator_state(0), &g, &states, &ts, 1e-12).unwrap();
        assert!(r.passed(), "{:?}", r.records);
        assert_eq!(r.records.len(), 4);
    }

    #[test]
    fn overlapping_supports_are_inconclusive() {
        let f = fermion();
        let mut hs = HilbertSpace::new(&f).unwrap();
        let arc = Arc::new(0.1, 1.0).unwrap();
        let g = make_bump(arc, BumpProfile::default(), Twist::Twisted, 16, None).unwrap();
        let phi = f.generator_state(0);
        let opts = LocalityOptions {
            bound_a: EnergyBound::zeroth_order(1.0),
            bound_b: EnergyBound::zeroth_order(1.0),
            tol: 1e-9,
        };
        let r = wightman_locality_check(&mut hs, &phi, &g, &phi, &g, &[CVector::vacuum()], &opts).unwrap();
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.records[0].witness.as_deref(), Some("supports not disjoint"));
        assert!(r.max_residual() > 1e-3);
    }
}
