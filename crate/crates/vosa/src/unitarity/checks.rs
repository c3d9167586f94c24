use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::form::{l1_tower, ScalarProduct};
use super::pct::{pct_sign, PctCandidate};
use crate::error::{Error, Result};
use crate::fock::{BasisState, Gq, HalfInt, Scalar, Vector};
use crate::linalg::{self, Matrix};
use crate::models::VosaModel;
use crate::modes::{full_basis, VertexModel};
use crate::report::{CheckRecord, CheckReport};

/// Gram matrix of the scalar product on one weight space.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub weight: HalfInt,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<Gq>>,
    /// LDLᴴ pivots up to and including the first non-positive one.
    pub pivots: Vec<Gq>,
    pub positive_definite: bool,
    /// (positive, negative, zero)
    pub signature: (usize, usize, usize),
    pub kernel: Vec<Vec<Gq>>,
}

impl GramReport {
    pub fn from_matrix(weight: HalfInt, basis: Vec<String>, matrix: Matrix) -> Self {
        let pivots = linalg::ldl_pivots(&matrix);
        let positive_definite = linalg::is_positive_definite(&matrix);
        let signature = linalg::inertia(&matrix);
        let kernel = linalg::kernel(matrix.clone());
        GramReport { weight, basis, matrix, pivots, positive_definite, signature, kernel }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Gram report of (·|·) at one weight.
pub fn gram(sp: &mut ScalarProduct, weight: HalfInt) -> Result<GramReport> {
    let model = sp.model();
    let basis = model.basis(weight);
    let m = sp.gram(&basis)?;
    let labels = basis.iter().map(|b| b.display(model.alphabet()).to_string()).collect();
    Ok(GramReport::from_matrix(weight, labels, m))
}

/// All Gram reports up to the cutoff.
pub fn gram_reports(sp: &mut ScalarProduct) -> Result<Vec<GramReport>> {
    let cutoff = sp.model().cutoff();
    (0..=cutoff.twice()).map(|t| gram(sp, HalfInt::from_twice(t))).collect()
}

/// The adjoint of a_n for quasi-primary a: (−1)^{2d²+d} (θa)_{−n}.
#[derive(Clone, Debug)]
pub struct AdjointMode {
    pub state: Vector,
    pub index: HalfInt,
}

fn weight_of(v: &Vector) -> Result<HalfInt> {
    v.weight().ok_or_else(|| Error::Inhomogeneous(format!("{v:?}")))
}

/// Whether L₁a = 0.
pub fn is_quasi_primary(sp: &mut ScalarProduct, a: &Vector) -> Result<bool> {
    let nu = sp.model().conformal().clone();
    Ok(sp.form.evaluator().apply_mode(&nu, 2, a)?.is_zero())
}

/// Adjoint of a_n together with a certificate that (a_n b|c) = (b|a_n^+ c) on all basis
/// pairs of weight ≤ the cutoff.
pub fn adjoint_mode(
    sp: &mut ScalarProduct,
    a: &Vector,
    n: HalfInt,
) -> Result<(AdjointMode, CheckRecord)> {
    if !is_quasi_primary(sp, a)? {
        return Err(Error::NotQuasiPrimary(a.display(sp.model().alphabet()).to_string()));
    }
    let d = weight_of(a)?;
    let ta = sp.theta.apply(a)?.scale(&Gq::int(pct_sign(d)));
    let adj = AdjointMode { state: ta, index: -n };
    let bad = adjoint_mismatch(sp, a, n, &adj.state, -n)?;
    let label = format!("a={} n={n}", a.display(sp.model().alphabet()));
    let rec = CheckRecord::exact("adjoint-mode", label, bad.is_none(), residual(&bad));
    let rec = match bad {
        Some(w) => rec.with_witness(w),
        None => rec,
    };
    Ok((adj, rec))
}

fn residual(bad: &Option<String>) -> String {
    if bad.is_some() { "nonzero".into() } else { "0".into() }
}

/// First basis pair (b, c) with (a_n b|c) ≠ (b|x_m c), rendered as a witness.
fn adjoint_mismatch(
    sp: &mut ScalarProduct,
    a: &Vector,
    n: HalfInt,
    x: &Vector,
    m: HalfInt,
) -> Result<Option<String>> {
    let model = sp.model();
    let cutoff = model.cutoff();
    let basis = full_basis(model);
    for b in &basis {
        let wc = b.weight() - n;
        if wc < HalfInt::ZERO || wc > cutoff {
            continue;
        }
        let bv = Vector::basis(b.clone());
        let anb = sp.form.evaluator().apply_shifted(a, n, &bv)?;
        for c in model.basis(wc) {
            let cv = Vector::basis(c.clone());
            let lhs = sp.inner(&anb, &cv)?;
            let xc = sp.form.evaluator().apply_shifted(x, m, &cv)?;
            let rhs = sp.inner(&bv, &xc)?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "b={} c={}: {lhs} vs {rhs}",
                    b.display(model.alphabet()),
                    c.display(model.alphabet())
                )));
            }
        }
    }
    Ok(None)
}

/// Whether (a_n b|c) = (b|a_{−n}c) for every n with |n| ≤ `range` inside the headroom.
pub fn hermitian_field_check(
    sp: &mut ScalarProduct,
    a: &Vector,
    range: HalfInt,
) -> Result<(bool, Vec<String>)> {
    if !is_quasi_primary(sp, a)? {
        return Err(Error::NotQuasiPrimary(a.display(sp.model().alphabet()).to_string()));
    }
    let d = weight_of(a)?;
    let mut witnesses = Vec::new();
    for n in mode_window(d, range) {
        if let Some(w) = adjoint_mismatch(sp, a, n, a, -n)? {
            witnesses.push(format!("n={n}: {w}"));
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// Mode indices n ∈ ℤ − d with |n| ≤ range.
pub fn mode_window(d: HalfInt, range: HalfInt) -> Vec<HalfInt> {
    let frac = if d.is_integer() { 0 } else { 1 };
    let lo = -range.twice();
    (lo..=range.twice())
        .filter(|t| (t - frac).rem_euclid(2) == 0)
        .map(HalfInt::from_twice)
        .collect()
}

/// Unitarity of a model with a PCT candidate: Gram positivity, invariance of the scalar
/// product on a mode window, and the involution relations of θ.
pub fn verify_unitarity(
    model: &VosaModel,
    candidate: PctCandidate,
    range: HalfInt,
    seed: u64,
) -> Result<CheckReport> {
    let mut sp = ScalarProduct::new(model, candidate.clone())?;
    let fp = model.fingerprint();
    let mut report = CheckReport::new("unitarity", &fp);
    let al = model.alphabet();

    // (i) positivity
    for g in gram_reports(&mut sp)? {
        let inputs = format!("theta={} weight={} dim={}", candidate.name, g.weight, g.dim());
        let mut rec = CheckRecord::exact(
            "gram-positivity",
            inputs,
            g.positive_definite,
            if g.positive_definite {
                "0".into()
            } else {
                format!("signature {:?}", g.signature)
            },
        );
        if !g.positive_definite {
            let witness = if let Some(k) = g.kernel.first() {
                let basis = model.basis(g.weight);
                let v = Vector::from_terms(basis.into_iter().zip(k.iter().cloned()));
                format!("kernel vector {}", v.display(al))
            } else {
                format!("pivots {:?}", g.pivots)
            };
            rec = rec.with_witness(witness);
        }
        report.push(rec);
    }

    // (ii) invariance (a_n b|c) = (b| Σ_l ε (L₁^l θa / l!)_{−n} c) on basis states a
    let nu = model.conformal().clone();
    let probe_cut = HalfInt::int(2).min(model.cutoff());
    let probes: Vec<BasisState> = full_basis(model)
        .into_iter()
        .filter(|b| !b.is_vacuum() && b.weight() <= probe_cut)
        .collect();
    for a in &probes {
        let av = Vector::basis(a.clone());
        let d = a.weight();
        let ta = sp.theta.apply(&av)?;
        let tower = l1_tower(sp.form.evaluator(), &nu, &ta)?;
        let eps = Gq::int(pct_sign(d));
        let mut bad = None;
        for n in mode_window(d, range) {
            if let Some(w) = invariance_mismatch(&mut sp, &av, n, &tower, &eps)? {
                bad = Some(format!("n={n}: {w}"));
                break;
            }
        }
        let rec = CheckRecord::exact(
            "invariant-scalar-product",
            format!("theta={} a={} |n|<={range}", candidate.name, a.display(al)),
            bad.is_none(),
            residual(&bad),
        );
        report.push(match bad {
            Some(w) => rec.with_witness(w),
            None => rec,
        });
    }

    // (iii) θ² = 1, θΩ = Ω, θν = ν, antiunitarity, and adjoint relation on sampled triples
    let basis = full_basis(model);
    let mut inv_bad = None;
    for b in &basis {
        let bv = Vector::basis(b.clone());
        let t = sp.theta.apply(&bv)?;
        if sp.theta.apply(&t)? != bv {
            inv_bad = Some(format!("theta^2 != 1 on {}", b.display(al)));
            break;
        }
    }
    if inv_bad.is_none() && sp.theta.apply(&nu)? != nu {
        inv_bad = Some("theta(nu) != nu".into());
    }
    report.push({
        let r = CheckRecord::exact(
            "pct-involution",
            format!("theta={}", candidate.name),
            inv_bad.is_none(),
            residual(&inv_bad),
        );
        match inv_bad {
            Some(w) => r.with_witness(w),
            None => r,
        }
    });

    let mut anti_bad = None;
    'outer: for t in 0..=model.cutoff().twice() {
        let wb = model.basis(HalfInt::from_twice(t));
        for a in &wb {
            for b in &wb {
                let (av, bv) = (Vector::basis(a.clone()), Vector::basis(b.clone()));
                let (ta, tb) = (sp.theta.apply(&av)?, sp.theta.apply(&bv)?);
                let lhs = sp.inner(&ta, &tb)?;
                let rhs = sp.inner(&bv, &av)?.conj();
                if lhs != rhs {
                    anti_bad = Some(format!("a={} b={}", a.display(al), b.display(al)));
                    break 'outer;
                }
            }
        }
    }
    report.push({
        let r = CheckRecord::exact(
            "pct-antiunitary",
            format!("theta={}", candidate.name),
            anti_bad.is_none(),
            residual(&anti_bad),
        );
        match anti_bad {
            Some(w) => r.with_witness(w),
            None => r,
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = probes.clone();
    sampled.shuffle(&mut rng);
    for a in sampled.into_iter().take(6) {
        let av = Vector::basis(a.clone());
        let ta = sp.theta.apply(&av)?;
        let tower = l1_tower(sp.form.evaluator(), &nu, &ta)?;
        let eps = Gq::int(pct_sign(a.weight()));
        let window = mode_window(a.weight(), range);
        let n = *window.choose(&mut rng).expect("nonempty window");
        let bad = invariance_mismatch(&mut sp, &av, n, &tower, &eps)?;
        let rec = CheckRecord::exact(
            "adjoint-involution",
            format!("theta={} a={} n={n} seed={seed}", candidate.name, a.display(al)),
            bad.is_none(),
            residual(&bad),
        );
        report.push(match bad {
            Some(w) => rec.with_witness(w),
            None => rec,
        });
    }
    Ok(report)
}

fn invariance_mismatch(
    sp: &mut ScalarProduct,
    a: &Vector,
    n: HalfInt,
    tower: &[Vector],
    eps: &Gq,
) -> Result<Option<String>> {
    let model = sp.model();
    let cutoff = model.cutoff();
    for b in full_basis(model) {
        let wc = b.weight() - n;
        if wc < HalfInt::ZERO || wc > cutoff {
            continue;
        }
        let bv = Vector::basis(b.clone());
        let anb = sp.form.evaluator().apply_shifted(a, n, &bv)?;
        for c in model.basis(wc) {
            let cv = Vector::basis(c.clone());
            let lhs = sp.inner(&anb, &cv)?;
            let mut moved = Vector::zero();
            for s in tower {
                let t = sp.form.evaluator().apply_shifted(s, -n, &cv)?;
                moved.add_scaled(&t, eps);
            }
            let rhs = sp.inner(&bv, &moved)?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "b={} c={}: {lhs} vs {rhs}",
                    b.display(model.alphabet()),
                    c.display(model.alphabet())
                )));
            }
        }
    }
    Ok(None)
}
