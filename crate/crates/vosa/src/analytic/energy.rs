//! Polynomial energy bounds ‖a_n c‖ ≤ M(1+|n|)^s ‖(L₀+1)^k c‖: an exact
//! zeroth-order certificate for weight-½ fields and a least-squares envelope fit.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{BasisState, Gq, HalfInt, Scalar, Vector};
use crate::linalg::{self, Matrix};
use crate::modes::VertexModel;
use crate::report::{CheckRecord, CheckReport};
use crate::unitarity::ScalarProduct;

/// Constants of an energy bound. `exact` marks a certificate proved in exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyBound {
    pub m: f64,
    pub s: f64,
    pub k: f64,
    pub exact: bool,
}

impl EnergyBound {
    /// ‖a_n c‖ ≤ m‖c‖ for all n.
    pub fn zeroth_order(m: f64) -> Self {
        EnergyBound { m, s: 0.0, k: 0.0, exact: true }
    }

    /// M(1+|n|)^s(1+w)^k, the bound for a state of weight ≤ w.
    pub fn factor(&self, n: f64, w: f64) -> f64 {
        self.m * (1.0 + n.abs()).powf(self.s) * (1.0 + w).powf(self.k)
    }
}

/// Result of [`energy_bound_fit`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnergyFit {
    pub bound: EnergyBound,
    /// Root-mean-square residual of the log-linear fit.
    pub rms: f64,
    /// Slope of the fit residual against log(1+w).
    pub trend: f64,
    /// The residual grows with weight, so the fit is likely shaped by the cutoff.
    pub truncated: bool,
    pub samples: usize,
}

fn gq_sqrt(x: &Gq) -> f64 {
    x.to_complex().re.max(0.0).sqrt()
}

fn is_nonnegative(x: &Gq) -> bool {
    x.is_zero() || x.is_positive_real()
}

fn coords(v: &Vector, basis: &[BasisState]) -> Vec<Gq> {
    basis.iter().map(|b| v.coeff(b)).collect()
}

/// A^H G A for A given by columns.
fn congruence(cols: &[Vec<Gq>], g: &Matrix) -> Matrix {
    let gc: Vec<Vec<Gq>> = cols.iter().map(|c| linalg::mat_vec(g, c)).collect();
    cols.iter()
        .map(|ci| {
            gc.iter()
                .map(|gj| ci.iter().zip(gj).fold(Gq::zero(), |s, (x, y)| s + x.conj() * y.clone()))
                .collect()
        })
        .collect()
}

/// Exact certificate ‖a_m c‖ ≤ ‖a‖‖c‖ for a weight-½ field: on every basis state of
/// weight ≤ `max_weight` and, as an operator inequality ‖a‖²G_w − A_mᴴG_{w−m}A_m ⪰ 0,
/// on each weight space. Modes whose image lies above the model cutoff are not probed.
pub fn zeroth_order_certificate(
    sp: &mut ScalarProduct,
    a: &Vector,
    max_weight: HalfInt,
) -> Result<(EnergyBound, CheckReport)> {
    let model = sp.model();
    let d = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
    if d != HalfInt::HALF {
        return Err(Error::Argument(format!("the zeroth-order certificate needs weight 1/2, got {d}")));
    }
    let a_norm2 = sp.inner(a, a)?;
    let mut report = CheckReport::new("energy.zeroth_order", &model.fingerprint());
    let cutoff = model.cutoff();
    let mut grams: BTreeMap<HalfInt, Matrix> = BTreeMap::new();
    for tw in 0..=max_weight.twice().min(cutoff.twice()) {
        let w = HalfInt::from_twice(tw);
        let basis = model.basis(w);
        if basis.is_empty() {
            continue;
        }
        let gw = match grams.get(&w) {
            Some(g) => g.clone(),
            None => sp.gram(&basis)?,
        };
        grams.insert(w, gw.clone());
        let mut state_bad = 0usize;
        let mut op_bad = 0usize;
        let mut probed = 0usize;
        for tm in (tw - cutoff.twice()..=tw).filter(|t| t.rem_euclid(2) == 1) {
            let m = HalfInt::from_twice(tm);
            let out_w = w - m;
            let out_basis = model.basis(out_w);
            if out_basis.is_empty() {
                continue;
            }
            let g_out = match grams.get(&out_w) {
                Some(g) => g.clone(),
                None => {
                    let g = sp.gram(&out_basis)?;
                    grams.insert(out_w, g.clone());
                    g
                }
            };
            let mut cols = Vec::with_capacity(basis.len());
            for b in &basis {
                let img = sp.form.evaluator().apply_shifted(a, m, &Vector::basis(b.clone()))?;
                cols.push(coords(&img, &out_basis));
            }
            let pulled = congruence(&cols, &g_out);
            let gap: Matrix = gw
                .iter()
                .zip(&pulled)
                .map(|(gr, pr)| gr.iter().zip(pr).map(|(x, y)| a_norm2.clone() * x.clone() - y.clone()).collect())
                .collect();
            for i in 0..basis.len() {
                if !is_nonnegative(&gap[i][i]) {
                    state_bad += 1;
                }
            }
            if linalg::inertia(&gap).1 != 0 {
                op_bad += 1;
            }
            probed += 1;
        }
        let inputs = format!("w={w}, modes={probed}");
        report.push(CheckRecord::exact("energy.state_bound", inputs.clone(), state_bad == 0, state_bad.to_string()));
        report.push(CheckRecord::exact("energy.operator_bound", inputs, op_bad == 0, op_bad.to_string()));
    }
    Ok((EnergyBound::zeroth_order(gq_sqrt(&a_norm2)), report))
}

/// Envelope fit log(‖a_n c‖/‖c‖) ≤ log M + s log(1+|n|) + k log(1+w) over the basis
/// states c of weight w ≤ `max_weight` and indices |n| ≤ `band`, with exact norms.
pub fn energy_bound_fit(sp: &mut ScalarProduct, a: &Vector, max_weight: HalfInt, band: usize) -> Result<EnergyFit> {
    let model = sp.model();
    let d = a.weight().ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
    if d == HalfInt::ZERO {
        return Ok(EnergyFit {
            bound: EnergyBound::zeroth_order(gq_sqrt(&sp.inner(a, a)?)),
            rms: 0.0,
            trend: 0.0,
            truncated: false,
            samples: 0,
        });
    }
    let cutoff = model.cutoff();
    let mut envelope: BTreeMap<(HalfInt, HalfInt), f64> = BTreeMap::new();
    for tw in 0..=max_weight.twice().min(cutoff.twice()) {
        let w = HalfInt::from_twice(tw);
        for c in model.basis(w) {
            let cv = Vector::basis(c.clone());
            let cn = gq_sqrt(&sp.inner_basis(&c, &c)?);
            let lo = -(band as i64);
            for t in 2 * lo..=2 * band as i64 {
                let n = HalfInt::from_twice(t);
                if !(n + d).is_integer() {
                    continue;
                }
                let out = w - n;
                if out < HalfInt::ZERO || out > cutoff {
                    continue;
                }
                let v = sp.form.evaluator().apply_shifted(a, n, &cv)?;
                if v.is_zero() {
                    continue;
                }
                let r = gq_sqrt(&sp.norm_sqr(&v)?) / cn;
                let e = envelope.entry((n, w)).or_insert(0.0);
                *e = e.max(r);
            }
        }
    }
    if envelope.len() < 3 {
        return Err(Error::Argument("too few nonzero samples for an energy-bound fit".into()));
    }
    let rows: Vec<(f64, f64, f64)> = envelope
        .iter()
        .map(|((n, w), r)| ((1.0 + n.to_f64().abs()).ln(), (1.0 + w.to_f64()).ln(), r.ln()))
        .collect();
    let x = DMatrix::from_fn(rows.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => rows[i].0,
        _ => rows[i].1,
    });
    let y = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.2));
    let beta = x
        .clone()
        .svd(true, true)
        .solve(&y, 1e-12)
        .map_err(|e| Error::Argument(format!("least squares failed: {e}")))?;
    let (s, k) = (beta[1], beta[2]);
    let resid: Vec<f64> = rows.iter().map(|r| r.2 - beta[0] - s * r.0 - k * r.1).collect();
    let log_m = rows.iter().map(|r| r.2 - s * r.0 - k * r.1).fold(f64::NEG_INFINITY, f64::max);
    let rms = (resid.iter().map(|e| e * e).sum::<f64>() / resid.len() as f64).sqrt();
    let lw: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let mean_w = lw.iter().sum::<f64>() / lw.len() as f64;
    let abs: Vec<f64> = resid.iter().map(|e| e.abs()).collect();
    let mean_e = abs.iter().sum::<f64>() / abs.len() as f64;
    let (num, den) = lw
        .iter()
        .zip(&abs)
        .fold((0.0, 0.0), |(p, q), (w, e)| (p + (w - mean_w) * (e - mean_e), q + (w - mean_w).powi(2)));
    let trend = if den > 0.0 { num / den } else { 0.0 };
    Ok(EnergyFit {
        bound: EnergyBound { m: log_m.exp(), s, k, exact: false },
        rms,
        trend,
        truncated: trend > 0.5,
        samples: rows.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_free_fermion;
    use crate::unitarity::PctCandidate;

    #[test]
    fn fermion_zeroth_order_certificate() {
        let f = build_free_fermion(HalfInt::int(5));
        let mut sp = ScalarProduct::new(&f, PctCandidate::default_for(&f)).unwrap();
        let phi = f.generator_state(0);
        let (b, r) = zeroth_order_certificate(&mut sp, &phi, HalfInt::int(3)).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!((b.m, b.s, b.k, b.exact), (1.0, 0.0, 0.0, true));
        assert!(zeroth_order_certificate(&mut sp, f.conformal(), HalfInt::int(2)).is_err());
    }

    #[test]
    fn vacuum_gets_the_trivial_certificate() {
        let f = build_free_fermion(HalfInt::int(2));
        let mut sp = ScalarProduct::new(&f, PctCandidate::default_for(&f)).unwrap();
        let fit = energy_bound_fit(&mut sp, &Vector::vacuum(), HalfInt::int(2), 4).unwrap();
        assert_eq!(fit.bound, EnergyBound::zeroth_order(1.0));
    }
}
