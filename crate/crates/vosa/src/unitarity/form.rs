use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::pct::{pct_sign, PctCandidate, PctMap};
use crate::error::{Error, Result};
use crate::fock::{BasisState, GenId, Gq, HalfInt, Scalar, Vector};
use crate::linalg::Matrix;
use crate::models::VosaModel;
use crate::modes::{Evaluator, VertexModel};

/// Invariant bilinear form (·,·) normalised by (Ω,Ω) = 1, computed by adjoint transport
/// of the outermost generator mode.
pub struct FormEngine<'m> {
    model: &'m VosaModel,
    ev: Evaluator<'m>,
    /// Per generator: (L₁^l g)/l! for l ≥ 1, as long as nonzero.
    l1_tower: Vec<Vec<Vector>>,
    memo: HashMap<(BasisState, BasisState), Gq>,
}

impl<'m> FormEngine<'m> {
    pub fn new(model: &'m VosaModel) -> Result<Self> {
        require_cft_type(model)?;
        let mut ev = Evaluator::new(model);
        let nu = model.conformal().clone();
        let mut l1_tower = Vec::new();
        for g in model.alphabet().iter() {
            let mut tower = Vec::new();
            let mut cur = model.generator_state(g.id);
            for l in 1i64.. {
                cur = ev.apply_mode(&nu, 2, &cur)?;
                if cur.is_zero() {
                    break;
                }
                let inv = Gq::real(BigRational::new(BigInt::from(1), BigInt::from(l)));
                cur = cur.scale(&inv);
                tower.push(cur.clone());
            }
            l1_tower.push(tower);
        }
        Ok(FormEngine { model, ev, l1_tower, memo: HashMap::new() })
    }

    pub fn model(&self) -> &'m VosaModel {
        self.model
    }

    pub fn evaluator(&mut self) -> &mut Evaluator<'m> {
        &mut self.ev
    }

    /// Whether every generator is quasi-primary.
    pub fn generators_quasi_primary(&self) -> bool {
        self.l1_tower.iter().all(|t| t.is_empty())
    }

    /// (a, c) on basis states.
    pub fn bilinear_basis(&mut self, a: &BasisState, c: &BasisState) -> Result<Gq> {
        if a.weight() != c.weight() {
            return Ok(Gq::zero());
        }
        if a.is_vacuum() {
            return Ok(if c.is_vacuum() { Gq::one() } else { Gq::zero() });
        }
        let key = (a.clone(), c.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let (mode, tail) = self.model.peel(a)?;
        let g = self.model.alphabet().gen(mode.gen).clone();
        let cv = Vector::basis(c.clone());
        // (g_k b, c) = ε Σ_l (b, ((L₁^l g)/l!)_{−k} c)
        let mut moved = self.model.act(g.id, -mode.index, c)?;
        for s in self.l1_tower[g.id as usize].clone() {
            let t = self.ev.apply_shifted(&s, -mode.index, &cv)?;
            moved.add_scaled(&t, &Gq::one());
        }
        let mut total = self.bilinear(&tail, &moved)?;
        if pct_sign(g.weight) < 0 {
            total = -total;
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }

    /// Bilinear extension to vectors.
    pub fn bilinear(&mut self, u: &Vector, v: &Vector) -> Result<Gq> {
        let mut s = Gq::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                if a.weight() != b.weight() {
                    continue;
                }
                let f = self.bilinear_basis(a, b)?;
                if !f.is_zero() {
                    s = s + x.clone() * y.clone() * f;
                }
            }
        }
        Ok(s)
    }

    pub fn bilinear_gram(&mut self, basis: &[BasisState]) -> Result<Matrix> {
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.bilinear_basis(a, b)).collect())
            .collect()
    }
}

/// The scalar product (u|v) = (θu, v) for a PCT candidate θ.
pub struct ScalarProduct<'m> {
    pub form: FormEngine<'m>,
    pub theta: PctMap<'m>,
}

impl<'m> ScalarProduct<'m> {
    pub fn new(model: &'m VosaModel, candidate: PctCandidate) -> Result<Self> {
        Ok(ScalarProduct { form: FormEngine::new(model)?, theta: PctMap::new(model, candidate) })
    }

    pub fn model(&self) -> &'m VosaModel {
        self.form.model
    }

    pub fn inner_basis(&mut self, a: &BasisState, b: &BasisState) -> Result<Gq> {
        if a.weight() != b.weight() {
            return Ok(Gq::zero());
        }
        let ta = self.theta.apply_basis(a)?;
        self.form.bilinear(&ta, &Vector::basis(b.clone()))
    }

    /// (u|v), antilinear in u.
    pub fn inner(&mut self, u: &Vector, v: &Vector) -> Result<Gq> {
        let mut s = Gq::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                if a.weight() != b.weight() {
                    continue;
                }
                let f = self.inner_basis(a, b)?;
                if !f.is_zero() {
                    s = s + x.conj() * y.clone() * f;
                }
            }
        }
        Ok(s)
    }

    pub fn norm_sqr(&mut self, v: &Vector) -> Result<Gq> {
        self.inner(v, v)
    }

    /// Gram matrix G_ij = (b_i|b_j).
    pub fn gram(&mut self, basis: &[BasisState]) -> Result<Matrix> {
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.inner_basis(a, b)).collect())
            .collect()
    }
}

/// Per-weight matrices of the invariant bilinear form.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub blocks: BTreeMap<HalfInt, (Vec<BasisState>, Matrix)>,
}

impl BilinearForm {
    pub fn block(&self, w: HalfInt) -> Option<&Matrix> {
        self.blocks.get(&w).map(|(_, m)| m)
    }

    /// (a,b) = (b,a) on every block.
    pub fn is_symmetric(&self) -> bool {
        self.blocks.values().all(|(_, m)| {
            m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == m[j][i]))
        })
    }
}

/// All per-weight blocks of the invariant bilinear form up to the cutoff.
pub fn invariant_form(model: &VosaModel) -> Result<BilinearForm> {
    let mut form = FormEngine::new(model)?;
    let mut blocks = BTreeMap::new();
    for t in 0..=model.cutoff().twice() {
        let w = HalfInt::from_twice(t);
        let basis = model.basis(w);
        let m = form.bilinear_gram(&basis)?;
        blocks.insert(w, (basis, m));
    }
    Ok(BilinearForm { blocks })
}

/// Rejects models that are not of CFT type on the truncated basis.
pub fn require_cft_type(model: &VosaModel) -> Result<()> {
    let zero = model.basis(HalfInt::ZERO);
    if zero.len() != 1 || !zero[0].is_vacuum() {
        return Err(Error::NotCftType(format!(
            "{}: dim V_0 = {} (expected the vacuum alone)",
            model.name(),
            zero.len()
        )));
    }
    if model.alphabet().iter().any(|g| g.weight <= HalfInt::ZERO) {
        return Err(Error::NotCftType(format!("{}: generator of non-positive weight", model.name())));
    }
    Ok(())
}

/// (L₁^l a)/l! for a homogeneous vector, l = 0, 1, … while nonzero.
pub fn l1_tower(ev: &mut Evaluator, nu: &Vector, a: &Vector) -> Result<Vec<Vector>> {
    let mut out = vec![a.clone()];
    let mut cur = a.clone();
    for l in 1u64.. {
        cur = ev.apply_mode(nu, 2, &cur)?;
        if cur.is_zero() {
            break;
        }
        let inv = Gq::real(BigRational::new(BigInt::from(1), BigInt::from(l)));
        cur = cur.scale(&inv);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Shorthand for generator states used by the checks.
pub fn generator_states(model: &VosaModel) -> Vec<(GenId, Vector)> {
    model.alphabet().iter().map(|g| (g.id, model.generator_state(g.id))).collect()
}
