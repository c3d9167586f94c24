use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::algebras::{
    fermion_alphabet, n2_alphabet, ns_alphabet, virasoro_alphabet, Clifford, NeveuSchwarz,
    Virasoro, N2, N2_GM, N2_GP, NS_G, NS_L,
};
use super::descriptor::{ModelDescriptor, VermaKind};
use super::lie::LieModel;
use crate::error::{Error, Result};
use crate::fock::{
    Alphabet, BasisState, GenId, Gq, HalfInt, Mode, Parity, Scalar, Vector,
};
use crate::linalg;
use crate::modes::VertexModel;
use crate::report::digest;
use crate::unitarity::FormEngine;

/// A vertex operator superalgebra truncated at a weight cutoff.
pub struct VosaModel {
    name: String,
    kind: Kind,
    alphabet: Alphabet,
    cutoff: HalfInt,
    central_charge: Gq,
    conformal: Vector,
    superconformal: Option<Vector>,
    conjugate: Vec<GenId>,
    descriptor: ModelDescriptor,
}

enum Kind {
    Lie(LieModel),
    Tensor(Box<VosaModel>, Box<VosaModel>),
    Quotient(Quotient),
}

/// Row of a graded-dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub weight: HalfInt,
    pub dim: usize,
    pub even: usize,
    pub odd: usize,
}

impl VosaModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn central_charge(&self) -> &Gq {
        &self.central_charge
    }

    /// Conformal vector ν.
    pub fn conformal(&self) -> &Vector {
        &self.conformal
    }

    /// Superconformal vector τ, if declared.
    pub fn superconformal(&self) -> Option<&Vector> {
        self.superconformal.as_ref()
    }

    pub fn descriptor(&self) -> &ModelDescriptor {
        &self.descriptor
    }

    /// Generator paired with `g` by the default conjugation (g itself unless declared).
    pub fn conjugate_generator(&self, g: GenId) -> GenId {
        self.conjugate[g as usize]
    }

    /// Stable short hash of the descriptor.
    pub fn fingerprint(&self) -> String {
        digest(&serde_json::to_string(&self.descriptor.without_generators()).unwrap_or_default())
    }

    /// The state g_{−d}Ω of a generator.
    pub fn generator_state(&self, g: GenId) -> Vector {
        let d = self.alphabet.gen(g).weight;
        Vector::basis(BasisState::from_sorted(vec![Mode::new(g, -d)], &self.alphabet))
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Vector> {
        self.alphabet.by_name(name).map(|g| self.generator_state(g.id))
    }

    pub fn graded_dimensions(&self) -> Vec<GradedDim> {
        (0..=self.cutoff.twice())
            .map(HalfInt::from_twice)
            .map(|w| {
                let b = self.basis(w);
                let odd = b.iter().filter(|s| s.parity().is_odd()).count();
                GradedDim { weight: w, dim: b.len(), even: b.len() - odd, odd }
            })
            .collect()
    }

    /// Whether any term of `v` lies above the cutoff.
    pub fn truncated(&self, v: &Vector) -> bool {
        v.max_weight().is_some_and(|w| w > self.cutoff)
    }

    /// For quotient models, the Verma model and the per-weight radicals.
    pub fn quotient_parts(&self) -> Option<(&VosaModel, BTreeMap<HalfInt, Vec<Vector>>)> {
        match &self.kind {
            Kind::Quotient(q) => Some((
                &q.base,
                q.weights.iter().map(|(w, qw)| (*w, qw.kernel.clone())).collect(),
            )),
            _ => None,
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.kind, Kind::Quotient(_))
    }

    /// Same model with a different cutoff.
    pub fn with_cutoff(&self, cutoff: HalfInt) -> Result<VosaModel> {
        build(&self.descriptor.with_cutoff(cutoff))
    }
}

impl VertexModel for VosaModel {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn cutoff(&self) -> HalfInt {
        self.cutoff
    }

    fn act(&self, gen: GenId, index: HalfInt, state: &BasisState) -> Result<Vector> {
        match &self.kind {
            Kind::Lie(l) => l.act(gen, index, state),
            Kind::Tensor(m1, m2) => tensor_act(self, m1, m2, gen, index, state),
            Kind::Quotient(q) => {
                let v = q.base.act(gen, index, state)?;
                q.project(&v)
            }
        }
    }

    fn peel(&self, state: &BasisState) -> Result<(Mode, Vector)> {
        match &self.kind {
            Kind::Lie(l) => l.peel(state),
            Kind::Tensor(m1, m2) => tensor_peel(self, m1, m2, state),
            Kind::Quotient(q) => {
                let (m, tail) = q.base.peel(state)?;
                Ok((m, q.project(&tail)?))
            }
        }
    }

    fn basis(&self, weight: HalfInt) -> Vec<BasisState> {
        if weight > self.cutoff || weight < HalfInt::ZERO {
            return Vec::new();
        }
        match &self.kind {
            Kind::Lie(l) => l.basis(weight),
            Kind::Tensor(m1, m2) => tensor_basis(&self.alphabet, m1, m2, weight),
            Kind::Quotient(q) => q.weights.get(&weight).map(|w| w.keep.clone()).unwrap_or_default(),
        }
    }
}

// ---------------------------------------------------------------- builders

/// Builds a model from its descriptor.
pub fn build(desc: &ModelDescriptor) -> Result<VosaModel> {
    desc.validate()?;
    let model = match desc {
        ModelDescriptor::FreeFermion { cutoff, .. } => build_free_fermion(*cutoff),
        ModelDescriptor::Tensor { factors, .. } => {
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| Error::Schema("empty tensor".into()))?;
            let mut acc = build(first)?;
            for f in it {
                acc = build_graded_tensor(acc, build(f)?);
            }
            acc
        }
        _ => {
            let (kind, p) = desc.verma_params().expect("verma variant");
            let v = build_verma(kind, p.c.clone(), p.cutoff);
            if p.quotient {
                if !kind.in_unitary_series(&p.c) {
                    return Err(Error::Schema(format!(
                        "c = {} is not in the unitary series of the {} algebra",
                        p.c,
                        kind.label()
                    )));
                }
                quotient_by_nullspace(v)?
            } else {
                v
            }
        }
    };
    let mut model = model;
    if let Some(declared) = desc.declared_generators() {
        if declared != model.alphabet.iter().cloned().collect::<Vec<_>>().as_slice() {
            return Err(Error::Schema("generator table does not match the construction".into()));
        }
    }
    model.descriptor = desc.without_generators();
    Ok(model)
}

/// Free Majorana fermion F with c = 1/2.
pub fn build_free_fermion(cutoff: HalfInt) -> VosaModel {
    let alphabet = fermion_alphabet();
    let phi = |t: i64| Mode::new(0, HalfInt::from_twice(t));
    let nu = Vector::term(
        BasisState::from_sorted(vec![phi(-3), phi(-1)], &alphabet),
        Gq::ratio(1, 2),
    );
    VosaModel {
        name: "F".into(),
        kind: Kind::Lie(LieModel::new(alphabet.clone(), Box::new(Clifford), cutoff)),
        alphabet,
        cutoff,
        central_charge: Gq::ratio(1, 2),
        conformal: nu,
        superconformal: None,
        conjugate: vec![0],
        descriptor: ModelDescriptor::free_fermion(cutoff),
    }
}

/// Vacuum Verma module of the Virasoro, N=1 or N=2 algebra.
pub fn build_verma(kind: VermaKind, c: Gq, cutoff: HalfInt) -> VosaModel {
    let (alphabet, brackets, conjugate): (Alphabet, Box<dyn super::lie::Brackets>, Vec<GenId>) =
        match kind {
            VermaKind::Virasoro => (virasoro_alphabet(), Box::new(Virasoro { c: c.clone() }), vec![0]),
            VermaKind::Ns => (ns_alphabet(), Box::new(NeveuSchwarz { c: c.clone() }), vec![0, 1]),
            VermaKind::N2 => (
                n2_alphabet(),
                Box::new(N2 { c: c.clone() }),
                vec![0, 1, N2_GM, N2_GP],
            ),
        };
    let nu = Vector::basis(BasisState::from_sorted(
        vec![Mode::new(NS_L, HalfInt::int(-2))],
        &alphabet,
    ));
    let tau = (kind == VermaKind::Ns).then(|| {
        Vector::basis(BasisState::from_sorted(
            vec![Mode::new(NS_G, HalfInt::from_twice(-3))],
            &alphabet,
        ))
    });
    VosaModel {
        name: format!("{}Verma(c={c})", kind.label()),
        kind: Kind::Lie(LieModel::new(alphabet.clone(), brackets, cutoff)),
        alphabet,
        cutoff,
        central_charge: c.clone(),
        conformal: nu,
        superconformal: tau,
        conjugate,
        descriptor: ModelDescriptor::verma(kind, c, cutoff, false),
    }
}

/// Model on an explicit mode superalgebra (for tests and counterexamples).
pub fn build_custom(
    name: &str,
    alphabet: Alphabet,
    brackets: Box<dyn super::lie::Brackets>,
    cutoff: HalfInt,
    central_charge: Gq,
    conformal: Vector,
) -> VosaModel {
    let n = alphabet.len();
    VosaModel {
        name: name.into(),
        kind: Kind::Lie(LieModel::new(alphabet.clone(), brackets, cutoff)),
        alphabet,
        cutoff,
        central_charge,
        conformal,
        superconformal: None,
        conjugate: (0..n as GenId).collect(),
        descriptor: ModelDescriptor::free_fermion(cutoff),
    }
}

// ---------------------------------------------------------------- tensor product

fn shift_modes(modes: &[Mode], by: i32) -> Vec<Mode> {
    modes
        .iter()
        .map(|m| Mode::new((m.gen as i32 + by) as GenId, m.index))
        .collect()
}

fn embed(alphabet: &Alphabet, v: &Vector, shift: i32, rest: &[Mode], rest_first: bool) -> Vector {
    Vector::from_terms(v.iter().map(|(b, c)| {
        let mine = shift_modes(b.modes(), shift);
        let modes = if rest_first {
            [rest, &mine[..]].concat()
        } else {
            [&mine[..], rest].concat()
        };
        (BasisState::from_sorted(modes, alphabet), c.clone())
    }))
}

fn split_tensor(
    m1: &VosaModel,
    m2: &VosaModel,
    state: &BasisState,
) -> (BasisState, BasisState, Vec<Mode>, Vec<Mode>) {
    let k1 = m1.alphabet.len() as GenId;
    let (p1, p2): (Vec<Mode>, Vec<Mode>) = state.modes().iter().partition(|m| m.gen < k1);
    let b1 = BasisState::from_sorted(p1.clone(), &m1.alphabet);
    let b2 = BasisState::from_sorted(shift_modes(&p2, -(k1 as i32)), &m2.alphabet);
    (b1, b2, p1, p2)
}

fn tensor_act(
    me: &VosaModel,
    m1: &VosaModel,
    m2: &VosaModel,
    gen: GenId,
    index: HalfInt,
    state: &BasisState,
) -> Result<Vector> {
    let k1 = m1.alphabet.len() as GenId;
    me.alphabet.get(gen)?;
    let (b1, b2, p1, p2) = split_tensor(m1, m2, state);
    if gen < k1 {
        let v = m1.act(gen, index, &b1)?;
        Ok(embed(&me.alphabet, &v, 0, &p2, false))
    } else {
        let g = me.alphabet.gen(gen);
        let sign = g.parity.koszul(b1.parity());
        let v = m2.act(gen - k1, index, &b2)?;
        Ok(embed(&me.alphabet, &v, k1 as i32, &p1, true).scale(&Gq::int(sign)))
    }
}

fn tensor_peel(
    me: &VosaModel,
    m1: &VosaModel,
    m2: &VosaModel,
    state: &BasisState,
) -> Result<(Mode, Vector)> {
    let k1 = m1.alphabet.len() as GenId;
    let (b1, b2, p1, p2) = split_tensor(m1, m2, state);
    if !b1.is_vacuum() {
        let (m, tail) = m1.peel(&b1)?;
        Ok((m, embed(&me.alphabet, &tail, 0, &p2, false)))
    } else {
        let (m, tail) = m2.peel(&b2)?;
        Ok((Mode::new(m.gen + k1, m.index), embed(&me.alphabet, &tail, k1 as i32, &p1, true)))
    }
}

fn tensor_basis(alphabet: &Alphabet, m1: &VosaModel, m2: &VosaModel, w: HalfInt) -> Vec<BasisState> {
    let k1 = m1.alphabet.len() as i32;
    let mut out = Vec::new();
    for t1 in 0..=w.twice() {
        let (w1, w2) = (HalfInt::from_twice(t1), w - HalfInt::from_twice(t1));
        let (l, r) = (m1.basis(w1), m2.basis(w2));
        for b1 in &l {
            for b2 in &r {
                let modes = [b1.modes(), &shift_modes(b2.modes(), k1)[..]].concat();
                out.push(BasisState::from_sorted(modes, alphabet));
            }
        }
    }
    out.sort();
    out
}

/// Graded tensor product V¹ ⊗̂ V² with Koszul-signed actions and c = c₁ + c₂.
pub fn build_graded_tensor(m1: VosaModel, m2: VosaModel) -> VosaModel {
    let alphabet = m1.alphabet.concat(&m2.alphabet, ("₁", "₂"));
    let k1 = m1.alphabet.len() as GenId;
    let cutoff = m1.cutoff.min(m2.cutoff);
    let nu = embed(&alphabet, &m1.conformal, 0, &[], false)
        .add(&embed(&alphabet, &m2.conformal, k1 as i32, &[], true));
    let conjugate = m1
        .conjugate
        .iter()
        .copied()
        .chain(m2.conjugate.iter().map(|g| g + k1))
        .collect();
    let descriptor = ModelDescriptor::tensor(vec![m1.descriptor.clone(), m2.descriptor.clone()]);
    VosaModel {
        name: format!("({})⊗({})", m1.name, m2.name),
        central_charge: m1.central_charge.clone() + m2.central_charge.clone(),
        alphabet,
        cutoff,
        conformal: nu,
        superconformal: None,
        conjugate,
        descriptor,
        kind: Kind::Tensor(Box::new(m1), Box::new(m2)),
    }
}

// ---------------------------------------------------------------- quotient

struct QuotientWeight {
    index: HashMap<BasisState, usize>,
    keep: Vec<BasisState>,
    proj: Vec<Vec<Gq>>,
    kernel: Vec<Vector>,
}

struct Quotient {
    base: Box<VosaModel>,
    weights: BTreeMap<HalfInt, QuotientWeight>,
}

impl Quotient {
    fn project(&self, v: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (b, c) in v.iter() {
            let qw = self.weights.get(&b.weight()).ok_or(Error::AboveCutoff {
                weight: b.weight(),
                cutoff: self.base.cutoff,
            })?;
            let j = qw.index[b];
            for (i, k) in qw.keep.iter().enumerate() {
                let p = &qw.proj[i][j];
                if !p.is_zero() {
                    out.add_term(k.clone(), p.clone() * c.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Quotient by the radical of the invariant bilinear form, weight by weight up to the cutoff.
///
/// The complement basis consists of the pivot columns of the Gram matrix in
/// graded-lex order.
pub fn quotient_by_nullspace(base: VosaModel) -> Result<VosaModel> {
    let mut weights = BTreeMap::new();
    {
        let mut form = FormEngine::new(&base)?;
        for t in 0..=base.cutoff.twice() {
            let w = HalfInt::from_twice(t);
            let basis = base.basis(w);
            let gram = form.bilinear_gram(&basis)?;
            let (_, pivots) = linalg::rref(gram.clone());
            let keep: Vec<BasisState> = pivots.iter().map(|&i| basis[i].clone()).collect();
            let sub: Vec<Vec<Gq>> = pivots
                .iter()
                .map(|&i| pivots.iter().map(|&j| gram[i][j].clone()).collect())
                .collect();
            let rows: Vec<Vec<Gq>> = pivots.iter().map(|&i| gram[i].clone()).collect();
            let proj = linalg::solve(sub, rows)
                .ok_or_else(|| Error::Argument(format!("singular pivot block at weight {w}")))?;
            let kernel = linalg::kernel(gram)
                .into_iter()
                .map(|col| {
                    Vector::from_terms(basis.iter().cloned().zip(col))
                })
                .collect();
            let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
            weights.insert(w, QuotientWeight { index, keep, proj, kernel });
        }
    }
    let descriptor = match base.descriptor.verma_params() {
        Some((kind, p)) => ModelDescriptor::verma(kind, p.c.clone(), p.cutoff, true),
        None => base.descriptor.clone(),
    };
    let q = Quotient { base: Box::new(base), weights };
    let b = &q.base;
    let conformal = q.project(&b.conformal)?;
    let superconformal = b.superconformal.as_ref().map(|t| q.project(t)).transpose()?;
    Ok(VosaModel {
        name: format!("{}/radical", b.name),
        alphabet: b.alphabet.clone(),
        cutoff: b.cutoff,
        central_charge: b.central_charge.clone(),
        conformal,
        superconformal,
        conjugate: b.conjugate.clone(),
        descriptor,
        kind: Kind::Quotient(q),
    })
}

/// Parity split helper used by reports.
pub fn parity_counts(states: &[BasisState]) -> (usize, usize) {
    let odd = states.iter().filter(|s| s.parity() == Parity::Odd).count();
    (states.len() - odd, odd)
}
