use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fock::{
    binomial, Alphabet, BasisState, GenId, Gq, HalfInt, Mode, Parity, Scalar, Vector,
};

/// A graded space with generator mode actions and PBW peeling.
pub trait VertexModel: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// Weight up to which bases are enumerated.
    fn cutoff(&self) -> HalfInt;

    /// The weight-shifted generator mode `g_index` on a basis state.
    fn act(&self, gen: GenId, index: HalfInt, state: &BasisState) -> Result<Vector>;

    /// Writes a non-vacuum basis state as `g_index · tail`.
    fn peel(&self, state: &BasisState) -> Result<(Mode, Vector)>;

    /// Basis of the weight space V_w, in graded-lex order.
    fn basis(&self, weight: HalfInt) -> Vec<BasisState>;
}

/// `g_index v` for a generator mode and any vector.
pub fn act_vector(
    model: &dyn VertexModel,
    gen: GenId,
    index: HalfInt,
    v: &Vector,
) -> Result<Vector> {
    let mut out = Vector::zero();
    for (b, c) in v.iter() {
        out.add_scaled(&model.act(gen, index, b)?, c);
    }
    Ok(out)
}

/// All basis states up to the cutoff, grouped by weight.
pub fn full_basis(model: &dyn VertexModel) -> Vec<BasisState> {
    (0..=model.cutoff().twice())
        .map(HalfInt::from_twice)
        .flat_map(|w| model.basis(w))
        .collect()
}

/// Evaluation context for derived modes a_{(n)} with its own memo table.
pub struct Evaluator<'m> {
    model: &'m dyn VertexModel,
    memo: HashMap<(BasisState, i64, BasisState), Vector>,
    pub j_ceiling: i64,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m dyn VertexModel) -> Self {
        Evaluator { model, memo: HashMap::new(), j_ceiling: 64 }
    }

    pub fn model(&self) -> &'m dyn VertexModel {
        self.model
    }

    pub fn alphabet(&self) -> &'m Alphabet {
        self.model.alphabet()
    }

    /// a_{(n)} c for arbitrary vectors.
    pub fn apply_mode(&mut self, a: &Vector, n: i64, c: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (ab, ac) in a.iter() {
            for (cb, cc) in c.iter() {
                let r = self.mode_basis(ab, n, cb)?;
                out.add_scaled(&r, &(ac.clone() * cc.clone()));
            }
        }
        Ok(out)
    }

    /// a_n c in the weight-shifted indexing a_n = a_{(n+d−1)}; `a` must be homogeneous.
    pub fn apply_shifted(&mut self, a: &Vector, index: HalfInt, c: &Vector) -> Result<Vector> {
        if a.is_zero() {
            return Ok(Vector::zero());
        }
        let d = a
            .weight()
            .ok_or_else(|| Error::Inhomogeneous(format!("{a:?}")))?;
        let n = shifted_to_n(index, d)?;
        self.apply_mode(a, n, c)
    }

    /// Generator mode g_{(q)} on a vector.
    pub fn generator_mode(&self, gen: GenId, q: i64, v: &Vector) -> Result<Vector> {
        let d = self.alphabet().gen(gen).weight;
        act_vector(self.model, gen, HalfInt::int(q) - d + HalfInt::ONE, v)
    }

    fn mode_basis(&mut self, a: &BasisState, n: i64, c: &BasisState) -> Result<Vector> {
        if a.is_vacuum() {
            return Ok(if n == -1 { Vector::basis(c.clone()) } else { Vector::zero() });
        }
        if a.weight() + c.weight() < HalfInt::int(n + 1) {
            return Ok(Vector::zero());
        }
        let key = (a.clone(), n, c.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let out = self.reduce(a, n, c)?;
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// (g_{(p)} b)_{(n)} c via the associative formula.
    fn reduce(&mut self, a: &BasisState, n: i64, c: &BasisState) -> Result<Vector> {
        let (mode, tail) = self.model.peel(a)?;
        let g = self.alphabet().gen(mode.gen).clone();
        let p = shifted_to_n(mode.index, g.weight)?;
        let cv = Vector::basis(c.clone());
        if p == -1 && tail == Vector::vacuum() {
            return self.generator_mode(g.id, n, &cv);
        }
        let tail_weight = a.weight() + mode.index;
        let tail_parity = a.parity() + g.parity;
        let sign = g.parity.koszul(tail_parity) * if p.rem_euclid(2) == 0 { 1 } else { -1 };
        let j1 = (tail_weight + c.weight()).floor() - 1 - n;
        let j2 = (g.weight + c.weight()).floor() - 1;
        let jmax = j1.max(j2);
        if jmax > self.j_ceiling {
            return Err(Error::SumCeiling(self.j_ceiling));
        }
        let mut out = Vector::zero();
        for j in 0..=jmax.max(-1) {
            let coef = Gq::big(binomial(p, j)) * Gq::int(if j % 2 == 0 { 1 } else { -1 });
            if coef.is_zero() {
                continue;
            }
            if j <= j1 {
                let t = self.apply_mode(&tail, n + j, &cv)?;
                let t = self.generator_mode(g.id, p - j, &t)?;
                out.add_scaled(&t, &coef);
            }
            if j <= j2 {
                let t = self.generator_mode(g.id, j, &cv)?;
                let t = self.apply_mode(&tail, p + n - j, &t)?;
                out.add_scaled(&t, &(coef * Gq::int(-sign)));
            }
        }
        Ok(out)
    }

    /// Graded commutator a_m b_k c − (−1)^{p(a)p(b)} b_k a_m c in weight-shifted indices.
    pub fn graded_commutator(
        &mut self,
        a: &Vector,
        m: HalfInt,
        b: &Vector,
        k: HalfInt,
        c: &Vector,
    ) -> Result<Vector> {
        let s = parity_of(a)?.koszul(parity_of(b)?);
        let bc = self.apply_shifted(b, k, c)?;
        let abc = self.apply_shifted(a, m, &bc)?;
        let ac = self.apply_shifted(a, m, c)?;
        let bac = self.apply_shifted(b, k, &ac)?;
        let mut out = abc;
        out.add_scaled(&bac, &Gq::int(-s));
        Ok(out)
    }
}

/// Converts a weight-shifted index to the (n)-index for a field of weight d.
pub fn shifted_to_n(index: HalfInt, d: HalfInt) -> Result<i64> {
    (index + d - HalfInt::ONE)
        .to_integer()
        .ok_or(Error::BadIndex { index, weight: d })
}

/// Parity of a homogeneous vector; zero counts as even.
pub fn parity_of(v: &Vector) -> Result<Parity> {
    if v.is_zero() {
        return Ok(Parity::Even);
    }
    v.parity().ok_or_else(|| Error::Inhomogeneous(format!("{v:?}")))
}
