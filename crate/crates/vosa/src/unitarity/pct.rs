use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{BasisState, GenId, Gq, HalfInt, Scalar, Vector};
use crate::models::VosaModel;
use crate::modes::VertexModel;

/// (−1)^{2d²+d}: (−1)^d for integer d and (−1)^{d+1/2} for half-odd d.
pub fn pct_sign(d: HalfInt) -> i64 {
    let t = d.twice();
    if (t * (t + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Antilinear map determined by θ(g) = sign · g' on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PctCandidate {
    pub name: String,
    /// Indexed by generator id: (image generator, sign).
    pub images: Vec<(GenId, i64)>,
}

impl PctCandidate {
    /// θ(g) = (−1)^{2d²+d} ḡ, where ḡ is the declared conjugate generator.
    ///
    /// On the free fermion this is θφ = −φ; on the super-Virasoro algebras it fixes
    /// L and G, sends J to −J and exchanges G⁺ and G⁻.
    pub fn default_for(model: &VosaModel) -> Self {
        PctCandidate {
            name: "conjugation".into(),
            images: model
                .alphabet()
                .iter()
                .map(|g| (model.conjugate_generator(g.id), pct_sign(g.weight)))
                .collect(),
        }
    }

    /// θ(g) = g on every generator, with coefficients conjugated.
    pub fn identity(model: &VosaModel) -> Self {
        PctCandidate {
            name: "identity".into(),
            images: model.alphabet().iter().map(|g| (g.id, 1)).collect(),
        }
    }
}

/// Evaluates an antilinear candidate on vectors, extended through the mode action.
pub struct PctMap<'m> {
    model: &'m VosaModel,
    candidate: PctCandidate,
    memo: HashMap<BasisState, Vector>,
}

impl<'m> PctMap<'m> {
    pub fn new(model: &'m VosaModel, candidate: PctCandidate) -> Self {
        PctMap { model, candidate, memo: HashMap::new() }
    }

    pub fn candidate(&self) -> &PctCandidate {
        &self.candidate
    }

    pub fn apply_basis(&mut self, b: &BasisState) -> Result<Vector> {
        if b.is_vacuum() {
            return Ok(Vector::vacuum());
        }
        if let Some(v) = self.memo.get(b) {
            return Ok(v.clone());
        }
        let (mode, tail) = self.model.peel(b)?;
        let t = self.apply(&tail)?;
        let (img, sign) = self.candidate.images[mode.gen as usize];
        let mut out = Vector::zero();
        for (s, c) in t.iter() {
            out.add_scaled(&self.model.act(img, mode.index, s)?, &(c.clone() * Gq::int(sign)));
        }
        self.memo.insert(b.clone(), out.clone());
        Ok(out)
    }

    /// θ(Σ c_b b) = Σ c̄_b θ(b).
    pub fn apply(&mut self, v: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (b, c) in v.iter() {
            let t = self.apply_basis(b)?;
            out.add_scaled(&t, &c.conj());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_gadget_values() {
        assert_eq!(pct_sign(HalfInt::ZERO), 1);
        assert_eq!(pct_sign(HalfInt::HALF), -1);
        assert_eq!(pct_sign(HalfInt::ONE), -1);
        assert_eq!(pct_sign(HalfInt::from_twice(3)), 1);
        assert_eq!(pct_sign(HalfInt::int(2)), 1);
    }
}
