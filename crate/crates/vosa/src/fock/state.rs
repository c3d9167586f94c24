use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::{Alphabet, BasisState, Gq, HalfInt, Parity, Scalar};

/// Finitely supported linear combination of basis states. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct StateVector<S: Scalar = Gq> {
    terms: BTreeMap<BasisState, S>,
}

/// Exact state vector.
pub type Vector = StateVector<Gq>;
/// Complex-double state vector.
pub type CVector = StateVector<Complex64>;

impl<S: Scalar> Default for StateVector<S> {
    fn default() -> Self {
        StateVector { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> StateVector<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisState) -> Self {
        Self::term(b, S::one())
    }

    pub fn vacuum() -> Self {
        Self::basis(BasisState::vacuum())
    }

    pub fn term(b: BasisState, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(b, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisState, S)>) -> Self {
        let mut v = Self::zero();
        for (b, c) in terms {
            v.add_term(b, c);
        }
        v
    }

    pub fn add_term(&mut self, b: BasisState, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            None => {
                self.terms.insert(b, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(b, sum);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(other, &S::one());
        v
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(other, &-S::one());
        v
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        StateVector {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisState) -> S {
        self.terms.get(b).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, &S)> {
        self.terms.iter()
    }

    pub fn basis_states(&self) -> impl Iterator<Item = &BasisState> {
        self.terms.keys()
    }

    /// Projection onto Ker(L₀ − w) ∩ V_p.
    pub fn graded_component(&self, w: HalfInt, p: Parity) -> Self {
        StateVector {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.weight() == w && b.parity() == p)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<HalfInt> {
        let mut it = self.terms.keys().map(|b| b.weight());
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Common parity of all terms, if homogeneous and nonzero.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|b| b.parity());
        let p = it.next()?;
        it.all(|x| x == p).then_some(p)
    }

    pub fn max_weight(&self) -> Option<HalfInt> {
        self.terms.keys().map(|b| b.weight()).max()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StateVector<T> {
        StateVector::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), f(c))))
    }

    pub fn to_complex(&self) -> CVector {
        self.map(|c| c.to_complex())
    }

    /// Applies the parity operator Γ.
    pub fn gamma(&self) -> Self {
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| {
                    let c = if b.parity().is_odd() { -c.clone() } else { c.clone() };
                    (b.clone(), c)
                })
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayVector { v: self, alphabet }
    }
}

impl CVector {
    /// Euclidean norm in the basis coordinates.
    pub fn coordinate_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<S: Scalar> fmt::Debug for StateVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}){b:?}")?;
        }
        Ok(())
    }
}

struct DisplayVector<'a, S: Scalar> {
    v: &'a StateVector<S>,
    alphabet: &'a Alphabet,
}

impl<S: Scalar> fmt::Display for DisplayVector<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (b, c) in &self.v.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}){}", b.display(self.alphabet))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Generator, Mode};

    fn alphabet() -> Alphabet {
        Alphabet::new(vec![Generator::new(0, "φ", HalfInt::HALF, Parity::Odd)])
    }

    fn phi_state(twice: i64) -> BasisState {
        BasisState::from_sorted(vec![Mode::new(0, HalfInt::from_twice(twice))], &alphabet())
    }

    #[test]
    fn graded_projection() {
        let v = Vector::vacuum().add(&Vector::basis(phi_state(-1)));
        assert_eq!(v.graded_component(HalfInt::HALF, Parity::Odd), Vector::basis(phi_state(-1)));
        assert!(Vector::vacuum().graded_component(HalfInt::ONE, Parity::Even).is_zero());
    }

    #[test]
    fn cancellation_leaves_no_terms() {
        let b = Vector::basis(phi_state(-3));
        let v = b.scale(&Gq::int(2)).add(&b.scale(&Gq::int(-2)));
        assert!(v.is_zero());
        assert_eq!(v.len(), 0);
    }
}
