use super::{Scalar, StateVector};

/// Applies Z_V = (1 − iΓ)/(1 − i), or its inverse, termwise.
///
/// Even terms are fixed; odd terms are multiplied by i (by −i for the inverse).
pub fn apply_ztwist<S: Scalar>(v: &StateVector<S>, inverse: bool) -> StateVector<S> {
    let phase = if inverse { -S::imag_unit() } else { S::imag_unit() };
    StateVector::from_terms(v.iter().map(|(b, c)| {
        let c = if b.parity().is_odd() { c.clone() * phase.clone() } else { c.clone() };
        (b.clone(), c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Alphabet, BasisState, Generator, Gq, HalfInt, Mode, Parity, Vector};

    #[test]
    fn twist_squares_to_gamma() {
        let a = Alphabet::new(vec![Generator::new(0, "φ", HalfInt::HALF, Parity::Odd)]);
        let odd = BasisState::from_sorted(vec![Mode::new(0, HalfInt::from_twice(-1))], &a);
        let v = Vector::vacuum().add(&Vector::term(odd, Gq::ratio(2, 3)));
        assert_eq!(apply_ztwist(&apply_ztwist(&v, false), false), v.gamma());
        assert_eq!(apply_ztwist(&apply_ztwist(&v, false), true), v);
        assert_eq!(apply_ztwist(&Vector::vacuum(), false), Vector::vacuum());
    }
}
