use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HalfInt, Parity};
use crate::error::{Error, Result};

pub type GenId = u16;

/// A strong generator of a model: a homogeneous field with fixed weight and parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub weight: HalfInt,
    pub parity: Parity,
}

impl Generator {
    pub fn new(id: GenId, name: &str, weight: HalfInt, parity: Parity) -> Self {
        Generator { id, name: name.to_string(), weight, parity }
    }

    /// Whether the weight-shifted mode `index` creates from the vacuum (index ≤ −d).
    pub fn is_creation(&self, index: HalfInt) -> bool {
        index <= -self.weight
    }
}

/// Generator table indexed by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

impl Alphabet {
    pub fn new(generators: Vec<Generator>) -> Self {
        for (i, g) in generators.iter().enumerate() {
            assert_eq!(g.id as usize, i, "generator ids must be 0..n in order");
        }
        Alphabet { generators }
    }

    pub fn get(&self, id: GenId) -> Result<&Generator> {
        self.generators.get(id as usize).ok_or(Error::UnknownGenerator(id))
    }

    /// Panicking lookup for ids already validated by construction.
    pub fn gen(&self, id: GenId) -> &Generator {
        &self.generators[id as usize]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter()
    }

    pub fn by_name(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Concatenation with the ids of `other` shifted past ours.
    pub fn concat(&self, other: &Alphabet, suffixes: (&str, &str)) -> Alphabet {
        let mut gens: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator { name: format!("{}{}", g.name, suffixes.0), ..g.clone() })
            .collect();
        let off = gens.len() as GenId;
        gens.extend(other.generators.iter().map(|g| Generator {
            id: g.id + off,
            name: format!("{}{}", g.name, suffixes.1),
            ..g.clone()
        }));
        Alphabet { generators: gens }
    }

    pub fn parity_of(&self, modes: &[Mode]) -> Parity {
        modes.iter().fold(Parity::Even, |p, m| p + self.gen(m.gen).parity)
    }
}

/// The weight-shifted mode `g_index` of generator `gen`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Mode {
    pub gen: GenId,
    pub index: HalfInt,
}

impl Mode {
    pub fn new(gen: GenId, index: HalfInt) -> Self {
        Mode { gen, index }
    }
}

/// Canonical PBW monomial `m_1 m_2 ⋯ m_r Ω`, outermost mode first.
///
/// Modes are sorted by generator id, then by increasing index, so the most
/// negative mode of each generator sits leftmost. Odd modes never repeat.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    weight: HalfInt,
    modes: Vec<Mode>,
    parity: Parity,
}

impl BasisState {
    pub fn vacuum() -> Self {
        BasisState { weight: HalfInt::ZERO, modes: Vec::new(), parity: Parity::Even }
    }

    /// Wraps modes already known to be in canonical order.
    pub fn from_sorted(modes: Vec<Mode>, alphabet: &Alphabet) -> Self {
        debug_assert!(is_canonical(&modes, alphabet));
        let weight = modes.iter().fold(HalfInt::ZERO, |w, m| w - m.index);
        let parity = alphabet.parity_of(&modes);
        BasisState { weight, modes, parity }
    }

    pub fn weight(&self) -> HalfInt {
        self.weight
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn is_vacuum(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Splits off the outermost mode.
    pub fn split_first(&self, alphabet: &Alphabet) -> Option<(Mode, BasisState)> {
        let (first, rest) = self.modes.split_first()?;
        Some((*first, BasisState::from_sorted(rest.to_vec(), alphabet)))
    }

    /// Prepends a mode that sorts before (or equal to, if even) the current first one.
    pub fn prepend(&self, m: Mode, alphabet: &Alphabet) -> BasisState {
        let mut modes = Vec::with_capacity(self.modes.len() + 1);
        modes.push(m);
        modes.extend_from_slice(&self.modes);
        BasisState::from_sorted(modes, alphabet)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayState { state: self, alphabet }
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.modes {
            write!(f, "g{}_{{{}}}", m.gen, m.index)?;
        }
        f.write_str("Ω")
    }
}

struct DisplayState<'a> {
    state: &'a BasisState,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayState<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.state.modes {
            let name = self.alphabet.get(m.gen).map(|g| g.name.as_str()).unwrap_or("?");
            write!(f, "{}_{{{}}}", name, m.index)?;
        }
        f.write_str("Ω")
    }
}

fn is_canonical(modes: &[Mode], alphabet: &Alphabet) -> bool {
    modes.windows(2).all(|w| {
        w[0] < w[1] || (w[0] == w[1] && !alphabet.gen(w[0].gen).parity.is_odd())
    })
}

/// Sorts a string of creation modes into canonical order.
///
/// Returns the basis state and the Koszul sign of the sorting permutation,
/// or `None` when an odd mode repeats. Only valid for alphabets whose
/// creation modes supercommute among themselves.
pub fn canonicalize(
    raw: &[Mode],
    alphabet: &Alphabet,
    cutoff: Option<HalfInt>,
) -> Result<Option<(BasisState, i64)>> {
    for m in raw {
        let g = alphabet.get(m.gen)?;
        if !g.is_creation(m.index) {
            return Err(Error::NotCreation(g.name.clone(), m.index));
        }
    }
    let weight = raw.iter().fold(HalfInt::ZERO, |w, m| w - m.index);
    if let Some(cut) = cutoff {
        if weight > cut {
            return Err(Error::AboveCutoff { weight, cutoff: cut });
        }
    }
    let mut modes = raw.to_vec();
    let mut sign = 1;
    for i in 1..modes.len() {
        let mut j = i;
        while j > 0 && modes[j] < modes[j - 1] {
            let odd = |m: Mode| alphabet.gen(m.gen).parity.is_odd();
            if odd(modes[j]) && odd(modes[j - 1]) {
                sign = -sign;
            }
            modes.swap(j, j - 1);
            j -= 1;
        }
    }
    if modes
        .windows(2)
        .any(|w| w[0] == w[1] && alphabet.gen(w[0].gen).parity.is_odd())
    {
        return Ok(None);
    }
    Ok(Some((BasisState::from_sorted(modes, alphabet), sign)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermion() -> Alphabet {
        Alphabet::new(vec![Generator::new(0, "φ", HalfInt::HALF, Parity::Odd)])
    }

    fn phi(twice: i64) -> Mode {
        Mode::new(0, HalfInt::from_twice(twice))
    }

    #[test]
    fn odd_transposition_sign() {
        let a = fermion();
        let (s, sign) = canonicalize(&[phi(-1), phi(-3)], &a, None).unwrap().unwrap();
        assert_eq!(s.modes(), &[phi(-3), phi(-1)]);
        assert_eq!(sign, -1);
        assert_eq!(s.weight(), HalfInt::int(2));
        assert_eq!(s.parity(), Parity::Even);
    }

    #[test]
    fn pauli_exclusion() {
        assert!(canonicalize(&[phi(-1), phi(-1)], &fermion(), None).unwrap().is_none());
    }

    #[test]
    fn single_even_factor() {
        let a = Alphabet::new(vec![Generator::new(0, "L", HalfInt::int(2), Parity::Even)]);
        let (s, sign) = canonicalize(&[Mode::new(0, HalfInt::int(-2))], &a, None).unwrap().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(s.display(&a).to_string(), "L_{-2}Ω");
    }

    #[test]
    fn errors() {
        let a = fermion();
        assert!(matches!(
            canonicalize(&[Mode::new(3, HalfInt::from_twice(-1))], &a, None),
            Err(Error::UnknownGenerator(3))
        ));
        assert!(matches!(
            canonicalize(&[phi(-9)], &a, Some(HalfInt::int(2))),
            Err(Error::AboveCutoff { .. })
        ));
        assert!(canonicalize(&[phi(1)], &a, None).is_err());
    }
}
