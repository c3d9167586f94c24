//! Vacuum modules of mode Lie superalgebras, realized by PBW straightening.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::Result;
use crate::fock::{Alphabet, BasisState, GenId, Gq, HalfInt, Mode, Scalar, Vector};
use crate::modes::VertexModel;

/// A supercommutator [x, y] = Σ coeff·mode + central·1.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub modes: Vec<(Mode, Gq)>,
    pub central: Gq,
}

impl Bracket {
    pub fn zero() -> Self {
        Bracket { modes: Vec::new(), central: Gq::zero() }
    }

    pub fn mode(m: Mode, c: Gq) -> Self {
        Bracket { modes: vec![(m, c)], central: Gq::zero() }
    }

    pub fn with(mut self, m: Mode, c: Gq) -> Self {
        if !c.is_zero() {
            self.modes.push((m, c));
        }
        self
    }

    pub fn plus_central(mut self, c: Gq) -> Self {
        self.central = self.central + c;
        self
    }

    pub fn neg(self) -> Self {
        Bracket {
            modes: self.modes.into_iter().map(|(m, c)| (m, -c)).collect(),
            central: -self.central,
        }
    }
}

/// Structure constants of a mode superalgebra.
pub trait Brackets: Send + Sync {
    fn bracket(&self, x: Mode, y: Mode) -> Bracket;
}

/// Vacuum module: modes g_n with n > −d kill Ω, the rest act freely modulo relations.
pub struct LieModel {
    alphabet: Alphabet,
    brackets: Box<dyn Brackets>,
    cutoff: HalfInt,
    memo: RwLock<HashMap<(Mode, BasisState), Vector>>,
}

impl LieModel {
    pub fn new(alphabet: Alphabet, brackets: Box<dyn Brackets>, cutoff: HalfInt) -> Self {
        LieModel { alphabet, brackets, cutoff, memo: RwLock::new(HashMap::new()) }
    }

    pub fn bracket(&self, x: Mode, y: Mode) -> Bracket {
        self.brackets.bracket(x, y)
    }

    fn is_odd(&self, m: Mode) -> bool {
        self.alphabet.gen(m.gen).parity.is_odd()
    }

    fn act_mode(&self, x: Mode, state: &BasisState) -> Vector {
        let key = (x, state.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let out = self.straighten(x, state);
        self.memo.write().unwrap().insert(key, out.clone());
        out
    }

    fn apply_bracket(&self, br: &Bracket, rest: &BasisState, out: &mut Vector, scale: &Gq) {
        for (z, c) in &br.modes {
            let t = self.act_mode(*z, rest);
            out.add_scaled(&t, &(c.clone() * scale.clone()));
        }
        if !br.central.is_zero() {
            out.add_term(rest.clone(), br.central.clone() * scale.clone());
        }
    }

    fn straighten(&self, x: Mode, state: &BasisState) -> Vector {
        let g = self.alphabet.gen(x.gen);
        let creation = g.is_creation(x.index);
        let Some((y, rest)) = state.split_first(&self.alphabet) else {
            return if creation {
                Vector::basis(BasisState::from_sorted(vec![x], &self.alphabet))
            } else {
                Vector::zero()
            };
        };
        if creation && (x < y || (x == y && !self.is_odd(x))) {
            return Vector::basis(state.prepend(x, &self.alphabet));
        }
        let mut out = Vector::zero();
        if x == y {
            // odd creation mode: x x = ½[x, x]
            let br = self.bracket(x, x);
            self.apply_bracket(&br, &rest, &mut out, &Gq::ratio(1, 2));
            return out;
        }
        // x y R = [x, y] R + (−1)^{p(x)p(y)} y (x R)
        let br = self.bracket(x, y);
        self.apply_bracket(&br, &rest, &mut out, &Gq::one());
        let s = if self.is_odd(x) && self.is_odd(y) { -1 } else { 1 };
        let xr = self.act_mode(x, &rest);
        for (b, c) in xr.iter() {
            let t = self.act_mode(y, b);
            out.add_scaled(&t, &(c.clone() * Gq::int(s)));
        }
        out
    }
}

impl VertexModel for LieModel {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn cutoff(&self) -> HalfInt {
        self.cutoff
    }

    fn act(&self, gen: GenId, index: HalfInt, state: &BasisState) -> Result<Vector> {
        self.alphabet.get(gen)?;
        Ok(self.act_mode(Mode::new(gen, index), state))
    }

    fn peel(&self, state: &BasisState) -> Result<(Mode, Vector)> {
        let (m, rest) = state
            .split_first(&self.alphabet)
            .ok_or_else(|| crate::error::Error::Argument("cannot peel the vacuum".into()))?;
        Ok((m, Vector::basis(rest)))
    }

    fn basis(&self, weight: HalfInt) -> Vec<BasisState> {
        if weight > self.cutoff {
            return Vec::new();
        }
        enumerate_pbw(&self.alphabet, weight)
    }
}

/// All canonical monomials of creation modes with total weight `w`, sorted.
pub fn enumerate_pbw(alphabet: &Alphabet, w: HalfInt) -> Vec<BasisState> {
    if w < HalfInt::ZERO {
        return Vec::new();
    }
    let mut modes: Vec<Mode> = Vec::new();
    for g in alphabet.iter() {
        // creation modes g_n with n ≤ −d and −n ≤ w
        let mut n = -g.weight;
        while -n <= w {
            modes.push(Mode::new(g.id, n));
            n = n - 1;
        }
    }
    modes.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(alphabet, &modes, 0, w, &mut cur, &mut out);
    out.sort();
    out
}

fn fill(
    alphabet: &Alphabet,
    modes: &[Mode],
    start: usize,
    remaining: HalfInt,
    cur: &mut Vec<Mode>,
    out: &mut Vec<BasisState>,
) {
    if remaining == HalfInt::ZERO {
        out.push(BasisState::from_sorted(cur.clone(), alphabet));
    }
    for i in start..modes.len() {
        let m = modes[i];
        let wt = -m.index;
        if wt > remaining {
            continue;
        }
        // odd modes never repeat; weight-zero modes (degenerate alphabets) are taken once
        let next = if alphabet.gen(m.gen).parity.is_odd() || wt == HalfInt::ZERO { i + 1 } else { i };
        cur.push(m);
        fill(alphabet, modes, next, remaining - wt, cur, out);
        cur.pop();
    }
}
