//! Bracket tables: the Clifford algebra of a free fermion, Virasoro, and the
//! N=1 and N=2 Neveu–Schwarz superalgebras.

use super::lie::{Bracket, Brackets};
use crate::fock::{Alphabet, Generator, Gq, HalfInt, Mode, Parity, Scalar};

fn q(num: i64, den: i64) -> Gq {
    Gq::ratio(num, den)
}

fn delta(x: HalfInt, y: HalfInt) -> bool {
    x + y == HalfInt::ZERO
}

/// [L_m, L_n] = (m−n)L_{m+n} + c(m³−m)/12 δ_{m,−n}
fn vir(l: u16, c: &Gq, m: HalfInt, n: HalfInt) -> Bracket {
    let (mt, nt) = (m.twice(), n.twice());
    let mut b = Bracket::zero().with(Mode::new(l, m + n), q(mt - nt, 2));
    if delta(m, n) {
        let mi = m.to_integer().expect("integer Virasoro mode");
        b = b.plus_central(c.clone() * q(mi * mi * mi - mi, 12));
    }
    b
}

/// [L_m, G_r] = (m/2 − r) G_{m+r}
fn vir_on_g(g: u16, m: HalfInt, r: HalfInt) -> Bracket {
    Bracket::zero().with(Mode::new(g, m + r), q(m.twice() - 2 * r.twice(), 4))
}

/// c/3 (r² − 1/4) δ_{r,−s}
fn g_central(c: &Gq, r: HalfInt, s: HalfInt) -> Gq {
    if delta(r, s) {
        let rt = r.twice();
        c.clone() * q(rt * rt - 1, 12)
    } else {
        Gq::zero()
    }
}

/// Single free Majorana fermion: [φ_m, φ_n] = δ_{m,−n}.
pub struct Clifford;

impl Brackets for Clifford {
    fn bracket(&self, x: Mode, y: Mode) -> Bracket {
        let mut b = Bracket::zero();
        if delta(x.index, y.index) {
            b = b.plus_central(Gq::one());
        }
        b
    }
}

pub fn fermion_alphabet() -> Alphabet {
    Alphabet::new(vec![Generator::new(0, "φ", HalfInt::HALF, Parity::Odd)])
}

/// Virasoro algebra with central charge c; generator 0 is L.
pub struct Virasoro {
    pub c: Gq,
}

impl Brackets for Virasoro {
    fn bracket(&self, x: Mode, y: Mode) -> Bracket {
        vir(0, &self.c, x.index, y.index)
    }
}

pub fn virasoro_alphabet() -> Alphabet {
    Alphabet::new(vec![Generator::new(0, "L", HalfInt::int(2), Parity::Even)])
}

/// N=1 Neveu–Schwarz algebra; generators L (0) and G (1).
pub struct NeveuSchwarz {
    pub c: Gq,
}

pub const NS_L: u16 = 0;
pub const NS_G: u16 = 1;

impl Brackets for NeveuSchwarz {
    fn bracket(&self, x: Mode, y: Mode) -> Bracket {
        let (m, n) = (x.index, y.index);
        match (x.gen, y.gen) {
            (NS_L, NS_L) => vir(NS_L, &self.c, m, n),
            (NS_L, NS_G) => vir_on_g(NS_G, m, n),
            (NS_G, NS_L) => vir_on_g(NS_G, n, m).neg(),
            _ => Bracket::zero()
                .with(Mode::new(NS_L, m + n), Gq::int(2))
                .plus_central(g_central(&self.c, m, n)),
        }
    }
}

pub fn ns_alphabet() -> Alphabet {
    Alphabet::new(vec![
        Generator::new(NS_L, "L", HalfInt::int(2), Parity::Even),
        Generator::new(NS_G, "G", HalfInt::from_twice(3), Parity::Odd),
    ])
}

/// N=2 Neveu–Schwarz algebra; generators L (0), J (1), G⁺ (2), G⁻ (3).
pub struct N2 {
    pub c: Gq,
}

pub const N2_L: u16 = 0;
pub const N2_J: u16 = 1;
pub const N2_GP: u16 = 2;
pub const N2_GM: u16 = 3;

impl N2 {
    fn ordered(&self, x: Mode, y: Mode) -> Option<Bracket> {
        let (m, n) = (x.index, y.index);
        let c = &self.c;
        Some(match (x.gen, y.gen) {
            (N2_L, N2_L) => vir(N2_L, c, m, n),
            // [L_m, J_n] = −n J_{m+n}
            (N2_L, N2_J) => Bracket::zero().with(Mode::new(N2_J, m + n), q(-n.twice(), 2)),
            (N2_L, g) if g == N2_GP || g == N2_GM => vir_on_g(g, m, n),
            // [J_m, J_n] = (c/3) m δ_{m,−n}
            (N2_J, N2_J) => {
                let mut b = Bracket::zero();
                if delta(m, n) {
                    b = b.plus_central(c.clone() * q(m.twice(), 6));
                }
                b
            }
            // [J_m, G±_r] = ±G±_{m+r}
            (N2_J, N2_GP) => Bracket::mode(Mode::new(N2_GP, m + n), Gq::one()),
            (N2_J, N2_GM) => Bracket::mode(Mode::new(N2_GM, m + n), -Gq::one()),
            // [G⁺_r, G⁻_s] = 2L_{r+s} + (r−s)J_{r+s} + c/3 (r² − 1/4) δ
            (N2_GP, N2_GM) => Bracket::zero()
                .with(Mode::new(N2_L, m + n), Gq::int(2))
                .with(Mode::new(N2_J, m + n), q(m.twice() - n.twice(), 2))
                .plus_central(g_central(c, m, n)),
            (N2_GP, N2_GP) | (N2_GM, N2_GM) => Bracket::zero(),
            _ => return None,
        })
    }
}

impl Brackets for N2 {
    fn bracket(&self, x: Mode, y: Mode) -> Bracket {
        if let Some(b) = self.ordered(x, y) {
            return b;
        }
        let b = self.ordered(y, x).expect("bracket table covers both orders");
        // [x, y] = −(−1)^{p(x)p(y)} [y, x]
        let both_odd = x.gen >= N2_GP && y.gen >= N2_GP;
        if both_odd {
            b
        } else {
            b.neg()
        }
    }
}

pub fn n2_alphabet() -> Alphabet {
    Alphabet::new(vec![
        Generator::new(N2_L, "L", HalfInt::int(2), Parity::Even),
        Generator::new(N2_J, "J", HalfInt::ONE, Parity::Even),
        Generator::new(N2_GP, "G+", HalfInt::from_twice(3), Parity::Odd),
        Generator::new(N2_GM, "G-", HalfInt::from_twice(3), Parity::Odd),
    ])
}

/// All brackets vanish.
pub struct Abelian;

impl Brackets for Abelian {
    fn bracket(&self, _: Mode, _: Mode) -> Bracket {
        Bracket::zero()
    }
}
