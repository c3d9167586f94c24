//! Exact dense linear algebra over ℚ(i).

use crate::fock::{Gq, Scalar};

pub type Matrix = Vec<Vec<Gq>>;

/// Reduced row echelon form and the pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m.clone()).1.len()
}

/// Basis of the right null space {x : m x = 0}.
pub fn kernel(m: Matrix) -> Vec<Vec<Gq>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Gq::zero(); cols];
            x[f] = Gq::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -red[row][f].clone();
            }
            x
        })
        .collect()
}

/// Solves a x = b for square invertible `a`; `b` may have several columns.
pub fn solve(a: Matrix, b: Matrix) -> Option<Matrix> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let k = b.first().map_or(0, |r| r.len());
    let aug: Matrix = a.into_iter().zip(b).map(|(mut r, br)| {
        r.extend(br);
        r
    }).collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..n + k].to_vec()).collect())
}

pub fn mat_vec(m: &Matrix, x: &[Gq]) -> Vec<Gq> {
    m.iter()
        .map(|r| r.iter().zip(x).fold(Gq::zero(), |s, (a, b)| s + a.clone() * b.clone()))
        .collect()
}

pub fn is_hermitian(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == m[j][i].conj()))
}

/// Pivots of the unpivoted LDLᴴ factorisation, stopping at the first pivot that
/// is not a positive real. The matrix is positive definite iff all pivots are.
pub fn ldl_pivots(m: &Matrix) -> Vec<Gq> {
    let n = m.len();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let d = a[k][k].clone();
        out.push(d.clone());
        if !d.is_positive_real() {
            break;
        }
        let inv = d.inv().expect("positive pivot");
        for i in k + 1..n {
            let f = a[i][k].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = f.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
    }
    out
}

pub fn is_positive_definite(m: &Matrix) -> bool {
    let p = ldl_pivots(m);
    p.len() == m.len() && p.iter().all(|d| d.is_positive_real())
}

/// Inertia (positive, negative, zero) of a Hermitian matrix by exact congruence.
pub fn inertia(m: &Matrix) -> (usize, usize, usize) {
    let mut a = m.clone();
    let mut n = a.len();
    let (mut pos, mut neg) = (0, 0);
    while n > 0 {
        let mut piv = (0..n).find(|&i| !a[i][i].is_zero());
        if piv.is_none() {
            let Some((i, j)) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            else {
                break;
            };
            // row_i += t row_j, col_i += conj(t) col_j makes the diagonal nonzero
            let t = if a[i][j].re == num_traits::Zero::zero() { Gq::imag_unit() } else { Gq::one() };
            for k in 0..n {
                let add = t.clone() * a[j][k].clone();
                a[i][k] = a[i][k].clone() + add;
            }
            for k in 0..n {
                let add = t.conj() * a[k][j].clone();
                a[k][i] = a[k][i].clone() + add;
            }
            piv = Some(i);
        }
        let p = piv.expect("pivot");
        a.swap(p, n - 1);
        for r in a.iter_mut() {
            r.swap(p, n - 1);
        }
        let last = n - 1;
        let d = a[last][last].clone();
        if d.re > num_traits::Zero::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        let inv = d.inv().expect("nonzero pivot");
        for i in 0..last {
            let f = a[i][last].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..last {
                let t = f.clone() * a[last][j].clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
        a.truncate(last);
        for r in a.iter_mut() {
            r.truncate(last);
        }
        n = last;
    }
    (pos, neg, m.len() - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Gq::int(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = q(&[&[1, 2], &[2, 4]]);
        let k = kernel(m.clone());
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_identity_block() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let b = q(&[&[3, 1, 0], &[2, 0, 1]]);
        let x = solve(a.clone(), b.clone()).unwrap();
        for c in 0..3 {
            let col: Vec<Gq> = x.iter().map(|r| r[c].clone()).collect();
            let lhs = mat_vec(&a, &col);
            for r in 0..2 {
                assert_eq!(lhs[r], b[r][c]);
            }
        }
        assert!(solve(q(&[&[1, 1], &[1, 1]]), q(&[&[1], &[1]])).is_none());
    }

    #[test]
    fn inertia_and_positivity() {
        assert_eq!(inertia(&q(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&q(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert!(is_positive_definite(&q(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&q(&[&[1, 2], &[2, 1]])));
        assert!(is_positive_definite(&Vec::new()));
        let i = Gq::imag_unit();
        let h = vec![vec![Gq::int(2), i.clone()], vec![-i, Gq::int(2)]];
        assert!(is_hermitian(&h));
        assert_eq!(inertia(&h), (2, 0, 0));
    }
}
