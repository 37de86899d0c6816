//! Exact dense linear algebra over the rationals: nullspaces by
//! fraction-free (Bareiss) elimination, and characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{big, common_denominator, int, Rational};

/// Integer rows proportional to the given rational rows.
fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let den = common_denominator(row);
            row.iter().map(|v| v.numer() * (&den / v.denom())).collect()
        })
        .collect()
}

/// Row echelon form by Bareiss elimination. Pivots are chosen as the first
/// column with a nonzero entry, taking the smallest row index. Returns the
/// echelon matrix and the pivot columns.
pub fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                m[i][j] = v / &prev;
            }
            m[i][col].set_zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    (m, pivots)
}

/// Basis of `{x : rows * x = 0}`. One vector per free column `f`, with
/// `x_f = 1` and zeros on the other free columns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (ech, pivots) = bareiss_echelon(clear_denominators(rows), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in pc + 1..ncols {
                    if !ech[row][j].is_zero() && !x[j].is_zero() {
                        acc += big(ech[row][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / big(ech[row][pc].clone());
            }
            x
        })
        .collect()
}

/// Columns that are free in the echelon form, in the order `nullspace`
/// uses them.
pub fn free_columns(rows: &[Vec<Rational>], ncols: usize) -> Vec<usize> {
    let (_, pivots) = bareiss_echelon(clear_denominators(rows), ncols);
    (0..ncols).filter(|c| !pivots.contains(c)).collect()
}

/// `m * v` for a square or rectangular rational matrix stored row-major.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Characteristic polynomial `det(x I - m)`, coefficients of `x^0 ..= x^n`
/// (monic), by Faddeev-LeVerrier.
pub fn charpoly(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut acc: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(m, &acc);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &next);
        let trace = (0..n).fold(Rational::zero(), |t, i| t + &am[i][i]);
        coeffs[n - k] = -trace / int(k as i64);
        acc = next;
    }
    coeffs
}

/// Divides `p` (low degree first) by `x - root`; returns quotient and
/// remainder.
pub fn deflate(p: &[Rational], root: &Rational) -> (Vec<Rational>, Rational) {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..=n).rev() {
        let v = &p[i] + &carry * root;
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}
