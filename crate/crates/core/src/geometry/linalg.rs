//! Exact elimination over a [`Scalar`] field.
//!
//! Elimination is fraction-free (Bareiss): every update divides by the
//! previous pivot, so integer input stays integral until back substitution.
//! Big-rational matrices are first scaled column by column to big integers
//! (a positive factor per column), which keeps the rank, scales the
//! determinant by a positive constant, and rescales kernel vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Integer matrix `M·diag(s)` and the positive scales `s`, when every entry
/// of `m` is a big rational.
fn integer_columns<T: Scalar>(m: &[Vec<T>], cols: usize) -> Option<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let mut scales = vec![BigInt::one(); cols];
    for row in m {
        for (j, x) in row.iter().enumerate().take(cols) {
            let q = x.as_big_rational()?;
            scales[j] = scales[j].lcm(q.denom());
        }
    }
    let ints = m
        .iter()
        .map(|row| {
            row.iter()
                .take(cols)
                .zip(&scales)
                .map(|(x, s)| {
                    let q = x.as_big_rational().expect("checked above");
                    q.numer() * (s / q.denom())
                })
                .collect()
        })
        .collect();
    Some((ints, scales))
}

/// Bareiss echelon over the integers; all divisions are exact.
fn echelon_int(m: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            odd = !odd;
        }
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in below.iter_mut() {
            if row[c].is_zero() {
                // the Bareiss update still rescales the rest of the row
                for x in row[c + 1..cols].iter_mut() {
                    *x = &*x * pivot / &prev;
                }
                continue;
            }
            let lead = row[c].clone();
            for j in c + 1..cols {
                row[j] = (pivot * &row[j] - &lead * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Fraction-free row echelon form in place. Returns the pivot columns and
/// whether an odd number of row swaps occurred.
fn echelon<T: Scalar>(m: &mut [Vec<T>], cols: usize) -> (Vec<usize>, bool) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            odd = !odd;
        }
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in below.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone();
                row[j] = v / prev.clone();
            }
            row[c] = T::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Determinant of a square matrix.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return T::one();
    }
    if let Some((mut ints, scales)) = integer_columns(&m, n) {
        let (pivots, odd) = echelon_int(&mut ints, n);
        let det = if pivots.len() < n {
            BigInt::zero()
        } else {
            ints[n - 1][n - 1].clone()
        };
        let det = if odd { -det } else { det };
        let scale: BigInt = scales.iter().product();
        return T::from_big_rational(BigRational::new(det, scale)).expect("big-rational scalar");
    }
    let (pivots, odd) = echelon(&mut m, n);
    if pivots.len() < n {
        return T::zero();
    }
    // the last Bareiss pivot is the determinant up to row swaps
    let det = m[n - 1][n - 1].clone();
    if odd {
        -det
    } else {
        det
    }
}

/// Rank of a `rows × cols` matrix.
pub fn rank<T: Scalar>(mut m: Vec<Vec<T>>, cols: usize) -> usize {
    if let Some((mut ints, _)) = integer_columns(&m, cols) {
        return echelon_int(&mut ints, cols).0.len();
    }
    echelon(&mut m, cols).0.len()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
pub fn kernel<T: Scalar>(mut m: Vec<Vec<T>>, cols: usize) -> Vec<Vec<T>> {
    if let Some((ints, scales)) = integer_columns(&m, cols) {
        return kernel_int(ints, &scales, cols)
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|x| T::from_big_rational(x).expect("big-rational scalar"))
                    .collect()
            })
            .collect();
    }
    let (pivots, _) = echelon(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = T::zero();
                for j in pc + 1..cols {
                    if !v[j].is_zero() {
                        acc = acc + m[r][j].clone() * v[j].clone();
                    }
                }
                v[pc] = -acc / m[r][pc].clone();
            }
            v
        })
        .collect()
}

/// Kernel of `M·diag(s)` mapped back to a kernel of `M`.
fn kernel_int(mut m: Vec<Vec<BigInt>>, scales: &[BigInt], cols: usize) -> Vec<Vec<BigRational>> {
    let (pivots, _) = echelon_int(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // integer solution: scale by the product of pivots as we go up
            let mut v = vec![BigInt::zero(); cols];
            v[f] = BigInt::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = BigInt::zero();
                for j in pc + 1..cols {
                    if !v[j].is_zero() {
                        acc += &m[r][j] * &v[j];
                    }
                }
                let p = &m[r][pc];
                // v[pc] = -acc / p; multiply the whole vector by |p| to stay integral
                let g = acc.gcd(p);
                let (num, den) = (-(&acc / &g), p / &g);
                let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
                if !den.is_one() {
                    for x in v.iter_mut() {
                        *x *= &den;
                    }
                }
                v[pc] = num;
            }
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            v.into_iter()
                .zip(scales)
                .map(|(x, s)| BigRational::new(x / &g * s, BigInt::one()))
                .collect()
        })
        .collect()
}
