//! Small exact 3x3 matrix helpers and a row Hermite normal form over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Mat3<T> = [[T; 3]; 3];

pub fn det3_i64(m: &Mat3<i64>) -> i128 {
    let m = m.map(|row| row.map(i128::from));
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn det3<T>(m: &Mat3<T>) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::ops::Add<Output = T>,
{
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// Adjugate (transposed cofactor matrix) of an `i64` matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate_i64(m: &Mat3<i64>) -> Mat3<i128> {
    let m = m.map(|row| row.map(i128::from));
    let mut adj = [[0i128; 3]; 3];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, entry) in adj_row.iter_mut().enumerate() {
            // cofactor of (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            *entry = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

pub fn inverse_rational(m: &Mat3<BigRational>) -> Option<Mat3<BigRational>> {
    let det = det3(m);
    if det.is_zero() {
        return None;
    }
    let mut inv: Mat3<BigRational> = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
            let cof = if (i + j) % 2 == 0 { minor } else { -minor };
            inv[i][j] = cof / &det;
        }
    }
    Some(inv)
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in `Z^3`.
///
/// Returns the nonzero rows: upper triangular, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[[BigInt; 3]]) -> Vec<[BigInt; 3]> {
    let mut a: Vec<[BigInt; 3]> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..3 {
        if pivot_row == a.len() {
            break;
        }
        // Euclid on the column below pivot_row until a single nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if !a[i][col].is_zero() && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot_row][col]);
                for k in 0..3 {
                    let t = &q * &a[pivot_row][k];
                    a[i][k] -= t;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            for k in 0..3 {
                a[pivot_row][k] = -a[pivot_row][k].clone();
            }
        }
        for i in 0..pivot_row {
            let q = a[i][col].div_floor(&a[pivot_row][col]);
            for k in 0..3 {
                let t = &q * &a[pivot_row][k];
                a[i][k] -= t;
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a
}
