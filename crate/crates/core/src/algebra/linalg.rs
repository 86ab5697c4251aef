//! Exact dense linear algebra: determinants, rank, kernels, solves.

use crate::algebra::scalar::{Coefficient, Scalar};
use crate::error::{Error, Result};

pub type Matrix<T> = Vec<Vec<T>>;

fn check_square<C>(m: &[Vec<C>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!("matrix with {n} rows is not square")));
    }
    Ok(n)
}

/// Determinant by Laplace expansion along the first row.
///
/// Works over any coefficient ring (including polynomial rings); the cost
/// is factorial, so use it for small matrices only.
pub fn det_cofactor<C: Coefficient>(m: &[Vec<C>]) -> Result<C> {
    let n = check_square(m)?;
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(m, &rows, &cols))
}

fn cofactor_rec<C: Coefficient>(m: &[Vec<C>], rows: &[usize], cols: &[usize]) -> C {
    match rows.len() {
        0 => C::one(),
        1 => m[rows[0]][cols[0]].clone(),
        2 => {
            let (r0, r1) = (rows[0], rows[1]);
            let (c0, c1) = (cols[0], cols[1]);
            m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
        }
        _ => {
            let mut acc = C::zero();
            let r = rows[0];
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[r][c];
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = cofactor_rec(m, &rows[1..], &sub_cols);
                let term = entry.clone() * minor;
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Matrix<T> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// Reduced row echelon form; returns the pivot columns.
///
/// Exact scalars take the first nonzero pivot, floats the largest one.
pub fn rref<T: Scalar>(a: &mut Matrix<T>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let candidate = if T::EXACT {
            (r..rows).find(|&i| !a[i][c].is_zero())
        } else {
            (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .max_by(|&i, &j| {
                    a[i][c]
                        .abs()
                        .partial_cmp(&a[j][c].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(p) = candidate else { continue };
        a.swap(r, p);
        let inv = a[r][c].try_recip().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

pub fn transpose<C: Clone>(m: &[Vec<C>]) -> Matrix<C> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn right_kernel<T: Scalar>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{v : v m = 0}`.
pub fn left_kernel<T: Scalar>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let rows = m.len();
    right_kernel(&transpose(m), rows)
}

/// Solve `a x = b` for square nonsingular `a`.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, expected {n}",
            b.len()
        )));
    }
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Inconsistent("singular linear system".into()));
    }
    Ok(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Particular solution and kernel basis of a possibly underdetermined
/// system; `None` when inconsistent.
pub fn solve_affine<T: Scalar>(
    a: &[Vec<T>],
    b: &[T],
    ncols: usize,
) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some((x, right_kernel(a, ncols)))
}

pub fn mat_vec<T: Scalar>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn vec_mat<T: Scalar>(v: &[T], m: &[Vec<T>]) -> Vec<T> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .fold(T::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone())
        })
        .collect()
}
