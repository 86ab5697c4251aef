//! Normalized moment generating functions and the moments they encode.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::index::MultiIndex;
use crate::algebra::scalar::{factorial_int, multinomial_int, Coefficient, Rat, Scalar};
use crate::algebra::series::TruncSeries;
use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope;
use crate::geometry::triangulation::{quad_diagonal_point, Triangulation};
use crate::moments::vector::MomentVector;

fn check_rows<C>(rows: &[Vec<C>]) -> Result<usize> {
    let d = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.is_empty() || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension("points must be nonempty rows of equal length".into()));
    }
    Ok(d)
}

/// `∏_k 1/(1 − x_k · t)` truncated at `order`, for any number of points.
pub fn linear_factor_mgf<C: Coefficient>(rows: &[Vec<C>], order: u32) -> Result<TruncSeries<C>> {
    let d = check_rows(rows)?;
    let mut acc = TruncSeries::one(d, order);
    for x in rows {
        let neg: Vec<C> = x.iter().map(|c| -c.clone()).collect();
        let factor = TruncSeries::linear(order, C::one(), &neg).inv()?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Normalized moment generating function of a simplex with `d + 1` vertices.
pub fn simplex_mgf<C: Coefficient>(rows: &[Vec<C>], order: u32) -> Result<TruncSeries<C>> {
    let d = check_rows(rows)?;
    if rows.len() != d + 1 {
        return Err(Error::Dimension(format!(
            "a {d}-simplex has {} vertices, got {}",
            d + 1,
            rows.len()
        )));
    }
    linear_factor_mgf(rows, order)
}

/// `I! p! / (|I| + p)!`
fn weight(idx: &MultiIndex, p: u32) -> Rat {
    Rat::new(
        idx.factorial() * factorial_int(p),
        factorial_int(idx.total() + p),
    )
}

/// Read moments off a normalized generating function:
/// `m_I = coeff_I · I! p! / (|I| + p)!`.
///
/// `p = d` for uniform measures on `d`-polytopes, `p = n − 1` for the
/// canonical spline of `n` points.
pub fn mgf_to_moments<C: Coefficient>(s: &TruncSeries<C>, p: u32) -> Result<MomentVector<C>> {
    if !s.constant_term().is_one() {
        return Err(Error::Normalization(
            "generating function must have constant term 1".into(),
        ));
    }
    let values = s
        .iter()
        .map(|(idx, c)| c.scale_rat(&weight(idx, p)))
        .collect();
    MomentVector::from_values(s.nvars(), s.order(), values)
}

/// Inverse of [`mgf_to_moments`].
pub fn moments_to_mgf<C: Coefficient>(m: &MomentVector<C>, p: u32) -> TruncSeries<C> {
    let coeffs = m
        .iter()
        .map(|(idx, v)| v.scale_rat(&weight(idx, p).recip()))
        .collect();
    TruncSeries::from_coeffs(m.dim(), m.order(), coeffs).expect("same layout")
}

/// Moments of the uniform distribution on a simplex via its generating function.
pub fn simplex_moments<C: Coefficient>(rows: &[Vec<C>], order: u32) -> Result<MomentVector<C>> {
    let d = check_rows(rows)?;
    mgf_to_moments(&simplex_mgf(rows, order)?, d as u32)
}

/// Closed-form simplex moment: the sum over nonnegative integer
/// `(d+1) × d` matrices `u` with column sums `I` of
/// `∏_k multinomial(u_k) x_k^{u_k}`, times `I! d! / (|I| + d)!`.
pub fn simplex_moment_direct<C: Coefficient>(idx: &MultiIndex, rows: &[Vec<C>]) -> Result<C> {
    let d = check_rows(rows)?;
    if rows.len() != d + 1 || idx.nvars() != d {
        return Err(Error::Dimension("index and simplex dimensions differ".into()));
    }
    let mut u = vec![vec![0u32; d]; d + 1];
    let mut total = C::zero();
    fill_column(0, idx.exponents(), rows, &mut u, &mut total);
    Ok(total.scale_rat(&weight(idx, d as u32)))
}

fn fill_column<C: Coefficient>(
    col: usize,
    sums: &[u32],
    rows: &[Vec<C>],
    u: &mut Vec<Vec<u32>>,
    total: &mut C,
) {
    if col == sums.len() {
        let mut term = C::one();
        for (k, row) in u.iter().enumerate() {
            let mult = multinomial_int(row);
            if mult != BigInt::from(1) {
                term = term.scale_rat(&Rat::from_integer(mult));
            }
            for (l, &e) in row.iter().enumerate() {
                for _ in 0..e {
                    term = term * rows[k][l].clone();
                }
            }
        }
        *total = std::mem::replace(total, C::zero()) + term;
        return;
    }
    distribute(col, 0, sums[col], sums, rows, u, total);
}

fn distribute<C: Coefficient>(
    col: usize,
    row: usize,
    remaining: u32,
    sums: &[u32],
    rows: &[Vec<C>],
    u: &mut Vec<Vec<u32>>,
    total: &mut C,
) {
    if row + 1 == u.len() {
        u[row][col] = remaining;
        fill_column(col + 1, sums, rows, u, total);
        u[row][col] = 0;
        return;
    }
    for take in 0..=remaining {
        u[row][col] = take;
        distribute(col, row + 1, remaining - take, sums, rows, u, total);
    }
    u[row][col] = 0;
}

/// `Σ_σ (vol σ / vol P) · mgf(σ)` over a triangulation.
pub fn polytope_mgf<T: Scalar>(t: &Triangulation<T>, order: u32) -> Result<TruncSeries<T>> {
    let total = t.total_volume();
    if total.is_zero() {
        return Err(Error::Degeneracy("zero total volume".into()));
    }
    let parts: Vec<Result<TruncSeries<T>>> = (0..t.simplices().len())
        .into_par_iter()
        .map(|i| {
            let s = simplex_mgf(&t.simplex_rows(i), order)?;
            Ok(s.scale(&(t.volumes()[i].clone() / total.clone())))
        })
        .collect();
    let d = t.points()[0].len();
    let mut acc = TruncSeries::zero(d, order);
    for p in parts {
        acc = acc.add(&p?)?;
    }
    // the weights sum to one; pin it so rounding cannot trip normalization
    acc.set_coeff(&MultiIndex::zero(d), T::one())?;
    Ok(acc)
}

/// Moments of the uniform distribution on `p`, computed from a triangulation.
pub fn polytope_moments<T: Scalar>(
    p: &Polytope<T>,
    t: &Triangulation<T>,
    order: u32,
) -> Result<MomentVector<T>> {
    if t.points().len() < p.num_vertices() || t.points()[..p.num_vertices()] != *p.vertices() {
        return Err(Error::Geometry(
            "triangulation does not belong to this polytope".into(),
        ));
    }
    mgf_to_moments(&polytope_mgf(t, order)?, p.dim() as u32)
}

/// Moments of the projection of the uniform measure on `Δ_{n−1}` under
/// `e_k ↦ x_k`.
pub fn canonical_spline_moments<C: Coefficient>(
    x: &[Vec<C>],
    order: u32,
) -> Result<MomentVector<C>> {
    let d = check_rows(x)?;
    if x.len() < d + 1 {
        return Err(Error::Dimension(format!(
            "need at least {} points in dimension {d}",
            d + 1
        )));
    }
    mgf_to_moments(&linear_factor_mgf(x, order)?, x.len() as u32 - 1)
}

/// Quadrilateral generating function `(1 − δ·t) / ∏_k (1 − x_k·t)` with
/// `δ` the intersection of the diagonals.
pub fn quad_mgf<T: Scalar>(q: &Polytope<T>, order: u32) -> Result<TruncSeries<T>> {
    let delta = quad_diagonal_point(q)?;
    let neg: Vec<T> = delta.iter().map(|c| -c.clone()).collect();
    let numerator = TruncSeries::linear(order, T::one(), &neg);
    numerator.mul(&linear_factor_mgf(q.vertices(), order)?)
}
