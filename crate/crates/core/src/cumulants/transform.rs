//! Moments to cumulants and back, power sums, and Newton reduction.

use crate::algebra::index::MultiIndex;
use crate::algebra::scalar::{factorial_int, multinomial_int, Coefficient, Rat};
use crate::algebra::series::TruncSeries;
use crate::cumulants::vector::CumulantVector;
use crate::error::{Error, Result};
use crate::moments::generating::{mgf_to_moments, moments_to_mgf};
use crate::moments::vector::MomentVector;

/// `I! / (|I| − 1)!`
fn cumulant_weight(idx: &MultiIndex) -> Rat {
    Rat::new(idx.factorial(), factorial_int(idx.total() - 1))
}

/// Cumulants read off `log 𝕄`, where `𝕄` is built from `m` with the
/// factorial parameter `p` (`d` for polytopes, `n − 1` for canonical
/// splines).
pub fn moments_to_cumulants_with_weight<C: Coefficient>(
    m: &MomentVector<C>,
    p: u32,
) -> Result<CumulantVector<C>> {
    if !m.is_normalized() {
        return Err(Error::Normalization(
            "cumulants need a probability-normalized moment vector".into(),
        ));
    }
    let log = moments_to_mgf(m, p).log()?;
    let values = log
        .iter()
        .skip(1)
        .map(|(idx, c)| c.scale_rat(&cumulant_weight(idx)))
        .collect();
    CumulantVector::from_values(m.dim(), m.order(), values)
}

/// `k_I = [t^I] log 𝕄 · I! / (|I| − 1)!`
pub fn moments_to_cumulants<C: Coefficient>(m: &MomentVector<C>) -> Result<CumulantVector<C>> {
    moments_to_cumulants_with_weight(m, m.dim() as u32)
}

/// The cumulant generating function `𝕂` as a series with zero constant term.
pub fn cumulant_series<C: Coefficient>(k: &CumulantVector<C>) -> TruncSeries<C> {
    let mut coeffs = Vec::with_capacity(k.values().len() + 1);
    coeffs.push(C::zero());
    for (idx, v) in k.iter() {
        coeffs.push(v.scale_rat(&cumulant_weight(idx).recip()));
    }
    TruncSeries::from_coeffs(k.dim(), k.order(), coeffs).expect("same layout")
}

pub fn cumulants_to_moments_with_weight<C: Coefficient>(
    k: &CumulantVector<C>,
    p: u32,
) -> Result<MomentVector<C>> {
    mgf_to_moments(&cumulant_series(k).exp()?, p)
}

/// Inverse of [`moments_to_cumulants`], through `𝕄 = exp 𝕂`.
pub fn cumulants_to_moments<C: Coefficient>(k: &CumulantVector<C>) -> Result<MomentVector<C>> {
    cumulants_to_moments_with_weight(k, k.dim() as u32)
}

/// `k_I = Σ_j x_j^I` over the given points.
pub fn powersum_cumulants<C: Coefficient>(x: &[Vec<C>], order: u32) -> Result<CumulantVector<C>> {
    let d = x.first().map(|r| r.len()).unwrap_or(0);
    if x.is_empty() || x.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension("points must be nonempty rows of equal length".into()));
    }
    Ok(CumulantVector::from_fn(d, order, |idx| {
        x.iter().fold(C::zero(), |acc, row| {
            let mut term = C::one();
            for (v, &e) in row.iter().zip(idx.exponents()) {
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc + term
        })
    }))
}

/// `k_I` for `|I| ≥ npoints + 1` from the cumulants of order at most
/// `npoints`, for a configuration of `npoints` points (`d + 1` for a
/// simplex).
///
/// With `X_k = x_k · t`, the power sums `p_j = Σ_k X_k^j` have
/// `[t^J] p_j = binom(j; J) k_J`. Newton's identities give the elementary
/// symmetric functions `e_1, …, e_N` from `p_1, …, p_N`, and then
/// `p_ℓ = Σ_{i=1}^{N} (−1)^{i−1} e_i p_{ℓ−i}` for `ℓ > N`.
pub fn newton_reduce_points<C: Coefficient>(
    k_low: &CumulantVector<C>,
    idx: &MultiIndex,
    npoints: usize,
) -> Result<C> {
    let d = k_low.dim();
    let big_n = npoints as u32;
    let ell = idx.total();
    if idx.nvars() != d {
        return Err(Error::Dimension("index dimension differs from cumulants".into()));
    }
    if ell <= big_n {
        return Err(Error::Dimension(format!(
            "Newton reduction applies to order at least {}, got {ell}",
            big_n + 1
        )));
    }
    if k_low.order() < big_n {
        return Err(Error::MissingData(format!(
            "need cumulants through order {big_n}, have {}",
            k_low.order()
        )));
    }
    let layout = crate::algebra::index::Layout::get(d, ell);
    let power_sum = |j: u32| -> TruncSeries<C> {
        let coeffs = layout
            .indices()
            .iter()
            .map(|i| {
                if i.total() != j {
                    return C::zero();
                }
                let mult = Rat::from_integer(multinomial_int(i.exponents()));
                k_low.get(i).expect("order checked").scale_rat(&mult)
            })
            .collect();
        TruncSeries::from_coeffs(d, ell, coeffs).expect("layout length")
    };
    let mut p: Vec<TruncSeries<C>> = vec![TruncSeries::zero(d, ell)];
    for j in 1..=big_n {
        p.push(power_sum(j));
    }
    // j e_j = Σ_{i=1}^{j} (−1)^{i−1} e_{j−i} p_i
    let mut e: Vec<TruncSeries<C>> = vec![TruncSeries::one(d, ell)];
    for j in 1..=big_n as usize {
        let mut acc = TruncSeries::zero(d, ell);
        for i in 1..=j {
            let term = e[j - i].mul(&p[i])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        e.push(acc.scale(&C::from_rat(&Rat::new(1.into(), (j as i64).into()))));
    }
    for l in (big_n as usize + 1)..=ell as usize {
        let mut acc = TruncSeries::zero(d, ell);
        for i in 1..=big_n as usize {
            let term = e[i].mul(&p[l - i])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        p.push(acc);
    }
    let mult = Rat::from_integer(multinomial_int(idx.exponents()));
    Ok(p[ell as usize].coeff(idx).scale_rat(&mult.recip()))
}

/// Newton reduction for a simplex (`d + 1` points).
pub fn newton_reduce<C: Coefficient>(k_low: &CumulantVector<C>, idx: &MultiIndex) -> Result<C> {
    newton_reduce_points(k_low, idx, k_low.dim() + 1)
}
