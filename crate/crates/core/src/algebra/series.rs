//! Dense multivariate power series truncated at a total degree.

use std::fmt;
use std::sync::Arc;

use crate::algebra::index::{Layout, MultiIndex};
use crate::algebra::scalar::{rat, Coefficient};
use crate::error::{Error, Result};

/// Power series in `nvars` variables modulo `⟨t_1, …, t_d⟩^{order+1}`.
///
/// Coefficients are stored densely in the graded order of [`Layout`].
#[derive(Clone)]
pub struct TruncSeries<C> {
    layout: Arc<Layout>,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncSeries<C> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        let layout = Layout::get(nvars, order);
        let coeffs = vec![C::zero(); layout.len()];
        TruncSeries { layout, coeffs }
    }

    pub fn constant(nvars: usize, order: u32, c: C) -> Self {
        let mut s = Self::zero(nvars, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, C::one())
    }

    /// `c + Σ_l lin[l]·t_l`
    pub fn linear(order: u32, c: C, lin: &[C]) -> Self {
        let mut s = Self::constant(lin.len(), order, c);
        if order >= 1 {
            for (l, a) in lin.iter().enumerate() {
                s.coeffs[1 + l] = a.clone();
            }
        }
        s
    }

    /// Build from coefficients listed in layout order; missing tail is zero.
    pub fn from_coeffs(nvars: usize, order: u32, mut coeffs: Vec<C>) -> Result<Self> {
        let layout = Layout::get(nvars, order);
        if coeffs.len() > layout.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients exceed series size {}",
                coeffs.len(),
                layout.len()
            )));
        }
        coeffs.resize(layout.len(), C::zero());
        Ok(TruncSeries { layout, coeffs })
    }

    /// Univariate series from `c_0, c_1, …`.
    pub fn univariate(order: u32, coeffs: &[C]) -> Result<Self> {
        Self::from_coeffs(1, order, coeffs.to_vec())
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars()
    }

    pub fn order(&self) -> u32 {
        self.layout.order()
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    /// Coefficient of `t^I`; zero beyond the truncation order.
    pub fn coeff(&self, idx: &MultiIndex) -> C {
        self.layout
            .rank_of(idx)
            .map(|k| self.coeffs[k].clone())
            .unwrap_or_else(C::zero)
    }

    pub fn set_coeff(&mut self, idx: &MultiIndex, c: C) -> Result<()> {
        let k = self
            .layout
            .rank_of(idx)
            .ok_or_else(|| Error::Dimension(format!("index {idx} outside series")))?;
        self.coeffs[k] = c;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.layout.indices().iter().zip(&self.coeffs)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() || self.order() != other.order() {
            return Err(Error::Dimension(format!(
                "series shapes differ: ({}, {}) vs ({}, {})",
                self.nvars(),
                self.order(),
                other.nvars(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(TruncSeries {
            layout: self.layout.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = (0..self.coeffs.len())
            .map(|k| {
                let mut acc = C::zero();
                for &(i, j) in self.layout.mul_pairs(k) {
                    let (a, b) = (&self.coeffs[i as usize], &other.coeffs[j as usize]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc.mul_acc(a, b);
                }
                acc
            })
            .collect();
        Ok(TruncSeries {
            layout: self.layout.clone(),
            coeffs,
        })
    }

    fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = C::zero();
        s
    }

    /// Σ_{k=0}^{order} weights[k]·x^k for a series `x` without constant term.
    fn compose_powers(x: &Self, weights: impl Fn(u32) -> C) -> Result<Self> {
        let order = x.order();
        let mut result = Self::constant(x.nvars(), order, weights(0));
        let mut power = Self::one(x.nvars(), order);
        for k in 1..=order {
            power = power.mul(x)?;
            let w = weights(k);
            if !w.is_zero() {
                result = result.add(&power.scale(&w))?;
            }
        }
        Ok(result)
    }

    /// Multiplicative inverse by the alternating sum
    /// `(c(1 + L))^{-1} = c^{-1} (1 − L + L² − ⋯ ± L^order)`.
    pub fn inv(&self) -> Result<Self> {
        let c_inv = self.coeffs[0].try_recip().ok_or(Error::NonInvertible)?;
        let tail = self.without_constant().scale(&c_inv);
        let sum = Self::compose_powers(&tail, |k| {
            if k % 2 == 0 {
                C::one()
            } else {
                -C::one()
            }
        })?;
        Ok(sum.scale(&c_inv))
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Normalization(
                "log requires constant term 1".to_string(),
            ));
        }
        let x = self.without_constant();
        Self::compose_powers(&x, |k| {
            if k == 0 {
                C::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                C::from_rat(&rat(sign, k as i64))
            }
        })
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Normalization(
                "exp requires zero constant term".to_string(),
            ));
        }
        let mut fact = C::one();
        let inv_fact: Vec<C> = (0..=self.order())
            .map(|k| {
                if k > 0 {
                    fact = fact.clone() * C::from_int(k as i64);
                }
                fact.try_recip().expect("factorial invertible over ℚ")
            })
            .collect();
        Self::compose_powers(self, |k| inv_fact[k as usize].clone())
    }
}

impl<C: Coefficient> PartialEq for TruncSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl<C: Coefficient> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (idx, c) in self.iter() {
            if !c.is_zero() {
                map.entry(&idx.to_string(), c);
            }
        }
        map.finish()
    }
}
