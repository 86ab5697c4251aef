//! Moment vectors indexed by multi-indices of bounded total degree.

use std::fmt;
use std::sync::Arc;

use crate::algebra::index::{Layout, MultiIndex};
use num_traits::One;

use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{Coefficient, Rat};
use crate::error::{Error, Result};

/// Values `m_I` for all `I ∈ ℕ^d` with `|I| ≤ r`, in graded layout order.
///
/// Probability-normalized vectors have `m_0 = 1`; relation checks may
/// rescale projectively.
#[derive(Clone)]
pub struct MomentVector<C = Rat> {
    layout: Arc<Layout>,
    values: Vec<C>,
}

impl<C: Coefficient> MomentVector<C> {
    pub fn from_values(dim: usize, order: u32, values: Vec<C>) -> Result<Self> {
        let layout = Layout::get(dim, order);
        if values.len() != layout.len() {
            return Err(Error::Dimension(format!(
                "expected {} moments for d = {dim}, r = {order}, got {}",
                layout.len(),
                values.len()
            )));
        }
        Ok(MomentVector { layout, values })
    }

    pub fn from_fn(dim: usize, order: u32, f: impl Fn(&MultiIndex) -> C) -> Self {
        let layout = Layout::get(dim, order);
        let values = layout.indices().iter().map(f).collect();
        MomentVector { layout, values }
    }

    /// The point mass at the origin: `m_0 = 1`, all other moments zero.
    pub fn dirac(dim: usize, order: u32) -> Self {
        Self::from_fn(dim, order, |i| if i.is_zero() { C::one() } else { C::zero() })
    }

    pub fn dim(&self) -> usize {
        self.layout.nvars()
    }

    pub fn order(&self) -> u32 {
        self.layout.order()
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C> {
        self.values
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&C> {
        self.layout.rank_of(idx).map(|k| &self.values[k])
    }

    /// `m_I` for an exponent list, or a missing-data error.
    pub fn at(&self, exps: &[u32]) -> Result<&C> {
        let idx = MultiIndex::from(exps);
        self.get(&idx)
            .ok_or_else(|| Error::MissingData(format!("moment m_{idx} not available")))
    }

    pub fn mass(&self) -> &C {
        &self.values[0]
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0].is_one()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.layout.indices().iter().zip(&self.values)
    }

    /// Keep only moments of order at most `order`.
    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientData(format!(
                "cannot extend order {} to {order}",
                self.order()
            )));
        }
        let layout = Layout::get(self.dim(), order);
        let values = self.values[..layout.len()].to_vec();
        Ok(MomentVector { layout, values })
    }

    /// Multiply every entry by `lambda` (a point of the same projective class).
    pub fn scale_mass(&self, lambda: &C) -> Self {
        self.map(|v| v.clone() * lambda.clone())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MomentVector<D> {
        MomentVector {
            layout: self.layout.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// Variable names `m<digits>` for every index of the layout, in order.
pub fn moment_names(dim: usize, order: u32) -> Vec<String> {
    Layout::get(dim, order)
        .indices()
        .iter()
        .map(|i| format!("m{i}"))
        .collect()
}

impl MomentVector<SparsePoly<Rat>> {
    /// Indeterminate moments: entry `k` is the `k`-th variable of
    /// [`moment_names`]. Unless `homogeneous`, `m_0` is the constant 1.
    pub fn symbolic(dim: usize, order: u32, homogeneous: bool) -> Self {
        let layout = Layout::get(dim, order);
        let nv = layout.len();
        let values = (0..nv)
            .map(|k| {
                if k == 0 && !homogeneous {
                    SparsePoly::constant(nv, Rat::one())
                } else {
                    SparsePoly::var(nv, k)
                }
            })
            .collect();
        MomentVector { layout, values }
    }
}

impl<C: Coefficient> PartialEq for MomentVector<C> {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.order() == other.order() && self.values == other.values
    }
}

impl<C: Coefficient> fmt::Debug for MomentVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, v) in self.iter() {
            m.entry(&format_args!("m{i}"), v);
        }
        m.finish()
    }
}
