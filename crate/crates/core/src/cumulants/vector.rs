//! Cumulant vectors: values `k_I` for `1 ≤ |I| ≤ r`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::index::{Layout, MultiIndex};
use crate::algebra::scalar::{Coefficient, Rat};
use crate::error::{Error, Result};

/// Cumulants in graded layout order with the zero index left out
/// (`k_0 = 0` by convention and is never stored).
#[derive(Clone)]
pub struct CumulantVector<C = Rat> {
    layout: Arc<Layout>,
    values: Vec<C>,
}

impl<C: Coefficient> CumulantVector<C> {
    /// `values[k]` is `k_I` for the `(k + 1)`-th index of the layout.
    pub fn from_values(dim: usize, order: u32, values: Vec<C>) -> Result<Self> {
        let layout = Layout::get(dim, order);
        if values.len() + 1 != layout.len() {
            return Err(Error::Dimension(format!(
                "expected {} cumulants for d = {dim}, r = {order}, got {}",
                layout.len() - 1,
                values.len()
            )));
        }
        Ok(CumulantVector { layout, values })
    }

    pub fn from_fn(dim: usize, order: u32, f: impl Fn(&MultiIndex) -> C) -> Self {
        let layout = Layout::get(dim, order);
        let values = layout.indices()[1..].iter().map(f).collect();
        CumulantVector { layout, values }
    }

    pub fn zero(dim: usize, order: u32) -> Self {
        Self::from_fn(dim, order, |_| C::zero())
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

    pub fn get(&self, idx: &MultiIndex) -> Option<&C> {
        match self.layout.rank_of(idx) {
            Some(0) | None => None,
            Some(k) => Some(&self.values[k - 1]),
        }
    }

    pub fn at(&self, exps: &[u32]) -> Result<&C> {
        let idx = MultiIndex::from(exps);
        self.get(&idx)
            .ok_or_else(|| Error::MissingData(format!("cumulant k_{idx} not available")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.layout.indices()[1..].iter().zip(&self.values)
    }

    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientData(format!(
                "cannot extend order {} to {order}",
                self.order()
            )));
        }
        let layout = Layout::get(self.dim(), order);
        let values = self.values[..layout.len() - 1].to_vec();
        Ok(CumulantVector { layout, values })
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> CumulantVector<D> {
        CumulantVector {
            layout: self.layout.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// Variable names `k<digits>` for every nonzero index of the layout.
pub fn cumulant_names(dim: usize, order: u32) -> Vec<String> {
    Layout::get(dim, order).indices()[1..]
        .iter()
        .map(|i| format!("k{i}"))
        .collect()
}

impl<C: Coefficient> PartialEq for CumulantVector<C> {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.order() == other.order() && self.values == other.values
    }
}

impl<C: Coefficient> fmt::Debug for CumulantVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, v) in self.iter() {
            m.entry(&format_args!("k{i}"), v);
        }
        m.finish()
    }
}
