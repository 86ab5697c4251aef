//! Multi-indices and their graded enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `I = (i_1, …, i_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The unit vector `e_k`.
    pub fn unit(nvars: usize, k: usize) -> Self {
        let mut v = vec![0; nvars];
        v[k] = 1;
        MultiIndex(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `I!` = Π i_l!
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&e| crate::algebra::scalar::factorial_int(e))
            .product()
    }

    /// Comma-separated key used by the JSON formats (`"1,0"`).
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(key: &str) -> Result<Self> {
        let exps = key
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index key {key:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex(exps))
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Ranked enumeration of all multi-indices in `nvars` variables with total
/// degree at most `order`.
///
/// Indices are sorted by total degree, then lexicographically descending
/// within a degree, so for two variables the order is
/// `00, 10, 01, 20, 11, 02, …`.
#[derive(Debug)]
pub struct Layout {
    nvars: usize,
    order: u32,
    indices: Vec<MultiIndex>,
    rank: HashMap<MultiIndex, usize>,
    degree_start: Vec<usize>,
    // for every output rank, the (i, j) pairs with indices[i] + indices[j] = output
    mul_pairs: Vec<Vec<(u32, u32)>>,
}

fn compositions(nvars: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == nvars {
        prefix.push(total);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(nvars, total - first, prefix, out);
        prefix.pop();
    }
}

/// All multi-indices in `nvars` variables of exactly the given total degree,
/// lexicographically descending.
pub fn indices_of_degree(nvars: usize, total: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if nvars == 0 {
        if total == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    compositions(nvars, total, &mut Vec::new(), &mut out);
    out
}

impl Layout {
    fn build(nvars: usize, order: u32) -> Layout {
        let mut indices = Vec::new();
        let mut degree_start = Vec::new();
        for deg in 0..=order {
            degree_start.push(indices.len());
            indices.extend(indices_of_degree(nvars, deg));
        }
        degree_start.push(indices.len());
        let rank: HashMap<_, _> = indices
            .iter()
            .enumerate()
            .map(|(i, idx)| (idx.clone(), i))
            .collect();
        let mut mul_pairs = vec![Vec::new(); indices.len()];
        for (i, a) in indices.iter().enumerate() {
            let rest = order - a.total();
            for (j, b) in indices[..degree_start[rest as usize + 1]].iter().enumerate() {
                let k = rank[&a.add(b)];
                mul_pairs[k].push((i as u32, j as u32));
            }
        }
        Layout {
            nvars,
            order,
            indices,
            rank,
            degree_start,
            mul_pairs,
        }
    }

    /// Shared layout for `(nvars, order)`; built once per process.
    pub fn get(nvars: usize, order: u32) -> Arc<Layout> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Layout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("layout cache poisoned");
        guard
            .entry((nvars, order))
            .or_insert_with(|| Arc::new(Layout::build(nvars, order)))
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn index(&self, rank: usize) -> &MultiIndex {
        &self.indices[rank]
    }

    pub fn rank_of(&self, idx: &MultiIndex) -> Option<usize> {
        self.rank.get(idx).copied()
    }

    /// Range of ranks holding indices of exactly the given degree.
    pub fn degree_range(&self, deg: u32) -> std::ops::Range<usize> {
        self.degree_start[deg as usize]..self.degree_start[deg as usize + 1]
    }

    pub(crate) fn mul_pairs(&self, rank: usize) -> &[(u32, u32)] {
        &self.mul_pairs[rank]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_two_variables() {
        let layout = Layout::get(2, 2);
        let keys: Vec<String> = layout.indices().iter().map(|i| i.to_string()).collect();
        assert_eq!(keys, ["00", "10", "01", "20", "11", "02"]);
        assert_eq!(layout.degree_range(1), 1..3);
    }

    #[test]
    fn layout_sizes_are_binomial() {
        // C(d + r, d)
        assert_eq!(Layout::get(3, 3).len(), 20);
        assert_eq!(Layout::get(2, 6).len(), 28);
        assert_eq!(Layout::get(1, 5).len(), 6);
    }

    #[test]
    fn multiplication_pairs_cover_all_splittings() {
        let layout = Layout::get(2, 3);
        let k = layout.rank_of(&MultiIndex::from([1, 1])).unwrap();
        // 11 = 00+11 = 10+01 = 01+10 = 11+00
        assert_eq!(layout.mul_pairs(k).len(), 4);
    }

    #[test]
    fn key_round_trip() {
        let i = MultiIndex::from([3, 0, 2]);
        assert_eq!(MultiIndex::parse_key(&i.key()).unwrap(), i);
        assert!(MultiIndex::parse_key("1,x").is_err());
    }
}
