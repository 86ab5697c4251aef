//! Hankel matrices of axial moments and recovery of 1-D polytopal splines.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::algebra::linalg::{det, det_cofactor, left_kernel};
use crate::algebra::scalar::{binomial_int, Coefficient, Rat, Scalar};
use crate::error::{Error, Result};
use crate::recovery::univariate::{self, RealRoot, UPoly};

/// The `(n+1) × (r+d−n+1)` matrix with entry `(j, l)` equal to `c_{j+l}`,
/// where `c_0 = ⋯ = c_{d−1} = 0` and `c_{i+d} = binom(d+i, d) m_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix<C = Rat> {
    d: usize,
    n: usize,
    c: Vec<C>,
}

impl<C: Coefficient> HankelMatrix<C> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nrows(&self) -> usize {
        self.n + 1
    }

    pub fn ncols(&self) -> usize {
        self.c.len() - self.n
    }

    /// The normalized sequence `c_0, …, c_{r+d}`.
    pub fn sequence(&self) -> &[C] {
        &self.c
    }

    pub fn entry(&self, j: usize, l: usize) -> &C {
        &self.c[j + l]
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        (0..self.nrows())
            .map(|j| (0..self.ncols()).map(|l| self.c[j + l].clone()).collect())
            .collect()
    }

    /// The maximal minor on the given columns.
    pub fn minor(&self, cols: &[usize]) -> Result<C> {
        let m: Vec<Vec<C>> = (0..self.nrows())
            .map(|j| cols.iter().map(|&l| self.c[j + l].clone()).collect())
            .collect();
        det_cofactor(&m)
    }
}

/// Normalized moments `c_0, …, c_{r+d}`.
pub fn normalized_sequence<C: Coefficient>(m1d: &[C], d: usize) -> Vec<C> {
    let mut c = vec![C::zero(); d];
    for (i, m) in m1d.iter().enumerate() {
        let b = Rat::from_integer(binomial_int((d + i) as u32, d as u32));
        c.push(m.scale_rat(&b));
    }
    c
}

pub fn build_hankel<C: Coefficient>(m1d: &[C], d: usize, n: usize) -> Result<HankelMatrix<C>> {
    if d == 0 || n < d + 1 {
        return Err(Error::Dimension(format!(
            "need 1 ≤ d and n ≥ d + 1, got d = {d}, n = {n}"
        )));
    }
    let r = m1d.len() as i64 - 1;
    if r < (2 * n - d) as i64 {
        return Err(Error::InsufficientData(format!(
            "type ({d}, {n}) needs moments through order {}, got {r}",
            2 * n - d
        )));
    }
    Ok(HankelMatrix {
        d,
        n,
        c: normalized_sequence(m1d, d),
    })
}

fn column_subsets(ncols: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, ncols: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..ncols {
            cur.push(c);
            go(c + 1, ncols, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, ncols, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinorReport<T> {
    /// Column sets (0-based) and their minors, in lexicographic order.
    pub minors: Vec<(Vec<usize>, T)>,
}

impl<T: Scalar> MinorReport<T> {
    pub fn all_vanish(&self) -> bool {
        self.minors.iter().all(|(_, v)| v.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &(Vec<usize>, T)> {
        self.minors.iter().filter(|(_, v)| !v.is_zero())
    }
}

/// Every maximal minor of the Hankel matrix of `m1d`.
pub fn hankel_minor_check<T: Scalar>(m1d: &[T], d: usize, n: usize) -> Result<MinorReport<T>> {
    let h = build_hankel(m1d, d, n)?;
    let minors = column_subsets(h.ncols(), h.nrows())
        .into_par_iter()
        .map(|cols| {
            let m: Vec<Vec<T>> = (0..h.nrows())
                .map(|j| cols.iter().map(|&l| h.c[j + l].clone()).collect())
                .collect();
            det(&m).map(|v| (cols, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorReport { minors })
}

/// A recovered spline model `A(t) / ∏_j (1 − u_j t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineModel {
    pub d: usize,
    /// Nodes in increasing order, repeated by multiplicity.
    pub nodes: Vec<RealRoot>,
    /// `A(t)` from the constant term up; the constant term is 1.
    pub numerator: Vec<Rat>,
    /// Left-kernel generator `(b_n, …, b_0)`.
    pub kernel: Vec<Rat>,
}

impl SplineModel {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Rational nodes, or an error when some node is irrational.
    pub fn rational_nodes(&self) -> Result<Vec<Rat>> {
        self.nodes
            .iter()
            .map(|u| {
                u.as_rational().cloned().ok_or_else(|| {
                    Error::Unsupported("model has an irrational node".into())
                })
            })
            .collect()
    }

    /// `m_0, …, m_r` regenerated from the model.
    pub fn moments(&self, r: usize) -> Result<Vec<Rat>> {
        model_moments(self.d, &self.rational_nodes()?, &self.numerator, r)
    }
}

/// Moments `m_0..m_r` of `A(t) / ∏ (1 − u_j t) = Σ binom(d+i, d) m_i t^i`.
pub fn model_moments(d: usize, nodes: &[Rat], numerator: &[Rat], r: usize) -> Result<Vec<Rat>> {
    let mut series: Vec<Rat> = (0..=r)
        .map(|i| numerator.get(i).cloned().unwrap_or_default())
        .collect();
    for u in nodes {
        // multiply by 1/(1 − u t): s_i += u s_{i−1}
        for i in 1..=r {
            let prev = series[i - 1].clone();
            series[i] += u * prev;
        }
    }
    Ok(series
        .into_iter()
        .enumerate()
        .map(|(i, s)| s / Rat::from_integer(binomial_int((d + i) as u32, d as u32)))
        .collect())
}

fn numerator_from_kernel<C: Coefficient>(b: &[C], c: &[C], d: usize, n: usize) -> Result<Vec<C>> {
    let b0_inv = b[0]
        .try_recip()
        .ok_or_else(|| Error::Degeneracy("kernel vector has b_0 = 0".into()))?;
    Ok((0..n - d)
        .map(|l| {
            let s = (0..=l).fold(C::zero(), |acc, i| acc + b[i].clone() * c[l + d - i].clone());
            s * b0_inv.clone()
        })
        .collect())
}

/// Exact recovery of nodes and numerator from `m_0, …, m_r`.
///
/// The node polynomial is `Σ_j b_{n−j} t^j = t^n β(1/t)`, whose roots are
/// the nodes (a node at 0 shows up as `b_n = 0`).
pub fn recover_spline(m1d: &[Rat], d: usize, n: usize) -> Result<SplineModel> {
    let h = build_hankel(m1d, d, n)?;
    let kernel = left_kernel(&h.rows());
    match kernel.len() {
        1 => {}
        0 => {
            return Err(Error::Inconsistent(format!(
                "Hankel matrix has full rank; data is not of type ({d}, {n})"
            )))
        }
        k => {
            return Err(Error::Ambiguous(format!(
                "left kernel has dimension {k}; data has a smaller type than ({d}, {n})"
            )))
        }
    }
    let v = kernel.into_iter().next().expect("one vector");
    // v[j] = b_{n−j}
    let b: Vec<Rat> = v.iter().rev().cloned().collect();
    let numerator = numerator_from_kernel(&b, h.sequence(), d, n)?;
    let node_poly: UPoly = univariate::trim(v.clone());
    let roots = univariate::real_roots(&node_poly, 64);
    let mut nodes = Vec::with_capacity(n);
    for (root, mult) in roots {
        for _ in 0..mult {
            nodes.push(root.clone());
        }
    }
    if nodes.len() != n {
        return Err(Error::Inconsistent(format!(
            "node polynomial has {} real roots, expected {n}",
            nodes.len()
        )));
    }
    let b0 = b[0].clone();
    let kernel = v.iter().map(|x| x / &b0).collect();
    Ok(SplineModel {
        d,
        nodes,
        numerator,
        kernel,
    })
}

/// Floating-point recovery result.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatSplineModel {
    pub d: usize,
    pub nodes: Vec<f64>,
    pub numerator: Vec<f64>,
    /// Singular values of the Hankel matrix, largest first.
    pub singular_values: Vec<f64>,
}

/// Recovery from noisy floating-point moments. The numerical rank must be
/// exactly `n`, judged by `σ_k / σ_max` against `threshold` (e.g. `1e-8`).
pub fn recover_spline_f64(
    m1d: &[f64],
    d: usize,
    n: usize,
    threshold: f64,
) -> Result<FloatSplineModel> {
    let h = build_hankel(m1d, d, n)?;
    let rows = h.nrows();
    let cols = h.ncols();
    // SVD of Hᵀ: its right singular vectors span the left kernel of H.
    let ht = DMatrix::from_fn(cols, rows, |l, j| h.c[j + l]);
    let svd = ht.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Inconsistent("SVD did not converge".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("finite singular values")
    });
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let smax = sv[0];
    if smax == 0.0 {
        return Err(Error::Degeneracy("all moments vanish".into()));
    }
    let small = sv.iter().filter(|s| **s / smax < threshold).count();
    if small == 0 {
        return Err(Error::Inconsistent(format!(
            "numerical rank is {rows}; data is not of type ({d}, {n})"
        )));
    }
    if small > 1 {
        return Err(Error::Ambiguous(format!(
            "numerical left kernel has dimension {small}"
        )));
    }
    let k = *order.last().expect("nonempty");
    let v: Vec<f64> = (0..rows).map(|j| v_t[(k, j)]).collect();
    let b: Vec<f64> = v.iter().rev().cloned().collect();
    let numerator = numerator_from_kernel(&b, h.sequence(), d, n)?;
    // node polynomial Σ v_j t^j has degree n with leading coefficient b_0
    let lead = v[n];
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -v[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = companion.complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut nodes = Vec::with_capacity(n);
    for z in eig.iter() {
        if z.im.abs() > 1e-6 * scale {
            return Err(Error::Inconsistent(format!(
                "node polynomial has a complex root {} + {}i",
                z.re, z.im
            )));
        }
        nodes.push(z.re);
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
    Ok(FloatSplineModel {
        d,
        nodes,
        numerator,
        singular_values: sv,
    })
}

/// Right-multiply check used by tests and the CLI: `b · H = 0`.
pub fn annihilates<C: Coefficient>(h: &HankelMatrix<C>, v: &[C]) -> bool {
    (0..h.ncols()).all(|l| {
        (0..h.nrows())
            .fold(C::zero(), |acc, j| acc + v[j].clone() * h.entry(j, l).clone())
            .is_zero()
    })
}
