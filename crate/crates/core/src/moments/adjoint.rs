//! Adjoint polynomials, their non-face vanishing, and Wachspress coordinates.

use num_traits::Zero;

use crate::algebra::linalg::{det, solve_affine};
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{factorial, Scalar};
use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope;
use crate::geometry::triangulation::{star_triangulation, Triangulation};

/// `∏_{k ∈ ks} (1 − x_k · t)`
fn factor_product<T: Scalar>(points: &[Vec<T>], ks: impl Iterator<Item = usize>, d: usize) -> SparsePoly<T> {
    let mut acc = SparsePoly::constant(d, T::one());
    for k in ks {
        let neg: Vec<T> = points[k].iter().map(|c| -c.clone()).collect();
        acc = &acc * &SparsePoly::linear(T::one(), &neg);
    }
    acc
}

fn drop_above<T: Scalar>(p: &SparsePoly<T>, deg: u32) -> SparsePoly<T> {
    SparsePoly::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
            .map(|(e, c)| (e, c.clone())),
    )
}

/// Numerator of the normalized moment generating function of `p`.
///
/// Without an auxiliary apex this is `Σ_σ (vol σ / vol P) ∏_{k∉σ}(1 − x_k·t)`.
/// With an apex `c`, the facet form `Σ_ρ β_ρ ∏_{k∉ρ}(1 − x_k·t)` over the
/// original vertices carries the extra factor `1 − c·t`, which is divided
/// out. Either way the result has degree at most `n − d − 1` and constant
/// term 1.
pub fn adjoint_poly<T: Scalar>(p: &Polytope<T>, t: &Triangulation<T>) -> Result<SparsePoly<T>> {
    let n = p.num_vertices();
    let d = p.dim();
    if t.points().len() < n || t.points()[..n] != *p.vertices() {
        return Err(Error::Geometry(
            "triangulation does not belong to this polytope".into(),
        ));
    }
    let total = t.total_volume();
    let mut numer = SparsePoly::zero(d);
    for (s, vol) in t.simplices().iter().zip(t.volumes()) {
        let outside = (0..n).filter(|k| !s.contains(k));
        let w = vol.clone() / total.clone();
        numer = numer + factor_product(t.points(), outside, d).scale(&w);
    }
    let bound = (n - d - 1) as u32;
    let ad = match t.apex() {
        None => numer,
        Some(a) => {
            // 1/(1 − c·t) = Σ_j (c·t)^j, truncated at the degree bound
            let c = SparsePoly::linear(T::zero(), &t.points()[a]);
            let mut geom = SparsePoly::constant(d, T::one());
            let mut power = SparsePoly::constant(d, T::one());
            for _ in 0..bound {
                power = &power * &c;
                geom = geom + power.clone();
            }
            let ad = drop_above(&(&numer * &geom), bound);
            if T::EXACT {
                let neg: Vec<T> = t.points()[a].iter().map(|x| -x.clone()).collect();
                let back = &ad * &SparsePoly::linear(T::one(), &neg);
                if back != numer {
                    return Err(Error::Inconsistent(
                        "facet numerator is not divisible by the apex factor".into(),
                    ));
                }
            }
            ad
        }
    };
    if T::EXACT {
        if ad.total_degree().unwrap_or(0) > bound {
            return Err(Error::Inconsistent(format!(
                "adjoint has degree above {bound}"
            )));
        }
        if !ad.constant_term().is_one() {
            return Err(Error::Normalization(
                "adjoint constant term is not 1".into(),
            ));
        }
    }
    Ok(ad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonFaceStatus {
    /// The adjoint restricts to zero on `L_τ`.
    Vanishes,
    NonZero,
    /// `L_τ` is empty.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonFaceReport<T: Scalar> {
    /// 1-based vertex labels.
    pub tau: Vec<usize>,
    /// Dimension of `L_τ` (0 when vacuous).
    pub dim: usize,
    pub status: NonFaceStatus,
    /// The adjoint in the parameters of `L_τ`.
    pub restriction: SparsePoly<T>,
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            go(k + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Minimal vertex subsets of size at most `d` not contained in any facet.
///
/// For a simplicial polytope faces are exactly the subsets of facets, so
/// these are the minimal non-faces of size at most `d` (0-based).
pub fn minimal_nonfaces<T: Scalar>(p: &Polytope<T>) -> Vec<Vec<usize>> {
    let in_facet = |s: &[usize]| p.facets().iter().any(|f| s.iter().all(|k| f.contains(k)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 2..=p.dim() {
        for s in subsets(p.num_vertices(), size) {
            if in_facet(&s) {
                continue;
            }
            if out.iter().any(|m| m.iter().all(|k| s.contains(k))) {
                continue;
            }
            out.push(s);
        }
    }
    out
}

fn negligible<T: Scalar>(p: &SparsePoly<T>) -> bool {
    if T::EXACT {
        p.is_zero()
    } else {
        p.terms().all(|(_, c)| c.to_f64().abs() < 1e-9)
    }
}

/// Restrict `ad` to every `L_τ = {t : x_k · t = 1, k ∈ τ}` for the minimal
/// non-faces `τ` of `p` and report whether it vanishes there.
pub fn nonface_vanishing_check<T: Scalar>(
    p: &Polytope<T>,
    ad: &SparsePoly<T>,
) -> Vec<NonFaceReport<T>> {
    let d = p.dim();
    minimal_nonfaces(p)
        .into_iter()
        .map(|tau| {
            let rows: Vec<Vec<T>> = tau.iter().map(|&k| p.vertex(k).to_vec()).collect();
            let ones = vec![T::one(); tau.len()];
            let labels = tau.iter().map(|k| k + 1).collect();
            match solve_affine(&rows, &ones, d) {
                None => NonFaceReport {
                    tau: labels,
                    dim: 0,
                    status: NonFaceStatus::Vacuous,
                    restriction: SparsePoly::zero(0),
                },
                Some((x0, kernel)) => {
                    let m = kernel.len().max(1);
                    let subs: Vec<SparsePoly<T>> = (0..d)
                        .map(|j| {
                            let lin: Vec<T> = (0..m)
                                .map(|i| kernel.get(i).map(|v| v[j].clone()).unwrap_or_else(T::zero))
                                .collect();
                            SparsePoly::linear(x0[j].clone(), &lin)
                        })
                        .collect();
                    let restriction = ad.substitute(&subs);
                    let status = if negligible(&restriction) {
                        NonFaceStatus::Vanishes
                    } else {
                        NonFaceStatus::NonZero
                    };
                    NonFaceReport {
                        tau: labels,
                        dim: kernel.len(),
                        status,
                        restriction,
                    }
                }
            }
        })
        .collect()
}

/// Barycentric coordinates on the dual polytope, one per facet of `p`:
/// `β_ρ ∏_{k∉ρ}(1 − x_k·t) / Ad_P(t)` with `β_ρ` the probability of the
/// simplex `0 ∪ ρ`. Requires the origin in the interior of `p`.
pub fn wachspress_coords<T: Scalar>(p: &Polytope<T>, t_point: &[T]) -> Result<Vec<T>> {
    let d = p.dim();
    if t_point.len() != d {
        return Err(Error::Dimension("point has wrong dimension".into()));
    }
    let origin = vec![T::zero(); d];
    if !p.contains_interior(&origin) {
        return Err(Error::Geometry(
            "the origin must lie in the interior of the polytope".into(),
        ));
    }
    let tri = star_triangulation(p, &origin)?;
    let scale = factorial::<T>(d as u32) * tri.total_volume();
    let n = p.num_vertices();
    let mut values = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        let rows: Vec<Vec<T>> = f.iter().map(|&k| p.vertex(k).to_vec()).collect();
        let beta = det(&rows)?.abs() / scale.clone();
        let mut v = beta;
        for k in (0..n).filter(|k| !f.contains(k)) {
            let dot = p
                .vertex(k)
                .iter()
                .zip(t_point)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            v = v * (T::one() - dot);
        }
        values.push(v);
    }
    let ad = values.iter().fold(T::zero(), |acc, v| acc + v.clone());
    if ad.is_zero() {
        return Err(Error::Pole("the adjoint vanishes at this point".into()));
    }
    Ok(values.into_iter().map(|v| v / ad.clone()).collect())
}
