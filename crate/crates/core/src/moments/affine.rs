//! The affine group acting on moment vectors, and projections to lines.

use crate::algebra::index::MultiIndex;
use crate::algebra::linalg::det;
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{factorial_int, Coefficient, Rat, Scalar};
use crate::error::{Error, Result};
use crate::moments::vector::MomentVector;

/// `x ↦ A x + b` with `A` invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<T: Scalar = Rat> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>) -> Result<Self> {
        let d = b.len();
        if a.len() != d || a.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("A must be d × d and b of length d".into()));
        }
        if det(&a)?.is_zero() {
            return Err(Error::Degeneracy("affine map is not invertible".into()));
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity(d: usize) -> Self {
        let a = (0..d)
            .map(|i| (0..d).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        AffineMap {
            a,
            b: vec![T::zero(); d],
        }
    }

    pub fn translation(b: Vec<T>) -> Self {
        let mut g = Self::identity(b.len());
        g.b = b;
        g
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.a
    }

    pub fn shift(&self) -> &[T] {
        &self.b
    }

    pub fn det(&self) -> T {
        det(&self.a).expect("square")
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| {
                row.iter()
                    .zip(x)
                    .fold(bi.clone(), |acc, (p, q)| acc + p.clone() * q.clone())
            })
            .collect()
    }

    /// `(A x + b)^I` as a polynomial in `x`; its coefficients are the
    /// entries `ν_{IJ}` of the induced linear action on moments.
    pub fn pullback_monomial(&self, idx: &MultiIndex) -> SparsePoly<T> {
        let d = self.dim();
        let mut acc = SparsePoly::constant(d, T::one());
        for (i, &e) in idx.exponents().iter().enumerate() {
            if e > 0 {
                let lin = SparsePoly::linear(self.b[i].clone(), &self.a[i]);
                acc = &acc * &lin.pow(e);
            }
        }
        acc
    }
}

/// Moments of the pushforward measure under `g`:
/// `m'_I = Σ_J ν_{IJ} m_J`.
pub fn transform_moments<T: Scalar>(m: &MomentVector<T>, g: &AffineMap<T>) -> Result<MomentVector<T>> {
    if g.dim() != m.dim() {
        return Err(Error::Dimension("map and moments differ in dimension".into()));
    }
    let layout = m.layout().clone();
    let values = layout
        .indices()
        .iter()
        .map(|idx| {
            g.pullback_monomial(idx)
                .terms()
                .fold(T::zero(), |acc, (e, c)| {
                    let j = MultiIndex::new(e);
                    acc + c.clone() * m.get(&j).expect("degree bounded by |I|").clone()
                })
        })
        .collect();
    MomentVector::from_values(m.dim(), m.order(), values)
}

/// Moments `m_0, …, m_r` of the linear functional `x ↦ v · x`:
/// `Σ_{|I| = i} (i! / I!) v^I m_I`.
pub fn project_moments<C: Coefficient>(m: &MomentVector<C>, v: &[C]) -> Result<Vec<C>> {
    if v.len() != m.dim() {
        return Err(Error::Dimension("direction has wrong length".into()));
    }
    let layout = m.layout().clone();
    let mut out = vec![C::zero(); m.order() as usize + 1];
    for (idx, val) in m.iter() {
        let i = idx.total();
        let mult = Rat::new(factorial_int(i), idx.factorial());
        let mut term = val.scale_rat(&mult);
        for (vl, &e) in v.iter().zip(idx.exponents()) {
            for _ in 0..e {
                term = term * vl.clone();
            }
        }
        out[i as usize] = std::mem::replace(&mut out[i as usize], C::zero()) + term;
    }
    debug_assert_eq!(layout.order() as usize + 1, out.len());
    Ok(out)
}
