//! Ternary cubics and their classical covariants.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::linalg::det_cofactor;
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{factorial_int, Rat, Scalar};
use crate::error::{Error, Result};
use crate::moments::vector::MomentVector;

/// `m_{ij}` for the ten moments of order at most three, in layout order
/// 00, 10, 01, 20, 11, 02, 30, 21, 12, 03.
pub const CUBIC_MOMENTS: [[u32; 2]; 10] = [
    [0, 0],
    [1, 0],
    [0, 1],
    [2, 0],
    [1, 1],
    [0, 2],
    [3, 0],
    [2, 1],
    [1, 2],
    [0, 3],
];

/// A ternary cubic form. The three form variables `u₁, u₂, u₃` are the
/// polynomial variables `u, u+1, u+2`; variables below `u` (if any) are
/// parameters such as indeterminate moments.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryCubic<T: Scalar = Rat> {
    poly: SparsePoly<T>,
    u: usize,
}

impl<T: Scalar> TernaryCubic<T> {
    pub fn new(poly: SparsePoly<T>, u: usize) -> Result<Self> {
        let poly = poly.with_nvars(u + 3);
        if poly.nvars() != u + 3 {
            return Err(Error::Dimension("form variables must come last".into()));
        }
        for (e, _) in poly.terms() {
            if e[u] + e[u + 1] + e[u + 2] != 3 {
                return Err(Error::Dimension("ternary cubic must be homogeneous of degree 3".into()));
            }
        }
        Ok(TernaryCubic { poly, u })
    }

    pub fn poly(&self) -> &SparsePoly<T> {
        &self.poly
    }

    /// Index of `u₁` among the polynomial variables.
    pub fn first_form_var(&self) -> usize {
        self.u
    }

    fn nvars(&self) -> usize {
        self.u + 3
    }

    /// The umbral coefficient `c_α` in `f = Σ (3!/α!) c_α u^α`.
    pub fn umbral(&self, alpha: [u32; 3]) -> SparsePoly<T> {
        let n = self.nvars();
        let mut out = SparsePoly::zero(n);
        let scale = T::from_rat(&Rat::new(
            alpha.iter().map(|&a| factorial_int(a)).product(),
            factorial_int(3),
        ));
        for (e, c) in self.poly.terms() {
            if e[self.u..] == alpha {
                let mut rest = e.clone();
                rest[self.u..].iter_mut().for_each(|x| *x = 0);
                out.add_term(&rest, c.clone() * scale.clone());
            }
        }
        out
    }

    /// `∂f/∂u_k` for `k ∈ {0, 1, 2}`.
    pub fn partial(&self, k: usize) -> SparsePoly<T> {
        self.poly.derivative(self.u + k)
    }
}

/// The form `Σ binom(3; I, 3−|I|) m_I u^I u₃^{3−|I|}` for a planar moment
/// vector of order at least 3.
pub fn moments_to_ternary_cubic<T: Scalar>(m: &MomentVector<T>) -> Result<TernaryCubic<T>> {
    if m.dim() != 2 {
        return Err(Error::Dimension("ternary cubic needs planar moments".into()));
    }
    let mut poly = SparsePoly::zero(3);
    for ij in CUBIC_MOMENTS {
        let v = m.at(&ij)?;
        poly.add_term(&cubic_exponent(ij), v.clone() * T::from_int(multiplier(ij)));
    }
    TernaryCubic::new(poly, 0)
}

/// The ternary cubic with the ten moments as indeterminates `0..10` (in
/// [`CUBIC_MOMENTS`] order) and form variables `10, 11, 12`.
pub fn symbolic_ternary_cubic() -> TernaryCubic<Rat> {
    let mut poly = SparsePoly::zero(13);
    for (k, ij) in CUBIC_MOMENTS.iter().enumerate() {
        let mut e = vec![0u32; 13];
        e[k] = 1;
        e[10..].copy_from_slice(&cubic_exponent(*ij));
        poly.add_term(&e, Rat::from_integer(multiplier(*ij).into()));
    }
    TernaryCubic::new(poly, 10).expect("homogeneous by construction")
}

fn cubic_exponent(ij: [u32; 2]) -> [u32; 3] {
    [ij[0], ij[1], 3 - ij[0] - ij[1]]
}

fn multiplier(ij: [u32; 2]) -> i64 {
    let e = cubic_exponent(ij);
    let fac = |n: u32| (1..=n as i64).product::<i64>();
    6 / (fac(e[0]) * fac(e[1]) * fac(e[2]))
}

// Aronhold's symbolic expressions. Each symbol is a linear form `a·u`
// standing for `f = (a·u)³`; a bracket is the determinant of three
// symbols. After expansion every symbol occurs in degree 3 and `a^α` is
// replaced by the umbral coefficient `c_α`.
const ARONHOLD_S: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
const ARONHOLD_T: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5], [3, 4, 5]];

fn symbolic_invariant<T: Scalar>(f: &TernaryCubic<T>, brackets: &[[usize; 3]]) -> SparsePoly<T> {
    let nsym = brackets.iter().flatten().max().map_or(0, |m| m + 1);
    let umbral: HashMap<[u32; 3], SparsePoly<T>> = (0..=3u32)
        .flat_map(|i| (0..=3 - i).map(move |j| [i, j, 3 - i - j]))
        .map(|a| (a, f.umbral(a)))
        .collect();
    let mut seen = vec![0usize; nsym];
    let mut state: HashMap<Vec<u8>, SparsePoly<T>> = HashMap::new();
    state.insert(vec![0; 3 * nsym], SparsePoly::constant(f.nvars(), T::one()));
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    for br in brackets {
        let mut next: HashMap<Vec<u8>, SparsePoly<T>> = HashMap::new();
        for (key, val) in &state {
            for (perm, even) in PERMS {
                let mut k = key.clone();
                for (slot, &s) in br.iter().enumerate() {
                    k[3 * s + perm[slot]] += 1;
                }
                let v = if even { val.clone() } else { -val.clone() };
                let entry = next.entry(k).or_insert_with(|| SparsePoly::zero(f.nvars()));
                *entry = std::mem::replace(entry, SparsePoly::zero(0)) + v;
            }
        }
        next.retain(|_, v| !v.is_zero());
        for &s in br {
            seen[s] += 1;
        }
        let complete: Vec<usize> = br.iter().copied().filter(|&s| seen[s] == 3).collect();
        for s in complete {
            let mut contracted: HashMap<Vec<u8>, SparsePoly<T>> = HashMap::new();
            for (mut k, v) in next.drain() {
                let alpha = [k[3 * s] as u32, k[3 * s + 1] as u32, k[3 * s + 2] as u32];
                k[3 * s..3 * s + 3].fill(0);
                let prod = &v * &umbral[&alpha];
                let entry = contracted.entry(k).or_insert_with(|| SparsePoly::zero(f.nvars()));
                *entry = std::mem::replace(entry, SparsePoly::zero(0)) + prod;
            }
            contracted.retain(|_, v| !v.is_zero());
            next = contracted;
            // a bracket can list a symbol only once, so no double contraction
            seen[s] += 1;
        }
        state = next;
    }
    state
        .remove(&vec![0u8; 3 * nsym])
        .unwrap_or_else(|| SparsePoly::zero(f.nvars()))
}

/// Classical covariants of a ternary cubic, before any normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariants<T: Scalar = Rat> {
    /// Aronhold invariant of degree 4.
    pub s: SparsePoly<T>,
    /// Aronhold invariant of degree 6.
    pub t: SparsePoly<T>,
    /// Hessian, degree 3 and order 3.
    pub h: SparsePoly<T>,
    /// Bordered Hessian covariant, degree 8 and order 6.
    pub g: SparsePoly<T>,
    /// Brioschi covariant, the Jacobian of `f, H, G`; degree 12, order 9.
    pub j: SparsePoly<T>,
}

fn second_derivatives<T: Scalar>(f: &TernaryCubic<T>) -> Vec<Vec<SparsePoly<T>>> {
    (0..3)
        .map(|i| (0..3).map(|j| f.partial(i).derivative(f.u + j)).collect())
        .collect()
}

/// Hessian `det(∂²f/∂u_i∂u_j)`.
pub fn hessian<T: Scalar>(f: &TernaryCubic<T>) -> SparsePoly<T> {
    det_cofactor(&second_derivatives(f)).expect("3 × 3")
}

fn bordered<T: Scalar>(fij: &[Vec<SparsePoly<T>>], hi: &[SparsePoly<T>], n: usize) -> Vec<Vec<SparsePoly<T>>> {
    let mut m: Vec<Vec<SparsePoly<T>>> = (0..3)
        .map(|i| {
            let mut row = fij[i].clone();
            row.push(hi[i].clone());
            row
        })
        .collect();
    let mut last = hi.to_vec();
    last.push(SparsePoly::zero(n));
    m.push(last);
    m
}

/// Full covariants `S, T, H, G, J` of `f`.
///
/// Cheap for numeric forms; for a form with indeterminate coefficients `J`
/// is very large, and [`psi_covariants`] should be used instead.
pub fn covariants<T: Scalar>(f: &TernaryCubic<T>) -> Covariants<T> {
    let s = symbolic_invariant(f, ARONHOLD_S);
    let t = symbolic_invariant(f, ARONHOLD_T);
    let fij = second_derivatives(f);
    let h = det_cofactor(&fij).expect("3 × 3");
    let hi: Vec<SparsePoly<T>> = (0..3).map(|i| h.derivative(f.u + i)).collect();
    let g = det_cofactor(&bordered(&fij, &hi, f.nvars())).expect("4 × 4");
    let jac: Vec<Vec<SparsePoly<T>>> = [&f.poly, &h, &g]
        .iter()
        .map(|p| (0..3).map(|i| p.derivative(f.u + i)).collect())
        .collect();
    let j = det_cofactor(&jac).expect("3 × 3");
    Covariants { s, t, h, g, j }
}

/// Values of `f, S, T, H, G, J` at `u = (0, 0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiImages<T: Scalar = Rat> {
    pub f: SparsePoly<T>,
    pub s: SparsePoly<T>,
    pub t: SparsePoly<T>,
    pub h: SparsePoly<T>,
    pub g: SparsePoly<T>,
    pub j: SparsePoly<T>,
}

/// The ψ-images of the covariants, with the form variables removed
/// (the results have `first_form_var()` variables).
///
/// `G` is only expanded to first order around `u = (0, 0, 1)`, which is all
/// `J` needs there; the `u₃`-derivatives follow from Euler's identity.
pub fn psi_covariants<T: Scalar>(f: &TernaryCubic<T>) -> PsiImages<T> {
    let u = f.u;
    let n = f.nvars();
    // dehomogenize u₃ = 1 and keep terms of degree ≤ 1 in u₁, u₂
    let jet = |p: &SparsePoly<T>| -> SparsePoly<T> {
        let q = p.specialize(u + 2, &T::one());
        SparsePoly::from_terms(
            n,
            q.terms()
                .filter(|(e, _)| e[u] + e[u + 1] <= 1)
                .map(|(e, c)| (e, c.clone())),
        )
    };
    let at_point = |p: &SparsePoly<T>| -> SparsePoly<T> {
        let q = p
            .specialize(u, &T::zero())
            .specialize(u + 1, &T::zero())
            .specialize(u + 2, &T::one());
        SparsePoly::from_terms(u, q.terms().map(|(e, c)| (e[..u].to_vec(), c.clone())))
    };
    let fij = second_derivatives(f);
    let h = det_cofactor(&fij).expect("3 × 3");
    let hi: Vec<SparsePoly<T>> = (0..3).map(|i| h.derivative(u + i)).collect();
    let bm: Vec<Vec<SparsePoly<T>>> = bordered(&fij, &hi, n)
        .iter()
        .map(|row| row.iter().map(&jet).collect())
        .collect();
    let g_jet = det_truncated(&bm, &jet);
    let psi_f = at_point(&f.poly);
    let psi_h = at_point(&h);
    let psi_g = at_point(&g_jet);
    let three = T::from_int(3);
    let six = T::from_int(6);
    let grad = |p: &SparsePoly<T>, psi: &SparsePoly<T>, order: &T| -> Vec<SparsePoly<T>> {
        vec![
            at_point(&p.derivative(u)),
            at_point(&p.derivative(u + 1)),
            psi.scale(order),
        ]
    };
    let jac = vec![
        grad(&f.poly, &psi_f, &three),
        grad(&h, &psi_h, &three),
        grad(&g_jet, &psi_g, &six),
    ];
    let j = det_cofactor(&jac).expect("3 × 3");
    let strip = |p: SparsePoly<T>| at_point(&p);
    PsiImages {
        f: psi_f,
        s: strip(symbolic_invariant(f, ARONHOLD_S)),
        t: strip(symbolic_invariant(f, ARONHOLD_T)),
        h: psi_h,
        g: psi_g,
        j,
    }
}

fn det_truncated<T: Scalar>(
    m: &[Vec<SparsePoly<T>>],
    trunc: &impl Fn(&SparsePoly<T>) -> SparsePoly<T>,
) -> SparsePoly<T> {
    fn rec<T: Scalar>(
        m: &[Vec<SparsePoly<T>>],
        rows: &[usize],
        cols: &[usize],
        trunc: &impl Fn(&SparsePoly<T>) -> SparsePoly<T>,
    ) -> SparsePoly<T> {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]].clone();
        }
        let mut acc = SparsePoly::zero(m[0][0].nvars());
        for (k, &c) in cols.iter().enumerate() {
            let entry = &m[rows[0]][c];
            if entry.is_zero() {
                continue;
            }
            let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = trunc(&(entry * &rec(m, &rows[1..], &sub, trunc)));
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.len()).collect();
    rec(m, &idx, &idx, trunc)
}
