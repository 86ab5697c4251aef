//! Dense univariate polynomials over the rationals and exact real root
//! isolation.
//!
//! Coefficients are stored from the constant term upward with no trailing
//! zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::scalar::Rat;

pub type UPoly = Vec<Rat>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn eval_f64(p: &[Rat], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + crate::algebra::scalar::Scalar::to_f64(c))
}

pub fn derivative(p: &[Rat]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn mul(a: &[Rat], b: &[Rat]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn sub(a: &[Rat], b: &[Rat]) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divmod(a: &[Rat], b: &[Rat]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &[Rat]) -> UPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
    }
}

pub fn gcd(a: &[Rat], b: &[Rat]) -> UPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Scale to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_integer(p: &[Rat]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return Vec::new();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().expect("nonzero").is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

/// Yun's square-free factorization: `(a_k, k)` with `p = c · ∏ a_k^k`,
/// every `a_k` monic, square-free and of positive degree.
pub fn squarefree_factors(p: &[Rat]) -> Vec<(UPoly, usize)> {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let b = gcd(&p, &dp);
    let mut c = divmod(&p, &b).0;
    let mut d = sub(&divmod(&dp, &b).0, &derivative(&c));
    let mut out = Vec::new();
    let mut k = 1;
    while degree(&c).unwrap_or(0) > 0 {
        let a = gcd(&c, &d);
        c = divmod(&c, &a).0;
        d = sub(&divmod(&d, &a).0, &derivative(&c));
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a, k));
        }
        k += 1;
    }
    out
}

fn sturm_sequence(p: &[Rat]) -> Vec<UPoly> {
    let mut seq = vec![trim(p.to_vec()), derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divmod(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[UPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in seq {
        let v = eval(s, x);
        let sg = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                count += 1;
            }
            last = sg;
        }
    }
    count
}

/// Roots in the half-open interval `(lo, hi]` of a square-free polynomial.
fn count_roots(seq: &[UPoly], lo: &Rat, hi: &Rat) -> usize {
    sign_changes(seq, lo) - sign_changes(seq, hi)
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(p: &[Rat]) -> Rat {
    let d = degree(p).expect("nonzero");
    let lead = p[d].abs();
    Rat::one() + p[..d].iter().map(|c| c.abs() / &lead).max().unwrap_or_default()
}

/// The rational with the smallest denominator (then smallest absolute
/// numerator) in the closed interval `[lo, hi]`.
pub fn simplest_rational(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rat::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_rational(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// An isolated real root of a square-free rational polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum RealRoot {
    Rational(Rat),
    /// The unique root of `poly` in `(lo, hi]`, which is irrational.
    Algebraic {
        poly: UPoly,
        lo: Rat,
        hi: Rat,
        approx: f64,
    },
}

impl RealRoot {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => crate::algebra::scalar::Scalar::to_f64(r),
            RealRoot::Algebraic { approx, .. } => *approx,
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RealRoot::Rational(r) => Some(r),
            RealRoot::Algebraic { .. } => None,
        }
    }
}

/// All real roots of `p` in increasing order, each repeated by multiplicity.
///
/// Rational roots are found exactly: an isolating interval is shrunk
/// below `1/L²` (with `L` the leading coefficient of the primitive integer
/// form), where the simplest rational is the only candidate denominator
/// dividing `L`. Irrational roots keep an isolating interval, refined to
/// relative width about `2^-refine_bits`.
pub fn real_roots(p: &[Rat], refine_bits: u32) -> Vec<(RealRoot, usize)> {
    let mut out: Vec<(RealRoot, usize)> = Vec::new();
    for (factor, mult) in squarefree_factors(p) {
        for root in isolate_squarefree(&factor, refine_bits) {
            out.push((root, mult));
        }
    }
    out.sort_by(|a, b| a.0.to_f64().partial_cmp(&b.0.to_f64()).expect("finite roots"));
    out
}

fn isolate_squarefree(f: &[Rat], refine_bits: u32) -> Vec<RealRoot> {
    let seq = sturm_sequence(f);
    let bound = root_bound(f);
    let mut stack = vec![(-bound.clone(), bound)];
    let mut intervals = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&seq, &lo, &hi) {
            0 => {}
            1 => intervals.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rat::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    let lc = primitive_integer(f).last().cloned().unwrap_or_else(BigInt::one);
    let target = Rat::new(BigInt::one(), &lc * &lc * BigInt::from(2));
    intervals
        .into_iter()
        .map(|(mut lo, mut hi)| {
            let halve = |lo: &mut Rat, hi: &mut Rat| -> Option<Rat> {
                let mid = (&*lo + &*hi) / Rat::from_integer(2.into());
                if eval(f, &mid).is_zero() {
                    return Some(mid);
                }
                if count_roots(&seq, lo, &mid) == 1 {
                    *hi = mid;
                } else {
                    *lo = mid;
                }
                None
            };
            if eval(f, &hi).is_zero() {
                return RealRoot::Rational(hi);
            }
            while &hi - &lo > target {
                if let Some(r) = halve(&mut lo, &mut hi) {
                    return RealRoot::Rational(r);
                }
            }
            let s = simplest_rational(&lo, &hi);
            if eval(f, &s).is_zero() {
                return RealRoot::Rational(s);
            }
            let scale = lo.abs().max(hi.abs()).max(Rat::one());
            let tol = scale / Rat::from_integer(BigInt::one() << refine_bits);
            while &hi - &lo > tol {
                if let Some(r) = halve(&mut lo, &mut hi) {
                    return RealRoot::Rational(r);
                }
            }
            let approx = crate::algebra::scalar::Scalar::to_f64(&((&lo + &hi) / Rat::from_integer(2.into())));
            RealRoot::Algebraic {
                poly: f.to_vec(),
                lo,
                hi,
                approx,
            }
        })
        .collect()
}
