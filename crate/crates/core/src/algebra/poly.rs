//! Sparse multivariate polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::scalar::{Coefficient, Rat, Scalar};
use crate::error::{Error, Result};

/// Exponent vector with trailing zeros removed.
type Key = Vec<u16>;

fn trim(mut k: Key) -> Key {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

fn key_from(exps: &[u32]) -> Key {
    trim(exps.iter().map(|&e| e as u16).collect())
}

fn key_mul(a: &Key, b: &Key) -> Key {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (o, s) in out.iter_mut().zip(short) {
        *o += *s;
    }
    out
}

/// Polynomial `Σ c_α x^α` with no stored zero coefficients.
///
/// Terms are kept in a `BTreeMap` ordered lexicographically by exponent
/// vector, so iteration order (and hence printed output) is deterministic.
#[derive(Clone)]
pub struct SparsePoly<T> {
    nvars: usize,
    terms: BTreeMap<Key, T>,
}

impl<T: Scalar> SparsePoly<T> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Key::new(), c);
        }
        p
    }

    /// The variable `x_k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable {k} out of range for {nvars} variables");
        let mut exps = vec![0u32; k + 1];
        exps[k] = 1;
        Self::monomial(nvars, &exps, T::one())
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// `c + Σ lin[l]·x_l`
    pub fn linear(c: T, lin: &[T]) -> Self {
        let n = lin.len();
        let mut p = Self::constant(n, c);
        for (l, a) in lin.iter().enumerate() {
            p = p + Self::var(n, l).scale(a);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, T)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(&e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: &[u32], c: T) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(exps.len());
        let key = key_from(exps);
        let mut remove = false;
        self.terms
            .entry(key.clone())
            .and_modify(|v| {
                *v = v.clone() + c.clone();
                remove = v.is_zero();
            })
            .or_insert(c);
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn pad(&self, k: &Key) -> Vec<u32> {
        let mut v: Vec<u32> = k.iter().map(|&e| e as u32).collect();
        v.resize(self.nvars.max(k.len()), 0);
        v
    }

    /// Terms as (padded exponent vector, coefficient), lexicographically ascending.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &T)> + '_ {
        self.terms.iter().map(|(k, c)| (self.pad(k), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms
            .get(&key_from(exps))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&[])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as u32).sum())
            .max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|k| k.get(var).copied().unwrap_or(0) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, T::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            let e = k.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut nk = k.clone();
            nk[var] -= 1;
            out.terms
                .insert(trim(nk), c.clone() * T::from_int(e as i64));
        }
        out
    }

    /// Evaluate at scalar values.
    pub fn eval_scalar(&self, vals: &[T]) -> T {
        let mut total = T::zero();
        for (k, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in vals.iter().zip(k) {
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            if k.len() > vals.len() && k[vals.len()..].iter().any(|&e| e > 0) {
                panic!("evaluation point has {} values, polynomial uses more", vals.len());
            }
            total = total + term;
        }
        total
    }

    /// Replace `x_i` by `subs[i]`; all substitutes share a variable count.
    pub fn substitute(&self, subs: &[SparsePoly<T>]) -> SparsePoly<T> {
        let nvars = subs.iter().map(|s| s.nvars).max().unwrap_or(0);
        let mut cache: HashMap<(usize, u16), SparsePoly<T>> = HashMap::new();
        let mut out = SparsePoly::zero(nvars);
        for (k, c) in &self.terms {
            let mut term = SparsePoly::constant(nvars, c.clone());
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| subs[i].pow(e as u32))
                    .clone();
                term = &term * &p;
            }
            out = out + term;
        }
        out
    }

    /// Set variable `var` to the scalar `value`.
    pub fn specialize(&self, var: usize, value: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            let e = k.get(var).copied().unwrap_or(0);
            let mut nk = k.clone();
            if e > 0 {
                nk[var] = 0;
            }
            let mut coef = c.clone();
            for _ in 0..e {
                coef = coef * value.clone();
            }
            let padded: Vec<u32> = nk.iter().map(|&x| x as u32).collect();
            out.add_term(&padded, coef);
        }
        out
    }

    /// The common multidegree of all terms under the grading that gives
    /// variable `i` the degree vector `weights[i]`; `None` if the
    /// polynomial is not homogeneous (or is zero).
    pub fn multidegree(&self, weights: &[Vec<i64>]) -> Option<Vec<i64>> {
        let dim = weights.first().map(|w| w.len()).unwrap_or(0);
        let mut common: Option<Vec<i64>> = None;
        for k in self.terms.keys() {
            let mut deg = vec![0i64; dim];
            for (i, &e) in k.iter().enumerate() {
                for (d, w) in deg.iter_mut().zip(&weights[i]) {
                    *d += e as i64 * w;
                }
            }
            match &common {
                None => common = Some(deg),
                Some(c) if *c != deg => return None,
                _ => {}
            }
        }
        common
    }

    /// Leading term under graded reverse-lexicographic order, where
    /// `priority` lists variables from largest to smallest.
    pub fn leading_term_grevlex(&self, priority: &[usize]) -> Option<(Vec<u32>, T)> {
        let padded = |k: &Key| -> Vec<u32> {
            let mut v: Vec<u32> = k.iter().map(|&e| e as u32).collect();
            v.resize(self.nvars.max(priority.len()), 0);
            v
        };
        let cmp = |a: &Vec<u32>, b: &Vec<u32>| -> std::cmp::Ordering {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for &v in priority.iter().rev() {
                    if a[v] != b[v] {
                        return b[v].cmp(&a[v]);
                    }
                }
                std::cmp::Ordering::Equal
            })
        };
        self.terms
            .iter()
            .map(|(k, c)| (padded(k), c.clone()))
            .max_by(|x, y| cmp(&x.0, &y.0))
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SparsePoly<T>) -> Result<SparsePoly<T>> {
        let (lead_key, lead_coef) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
            .ok_or_else(|| Error::Dimension("division by zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.nvars.max(divisor.nvars));
        while let Some((k, c)) = rem.terms.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let divides = lead_key
                .iter()
                .enumerate()
                .all(|(i, &e)| k.get(i).copied().unwrap_or(0) >= e);
            if !divides {
                return Err(Error::Inconsistent("polynomial division has a remainder".into()));
            }
            let mut qk = k.clone();
            qk.resize(qk.len().max(lead_key.len()), 0);
            for (i, &e) in lead_key.iter().enumerate() {
                qk[i] -= e;
            }
            let qk: Vec<u32> = trim(qk).iter().map(|&e| e as u32).collect();
            let q = SparsePoly::monomial(quot.nvars, &qk, c / lead_coef.clone());
            rem = rem - &q * divisor;
            quot = quot + q;
        }
        Ok(quot)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparsePoly<U> {
        let mut out = SparsePoly::zero(self.nvars);
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }

    /// Write with the given variable names, e.g. `3*m01^2 - m00*m02`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.terms.iter().rev() {
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let neg = crate::algebra::scalar::is_neg(c);
            let abs = c.abs();
            let coef_str = format!("{abs}");
            let body = if mono.is_empty() {
                coef_str
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{coef_str}*{}", mono.join("*"))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl SparsePoly<Rat> {
    /// Evaluate at values in any coefficient ring.
    pub fn eval<C: Coefficient>(&self, vals: &[C]) -> C {
        let mut cache: HashMap<(usize, u16), C> = HashMap::new();
        let mut total = C::zero();
        for (k, c) in &self.terms {
            let mut term = C::from_rat(c);
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| {
                    let mut acc = C::one();
                    for _ in 0..e {
                        acc = acc * vals[i].clone();
                    }
                    acc
                });
                term = term * p.clone();
            }
            total = total + term;
        }
        total
    }

    /// Positive rational `c` with `self / c` a primitive integer polynomial
    /// (the content); zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::zero();
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// `self / content(self)`.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<T: Scalar> Add for SparsePoly<T> {
    type Output = SparsePoly<T>;
    fn add(mut self, rhs: Self) -> Self {
        self.nvars = self.nvars.max(rhs.nvars);
        for (k, c) in rhs.terms {
            match self.terms.get_mut(&k) {
                Some(v) => {
                    *v = v.clone() + c;
                    if v.is_zero() {
                        self.terms.remove(&k);
                    }
                }
                None => {
                    self.terms.insert(k, c);
                }
            }
        }
        self
    }
}

impl<T: Scalar> Neg for SparsePoly<T> {
    type Output = SparsePoly<T>;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<T: Scalar> Sub for SparsePoly<T> {
    type Output = SparsePoly<T>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Mul for &SparsePoly<T> {
    type Output = SparsePoly<T>;
    fn mul(self, rhs: Self) -> SparsePoly<T> {
        let nvars = self.nvars.max(rhs.nvars);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return SparsePoly::zero(nvars);
        }
        let mut acc: HashMap<Key, T> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let k = key_mul(ka, kb);
                match acc.get_mut(&k) {
                    Some(v) => v.mul_acc(ca, cb),
                    None => {
                        acc.insert(k, ca.clone() * cb.clone());
                    }
                }
            }
        }
        SparsePoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<T: Scalar> Mul for SparsePoly<T> {
    type Output = SparsePoly<T>;
    fn mul(self, rhs: Self) -> SparsePoly<T> {
        &self * &rhs
    }
}

// Equality of ring elements: the declared variable count is ignored.
impl<T: PartialEq> PartialEq for SparsePoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: Scalar> Zero for SparsePoly<T> {
    fn zero() -> Self {
        SparsePoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for SparsePoly<T> {
    fn one() -> Self {
        SparsePoly::constant(0, T::one())
    }
}

impl<T: Scalar> Coefficient for SparsePoly<T> {
    fn from_rat(r: &Rat) -> Self {
        SparsePoly::constant(0, T::from_rat(r))
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_constant() {
            let c = self.constant_term();
            c.try_recip().map(|v| SparsePoly::constant(self.nvars, v))
        } else {
            None
        }
    }

    fn mul_acc(&mut self, a: &Self, b: &Self) {
        let prod = a * b;
        let acc = std::mem::replace(self, SparsePoly::zero(0));
        *self = acc + prod;
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&T::from_rat(r))
    }
}

impl<T: Scalar> fmt::Debug for SparsePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};

    type P = SparsePoly<Rat>;

    fn x(i: usize) -> P {
        P::var(3, i)
    }

    fn c(v: i64) -> P {
        P::constant(3, rat_int(v))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = x(0) + x(1);
        let q = x(0) - x(1);
        let prod = &p * &q;
        assert_eq!(prod, &x(0) * &x(0) - &x(1) * &x(1));
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn derivative_and_degree() {
        let p = x(0).pow(3) * x(1) + c(5);
        assert_eq!(p.total_degree(), Some(4));
        assert_eq!(p.derivative(0), x(0).pow(2) * x(1) * c(3));
        assert_eq!(p.derivative(2), P::zero(3));
    }

    #[test]
    fn substitution_and_evaluation() {
        // (x0 + x1)^2 at x0 = t, x1 = 1 - t  ->  1
        let p = (x(0) + x(1)).pow(2);
        let t = P::var(1, 0);
        let subs = [t.clone(), P::constant(1, rat_int(1)) - t, P::zero(1)];
        assert_eq!(p.substitute(&subs), P::constant(1, rat_int(1)));
        let v = p.eval(&[rat(1, 2), rat(1, 3), rat_int(7)]);
        assert_eq!(v, rat(25, 36));
    }

    #[test]
    fn exact_division() {
        let d = c(1) - x(0) - x(1);
        let q = x(2).pow(2) + x(0) * c(3) - c(2);
        let p = &d * &q;
        assert_eq!(p.div_exact(&d).unwrap(), q);
        assert!((p + c(1)).div_exact(&d).is_err());
    }

    #[test]
    fn content_and_primitive() {
        let p = x(0).scale(&rat(6, 5)) + x(1).scale(&rat(-4, 15));
        assert_eq!(p.content(), rat(2, 15));
        assert_eq!(p.primitive_part(), x(0) * c(9) - x(1) * c(2));
    }

    #[test]
    fn grading_and_grevlex() {
        let p = x(0) * x(1) + x(2).pow(2);
        assert_eq!(p.multidegree(&[vec![1], vec![1], vec![1]]), Some(vec![2]));
        assert_eq!(p.multidegree(&[vec![1, 0], vec![0, 1], vec![1, 0]]), None);
        // priority x0 > x1 > x2: x0*x1 beats x2^2 in grevlex
        let (lead, _) = p.leading_term_grevlex(&[0, 1, 2]).unwrap();
        assert_eq!(lead, vec![1, 1, 0]);
    }

    #[test]
    fn specialize_variable() {
        let p = x(0).pow(2) * x(2) + x(1);
        let s = p.specialize(2, &rat_int(3));
        assert_eq!(s, x(0).pow(2) * c(3) + x(1));
    }

    #[test]
    fn display() {
        let p = x(0).pow(2) * c(3) - x(1) + c(1);
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert_eq!(p.display_with(&names), "3*a^2 - b + 1");
    }
}
