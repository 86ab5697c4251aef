//! Piecewise polynomial densities of recovered spline models.

use num_traits::{One, Zero};

use crate::algebra::linalg::solve;
use crate::algebra::scalar::Rat;
use crate::error::{Error, Result};
use crate::recovery::hankel::{model_moments, SplineModel};
use crate::recovery::univariate::{self, UPoly};

/// A function that is polynomial on each `[knots[k], knots[k+1]]` and zero
/// outside `[knots[0], knots[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    pub knots: Vec<Rat>,
    /// `pieces[k]` applies on `[knots[k], knots[k+1]]`, coefficients from
    /// the constant term up.
    pub pieces: Vec<UPoly>,
}

impl PiecewisePoly {
    fn zero_on(knots: &[Rat]) -> Self {
        PiecewisePoly {
            knots: knots.to_vec(),
            pieces: vec![Vec::new(); knots.len() - 1],
        }
    }

    /// Value at `x`; at an interior knot the right-hand piece is used.
    pub fn eval(&self, x: &Rat) -> Rat {
        let last = self.knots.len() - 1;
        if *x < self.knots[0] || *x > self.knots[last] {
            return Rat::zero();
        }
        let k = self
            .knots
            .partition_point(|u| u <= x)
            .saturating_sub(1)
            .min(self.pieces.len() - 1);
        univariate::eval(&self.pieces[k], x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let kf: Vec<f64> = self
            .knots
            .iter()
            .map(crate::algebra::scalar::Scalar::to_f64)
            .collect();
        if x < kf[0] || x > kf[kf.len() - 1] {
            return 0.0;
        }
        let k = kf
            .partition_point(|u| *u <= x)
            .saturating_sub(1)
            .min(self.pieces.len() - 1);
        univariate::eval_f64(&self.pieces[k], x)
    }

    /// One-sided limits of the `order`-th derivative at knot `k`
    /// (left, right); zero outside the support.
    pub fn jump(&self, k: usize, order: usize) -> (Rat, Rat) {
        let deriv = |p: &UPoly| (0..order).fold(p.clone(), |acc, _| univariate::derivative(&acc));
        let x = &self.knots[k];
        let left = if k == 0 {
            Rat::zero()
        } else {
            univariate::eval(&deriv(&self.pieces[k - 1]), x)
        };
        let right = if k == self.pieces.len() {
            Rat::zero()
        } else {
            univariate::eval(&deriv(&self.pieces[k]), x)
        };
        (left, right)
    }

    /// `∫ x^i f(x) dx`, exact.
    pub fn moment(&self, i: usize) -> Rat {
        let mut total = Rat::zero();
        for (k, piece) in self.pieces.iter().enumerate() {
            let mut xi = vec![Rat::zero(); i];
            xi.push(Rat::one());
            let integrand = univariate::mul(piece, &xi);
            // antiderivative
            let anti: UPoly = std::iter::once(Rat::zero())
                .chain(
                    integrand
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c / Rat::from_integer((j as i64 + 1).into())),
                )
                .collect();
            total += univariate::eval(&anti, &self.knots[k + 1]) - univariate::eval(&anti, &self.knots[k]);
        }
        total
    }

    fn add_scaled(&mut self, other: &PiecewisePoly, s: &Rat) {
        for (a, b) in self.pieces.iter_mut().zip(&other.pieces) {
            let scaled: UPoly = b.iter().map(|c| c * s).collect();
            *a = univariate::sub(a, &scaled.iter().map(|c| -c).collect::<Vec<_>>());
        }
    }
}

/// B-spline `N_{j,p}` on the knot sequence, by the Cox–de Boor recursion
/// carried out on polynomial pieces.
pub fn bspline(knots: &[Rat], j: usize, p: usize) -> PiecewisePoly {
    let mut out = PiecewisePoly::zero_on(knots);
    if p == 0 {
        out.pieces[j] = vec![Rat::one()];
        return out;
    }
    let left = bspline(knots, j, p - 1);
    let right = bspline(knots, j + 1, p - 1);
    let dl = &knots[j + p] - &knots[j];
    let dr = &knots[j + p + 1] - &knots[j + 1];
    for k in 0..out.pieces.len() {
        // (x − u_j)/dl · left + (u_{j+p+1} − x)/dr · right
        let a = univariate::mul(&left.pieces[k], &[-&knots[j] / &dl, Rat::one() / &dl]);
        let b = univariate::mul(&right.pieces[k], &[&knots[j + p + 1] / &dr, -Rat::one() / &dr]);
        out.pieces[k] = univariate::sub(&a, &b.iter().map(|c| -c).collect::<Vec<_>>());
    }
    out
}

/// The density of a recovered model as a combination of the `n − d`
/// B-splines of degree `d − 1` on the sorted nodes, with weights fixed by
/// matching `m_0, …, m_{n−d−1}`.
pub fn spline_density(model: &SplineModel) -> Result<PiecewisePoly> {
    let nodes = model.rational_nodes()?;
    let d = model.d;
    let n = nodes.len();
    if nodes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Unsupported(
            "coincident nodes; the density is not a simple B-spline combination".into(),
        ));
    }
    if d == 0 || n < d + 1 {
        return Err(Error::Dimension("need n ≥ d + 1 ≥ 2".into()));
    }
    let basis: Vec<PiecewisePoly> = (0..n - d).map(|j| bspline(&nodes, j, d - 1)).collect();
    let targets = model_moments(d, &nodes, &model.numerator, n - d - 1)?;
    let a: Vec<Vec<Rat>> = (0..n - d)
        .map(|i| basis.iter().map(|b| b.moment(i)).collect())
        .collect();
    let w = solve(&a, &targets).map_err(|_| {
        Error::Inconsistent("moment-matching system is singular".into())
    })?;
    let mut density = PiecewisePoly::zero_on(&nodes);
    for (b, wj) in basis.iter().zip(&w) {
        density.add_scaled(b, wj);
    }
    Ok(density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};
    use crate::moments::generating::{canonical_spline_moments, simplex_moments};
    use crate::recovery::hankel::recover_spline;

    #[test]
    fn uniform_segment() {
        let m = simplex_moments(&[vec![rat_int(0)], vec![rat_int(1)]], 4).unwrap();
        let m1: Vec<Rat> = (0..=4).map(|i| m.at(&[i]).unwrap().clone()).collect();
        let model = recover_spline(&m1, 1, 2).unwrap();
        let f = spline_density(&model).unwrap();
        assert_eq!(f.eval(&rat(1, 2)), rat_int(1));
        assert_eq!(f.eval(&rat(3, 2)), rat_int(0));
        for i in 0..=4 {
            assert_eq!(f.moment(i), m1[i]);
        }
    }

    #[test]
    fn tent() {
        let x = vec![vec![rat_int(0)], vec![rat_int(1)], vec![rat_int(2)]];
        let mv = canonical_spline_moments(&x, 6).unwrap();
        let m: Vec<Rat> = (0..=6).map(|i| mv.at(&[i]).unwrap().clone()).collect();
        let f = spline_density(&recover_spline(&m, 2, 3).unwrap()).unwrap();
        assert_eq!(f.eval(&rat_int(1)), rat_int(1));
        assert_eq!(f.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(f.moment(0), rat_int(1));
        for k in 0..3 {
            let (l, r) = f.jump(k, 0);
            assert_eq!(l, r);
        }
    }
}
