//! Sample-average estimates of moments.

use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope;
use crate::geometry::sample::sample_uniform;
use crate::geometry::triangulation::Triangulation;
use crate::moments::vector::MomentVector;

/// Empirical moments and their standard errors from `count` uniform samples.
pub fn monte_carlo_moments<T: Scalar>(
    p: &Polytope<T>,
    t: &Triangulation<T>,
    order: u32,
    count: usize,
    seed: u64,
) -> Result<(MomentVector<f64>, MomentVector<f64>)> {
    if count == 0 {
        return Err(Error::InsufficientData("need at least one sample".into()));
    }
    let d = p.dim();
    let skeleton = MomentVector::<f64>::dirac(d, order);
    let indices: Vec<Vec<u32>> = skeleton
        .layout()
        .indices()
        .iter()
        .map(|i| i.exponents().to_vec())
        .collect();
    let mut sum = vec![0.0f64; indices.len()];
    let mut sum_sq = vec![0.0f64; indices.len()];
    for x in sample_uniform(t, count, seed) {
        for (k, e) in indices.iter().enumerate() {
            let v: f64 = x.iter().zip(e).map(|(xi, &ei)| xi.powi(ei as i32)).product();
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    let n = count as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let stderr: Vec<f64> = sum_sq
        .iter()
        .zip(&mean)
        .map(|(s2, mu)| {
            if count < 2 {
                return 0.0;
            }
            let var = ((s2 / n - mu * mu) * n / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        })
        .collect();
    Ok((
        MomentVector::from_values(d, order, mean)?,
        MomentVector::from_values(d, order, stderr)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat_int, Rat};
    use crate::geometry::triangulation::default_triangulation;

    #[test]
    fn square_estimates() {
        let v: Vec<Vec<Rat>> = [[0, 0], [1, 0], [1, 1], [0, 1]]
            .iter()
            .map(|r| r.iter().map(|&c| rat_int(c)).collect())
            .collect();
        let sq = Polytope::polygon(v).unwrap();
        let t = default_triangulation(&sq).unwrap();
        let (mean, se) = monte_carlo_moments(&sq, &t, 2, 20_000, 1).unwrap();
        assert_eq!(*mean.mass(), 1.0);
        assert!((mean.at(&[1, 1]).unwrap() - 0.25).abs() < 0.02);
        assert!(*se.at(&[1, 0]).unwrap() > 0.0);
    }
}
