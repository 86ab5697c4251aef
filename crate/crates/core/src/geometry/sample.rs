//! Uniform sampling from a triangulated polytope.

use rand::Rng;

use crate::algebra::scalar::Scalar;
use crate::geometry::random::seeded;
use crate::geometry::triangulation::Triangulation;

/// `count` points drawn uniformly from the triangulated region.
///
/// A simplex is chosen with probability proportional to its volume, then
/// a point is drawn with Dirichlet(1, …, 1) barycentric weights obtained
/// from normalized exponential spacings.
pub fn sample_uniform<T: Scalar>(t: &Triangulation<T>, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded(seed);
    let total = t.total_volume().to_f64();
    let mut cumulative = Vec::with_capacity(t.volumes().len());
    let mut acc = 0.0;
    for v in t.volumes() {
        acc += v.to_f64() / total;
        cumulative.push(acc);
    }
    let simplices: Vec<Vec<Vec<f64>>> = (0..t.simplices().len())
        .map(|i| {
            t.simplex_rows(i)
                .iter()
                .map(|r| r.iter().map(|c| c.to_f64()).collect())
                .collect()
        })
        .collect();
    let d = simplices.first().map(|s| s.len() - 1).unwrap_or(0);
    let mut out = Vec::with_capacity(count);
    let mut weights = vec![0.0; d + 1];
    for _ in 0..count {
        let u: f64 = rng.gen();
        let idx = cumulative
            .partition_point(|&c| c < u)
            .min(simplices.len() - 1);
        let mut sum = 0.0;
        for w in weights.iter_mut() {
            let e: f64 = rng.gen::<f64>();
            *w = -(1.0 - e).ln();
            sum += *w;
        }
        let mut p = vec![0.0; d];
        for (w, vert) in weights.iter().zip(&simplices[idx]) {
            for (pj, vj) in p.iter_mut().zip(vert) {
                *pj += w / sum * vj;
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat_int, Rat};
    use crate::geometry::polytope::Polytope;
    use crate::geometry::triangulation::default_triangulation;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    fn mean(points: &[Vec<f64>]) -> Vec<f64> {
        let d = points[0].len();
        (0..d)
            .map(|j| points.iter().map(|p| p[j]).sum::<f64>() / points.len() as f64)
            .collect()
    }

    #[test]
    fn square_and_triangle_means() {
        let sq = Polytope::polygon(pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
        let s = sample_uniform(&default_triangulation(&sq).unwrap(), 100_000, 1);
        let m = mean(&s);
        assert!((m[0] - 0.5).abs() < 0.01 && (m[1] - 0.5).abs() < 0.01);
        let fsq = sq.convert(|c| c.to_f64()).unwrap();
        assert!(s.iter().all(|p| fsq.contains(p)));

        let tri = Polytope::simplex(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let s = sample_uniform(&default_triangulation(&tri).unwrap(), 100_000, 2);
        let m = mean(&s);
        assert!((m[0] - 1.0 / 3.0).abs() < 0.01 && (m[1] - 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn seeded_determinism() {
        let tri = Polytope::simplex(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let t = default_triangulation(&tri).unwrap();
        assert_eq!(sample_uniform(&t, 10, 5), sample_uniform(&t, 10, 5));
    }
}
