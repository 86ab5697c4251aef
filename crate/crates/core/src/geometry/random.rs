//! Seeded generators of random rational polytopes, points and maps.
//!
//! Used by the verification harness, the CLI and the test suites; every
//! generator is a pure function of the RNG state.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::det;
use crate::algebra::scalar::{is_neg, is_pos, Rat, Scalar};
use crate::geometry::polytope::Polytope;

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational sampling box: values `p/q` with `1 ≤ q ≤ max_den` and
/// `|p/q| ≤ bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBox {
    pub bound: i64,
    pub max_den: i64,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            bound: 5,
            max_den: 7,
        }
    }
}

impl SampleBox {
    pub fn rat(&self, rng: &mut impl Rng) -> Rat {
        let q = rng.gen_range(1..=self.max_den);
        let p = rng.gen_range(-self.bound * q..=self.bound * q);
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn nonzero_rat(&self, rng: &mut impl Rng) -> Rat {
        loop {
            let r = self.rat(rng);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn point(&self, rng: &mut impl Rng, d: usize) -> Vec<Rat> {
        (0..d).map(|_| self.rat(rng)).collect()
    }

    pub fn points(&self, rng: &mut impl Rng, n: usize, d: usize) -> Vec<Vec<Rat>> {
        (0..n).map(|_| self.point(rng, d)).collect()
    }

    /// `n` pairwise distinct rationals.
    pub fn distinct_rats(&self, rng: &mut impl Rng, n: usize) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        while out.len() < n {
            let r = self.rat(rng);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    /// Vertices of a non-degenerate `d`-simplex.
    pub fn simplex_vertices(&self, rng: &mut impl Rng, d: usize) -> Vec<Vec<Rat>> {
        loop {
            let v = self.points(rng, d + 1, d);
            let diffs: Vec<Vec<Rat>> = v[1..]
                .iter()
                .map(|p| p.iter().zip(&v[0]).map(|(a, b)| a - b).collect())
                .collect();
            if !det(&diffs).expect("square").is_zero() {
                return v;
            }
        }
    }

    pub fn simplex(&self, rng: &mut impl Rng, d: usize) -> Polytope {
        Polytope::simplex(self.simplex_vertices(rng, d)).expect("non-degenerate simplex")
    }

    /// Invertible `d × d` matrix and translation vector.
    pub fn affine_map(&self, rng: &mut impl Rng, d: usize) -> (Vec<Vec<Rat>>, Vec<Rat>) {
        loop {
            let a = self.points(rng, d, d);
            if !det(&a).expect("square").is_zero() {
                return (a, self.point(rng, d));
            }
        }
    }

    /// Strictly convex polygon with `n` cyclically labeled rational
    /// vertices in general position.
    ///
    /// Vertices start on rationally parametrized rays
    /// `((1−s²)/(1+s²), 2s/(1+s²))` with random radii, then a random
    /// affine map is applied.
    pub fn convex_polygon(&self, rng: &mut impl Rng, n: usize) -> Polytope {
        assert!(n >= 3, "a polygon needs at least three vertices");
        let inner = SampleBox {
            bound: 4,
            max_den: self.max_den,
        };
        loop {
            let mut slopes = inner.distinct_rats(rng, n);
            slopes.sort();
            let pts: Vec<Vec<Rat>> = slopes
                .iter()
                .map(|s| {
                    let s2 = s * s;
                    let den = Rat::one() + &s2;
                    let r = Rat::new(
                        BigInt::from(rng.gen_range(80..=120)),
                        BigInt::from(100),
                    );
                    vec![&r * (Rat::one() - &s2) / &den, &r * Rat::from_integer(2.into()) * s / &den]
                })
                .collect();
            if !strictly_convex(&pts) {
                continue;
            }
            let (a, b) = self.affine_map(rng, 2);
            let mapped: Vec<Vec<Rat>> = pts
                .iter()
                .map(|p| {
                    (0..2)
                        .map(|i| &a[i][0] * &p[0] + &a[i][1] * &p[1] + &b[i])
                        .collect()
                })
                .collect();
            if let Ok(poly) = Polytope::polygon(mapped) {
                return poly;
            }
        }
    }
}

/// Consecutive turns all strictly in the same direction.
pub fn strictly_convex<T: Scalar>(pts: &[Vec<T>]) -> bool {
    let n = pts.len();
    let mut sign = 0i8;
    for k in 0..n {
        let (a, b, c) = (&pts[k], &pts[(k + 1) % n], &pts[(k + 2) % n]);
        let cross = (b[0].clone() - a[0].clone()) * (c[1].clone() - b[1].clone())
            - (b[1].clone() - a[1].clone()) * (c[0].clone() - b[0].clone());
        let s = if is_pos(&cross) {
            1
        } else if is_neg(&cross) {
            -1
        } else {
            return false;
        };
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return false;
        }
    }
    true
}
