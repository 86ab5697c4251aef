//! Simplicial polytopes given by vertices and a facet list.

use crate::algebra::linalg::{det, rank};
use crate::algebra::scalar::{factorial, is_neg, is_pos, Rat, Scalar};
use crate::error::{Error, Result};

/// `|det(x_1 − x_0, …, x_d − x_0)| / d!` for `d + 1` points in `ℝ^d`.
///
/// Degenerate simplices give zero.
pub fn simplex_volume<T: Scalar>(rows: &[Vec<T>]) -> Result<T> {
    let d = rows.len().saturating_sub(1);
    if rows.is_empty() || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension(format!(
            "simplex needs d + 1 points of length d, got {} points",
            rows.len()
        )));
    }
    let diffs: Vec<Vec<T>> = rows[1..]
        .iter()
        .map(|r| {
            r.iter()
                .zip(&rows[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    Ok(det(&diffs)?.abs() / factorial::<T>(d as u32))
}

/// Affine hyperplane `normal · x = offset` through `d` points of `ℝ^d`.
///
/// The normal is the vector of signed maximal minors of the differences,
/// so it vanishes exactly when the points are affinely dependent.
pub fn hyperplane_through<T: Scalar>(points: &[&[T]]) -> (Vec<T>, T) {
    let d = points[0].len();
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(points[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<T>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let m = det(&minor).expect("square minor");
        normal.push(if j % 2 == 0 { m } else { -m });
    }
    let offset = dot(&normal, points[0]);
    (normal, offset)
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// A full-dimensional simplicial polytope.
///
/// Facets are stored 0-based. Construction checks that every facet
/// hyperplane has all vertices weakly and the vertex centroid strictly on
/// one side, which rules out non-convex or mislabeled input.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<T: Scalar = Rat> {
    dim: usize,
    vertices: Vec<Vec<T>>,
    facets: Vec<Vec<usize>>,
    // outward normal and offset per facet: normal · x <= offset on P
    halfspaces: Vec<(Vec<T>, T)>,
}

impl<T: Scalar> Polytope<T> {
    pub fn new(vertices: Vec<Vec<T>>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let d = vertices.first().map(|v| v.len()).unwrap_or(0);
        if d == 0 {
            return Err(Error::Dimension("polytope needs dimension at least 1".into()));
        }
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::Dimension("vertices have differing lengths".into()));
        }
        if n < d + 1 {
            return Err(Error::Geometry(format!(
                "{n} vertices cannot span dimension {d}"
            )));
        }
        if facets.is_empty() {
            return Err(Error::Geometry("empty facet list".into()));
        }
        for f in &facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != d || f.len() != d {
                return Err(Error::Geometry(format!(
                    "facet {f:?} must have {d} distinct vertices"
                )));
            }
            if s.iter().any(|&k| k >= n) {
                return Err(Error::Geometry(format!("facet {f:?} refers to a missing vertex")));
            }
        }
        let diffs: Vec<Vec<T>> = vertices[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&vertices[0])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        if rank(&diffs) < d {
            return Err(Error::Degeneracy("vertices do not span full dimension".into()));
        }
        let centroid = centroid_of(&vertices);
        let mut halfspaces = Vec::with_capacity(facets.len());
        for f in &facets {
            let pts: Vec<&[T]> = f.iter().map(|&k| vertices[k].as_slice()).collect();
            let (mut normal, mut offset) = hyperplane_through(&pts);
            if normal.iter().all(|c| c.is_zero()) {
                return Err(Error::Degeneracy(format!("facet {f:?} is degenerate")));
            }
            let side = dot(&normal, &centroid) - offset.clone();
            if side.is_zero() {
                return Err(Error::Geometry(format!(
                    "centroid lies on the hyperplane of facet {f:?}"
                )));
            }
            if is_pos(&side) {
                normal = normal.into_iter().map(|c| -c).collect();
                offset = -offset;
            }
            for (k, v) in vertices.iter().enumerate() {
                if is_pos(&(dot(&normal, v) - offset.clone())) {
                    return Err(Error::Geometry(format!(
                        "vertex {} lies outside facet {f:?}; input is not convex",
                        k + 1
                    )));
                }
            }
            halfspaces.push((normal, offset));
        }
        Ok(Polytope {
            dim: d,
            vertices,
            facets,
            halfspaces,
        })
    }

    /// The simplex on `d + 1` vertices, with all `d`-subsets as facets.
    pub fn simplex(vertices: Vec<Vec<T>>) -> Result<Self> {
        let n = vertices.len();
        let facets = (0..n)
            .map(|skip| (0..n).filter(|&k| k != skip).collect())
            .collect();
        Self::new(vertices, facets)
    }

    /// Polygon with cyclically labeled vertices; edges join neighbours.
    pub fn polygon(vertices: Vec<Vec<T>>) -> Result<Self> {
        let n = vertices.len();
        let facets = (0..n).map(|k| vec![k, (k + 1) % n]).collect();
        Self::new(vertices, facets)
    }

    /// Segment `[a, b]` on the line.
    pub fn segment(a: T, b: T) -> Result<Self> {
        Self::new(vec![vec![a], vec![b]], vec![vec![0], vec![1]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> &[T] {
        &self.vertices[k]
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_centroid(&self) -> Vec<T> {
        centroid_of(&self.vertices)
    }

    /// Whether `point` lies strictly inside every facet half-space.
    pub fn contains_interior(&self, point: &[T]) -> bool {
        self.halfspaces
            .iter()
            .all(|(nrm, off)| is_neg(&(dot(nrm, point) - off.clone())))
    }

    /// Whether `point` lies in the closed polytope.
    pub fn contains(&self, point: &[T]) -> bool {
        self.halfspaces
            .iter()
            .all(|(nrm, off)| !is_pos(&(dot(nrm, point) - off.clone())))
    }

    /// Outward normals and offsets, one per facet.
    pub fn halfspaces(&self) -> &[(Vec<T>, T)] {
        &self.halfspaces
    }

    /// Image under `x ↦ A x + b`; the facet list is unchanged.
    pub fn map_affine(&self, a: &[Vec<T>], b: &[T]) -> Result<Self> {
        if a.len() != self.dim || a.iter().any(|r| r.len() != self.dim) || b.len() != self.dim {
            return Err(Error::Dimension("affine map does not match polytope dimension".into()));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                a.iter()
                    .zip(b)
                    .map(|(row, bi)| dot(row, v) + bi.clone())
                    .collect()
            })
            .collect();
        Self::new(vertices, self.facets.clone())
    }

    /// Image under `x ↦ λ x`.
    pub fn scaled(&self, lambda: &T) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c.clone() * lambda.clone()).collect())
            .collect();
        Self::new(vertices, self.facets.clone())
    }

    /// Convert coordinates to another scalar type (e.g. `f64`).
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<Polytope<U>> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(&f).collect())
            .collect();
        Polytope::new(vertices, self.facets.clone())
    }
}

pub(crate) fn centroid_of<T: Scalar>(points: &[Vec<T>]) -> Vec<T> {
    let d = points[0].len();
    let n = T::from_int(points.len() as i64);
    (0..d)
        .map(|j| {
            points
                .iter()
                .fold(T::zero(), |acc, p| acc + p[j].clone())
                / n.clone()
        })
        .collect()
}
