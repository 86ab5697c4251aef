//! Star triangulations and volumes.

use crate::algebra::scalar::{is_pos, Rat, Scalar};
use crate::error::{Error, Result};
use crate::geometry::polytope::{simplex_volume, Polytope};

/// Triangulation of a polytope into full-dimensional simplices.
///
/// `points` lists the polytope vertices followed, for a star from an
/// interior point, by that auxiliary apex. Simplices index into `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation<T: Scalar = Rat> {
    points: Vec<Vec<T>>,
    apex: Option<usize>,
    simplices: Vec<Vec<usize>>,
    volumes: Vec<T>,
}

impl<T: Scalar> Triangulation<T> {
    fn from_simplices(
        points: Vec<Vec<T>>,
        apex: Option<usize>,
        simplices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut volumes = Vec::with_capacity(simplices.len());
        for s in &simplices {
            let rows: Vec<Vec<T>> = s.iter().map(|&k| points[k].clone()).collect();
            let v = simplex_volume(&rows)?;
            if !is_pos(&v) {
                return Err(Error::Degeneracy(format!(
                    "simplex {:?} has zero volume",
                    s.iter().map(|k| k + 1).collect::<Vec<_>>()
                )));
            }
            volumes.push(v);
        }
        Ok(Triangulation {
            points,
            apex,
            simplices,
            volumes,
        })
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// Index of the auxiliary apex in `points`, if one was adjoined.
    pub fn apex(&self) -> Option<usize> {
        self.apex
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn volumes(&self) -> &[T] {
        &self.volumes
    }

    /// Vertex coordinates of simplex `i`.
    pub fn simplex_rows(&self, i: usize) -> Vec<Vec<T>> {
        self.simplices[i]
            .iter()
            .map(|&k| self.points[k].clone())
            .collect()
    }

    pub fn total_volume(&self) -> T {
        self.volumes
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone())
    }
}

/// Cone from an interior `apex` over every facet.
///
/// The apex is appended as an extra point (index `n`).
pub fn star_triangulation<T: Scalar>(p: &Polytope<T>, apex: &[T]) -> Result<Triangulation<T>> {
    if apex.len() != p.dim() {
        return Err(Error::Dimension("apex has wrong dimension".into()));
    }
    if !p.contains_interior(apex) {
        return Err(Error::Geometry(
            "apex must lie in the interior of the polytope".into(),
        ));
    }
    let n = p.num_vertices();
    let mut points = p.vertices().to_vec();
    points.push(apex.to_vec());
    let simplices = p
        .facets()
        .iter()
        .map(|f| {
            let mut s = vec![n];
            s.extend(f.iter().copied());
            s
        })
        .collect();
    Triangulation::from_simplices(points, Some(n), simplices)
}

/// Star from the vertex centroid.
pub fn default_triangulation<T: Scalar>(p: &Polytope<T>) -> Result<Triangulation<T>> {
    star_triangulation(p, &p.vertex_centroid())
}

/// Cone from vertex `k` over the facets not containing it.
///
/// Uses only polytope vertices, so no auxiliary point is adjoined.
pub fn pulling_triangulation<T: Scalar>(p: &Polytope<T>, k: usize) -> Result<Triangulation<T>> {
    if k >= p.num_vertices() {
        return Err(Error::Dimension(format!("no vertex {}", k + 1)));
    }
    let simplices = p
        .facets()
        .iter()
        .filter(|f| !f.contains(&k))
        .map(|f| {
            let mut s = vec![k];
            s.extend(f.iter().copied());
            s
        })
        .collect();
    Triangulation::from_simplices(p.vertices().to_vec(), None, simplices)
}

/// `vol(P)` as the sum of the simplex volumes.
pub fn polytope_volume<T: Scalar>(p: &Polytope<T>, t: &Triangulation<T>) -> Result<T> {
    if t.points.len() < p.num_vertices() || t.points[..p.num_vertices()] != *p.vertices() {
        return Err(Error::Geometry(
            "triangulation does not belong to this polytope".into(),
        ));
    }
    Ok(t.total_volume())
}

/// Intersection of the diagonals `x1x3` and `x2x4` of a quadrilateral.
pub fn quad_diagonal_point<T: Scalar>(q: &Polytope<T>) -> Result<Vec<T>> {
    if q.dim() != 2 || q.num_vertices() != 4 {
        return Err(Error::Dimension("expected a quadrilateral in the plane".into()));
    }
    let [x1, x2, x3, x4] = [q.vertex(0), q.vertex(1), q.vertex(2), q.vertex(3)];
    // x1 + s (x3 − x1) = x2 + u (x4 − x2)
    let a = [x3[0].clone() - x1[0].clone(), x3[1].clone() - x1[1].clone()];
    let b = [x4[0].clone() - x2[0].clone(), x4[1].clone() - x2[1].clone()];
    let c = [x2[0].clone() - x1[0].clone(), x2[1].clone() - x1[1].clone()];
    let den = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
    if den.is_zero() {
        return Err(Error::Degeneracy("diagonals are parallel".into()));
    }
    let s = (c[0].clone() * b[1].clone() - c[1].clone() * b[0].clone()) / den;
    Ok(vec![
        x1[0].clone() + s.clone() * a[0].clone(),
        x1[1].clone() + s * a[1].clone(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    fn shoelace(v: &[Vec<Rat>]) -> Rat {
        let n = v.len();
        let mut s = rat_int(0);
        for k in 0..n {
            let (a, b) = (&v[k], &v[(k + 1) % n]);
            s += &a[0] * &b[1] - &a[1] * &b[0];
        }
        s / rat_int(2)
    }

    #[test]
    fn unit_square_star() {
        let sq = Polytope::polygon(pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
        let t = default_triangulation(&sq).unwrap();
        assert_eq!(t.volumes(), &[rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]);
        assert_eq!(polytope_volume(&sq, &t).unwrap(), rat_int(1));
        assert_eq!(quad_diagonal_point(&sq).unwrap(), vec![rat(1, 2), rat(1, 2)]);
        let big = sq.scaled(&rat_int(2)).unwrap();
        assert_eq!(quad_diagonal_point(&big).unwrap(), vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn example_quadrilateral() {
        let v = pts(&[&[1, -1], &[3, 2], &[2, 4], &[-1, 2]]);
        let q = Polytope::polygon(v.clone()).unwrap();
        let t = default_triangulation(&q).unwrap();
        assert_eq!(t.total_volume(), shoelace(&v));
        assert_eq!(t.total_volume(), rat_int(10));
        let p = quad_diagonal_point(&q).unwrap();
        // the point lies on both diagonals
        let on_line = |a: &[Rat], b: &[Rat]| {
            (&b[0] - &a[0]) * (&p[1] - &a[1]) == (&b[1] - &a[1]) * (&p[0] - &a[0])
        };
        assert!(on_line(&v[0], &v[2]) && on_line(&v[1], &v[3]));
        assert_eq!(p, vec![rat(8, 5), rat_int(2)]);
    }

    #[test]
    fn simplex_centroid_star() {
        let tet = Polytope::simplex(pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let t = default_triangulation(&tet).unwrap();
        assert_eq!(t.simplices().len(), 4);
        assert!(t.volumes().iter().all(|v| *v == rat(1, 24)));
        assert_eq!(polytope_volume(&tet, &t).unwrap(), rat(1, 6));
    }

    #[test]
    fn apex_must_be_interior() {
        let sq = Polytope::polygon(pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
        assert!(matches!(
            star_triangulation(&sq, &[rat_int(0), rat(1, 2)]),
            Err(Error::Geometry(_))
        ));
        assert!(star_triangulation(&sq, &[rat_int(2), rat_int(2)]).is_err());
        let pull = pulling_triangulation(&sq, 0).unwrap();
        assert_eq!(pull.simplices().len(), 2);
        assert_eq!(pull.total_volume(), rat_int(1));
    }
}
