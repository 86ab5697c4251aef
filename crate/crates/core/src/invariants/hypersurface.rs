//! Two invariant hypersurfaces in the space of planar moments of order 3:
//! one containing all quadrilaterals, one containing all triangles with a
//! linear density.

use std::sync::OnceLock;

use crate::algebra::linalg::det;
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{Rat, Scalar};
use crate::datafile::{self, PolyFile};
use crate::error::{Error, Result};
use crate::invariants::affine::{affine_invariant, InvariantKind};
use crate::moments::affine::project_moments;
use crate::moments::vector::MomentVector;
use crate::recovery::hankel::build_hankel;

/// Variables of the hypersurface data files, with their multidegrees.
pub const INVARIANT_VARS: [InvariantKind; 5] = [
    InvariantKind::M00,
    InvariantKind::S,
    InvariantKind::T,
    InvariantKind::H,
    InvariantKind::G,
];

const QUAD18_SRC: &str = include_str!("../../data/quad18.poly");
const LINEAR52_SRC: &str = include_str!("../../data/linear_density52.poly");

/// A polynomial in `m00, s, t, h, g` loaded from a data file.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantHypersurface {
    pub id: String,
    pub degree: Vec<i64>,
    pub poly: SparsePoly<Rat>,
}

impl InvariantHypersurface {
    pub fn from_file(file: &PolyFile) -> Result<Self> {
        let names: Vec<&str> = INVARIANT_VARS.iter().map(|k| k.name()).collect();
        let got: Vec<&str> = file.vars.iter().map(|s| s.as_str()).collect();
        // the files write m00 as m
        if got.len() != 5 || got[0] != "m" || got[1..] != names[1..] {
            return Err(Error::DataIntegrity(format!("unexpected variables {got:?}")));
        }
        let degree = file.int_list("degree")?;
        let weights: Vec<Vec<i64>> = INVARIANT_VARS.iter().map(|k| k.multidegree()).collect();
        if file.poly.multidegree(&weights) != Some(degree.clone()) {
            return Err(Error::DataIntegrity(format!(
                "{} is not homogeneous of degree {degree:?}",
                file.require("id")?
            )));
        }
        Ok(InvariantHypersurface {
            id: file.require("id")?.to_string(),
            degree,
            poly: file.poly.clone(),
        })
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_file(&datafile::parse(src)?)
    }

    /// Value at a planar moment vector of order at least 3.
    pub fn eval<T: Scalar>(&self, m: &MomentVector<T>) -> Result<T> {
        let vals: Vec<T> = INVARIANT_VARS
            .iter()
            .map(|k| affine_invariant(m, *k))
            .collect::<Result<_>>()?;
        Ok(self.poly.eval(&vals))
    }
}

fn cached(cell: &'static OnceLock<Result<InvariantHypersurface>>, src: &str) -> Result<&'static InvariantHypersurface> {
    cell.get_or_init(|| InvariantHypersurface::parse(src))
        .as_ref()
        .map_err(Clone::clone)
}

/// The degree-(18, 12, 12) invariant vanishing on moments of every
/// quadrilateral.
pub fn quad18() -> Result<&'static InvariantHypersurface> {
    static CELL: OnceLock<Result<InvariantHypersurface>> = OnceLock::new();
    cached(&CELL, QUAD18_SRC)
}

/// The degree-(52, 36, 36) invariant vanishing on order-3 moments of
/// linear densities on triangles.
pub fn linear_density52() -> Result<&'static InvariantHypersurface> {
    static CELL: OnceLock<Result<InvariantHypersurface>> = OnceLock::new();
    cached(&CELL, LINEAR52_SRC)
}

pub fn quad_hypersurface18<T: Scalar>(m: &MomentVector<T>) -> Result<T> {
    quad18()?.eval(m)
}

pub fn linear_density_hypersurface52<T: Scalar>(m: &MomentVector<T>) -> Result<T> {
    linear_density52()?.eval(m)
}

/// Order-3 moments `M_ij = α m_{i+1,j} + β m_{i,j+1} + γ m_ij` of the
/// density `αx + βy + γ` against a planar measure with moments `m`
/// (order at least 4).
pub fn linear_density_moments<T: Scalar>(m: &MomentVector<T>, alpha: &T, beta: &T, gamma: &T) -> Result<MomentVector<T>> {
    if m.dim() != 2 || m.order() < 4 {
        return Err(Error::MissingData("need planar moments through order 4".into()));
    }
    let mut values = Vec::new();
    let layout = crate::algebra::index::Layout::get(2, 3);
    for idx in layout.indices() {
        let (i, j) = (idx.exponents()[0], idx.exponents()[1]);
        values.push(
            alpha.clone() * m.at(&[i + 1, j])?.clone()
                + beta.clone() * m.at(&[i, j + 1])?.clone()
                + gamma.clone() * m.at(&[i, j])?.clone(),
        );
    }
    MomentVector::from_values(2, 3, values)
}

/// Determinant of the 5 × 5 Hankel matrix of the moments of order ≤ 6 of
/// the projection `x ↦ v·x`; vanishes on every quadrilateral.
pub fn quad_axial_hankel_det<T: Scalar>(m: &MomentVector<T>, v: &[T]) -> Result<T> {
    let m1d = project_moments(m, v)?;
    let h = build_hankel(&m1d, 2, 4)?;
    det(&h.rows())
}
