//! Moments of uniform measures on polytopes and of canonical splines.

pub mod adjoint;
pub mod affine;
pub mod generating;
pub mod monte_carlo;
pub mod vector;

pub use adjoint::{
    adjoint_poly, minimal_nonfaces, nonface_vanishing_check, wachspress_coords, NonFaceReport,
    NonFaceStatus,
};
pub use affine::{project_moments, transform_moments, AffineMap};
pub use generating::{
    canonical_spline_moments, linear_factor_mgf, mgf_to_moments, moments_to_mgf, polytope_mgf,
    polytope_moments, quad_mgf, simplex_mgf, simplex_moment_direct, simplex_moments,
};
pub use monte_carlo::monte_carlo_moments;
pub use vector::{moment_names, MomentVector};
