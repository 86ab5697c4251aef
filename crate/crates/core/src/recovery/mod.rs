//! Recovery of one-dimensional polytopal splines from their moments.

pub mod density;
pub mod hankel;
pub mod univariate;

pub use density::{bspline, spline_density, PiecewisePoly};
pub use hankel::{
    build_hankel, hankel_minor_check, model_moments, recover_spline, recover_spline_f64,
    FloatSplineModel, HankelMatrix, MinorReport, SplineModel,
};
pub use univariate::{real_roots, RealRoot};
