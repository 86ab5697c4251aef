//! Cumulants, power sums and the Plücker coordinates of triangles.

pub mod plucker;
pub mod transform;
pub mod vector;

pub use plucker::{plucker_from_cumulants, plucker_relations};
pub use transform::{
    cumulant_series, cumulants_to_moments, cumulants_to_moments_with_weight, moments_to_cumulants,
    moments_to_cumulants_with_weight, newton_reduce, newton_reduce_points, powersum_cumulants,
};
pub use vector::{cumulant_names, CumulantVector};
