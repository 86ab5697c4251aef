//! Polytopes, triangulations, volumes and sampling.

pub mod polytope;
pub mod random;
pub mod sample;
pub mod triangulation;

pub use polytope::{simplex_volume, Polytope};
pub use sample::sample_uniform;
pub use triangulation::{
    default_triangulation, polytope_volume, pulling_triangulation, quad_diagonal_point,
    star_triangulation, Triangulation,
};
