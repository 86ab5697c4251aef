//! Exact scalars, multi-indices, truncated power series, sparse
//! polynomials and linear algebra.

pub mod index;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod series;

pub use index::{Layout, MultiIndex};
pub use poly::SparsePoly;
pub use scalar::{rat, rat_int, Coefficient, Rat, Scalar};
pub use series::TruncSeries;
