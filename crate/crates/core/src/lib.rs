pub mod algebra;
pub mod cumulants;
pub mod datafile;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod moments;
pub mod recovery;
pub mod relations;

pub use algebra::{rat, rat_int, Coefficient, MultiIndex, Rat, Scalar, SparsePoly, TruncSeries};
pub use error::{Error, Result};
