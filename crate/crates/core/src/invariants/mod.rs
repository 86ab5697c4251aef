//! Covariants of binary and ternary cubics and the affine invariants of
//! moment vectors they induce.

pub mod affine;
pub mod binary;
pub mod hypersurface;
pub mod ternary;

pub use affine::{
    affine_invariant, affine_invariants, expand_invariants, invariant_polys, invariant_value, linear_affine_invariants,
    normalize, InvariantKind, InvariantPolys, InvariantValue,
};
pub use binary::binary_cubic_invariants;
pub use hypersurface::{
    linear_density52, linear_density_hypersurface52, linear_density_moments, quad18, quad_axial_hankel_det,
    quad_hypersurface18, InvariantHypersurface,
};
pub use ternary::{
    covariants, hessian, moments_to_ternary_cubic, psi_covariants, symbolic_ternary_cubic, Covariants,
    PsiImages, TernaryCubic, CUBIC_MOMENTS,
};
