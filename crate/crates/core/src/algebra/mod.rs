//! Exact arithmetic in ℤ[√m] and ray-vector primitives.

mod ray;
mod scalar;

pub use ray::{
    canonicalize, inner_product, is_colinear, is_orthogonal, Ray, Scalar, ScalarMode,
    DEFAULT_TOLERANCE, DUPLICATE_COS_TOLERANCE,
};
pub use scalar::{is_square_free, QuadScalar};
