//! Exact integer linear algebra and simplicial lattice cones.

mod cone;
mod hermite;
mod matrix;
mod vec2;

pub use cone::{
    cone_is_smooth, fundamental_parallelepiped_points, is_primitive, LatticeCone,
    PARALLELEPIPED_BOX_LIMIT,
};
pub use hermite::{hermite_normal_form, integer_kernel, smith_invariants, sublattice_index, Hermite};
pub use matrix::{combinations, maximal_minor_gcd, minor_determinants, IntMatrix, MinorTable};
pub use vec2::{IMat2, IVec2};

use num_bigint::BigInt;

pub type IntVector = Vec<BigInt>;

pub fn int_vector(values: &[i64]) -> IntVector {
    values.iter().map(|&v| BigInt::from(v)).collect()
}
