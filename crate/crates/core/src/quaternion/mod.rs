//! Quaternion algebras `(a, b)_F` with involutions, skew-hermitian forms
//! and their transfer, weak-isotropy witnesses and Pythagorean indices.

mod algebra;
mod hermitian;
mod involution;
mod pind;

pub use algebra::{DivisionCheck, Quat, QuaternionAlgebra};
pub use hermitian::{
    involution_totally_indefinite, involution_weak_isotropy_via_descent, pi2_transfer,
    Indefiniteness, InvolutionModel, SkewHermitianForm, TransferResult,
};
pub use involution::{
    hermitian_square_obstruction, verify_weak_witness, weak_isotropy_witness_search,
    InvolutionSpec, ObstructionReason, SearchBounds, SquareCheck, WitnessSearch,
};
pub use pind::{double_centralizer_dims, pind_quaternion, CentralizerDims};
