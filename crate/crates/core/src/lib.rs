//! Exact quadratic-form and quaternion-involution computations over
//! formally real field towers.

pub mod error;
pub mod field;
pub mod forms;
pub mod quaternion;
pub mod scenarios;
pub mod text;

pub use error::{AlgebraError, Result};
pub use field::{Element, FieldTower, Ordering, Sign};
pub use forms::{QuadForm, Verdict};
pub use quaternion::{InvolutionSpec, Quat, QuaternionAlgebra, SkewHermitianForm};
