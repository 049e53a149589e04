use crate::error::{AlgebraError, Result};

use super::algebra::QuaternionAlgebra;

/// Pythagorean index of a quaternion algebra: 2 if it stays division over
/// some real closure (both slots negative at an ordering), else 1.
pub fn pind_quaternion(algebra: &QuaternionAlgebra) -> u32 {
    if algebra.division_ordering().is_some() {
        2
    } else {
        1
    }
}

/// Dimensions of the centralizer `C = C_D(K)` of a subfield `K ⊆ D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralizerDims {
    /// `[C : F] = [D : F] / [K : F]`.
    pub over_f: u64,
    /// `[C : K] = [D : F] / [K : F]²`.
    pub over_k: u64,
}

/// Double-centralizer bookkeeping for `dim_d = [D : F]` and `deg_k = [K : F]`.
pub fn double_centralizer_dims(dim_d: u64, deg_k: u64) -> Result<CentralizerDims> {
    for n in [dim_d, deg_k] {
        if !n.is_power_of_two() {
            return Err(AlgebraError::NotPowerOfTwo(n));
        }
    }
    // [D : F] = ind(D)² with ind(D) a power of two, so the exponent is even
    let log = dim_d.trailing_zeros();
    if log % 2 != 0 {
        return Err(AlgebraError::PreconditionFailed(format!(
            "{dim_d} is not the square of a degree"
        )));
    }
    let index = 1u64 << (log / 2);
    if index % deg_k != 0 {
        return Err(AlgebraError::NonDivisible {
            numerator: index,
            denominator: deg_k,
        });
    }
    Ok(CentralizerDims {
        over_f: dim_d / deg_k,
        over_k: dim_d / (deg_k * deg_k),
    })
}
