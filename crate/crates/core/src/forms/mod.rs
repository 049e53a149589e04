//! Diagonal quadratic forms over tower fields: signatures, Springer
//! decomposition and certified (weak) isotropy verdicts.

mod ed;
mod form;
mod isotropy;
mod verdict;

pub use ed::{ed_check_field, EdCheck, EdPair, EdReport};
pub use form::{Diagonalization, QuadForm};
pub use isotropy::{verify_isotropic, verify_witness, SpringerDecomposition};
pub use verdict::{
    AnisotropyCertificate, FieldClass, IsotropyCertificate, ResiduePart,
    StrongAnisotropyCertificate, UnknownReason, Verdict, VerdictRecord, WeakIsotropyCertificate,
};
