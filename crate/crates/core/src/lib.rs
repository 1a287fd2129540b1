//! Entanglement-assisted quantum error-correcting codes from BCH codes:
//! finite fields, exact linear algebra, cyclotomic cosets, subfield-subcodes,
//! symplectic enlargement and the resulting code-parameter tables.

pub mod bch;
pub mod cli;
pub mod codes;
pub mod cosets;
pub mod enlarge;
pub mod galois;
pub mod matgf;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] galois::FieldError),
    #[error(transparent)]
    Matrix(#[from] matgf::MatrixError),
    #[error(transparent)]
    Coset(#[from] cosets::CosetError),
    #[error(transparent)]
    Code(#[from] codes::CodeError),
    #[error(transparent)]
    Weight(#[from] codes::WeightError),
    #[error(transparent)]
    Enlarge(#[from] enlarge::EnlargeError),
}
