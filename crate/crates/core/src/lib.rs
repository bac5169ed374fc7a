//! Exact computer algebra for jets of smooth map germs to the plane:
//! classification into the regular, fold, cusp, swallowtail, lips and
//! beak-to-beak types, multigerm admissibility, and tangent spaces of germs.

pub mod error;
pub mod jetalg;

pub use error::{Error, Result};
pub mod germclass;
pub mod multigerm;
pub mod tangent;
pub mod cli;
