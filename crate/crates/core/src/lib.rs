//! Binary quadratic operads over Q: Koszul duality, the Dong criterion,
//! Manin products and a locality laboratory.

pub mod catalog;
pub mod dong;
pub mod error;
pub mod free3;
pub mod koszul;
pub mod linalg;
pub mod locality;
pub mod manin;
pub mod operad;
pub mod par;
pub mod parse;
pub mod perm;
pub mod random;
pub mod selfcheck;
pub mod spec_file;

pub use error::{Error, Result};
pub use free3::{GeneratorSpace, Mono};
pub use linalg::{MatrixQ, Rational, SubspaceQ};
pub use perm::PermS3;
