pub mod corpus;
pub mod engine;
pub mod error;
pub mod eval;
pub mod heuristics;
pub mod ic;
pub mod pos;
pub mod similarity;
#[doc(hidden)]
pub mod testkit;
pub mod wordnet;

pub use error::{Error, Result};
pub use pos::{Pos, PosSet};
