//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod homology;
mod matrix;
mod snf;

pub(crate) use group::{big_to_json, bigint, bigopt, bigvec};
pub use group::{maximal_divisor, AbelianGroup, HomologyClass};
pub use homology::{homology_h1, H1Options, H1Structure, HomologyError};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_integer, solve_with, SmithDecomposition, SolveError};
