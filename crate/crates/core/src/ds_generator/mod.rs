//! Generation of the exact Dyson-Schwinger tower of a monomial theory.

mod base;
mod bell;
mod table;
mod theory;
mod tower;

pub use base::BaseExpansion;
pub use bell::{bell_table, moment_in_cumulants};
pub use table::exact_table;
pub use theory::{Contour, PiFraction, Theory, TheorySpec};
pub use tower::{ds_tower, ds_tower_to_index, parity_reduce, standard_tower, DSEquation, DSTower};
