//! The operator algebra Q(z)[d/dz] = Q(z)[theta], first-order systems and
//! the action of operators on truncated series.

pub mod field;
pub mod gs;
pub mod matrix;
pub mod ore;
pub mod series;

pub use field::DiffField;
pub use gs::{gs_sequence, GsTower};
pub use matrix::{FpMat, Mat, RatMat};
pub use ore::{Basis, DiffOp, Ore, Point};
pub use series::{apply_operator, apply_to_power, ordinary_series_basis, TruncatedSeries};
