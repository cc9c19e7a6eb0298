//! Exact stair-convexity geometry: stair-halfspaces and their covers,
//! the stretched grid, stair-flats, and Tukey depth for small point sets.

pub mod cells;
pub mod covering;
pub mod depth;
pub mod error;
pub mod flats;
pub mod grid;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod stair;
pub mod verify;

pub use cells::{AxisBox, CellDecomposition};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use stair::{IndexSet, Point, StairHalfspace};
