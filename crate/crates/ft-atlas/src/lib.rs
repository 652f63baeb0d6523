//! Structural classification of real Lie algebras for the frames-of-translates
//! property, finite-group frame numerics, and quasi-metric separated-set
//! geometry on the Heisenberg group.

pub mod linalg;
pub mod lie;
pub mod amalgam;
pub mod classifier;
pub mod frames;
pub mod groups;
pub mod io;
pub mod matrix_groups;
pub mod pointset;
pub mod subalgebra;
