//! Integral representations of the Klein four-group.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod f2poly;
pub mod linalg;
pub mod quiver;
pub mod reps;
pub mod verify;
