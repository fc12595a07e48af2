//! Quiver Grassmannians of string and tree representations: fixed points,
//! cells, moment graphs and equivariant cohomology classes.

pub mod cli;
pub mod cohomology;
pub mod fixed;
pub mod fixtures;
pub mod forest;
pub mod grading;
pub mod instance;
pub mod moment;
pub mod oracles;
pub mod poly;
pub mod quiver;
pub mod reduction;
pub mod shape;
