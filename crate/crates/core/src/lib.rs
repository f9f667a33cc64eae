//! Exact verification of codimension-one holomorphic foliations on projective 3-space.

pub mod catalog;
pub mod cli;
pub mod exactalg;
pub mod forms;
pub mod ideals;
pub mod integrals;
pub mod properties;
pub mod textio;
pub mod torus;
