//! Exact computations on affine Kac-Moody root systems, their Weyl groups and
//! Steinberg commutator relations, together with the rank-raising tower maps
//! between the seven infinite affine families.

pub mod cartan;
pub mod cli;
pub mod config;
pub mod liealg;
pub mod report;
pub mod rootsys;
pub mod scalars;
pub mod steinberg;
pub mod suite;
pub mod tower;
pub mod weyl;
