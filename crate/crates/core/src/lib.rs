//! Parking functions `PF(m, n)` and `PF(a, b, m)`, rooted forests and
//! colored trees, the breadth-first bijections between them, involutions
//! exchanging the leading-element and ones statistics, an exact uniform
//! sampler, exact generating-function checks and distribution tables.

pub mod colored;
pub mod dist;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod gf;
pub mod involutions;
pub mod json;
pub mod pf;
pub mod poly;
pub mod sampler;
pub mod statistic;

pub use colored::ColoredTree;
pub use dist::{DistTable, Reference};
pub use enumerate::SizeCap;
pub use error::{Error, Result};
pub use forest::{RootedForest, RootedTree, Vertex};
pub use gf::{Family, Identity, IdentityReport};
pub use involutions::SetPartition;
pub use pf::{AbParams, OrderPermutation, ParkingFunction, Params, PfParams, Specification};
pub use poly::MultiPoly;
pub use sampler::{Sampler, SeededRng};
pub use statistic::Statistic;
