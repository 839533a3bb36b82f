//! Exact computational toolkit for quantum Weyl group operators, crystals and
//! cactus actions, Kazhdan-Lusztig cells, and zigzag Rickard complexes.

pub mod cartan;
pub mod crystal;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod markedword;
pub mod matrix;
pub mod qrep;
pub mod ratfunc;
pub mod report;
pub mod tableaux;
pub mod zigzag;
pub mod ring;

pub use cartan::{build_cartan, CartanDatum, CartanType, Weight, WeylWord};
pub use error::{Error, Result};
pub use laurent::LaurentInt;
pub use matrix::Matrix;
pub use ratfunc::RatFunc;
pub use report::CheckReport;
