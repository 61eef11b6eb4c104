//! Twisted tensor products of finite-dimensional algebras, with exhaustive
//! verification of every structural identity over exact or floating scalars.

pub mod algebra;
pub mod catalog;
pub mod deform;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod iterate;
pub mod lift;
pub mod linear;
pub mod report;
pub mod serial;
pub mod scalar;
pub mod space;
pub mod suite;
pub mod twist;
pub mod workbench;

pub use error::{Error, Result};
pub use expr::{Expr, Wiring};
pub use linear::LinearMap;
pub use report::Report;
pub use scalar::{Backend, Scalar, Q};
pub use space::{Signature, Space};
