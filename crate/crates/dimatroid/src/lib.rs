//! Matroids, two-matroid intersections ("dimatroids"), exact density and
//! cover invariants, exchange walks, and almost-fair representation of
//! 2-partitions, plus a small lab for checking covering conjectures on
//! desk-scale instances.
//!
//! All arithmetic is exact: ground sets are `u64` bitsets and every
//! fractional quantity is a [`Rational`]. The exhaustive routines are
//! exponential in the ground-set size and enforce hard caps — this library
//! is built for instances with a couple dozen elements, not for scale.
//!
//! Start with the runnable examples (`cargo run --example matroid_basics`)
//! or with [`matroid::Matroid`] and [`intersect::Dimatroid`].

pub mod covers;
pub mod fair;
pub mod intersect;
pub mod lab;
pub mod lp;
pub mod matroid;
pub mod rat;
pub mod set;

mod error;

pub use error::{Error, Result};
pub use intersect::{Dimatroid, ExchangeWalk};
pub use matroid::{Matroid, MatroidSpec};
pub use rat::Rational;
pub use set::ElementSet;
