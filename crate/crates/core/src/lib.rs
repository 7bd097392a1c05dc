//! Geometry of the truncated Hausdorff moment space on [0, 1].
//!
//! The crate covers moment vectors and canonical (Skibinsky) coordinates,
//! principal and canonical representing measures, Jacobian determinants of
//! the representation maps, Selberg integrals, polynomial reproducing
//! kernels, and a Monte-Carlo brittleness experiment.
//!
//! Everything here is `no_std` with `alloc`. Parallel Monte-Carlo is driven
//! through the [`mc::Executor`] trait so callers can plug in a thread pool.

#![no_std]
// When std is anywhere in the build graph its inherent float methods shadow
// `Float`, which then looks unused.
#![allow(unused_imports)]
// Negated float comparisons reject NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod brittleness;
pub mod error;
pub mod inequalities;
pub mod jacobians;
pub mod linalg;
pub mod mc;
pub mod moments;
pub mod poly;
pub mod quadrature;
pub mod representations;
pub mod rkhs;
pub mod selberg;
pub mod special;

pub use error::{Error, Result};
pub use mc::{Executor, ExperimentReport, Sequential};
pub use moments::{
    CanonicalMoments, Classification, DiscreteMeasure, KreinIndex, MomentVector, SimplexPoint,
};
