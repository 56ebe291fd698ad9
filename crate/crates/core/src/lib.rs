//! Closed oriented tessellated surfaces built canonically from finite
//! nonabelian groups.
//!
//! Every ordered noncommuting pair `(x, y)` of a group `G` is a triangle with
//! corners `(x,1)`, `(y,1)` and `(xy,2)`. Gluing triangles along shared edges
//! and resolving pinched vertices yields a disjoint union of closed surfaces.
//! This crate enumerates those surfaces, computes their genus and cell
//! structure, and checks the branched-covering and symmetry properties that
//! relate them.

pub mod cover;
pub mod error;
pub mod action;
pub mod complex;
pub mod golden;
pub mod group;

pub use error::{AtlasError, Result};
