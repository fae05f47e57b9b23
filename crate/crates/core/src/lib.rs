//! Vertices of closed curves on space forms and surfaces of revolution.
//!
//! Curves carry truncated Taylor jets, so geodesic curvature and its
//! arclength derivatives are exact up to rounding. Vertex and inflection
//! counts come from sign changes on a uniform grid refined by bisection.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod curves;
pub mod error;
pub mod geom;
pub mod jet;
pub mod maps;
pub mod verify;

pub use error::{GeomError, Result};

/// Chart coordinates `(x, y)`, or `(t, θ)` on a surface of revolution.
pub type Point = [f64; 2];
