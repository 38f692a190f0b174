// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Generalized Cheeger constants
//! `h_q(Omega) = inf { P(E) / |E|^(1/q) : E inside Omega }` of planar sets.
//!
//! * [`geometry`]: convex polygon primitives, inradius and ridge, gauge
//!   smoothing.
//! * [`closed_forms`]: ball values, exponent validity, one-variable
//!   minimization, disjoint-union combinations, two-ball configuration.
//! * [`constants`]: explicit comparison constants and Moser-type factors.
//! * [`solver`]: shape optimization over convex polygons, existence
//!   reports and degeneration demonstrators.
//! * [`verify`]: the inequality suite with JSON, Markdown and SVG output.


pub mod cli;
pub mod closed_forms;
pub mod constants;
mod error;
pub mod geometry;
pub mod numerics;
pub mod optimize;
pub mod solver;
pub mod verify;



pub use closed_forms::Exponent;
pub use error::{Error, Result};
pub use geometry::{ConvexPolygon, Point};
