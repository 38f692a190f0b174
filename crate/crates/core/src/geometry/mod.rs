// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Planar convex geometry: measures, hull, clipping, inradius and ridge,
//! gauge functions and mollified smoothing.

mod clip;
mod gauge;
mod hull;
mod inradius;
mod lp;
mod point;
mod polygon;
mod smooth;

pub use clip::{clip, clip_loop, clip_to_half_planes};
pub use gauge::{gauge, gauge_lipschitz, Gauge, GaugeInfo};
pub use hull::convex_hull;
pub(crate) use hull::hull_loop;
pub use inradius::{inradius, InradiusResult, Ridge, EPS_LP};
pub use point::{orient, Point};
pub use polygon::{loop_length, shoelace, ConvexPolygon, HalfPlane, EPS_CONVEX};
pub use smooth::{smooth, Mollifier, SmoothedBody, BISECTION_TOL};

use crate::error::Result;

/// Shoelace area of a convex polygon.
pub fn area(p: &ConvexPolygon) -> f64 {
    p.area()
}

pub fn perimeter(p: &ConvexPolygon) -> f64 {
    p.perimeter()
}

pub fn diameter(p: &ConvexPolygon) -> f64 {
    p.diameter()
}

pub fn scale_about(p: &ConvexPolygon, center: Point, t: f64) -> Result<ConvexPolygon> {
    p.scale_about(center, t)
}
