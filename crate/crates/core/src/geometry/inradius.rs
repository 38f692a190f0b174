// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Inradius and high ridge set of a convex polygon.
//!
//! The largest inscribed disk is the Chebyshev center LP
//! `max r  s.t.  <n_i, x> + r |n_i| <= b_i`. The set of all maximal centers
//! (the ridge) is a point or a segment for a polygon; it is recovered by
//! maximizing and minimizing a coordinate over the optimal face.

use serde::{Deserialize, Serialize};

use super::lp;
use super::point::Point;
use super::polygon::ConvexPolygon;
use crate::error::Result;

/// Absolute LP tolerance relative to the polygon diameter.
pub const EPS_LP: f64 = 1e-9;

/// Ridges shorter than this (relative to the diameter) are reported as points.
const POINT_RIDGE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ridge {
    Point { at: Point },
    Segment { from: Point, to: Point },
}

impl Ridge {
    pub fn midpoint(&self) -> Point {
        match *self {
            Ridge::Point { at } => at,
            Ridge::Segment { from, to } => from.lerp(to, 0.5),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Ridge::Point { .. } => 0.0,
            Ridge::Segment { from, to } => from.distance(to),
        }
    }

    /// `k + 1` evenly spaced points along the ridge.
    pub fn sample(&self, k: usize) -> Vec<Point> {
        match *self {
            Ridge::Point { at } => vec![at],
            Ridge::Segment { from, to } => {
                (0..=k).map(|i| from.lerp(to, i as f64 / k.max(1) as f64)).collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InradiusResult {
    pub radius: f64,
    pub ridge: Ridge,
    pub is_unique_point: bool,
}

impl InradiusResult {
    pub fn center(&self) -> Point {
        self.ridge.midpoint()
    }
}

pub fn inradius(polygon: &ConvexPolygon) -> Result<InradiusResult> {
    let origin = polygon.centroid();
    let scale = polygon.diameter();
    let eps = EPS_LP * scale;

    // Unit outward normals and offsets relative to the centroid.
    let rows: Vec<(Point, f64)> = polygon
        .half_planes()
        .iter()
        .map(|h| {
            let len = h.normal.norm();
            let n = h.normal * (1.0 / len);
            (n, (h.offset - h.normal.dot(origin)) / len)
        })
        .collect();

    // z = (x+, x-, y+, y-, r)
    let a: Vec<Vec<f64>> = rows.iter().map(|(n, _)| vec![n.x, -n.x, n.y, -n.y, 1.0]).collect();
    let b: Vec<f64> = rows.iter().map(|&(_, d)| d.max(0.0)).collect();
    let sol = lp::maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &a, &b)?;
    let radius = sol.objective;
    let center_rel = Point::new(sol.z[0] - sol.z[1], sol.z[2] - sol.z[3]);

    // Optimal face: <n_i, u> <= d_i - <n_i, c> - r + eps, with u = x - c.
    let face_a: Vec<Vec<f64>> = rows.iter().map(|(n, _)| vec![n.x, -n.x, n.y, -n.y]).collect();
    let face_b: Vec<f64> =
        rows.iter().map(|&(n, d)| (d - n.dot(center_rel) - radius + 0.5 * eps).max(0.0)).collect();
    let extreme = |c: [f64; 4]| -> Result<Point> {
        let s = lp::maximize(&c, &face_a, &face_b)?;
        Ok(Point::new(s.z[0] - s.z[1], s.z[2] - s.z[3]))
    };
    let x_hi = extreme([1.0, -1.0, 0.0, 0.0])?;
    let x_lo = extreme([-1.0, 1.0, 0.0, 0.0])?;
    let y_hi = extreme([0.0, 0.0, 1.0, -1.0])?;
    let y_lo = extreme([0.0, 0.0, -1.0, 1.0])?;
    let (p, q) = if x_hi.distance(x_lo) >= y_hi.distance(y_lo) {
        (x_lo, x_hi)
    } else {
        (y_lo, y_hi)
    };

    let center = origin + center_rel;
    if p.distance(q) <= POINT_RIDGE * scale {
        Ok(InradiusResult { radius, ridge: Ridge::Point { at: center }, is_unique_point: true })
    } else {
        Ok(InradiusResult {
            radius,
            ridge: Ridge::Segment { from: origin + center_rel + p, to: origin + center_rel + q },
            is_unique_point: false,
        })
    }
}
