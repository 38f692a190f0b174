// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Minkowski functional `j(x) = inf{l > 0 : x in l E}` of a convex polygon
//! containing the origin. With edge half-planes written as `<a_i, y> <= b_i`,
//! `b_i > 0`, the gauge is the max-of-affine function `max_i <a_i, x> / b_i`.

use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polygon::ConvexPolygon;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeInfo {
    /// Lipschitz constant `C_E` of the gauge.
    pub lipschitz: f64,
    /// Distance from the origin to the boundary.
    pub origin_interior_margin: f64,
}

/// Gauge coefficients `a_i / b_i`, one per edge.
#[derive(Clone, Debug)]
pub struct Gauge {
    rows: Vec<Point>,
}

impl Gauge {
    pub fn new(polygon: &ConvexPolygon) -> Result<Self> {
        let mut rows = Vec::with_capacity(polygon.len());
        let mut margin = f64::INFINITY;
        let scale = polygon.diameter();
        for h in polygon.half_planes() {
            let dist = h.offset / h.normal.norm();
            margin = margin.min(dist);
            rows.push(h.normal * (1.0 / h.offset));
        }
        if !(margin > 1e-12 * scale) {
            return Err(Error::OriginNotInterior { margin });
        }
        Ok(Gauge { rows })
    }

    #[inline]
    pub fn eval(&self, x: Point) -> f64 {
        self.rows.iter().map(|r| r.dot(x)).fold(0.0, f64::max)
    }

    pub fn info(&self) -> GaugeInfo {
        let lipschitz = self.rows.iter().map(|r| r.norm()).fold(0.0, f64::max);
        GaugeInfo { lipschitz, origin_interior_margin: 1.0 / lipschitz }
    }
}

/// Gauge of `polygon` at `x`; the origin must be interior.
pub fn gauge(polygon: &ConvexPolygon, x: Point) -> Result<f64> {
    Ok(Gauge::new(polygon)?.eval(x))
}

/// `C_E = max_i |a_i| / b_i`, exact for the max-of-affine gauge.
pub fn gauge_lipschitz(polygon: &ConvexPolygon) -> Result<GaugeInfo> {
    Ok(Gauge::new(polygon)?.info())
}
