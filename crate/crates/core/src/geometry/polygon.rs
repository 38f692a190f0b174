// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};

/// Relative tolerance on consecutive edge cross products.
pub const EPS_CONVEX: f64 = 1e-12;

/// Closed half-plane `{x : <normal, x> <= offset}` with an outward normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
}

impl HalfPlane {
    /// Euclidean signed distance, positive outside.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        (self.normal.dot(p) - self.offset) / self.normal.norm()
    }

    #[inline]
    pub fn value(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// A bounded convex polygon with counterclockwise, strictly convex vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        ConvexPolygon::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

impl ConvexPolygon {
    /// Validates a vertex loop. Clockwise input is reversed; collinear and
    /// repeated vertices are dropped.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Degenerate("non-finite vertex coordinate".into()));
        }
        if vertices.len() < 3 {
            return Err(Error::Degenerate(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let signed = shoelace(&vertices);
        let scale = bbox_scale(&vertices);
        if signed.abs() <= EPS_CONVEX * scale * scale {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if signed < 0.0 {
            vertices.reverse();
        }
        let vertices = drop_collinear(vertices, scale);
        if vertices.len() < 3 {
            return Err(Error::Degenerate("all vertices are collinear".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            if e1.cross(e2) < -EPS_CONVEX * e1.norm() * e2.norm() {
                return Err(Error::NotConvex(format!("reflex turn at vertex {}", (i + 1) % n)));
            }
        }
        // A convex turn sequence can still wind more than once.
        let winding: f64 = (0..n)
            .map(|i| {
                let e1 = vertices[(i + 1) % n] - vertices[i];
                let e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
                e1.cross(e2).atan2(e1.dot(e2))
            })
            .sum();
        if (winding - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::NotConvex("vertex loop winds more than once".into()));
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Convex hull of an arbitrary point set.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        super::hull::convex_hull(points)
    }

    /// Regular `n`-gon with one vertex at angle 0.
    pub fn regular(n: usize, center: Point, circumradius: f64) -> Result<Self> {
        if n < 3 || !(circumradius > 0.0) {
            return Err(Error::Degenerate(format!(
                "regular polygon needs n >= 3 and positive radius (n = {n}, R = {circumradius})"
            )));
        }
        let vertices = (0..n)
            .map(|k| center + Point::polar(2.0 * PI * k as f64 / n as f64) * circumradius)
            .collect();
        ConvexPolygon::new(vertices)
    }

    /// Axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
    pub fn rectangle(min: Point, max: Point) -> Result<Self> {
        ConvexPolygon::new(vec![
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0_f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].distance(v[j]));
            }
        }
        best
    }

    pub fn centroid(&self) -> Point {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a2 = 0.0;
        for (p, q) in self.edges() {
            let w = p.cross(q);
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    /// One outward half-plane per edge.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        self.edges()
            .map(|(a, b)| {
                let d = b - a;
                let normal = Point::new(d.y, -d.x);
                HalfPlane { normal, offset: normal.dot(a) }
            })
            .collect()
    }

    /// `true` when `p` is within Euclidean distance `tol` of the closed polygon
    /// (measured against each edge line).
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.edges().all(|(a, b)| {
            let d = b - a;
            d.cross(p - a) >= -tol * d.norm()
        })
    }

    /// Smallest distance from `p` to the edge lines; negative outside.
    pub fn depth(&self, p: Point) -> f64 {
        self.half_planes()
            .iter()
            .map(|h| -h.signed_distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translate(&self, v: Point) -> ConvexPolygon {
        ConvexPolygon { vertices: self.vertices.iter().map(|&p| p + v).collect() }
    }

    /// Similarity image `t (P - c) + c`.
    pub fn scale_about(&self, center: Point, t: f64) -> Result<ConvexPolygon> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Precondition(format!("scale factor must be positive, got {t}")));
        }
        Ok(ConvexPolygon {
            vertices: self.vertices.iter().map(|&p| center + (p - center) * t).collect(),
        })
    }

    /// Distance from `origin` to the boundary along `direction` (a unit vector).
    /// `origin` must lie inside the polygon.
    pub fn radial_distance(&self, origin: Point, direction: Point) -> f64 {
        self.half_planes()
            .iter()
            .filter_map(|h| {
                let rate = h.normal.dot(direction);
                (rate > 0.0).then(|| (h.offset - h.normal.dot(origin)) / rate)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }
}

/// Signed shoelace area of a closed vertex loop.
pub fn shoelace(points: &[Point]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>()
}

/// Length of a closed vertex loop.
pub fn loop_length(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].distance(points[(i + 1) % n])).sum()
}

pub(crate) fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

pub(crate) fn bbox_scale(points: &[Point]) -> f64 {
    let (lo, hi) = bbox(points);
    (hi - lo).norm().max(f64::MIN_POSITIVE)
}

fn drop_collinear(vertices: Vec<Point>, scale: f64) -> Vec<Point> {
    let dup = 1e-14 * scale;
    let mut out: Vec<Point> = Vec::with_capacity(vertices.len());
    for p in vertices {
        if out.last().map_or(true, |q: &Point| q.distance(p) > dup) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].distance(out[out.len() - 1]) <= dup {
        out.pop();
    }
    loop {
        let n = out.len();
        if n < 3 {
            return out;
        }
        let idx = (0..n).find(|&i| {
            let a = out[(i + n - 1) % n];
            let b = out[i];
            let c = out[(i + 1) % n];
            let e1 = b - a;
            let e2 = c - b;
            e1.cross(e2).abs() <= EPS_CONVEX * e1.norm() * e2.norm() && e1.dot(e2) > 0.0
        });
        match idx {
            Some(i) => {
                out.remove(i);
            }
            None => return out,
        }
    }
}
