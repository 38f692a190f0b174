// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

use super::point::Point;
use super::polygon::{ConvexPolygon, HalfPlane};
use crate::error::Error;

/// Intersection of two convex polygons; `None` when it has no interior.
pub fn clip(subject: &ConvexPolygon, window: &ConvexPolygon) -> Option<ConvexPolygon> {
    clip_to_half_planes(subject.vertices(), &window.half_planes())
}

/// Clips a convex vertex loop against half-planes and re-validates it.
pub fn clip_to_half_planes(points: &[Point], planes: &[HalfPlane]) -> Option<ConvexPolygon> {
    let raw = clip_loop(points, planes);
    if raw.len() < 3 {
        return None;
    }
    match ConvexPolygon::new(raw.clone()) {
        Ok(p) => Some(p),
        Err(Error::NotConvex(_)) => ConvexPolygon::from_points(&raw).ok(),
        Err(_) => None,
    }
}

/// Sutherland–Hodgman on a raw loop, without validation.
pub fn clip_loop(points: &[Point], planes: &[HalfPlane]) -> Vec<Point> {
    let mut current: Vec<Point> = points.to_vec();
    let mut next: Vec<Point> = Vec::with_capacity(points.len() + 4);
    for h in planes {
        if current.is_empty() {
            break;
        }
        if current.iter().all(|&p| h.value(p) <= 0.0) {
            continue;
        }
        next.clear();
        let n = current.len();
        for i in 0..n {
            let a = current[i];
            let b = current[(i + 1) % n];
            let va = h.value(a);
            let vb = h.value(b);
            if va <= 0.0 {
                next.push(a);
            }
            if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
                let t = va / (va - vb);
                next.push(a.lerp(b, t));
            }
        }
        std::mem::swap(&mut current, &mut next);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(lo: f64, hi: f64) -> ConvexPolygon {
        ConvexPolygon::rectangle(Point::new(lo, lo), Point::new(hi, hi)).unwrap()
    }

    #[test]
    fn overlapping_squares() {
        let c = clip(&sq(0.0, 2.0), &sq(1.0, 3.0)).unwrap();
        assert!((c.area() - 1.0).abs() < 1e-14);
        let (lo, hi) = c.bounding_box();
        assert_eq!(lo, Point::new(1.0, 1.0));
        assert_eq!(hi, Point::new(2.0, 2.0));
    }

    #[test]
    fn self_clip_is_identity() {
        let p = ConvexPolygon::regular(9, Point::new(0.2, 0.1), 1.3).unwrap();
        let c = clip(&p, &p).unwrap();
        assert_eq!(c.len(), p.len());
        assert!((c.area() - p.area()).abs() < 1e-13);
    }

    #[test]
    fn contained_subject_unchanged() {
        let inner = sq(0.25, 0.75);
        let c = clip(&inner, &sq(0.0, 1.0)).unwrap();
        assert_eq!(c, inner);
    }

    #[test]
    fn disjoint_triangles_give_empty() {
        let a = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let b = a.translate(Point::new(5.0, 5.0));
        assert!(clip(&a, &b).is_none());
    }
}
