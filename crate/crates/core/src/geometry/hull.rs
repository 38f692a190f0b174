// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

use super::point::{orient, Point};
use super::polygon::{bbox_scale, ConvexPolygon, EPS_CONVEX};
use crate::error::{Error, Result};

/// Counterclockwise convex hull (Andrew's monotone chain) with collinear
/// points removed.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    ConvexPolygon::new(hull_loop(points)?)
}

/// Hull vertex loop without the final validation pass.
pub(crate) fn hull_loop(points: &[Point]) -> Result<Vec<Point>> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Degenerate("non-finite point in hull input".into()));
    }
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("hull needs 3 points, got {}", points.len())));
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    let scale = bbox_scale(&pts);
    let tol = EPS_CONVEX * scale * scale;

    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn interior_point_dropped() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.5),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.area(), 1.0);
    }

    #[test]
    fn hull_is_idempotent_up_to_rotation() {
        let p = ConvexPolygon::regular(7, Point::new(1.0, 2.0), 3.0).unwrap();
        let h = convex_hull(p.vertices()).unwrap();
        assert_eq!(h.len(), p.len());
        let start = p.vertices().iter().position(|&v| v == h.vertices()[0]).unwrap();
        for k in 0..p.len() {
            assert_eq!(h.vertices()[k], p.vertices()[(start + k) % p.len()]);
        }
    }

    #[test]
    fn collinear_points_rejected() {
        let pts: Vec<Point> = (0..5).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        assert!(matches!(convex_hull(&pts), Err(Error::Degenerate(_))));
    }

    #[test]
    fn random_disk_points_stay_within_disk_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point> = (0..100)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                Point::polar(rng.gen::<f64>() * 2.0 * PI) * r
            })
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert!(h.perimeter() <= 2.0 * PI);
        assert!(h.area() <= PI);
        for p in &pts {
            assert!(h.contains(*p, 1e-12));
        }
    }
}
