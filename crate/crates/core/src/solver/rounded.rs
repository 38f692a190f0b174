// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Restricted one-parameter families of sets `K + B_t` (Minkowski sum of a
//! convex kernel and a disk), whose measures follow from Steiner's formula
//! `P = P(K) + 2 pi t`, `A = A(K) + P(K) t + pi t^2`.
//!
//! * Rounded family: `K_t` is the inner parallel body of `Omega` at distance
//!   `t`, so `K_t + B_t` is the union of all disks of radius `t` in `Omega`.
//! * Capsule family: `K` is a centered piece of the high ridge and `t` the
//!   inradius.

use std::f64::consts::PI;

use super::{isoperimetric_floor, planar, ratio, CheegerEstimate, Method};
use crate::closed_forms::Exponent;
use crate::error::Result;
use crate::geometry::{clip_loop, inradius, loop_length, shoelace, ConvexPolygon, HalfPlane, Point, Ridge};
use crate::numerics::golden_section;

const SCAN: usize = 64;
const GOLDEN_TOL: f64 = 1e-10;

/// Best member of a family, with the kernel and offset describing it.
#[derive(Clone, Debug)]
pub struct FamilyOptimum {
    pub estimate: CheegerEstimate,
    /// Vertices (or segment endpoints, or a single point) of `K`.
    pub kernel: Vec<Point>,
    pub offset: f64,
}

impl FamilyOptimum {
    /// `n` boundary points of `K + B_t`, one per equally spaced outward
    /// direction, each the support point in that direction.
    pub fn boundary(&self, n: usize) -> Vec<Point> {
        support_sample(&self.kernel, self.offset, n)
    }
}

pub(crate) fn support_sample(kernel: &[Point], t: f64, n: usize) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let u = Point::polar(2.0 * PI * k as f64 / n as f64);
            let v = kernel
                .iter()
                .copied()
                .max_by(|a, b| a.dot(u).total_cmp(&b.dot(u)))
                .expect("kernel is never empty");
            v + u * t
        })
        .collect()
}

/// Unit-normal half-planes of `omega`, each pushed inward by `t`.
fn shifted_planes(omega: &ConvexPolygon, t: f64) -> Vec<HalfPlane> {
    omega
        .half_planes()
        .iter()
        .map(|h| {
            let len = h.normal.norm();
            HalfPlane { normal: h.normal * (1.0 / len), offset: h.offset / len - t }
        })
        .collect()
}

/// Inner parallel body of `omega` at distance `t` as a raw vertex loop;
/// collapses to the ridge as `t` reaches the inradius.
fn inner_parallel(omega: &ConvexPolygon, t: f64, ridge: &Ridge) -> Vec<Point> {
    let kernel = clip_loop(omega.vertices(), &shifted_planes(omega, t));
    if kernel.is_empty() {
        match *ridge {
            Ridge::Point { at } => vec![at],
            Ridge::Segment { from, to } => vec![from, to],
        }
    } else {
        kernel
    }
}

/// `(P, A)` of `K + B_t` for a raw kernel loop.
fn steiner(kernel: &[Point], t: f64) -> (f64, f64) {
    let pk = if kernel.len() >= 2 { loop_length(kernel) } else { 0.0 };
    let ak = shoelace(kernel).max(0.0);
    (pk + 2.0 * PI * t, ak + pk * t + PI * t * t)
}

/// Scan on a uniform grid, then golden-section search around the best node.
fn minimize_1d<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let h = (hi - lo) / SCAN as f64;
    let mut best = (lo, f(lo));
    for k in 1..=SCAN {
        let x = lo + h * k as f64;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let a = (best.0 - h).max(lo);
    let b = (best.0 + h).min(hi);
    let g = golden_section(&mut f, a, b, GOLDEN_TOL * (hi - lo).max(1.0));
    if g.1 < best.1 {
        g
    } else {
        best
    }
}

fn family_estimate(perimeter: f64, area: f64, omega: &ConvexPolygon, e: Exponent, detail: String) -> CheegerEstimate {
    CheegerEstimate {
        value: ratio(perimeter, area, e),
        minimizer: None,
        perimeter,
        area,
        lower_bound: isoperimetric_floor(omega.area(), e),
        method: Method::RoundedFamily,
        iterations: 0,
        converged: true,
        detail,
    }
}

/// Best set `K_t + B_t` over `t in [0, r_Omega]`.
pub fn rounded_family(omega: &ConvexPolygon, e: Exponent) -> Result<FamilyOptimum> {
    planar(e)?;
    let inr = inradius(omega)?;
    let r = inr.radius;
    let objective = |t: f64| {
        let (p, a) = steiner(&inner_parallel(omega, t, &inr.ridge), t);
        ratio(p, a, e)
    };
    let (t, _) = minimize_1d(objective, 0.0, r);
    let kernel = inner_parallel(omega, t, &inr.ridge);
    let (p, a) = steiner(&kernel, t);
    let est = family_estimate(p, a, omega, e, format!("inner parallel body at offset t = {t:.10} with rounded corners"));
    Ok(FamilyOptimum { estimate: est, kernel, offset: t })
}

pub fn solve_rounded_family(omega: &ConvexPolygon, e: Exponent) -> Result<CheegerEstimate> {
    Ok(rounded_family(omega, e)?.estimate)
}

/// Best stadium of radius `r_Omega` whose core is a centered piece of the
/// high ridge.
pub fn capsule_family(omega: &ConvexPolygon, e: Exponent) -> Result<FamilyOptimum> {
    planar(e)?;
    let inr = inradius(omega)?;
    capsule_on_ridge(inr.radius, &inr.ridge, omega, e)
}

pub(crate) fn capsule_on_ridge(r: f64, ridge: &Ridge, omega: &ConvexPolygon, e: Exponent) -> Result<FamilyOptimum> {
    let (mid, dir, len) = match *ridge {
        Ridge::Point { at } => (at, Point::new(1.0, 0.0), 0.0),
        Ridge::Segment { from, to } => {
            let d = to - from;
            (from.lerp(to, 0.5), d * (1.0 / d.norm()), d.norm())
        }
    };
    let measures = |s: f64| (2.0 * PI * r + 2.0 * s, PI * r * r + 2.0 * r * s);
    let (s, _) = minimize_1d(
        |s| {
            let (p, a) = measures(s);
            ratio(p, a, e)
        },
        0.0,
        len,
    );
    let (p, a) = measures(s);
    let kernel = vec![mid - dir * (0.5 * s), mid + dir * (0.5 * s)];
    let est = family_estimate(p, a, omega, e, format!("capsule of radius {r:.10} and core length {s:.10} on the high ridge"));
    Ok(FamilyOptimum { estimate: est, kernel, offset: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::rectangle(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap()
    }

    #[test]
    fn square_at_q1_is_two_plus_sqrt_pi() {
        let f = rounded_family(&square(), Exponent::planar(1.0).unwrap()).unwrap();
        let exact = 2.0 + PI.sqrt();
        assert!((f.estimate.value - exact).abs() < 1e-10, "{}", f.estimate.value);
        // t solves (4 - pi) t^2 - 4 t + 1 = 0
        let t = (4.0 - (16.0 - 4.0 * (4.0 - PI)).sqrt()) / (2.0 * (4.0 - PI));
        assert!((f.offset - t).abs() < 1e-5);
    }

    #[test]
    fn polygonized_disk_matches_ball_value() {
        let e = Exponent::planar(1.5).unwrap();
        let disk = ConvexPolygon::regular(256, Point::ORIGIN, 1.0).unwrap();
        let v = solve_rounded_family(&disk, e).unwrap().value;
        let exact = 2.0 * PI.powf(1.0 / 3.0);
        assert!((v - exact).abs() / exact < 1e-3);
    }

    #[test]
    fn steiner_formula_on_kernel_square() {
        let k = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        let (p, a) = steiner(&k, 0.5);
        assert!((p - (4.0 + PI)).abs() < 1e-14);
        assert!((a - (1.0 + 2.0 + PI / 4.0)).abs() < 1e-14);
        let (p, a) = steiner(&[Point::new(0.0, 0.0), Point::new(2.0, 0.0)], 1.0);
        assert!((p - (4.0 + 2.0 * PI)).abs() < 1e-14);
        assert!((a - (4.0 + PI)).abs() < 1e-14);
    }

    #[test]
    fn capsule_on_long_rectangle() {
        // Stadium of radius 1 with core length s: minimizer is interior for q > 1.
        let rect = ConvexPolygon::rectangle(Point::new(0.0, -1.0), Point::new(40.0, 1.0)).unwrap();
        let e = Exponent::planar(1.5).unwrap();
        let f = capsule_family(&rect, e).unwrap();
        let s = f.estimate.perimeter / 2.0 - PI;
        assert!(s > 0.0 && s < 38.0);
        let direct = |s: f64| (2.0 * PI + 2.0 * s) / (PI + 2.0 * s).powf(1.0 / 1.5);
        for k in 0..400 {
            assert!(direct(k as f64 * 0.095) >= f.estimate.value - 1e-12);
        }
    }

    #[test]
    fn boundary_samples_lie_in_the_set() {
        let f = rounded_family(&square(), Exponent::planar(1.2).unwrap()).unwrap();
        let pts = f.boundary(48);
        for p in pts {
            assert!(square().contains(p, 1e-12));
        }
    }
}
