// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Smooth convex approximants `E_n = {j_n < 1}` with `j_n = j * rho_n`, the
//! gauge of a polygon mollified by a bump supported on the ball of radius
//! `1/n`. The level set is sampled along rays from the origin.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gauge::{Gauge, GaugeInfo};
use super::point::Point;
use super::polygon::{loop_length, shoelace, ConvexPolygon};
use crate::error::{Error, Result};
use crate::numerics::gauss_legendre;

/// Radius tolerance of the level-set bisection.
pub const BISECTION_TOL: f64 = 1e-10;
const QUAD_ORDER: usize = 16;

/// Tensor Gauss–Legendre rule for the standard bump on a disk, in polar
/// coordinates, normalized to unit mass by the same rule.
#[derive(Clone, Debug)]
pub struct Mollifier {
    radius: f64,
    offsets: Vec<Point>,
    weights: Vec<f64>,
}

impl Mollifier {
    pub fn new(radius: f64) -> Self {
        let (x, w) = gauss_legendre(QUAD_ORDER);
        let mut offsets = Vec::with_capacity(QUAD_ORDER * QUAD_ORDER);
        let mut weights = Vec::with_capacity(QUAD_ORDER * QUAD_ORDER);
        for (xr, wr) in x.iter().zip(&w) {
            let s = 0.5 * (1.0 + xr);
            let rho = radius * s;
            let radial = 0.5 * radius * wr * rho * bump(s);
            for (xa, wa) in x.iter().zip(&w) {
                let phi = PI * (1.0 + xa);
                offsets.push(Point::polar(phi) * rho);
                weights.push(radial * PI * wa);
            }
        }
        let mass: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|v| *v /= mass);
        Mollifier { radius, offsets, weights }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `(f * rho)(x) = sum_k w_k f(x - y_k)`.
    pub fn convolve<F: Fn(Point) -> f64>(&self, f: F, x: Point) -> f64 {
        self.offsets.iter().zip(&self.weights).map(|(&y, &w)| w * f(x - y)).sum()
    }
}

fn bump(s: f64) -> f64 {
    if s >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

/// Radially sampled boundary of `E_n` together with that of `E`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmoothedBody {
    pub n: u32,
    pub gauge: GaugeInfo,
    pub angles: Vec<f64>,
    /// Radial function of `E_n` along each angle.
    pub radii: Vec<f64>,
    /// Radial function of `E` along each angle.
    pub base_radii: Vec<f64>,
}

impl SmoothedBody {
    /// `C_E / n`.
    pub fn sandwich_factor(&self) -> f64 {
        self.gauge.lipschitz / self.n as f64
    }

    pub fn boundary(&self) -> Vec<Point> {
        self.angles.iter().zip(&self.radii).map(|(&t, &r)| Point::polar(t) * r).collect()
    }

    /// Length of the sampled boundary polyline.
    pub fn perimeter(&self) -> f64 {
        loop_length(&self.boundary())
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.boundary())
    }

    /// Number of sampled directions violating
    /// `(1 - C_E/n) r_E <= r_{E_n} <= (1 + C_E/n) r_E` by more than `tol`.
    pub fn sandwich_violations(&self, tol: f64) -> usize {
        let f = self.sandwich_factor();
        self.radii
            .iter()
            .zip(&self.base_radii)
            .filter(|(&r, &r0)| r < (1.0 - f) * r0 - tol || r > (1.0 + f) * r0 + tol)
            .count()
    }
}

/// Smooth approximant `E_n` of a polygon containing the origin, sampled at
/// `angular_resolution` equally spaced directions.
pub fn smooth(polygon: &ConvexPolygon, n: u32, angular_resolution: usize) -> Result<SmoothedBody> {
    if angular_resolution < 3 {
        return Err(Error::Precondition("need at least 3 sample directions".into()));
    }
    let gauge = Gauge::new(polygon)?;
    let info = gauge.info();
    if n == 0 || info.lipschitz / n as f64 >= 1.0 {
        let min_n = info.lipschitz.floor() as u32;
        return Err(Error::RefineN { n, ratio: info.lipschitz / n.max(1) as f64, min_n });
    }
    let mollifier = Mollifier::new(1.0 / n as f64);
    let factor = info.lipschitz / n as f64;
    let jn = |x: Point| mollifier.convolve(|y| gauge.eval(y), x);

    let mut angles = Vec::with_capacity(angular_resolution);
    let mut radii = Vec::with_capacity(angular_resolution);
    let mut base_radii = Vec::with_capacity(angular_resolution);
    for k in 0..angular_resolution {
        let theta = 2.0 * PI * k as f64 / angular_resolution as f64;
        let dir = Point::polar(theta);
        let base = polygon.radial_distance(Point::ORIGIN, dir);
        let mut lo = 0.0;
        let mut hi = (1.0 + factor) * base * (1.0 + 1e-9);
        while jn(dir * hi) < 1.0 {
            hi *= 1.5;
        }
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if jn(dir * mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        angles.push(theta);
        radii.push(0.5 * (lo + hi));
        base_radii.push(base);
    }
    Ok(SmoothedBody { n, gauge: info, angles, radii, base_radii })
}
