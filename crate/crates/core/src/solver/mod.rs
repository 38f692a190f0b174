// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Estimation of `h_q` for planar domains.
//!
//! Bounded convex domains go through two restricted families (rounded inner
//! parallel sets and capsules along the high ridge) and a free polygon
//! optimizer seeded from them. Every number returned is the ratio of an
//! explicit admissible set, hence an upper bound; `lower_bound` is the
//! isoperimetric floor `2 sqrt(pi) |Omega|^(1/2 - 1/q)`.

mod convex;
mod demos;
mod existence;
mod rounded;
mod shape;
mod union;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use convex::{solve_convex, solve_convex_polygon};
pub use demos::{
    elongation_demo, nonexistence_demo, nonexistence_schedule, stadium_witness, DemoStep,
    ElongationFamily, ElongationResult, SweepRow,
};
pub use existence::{
    existence_report, solve_halfstrip, solve_truncated_halfstrip, Attainment, ExistenceReport, HalfstripEstimate,
    RidgeDescription,
};
pub use rounded::{capsule_family, rounded_family, solve_rounded_family, FamilyOptimum};
pub use shape::{Profile, ShapeSpec, CURVED_RESOLUTION};
pub use union::{joint_subset_minimum, solve_union};

use crate::closed_forms::{hq_ball, Exponent};
use crate::error::{Error, Result};
use crate::geometry::ConvexPolygon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    PolygonOpt,
    RoundedFamily,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub vertex_count: usize,
    pub multistarts: usize,
    /// Nelder–Mead iteration cap per start.
    pub max_iters: usize,
    pub tol_rel: f64,
    pub rng_seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { vertex_count: 48, multistarts: 8, max_iters: 20_000, tol_rel: 1e-8, rng_seed: 0 }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.vertex_count < 8 {
            return Err(Error::Precondition(format!(
                "vertex_count must be at least 8, got {}",
                self.vertex_count
            )));
        }
        if self.multistarts == 0 || self.max_iters == 0 {
            return Err(Error::Precondition("multistarts and max_iters must be positive".into()));
        }
        if !(self.tol_rel > 0.0) {
            return Err(Error::Precondition("tol_rel must be positive".into()));
        }
        Ok(())
    }
}

/// An upper bound for `h_q(Omega)` realized by an explicit set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheegerEstimate {
    pub value: f64,
    /// Optimal polygon when the set is one; its ratio equals `value`.
    pub minimizer: Option<ConvexPolygon>,
    /// Perimeter and area of the set realizing `value`.
    pub perimeter: f64,
    pub area: f64,
    pub lower_bound: f64,
    pub method: Method,
    pub iterations: usize,
    pub converged: bool,
    /// What the realizing set is.
    pub detail: String,
}

/// `2 sqrt(pi) A^(1/2 - 1/q)`: every set of area at most `A` has a larger
/// ratio, by the planar isoperimetric inequality.
pub fn isoperimetric_floor(area: f64, e: Exponent) -> f64 {
    2.0 * PI.sqrt() * area.powf(0.5 - e.inv_q())
}

pub(crate) fn ratio(perimeter: f64, area: f64, e: Exponent) -> f64 {
    perimeter / area.powf(e.inv_q())
}

pub(crate) fn planar(e: Exponent) -> Result<()> {
    if e.dim() != 2 {
        return Err(Error::Precondition(format!("the solver is planar, got N = {}", e.dim())));
    }
    Ok(())
}

fn analytic_disk(radius: f64, e: Exponent) -> Result<CheegerEstimate> {
    Ok(CheegerEstimate {
        value: hq_ball(e, radius)?,
        minimizer: None,
        perimeter: 2.0 * PI * radius,
        area: PI * radius * radius,
        lower_bound: isoperimetric_floor(PI * radius * radius, e),
        method: Method::Analytic,
        iterations: 0,
        converged: true,
        detail: format!("the disk itself, radius {radius}"),
    })
}

/// Best available estimate for any supported domain.
pub fn estimate(shape: &ShapeSpec, e: Exponent, opts: &SolverOptions) -> Result<CheegerEstimate> {
    planar(e)?;
    shape.validate()?;
    opts.validate()?;
    match shape {
        ShapeSpec::Disk { radius, .. } => analytic_disk(*radius, e),
        ShapeSpec::Union { .. } => solve_union(shape, e, opts),
        ShapeSpec::Halfstrip { halfwidth, length: None } => {
            Ok(solve_halfstrip(*halfwidth, e, opts)?.estimate)
        }
        ShapeSpec::Epigraph { .. } => {
            if e.q() < 1.0 {
                Ok(CheegerEstimate {
                    value: 0.0,
                    minimizer: None,
                    perimeter: f64::NAN,
                    area: f64::INFINITY,
                    lower_bound: 0.0,
                    method: Method::Analytic,
                    iterations: 0,
                    converged: true,
                    detail: "q < 1 on an unbounded convex set: elongated stadiums drive the ratio to 0"
                        .into(),
                })
            } else {
                Err(Error::Precondition(
                    "h_q is not attained on this epigraph; see the existence report and the \
                     nonexistence demo"
                        .into(),
                ))
            }
        }
        _ => solve_bounded(shape, e, opts),
    }
}

/// Minimum of the rounded family, the capsule family and the free polygon
/// optimizer on a bounded convex domain.
pub fn solve_bounded(shape: &ShapeSpec, e: Exponent, opts: &SolverOptions) -> Result<CheegerEstimate> {
    let omega = shape.polygonize(CURVED_RESOLUTION)?;
    let area = shape.area();
    let mut best = convex::optimize(&omega, e, opts)?;
    for cand in [best.rounded.estimate.clone(), best.capsule.estimate.clone()] {
        if cand.value < best.polygon.value {
            best.polygon = cand;
        }
    }
    let mut est = best.polygon;
    est.lower_bound = isoperimetric_floor(area, e);
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn disk_is_analytic_and_tight() {
        let e = Exponent::planar(1.5).unwrap();
        let s = ShapeSpec::Disk { center: Point::new(3.0, -1.0), radius: 1.0 };
        let est = estimate(&s, e, &SolverOptions::default()).unwrap();
        assert_eq!(est.method, Method::Analytic);
        assert!((est.value - 2.0 * PI.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((est.value - est.lower_bound).abs() < 1e-12 * est.value);
    }

    #[test]
    fn options_are_checked() {
        let bad = SolverOptions { vertex_count: 4, ..Default::default() };
        assert!(bad.validate().is_err());
        let e = Exponent::planar(1.5).unwrap();
        let s = ShapeSpec::Disk { center: Point::ORIGIN, radius: 1.0 };
        assert!(estimate(&s, e, &bad).is_err());
        assert!(estimate(&s, Exponent::new(3, 1.2).unwrap(), &SolverOptions::default()).is_err());
    }

    #[test]
    fn epigraph_dispatch() {
        let s = ShapeSpec::Epigraph { halfwidth: 1.0, profile: Profile::Log };
        let opts = SolverOptions::default();
        assert_eq!(estimate(&s, Exponent::planar(0.5).unwrap(), &opts).unwrap().value, 0.0);
        assert!(estimate(&s, Exponent::planar(1.5).unwrap(), &opts).is_err());
    }
}
