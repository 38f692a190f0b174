// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Attainment of `h_q` on convex domains, and the truncation solver for
//! half-strips.
//!
//! For planar convex `Omega` and `1 < q < 2` the infimum is attained exactly
//! when some disk of radius `r_Omega` fits inside. Bounded sets and
//! half-strips have such disks; an epigraph whose profile blows up at an end
//! of its base interval has none. For `q < 1` every unbounded convex set
//! contains arbitrarily long stadiums and `h_q = 0`.

use serde::{Deserialize, Serialize};

use super::demos::stadium_witness;
use super::{solve_bounded, CheegerEstimate, Method, ShapeSpec, SolverOptions};
use crate::closed_forms::Exponent;
use crate::error::{Error, Result};
use crate::geometry::{Point, Ridge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainment {
    Attained,
    NotAttained,
    /// `q = 1` on an unbounded set: positive but possibly not attained.
    Borderline,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RidgeDescription {
    Point { at: Point },
    Segment { from: Point, to: Point },
    HalfLine { origin: Point, direction: Point },
    Empty,
}

impl From<Ridge> for RidgeDescription {
    fn from(r: Ridge) -> Self {
        match r {
            Ridge::Point { at } => RidgeDescription::Point { at },
            Ridge::Segment { from, to } => RidgeDescription::Segment { from, to },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceReport {
    pub shape: String,
    pub q: f64,
    /// Attainment is certified.
    pub exists: bool,
    pub attainment: Attainment,
    pub hq_is_zero: bool,
    pub inradius: f64,
    pub ridge: RidgeDescription,
    pub reason: String,
}

pub fn existence_report(shape: &ShapeSpec, e: Exponent) -> Result<ExistenceReport> {
    super::planar(e)?;
    shape.validate()?;
    let q = e.q();
    let base = |exists, attainment, hq_is_zero, inradius, ridge, reason: &str| ExistenceReport {
        shape: shape.summary(),
        q,
        exists,
        attainment,
        hq_is_zero,
        inradius,
        ridge,
        reason: reason.to_string(),
    };
    match shape {
        ShapeSpec::Union { .. } => Err(Error::Precondition(
            "the existence criterion applies to convex domains, not unions".into(),
        )),
        ShapeSpec::Halfstrip { halfwidth, length: None } => {
            let ridge = RidgeDescription::HalfLine {
                origin: Point::new(*halfwidth, 0.0),
                direction: Point::new(1.0, 0.0),
            };
            Ok(if q < 1.0 {
                base(false, Attainment::NotAttained, true, *halfwidth, ridge,
                    "q < 1 on an unbounded convex set: stadiums of growing length have ratios tending to 0")
            } else if q == 1.0 {
                base(false, Attainment::Borderline, false, *halfwidth, ridge,
                    "q = 1 on a half-strip is the borderline case: the constant is positive but attainment is not certified")
            } else {
                base(true, Attainment::Attained, false, *halfwidth, ridge,
                    "the high ridge is a half-line, so disks of radius r_Omega fit and the infimum is attained")
            })
        }
        ShapeSpec::Epigraph { halfwidth, .. } => Ok(if q < 1.0 {
            base(false, Attainment::NotAttained, true, *halfwidth, RidgeDescription::Empty,
                "q < 1 on an unbounded convex set: stadiums of growing length have ratios tending to 0")
        } else if q == 1.0 {
            base(false, Attainment::Borderline, false, *halfwidth, RidgeDescription::Empty,
                "q = 1 on an unbounded set is the borderline case: attainment is not certified")
        } else {
            base(false, Attainment::NotAttained, false, *halfwidth, RidgeDescription::Empty,
                "the profile blows up at the ends of the base interval, so no disk of radius r_Omega fits: \
                 the high ridge is empty and minimizing sequences escape to infinity")
        }),
        _ => {
            let (r, ridge) = shape.ridge()?;
            Ok(base(true, Attainment::Attained, false, r, ridge.into(),
                "bounded convex set: compactness gives a minimizer"))
        }
    }
}

/// Half-strip estimate through truncations `[0, L] x [-w, w]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfstripEstimate {
    pub estimate: CheegerEstimate,
    pub lengths: Vec<f64>,
    pub values: Vec<f64>,
    pub stabilized: bool,
}

const STABLE_REL: f64 = 1e-3;
const MAX_DOUBLINGS: usize = 10;

/// Estimate on the truncated half-strip of half-width `w` and length `l`.
pub fn solve_truncated_halfstrip(w: f64, l: f64, e: Exponent, opts: &SolverOptions) -> Result<CheegerEstimate> {
    solve_bounded(&ShapeSpec::Halfstrip { halfwidth: w, length: Some(l) }, e, opts)
}

/// `q > 1`: doubles the truncation length until the estimate moves by less
/// than `1e-3` relative. `q < 1`: the value is 0, with a stadium witness.
/// `q = 1` is reported, not solved.
pub fn solve_halfstrip(w: f64, e: Exponent, opts: &SolverOptions) -> Result<HalfstripEstimate> {
    super::planar(e)?;
    let q = e.q();
    if q == 1.0 {
        return Err(Error::Precondition(
            "q = 1 on a half-strip is the borderline case; it is reported, not solved".into(),
        ));
    }
    if q < 1.0 {
        let witness = stadium_witness(w, e, 1e-6)?;
        return Ok(HalfstripEstimate {
            estimate: CheegerEstimate {
                value: 0.0,
                minimizer: None,
                perimeter: f64::NAN,
                area: f64::INFINITY,
                lower_bound: 0.0,
                method: Method::Analytic,
                iterations: 0,
                converged: true,
                detail: format!(
                    "h_q = 0; a stadium of radius {w} and core length {:.3e} already has ratio {:.3e}",
                    witness.0, witness.1
                ),
            },
            lengths: vec![],
            values: vec![],
            stabilized: true,
        });
    }
    let mut l = 5.0 * w;
    let mut lengths = vec![];
    let mut values = vec![];
    let mut last: Option<CheegerEstimate> = None;
    for _ in 0..=MAX_DOUBLINGS {
        let est = solve_truncated_halfstrip(w, l, e, opts)?;
        lengths.push(l);
        values.push(est.value);
        if let Some(prev) = &last {
            if (prev.value - est.value).abs() <= STABLE_REL * est.value {
                let mut est = est;
                est.lower_bound = 0.0;
                return Ok(HalfstripEstimate { estimate: est, lengths, values, stabilized: true });
            }
        }
        last = Some(est);
        l *= 2.0;
    }
    let mut est = last.expect("at least one truncation");
    est.lower_bound = 0.0;
    est.converged = false;
    Ok(HalfstripEstimate { estimate: est, lengths, values, stabilized: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::Profile;

    #[test]
    fn bounded_square() {
        let s = ShapeSpec::Rectangle { width: 1.0, height: 1.0, origin: Point::ORIGIN };
        let rep = existence_report(&s, Exponent::planar(1.5).unwrap()).unwrap();
        assert!(rep.exists);
        let RidgeDescription::Point { at } = rep.ridge else { panic!("{:?}", rep.ridge) };
        assert!(at.distance(Point::new(0.5, 0.5)) < 1e-9);
        assert!((rep.inradius - 0.5).abs() < 1e-12);
    }

    #[test]
    fn epigraph_not_attained() {
        let s = ShapeSpec::Epigraph { halfwidth: 1.0, profile: Profile::Log };
        let rep = existence_report(&s, Exponent::planar(1.5).unwrap()).unwrap();
        assert!(!rep.exists);
        assert_eq!(rep.attainment, Attainment::NotAttained);
        assert_eq!(rep.ridge, RidgeDescription::Empty);
    }

    #[test]
    fn halfstrip_regimes() {
        let s = ShapeSpec::Halfstrip { halfwidth: 1.0, length: None };
        let zero = existence_report(&s, Exponent::planar(0.5).unwrap()).unwrap();
        assert!(zero.hq_is_zero && !zero.exists);
        let border = existence_report(&s, Exponent::planar(1.0).unwrap()).unwrap();
        assert_eq!(border.attainment, Attainment::Borderline);
        let ok = existence_report(&s, Exponent::planar(1.5).unwrap()).unwrap();
        assert!(ok.exists);
        assert!(matches!(ok.ridge, RidgeDescription::HalfLine { .. }));
        let opts = SolverOptions::default();
        assert!(solve_halfstrip(1.0, Exponent::planar(1.0).unwrap(), &opts).is_err());
        assert_eq!(solve_halfstrip(1.0, Exponent::planar(0.5).unwrap(), &opts).unwrap().estimate.value, 0.0);
    }

    #[test]
    fn unions_rejected() {
        let s = ShapeSpec::Union {
            members: vec![ShapeSpec::Disk { center: Point::ORIGIN, radius: 1.0 }],
        };
        assert!(existence_report(&s, Exponent::planar(1.5).unwrap()).is_err());
    }
}
