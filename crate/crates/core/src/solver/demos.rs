// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Degeneration demonstrators: minimizing sequences escaping along an
//! epigraph, elongated families whose ratio decays or grows like
//! `L^(1 - 1/q)`, and stadium witnesses for `h_q = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ShapeSpec;
use crate::closed_forms::{hq_ball, Exponent};
use crate::error::{Error, Result};
use crate::numerics::{ellipse_perimeter, golden_section, loglog_slope};

/// One disk of a minimizing sequence in an epigraph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoStep {
    pub step: usize,
    /// Abscissa of the disk center on the symmetry axis.
    pub center_x: f64,
    pub radius: f64,
    /// Displacement of the center from the previous step.
    pub shift: f64,
    /// Radius ratio to the previous step.
    pub scale: f64,
    pub ratio: f64,
}

const ANGLE_SAMPLES: usize = 2048;
const VERIFY_SAMPLES: usize = 20_000;

fn epigraph_params(shape: &ShapeSpec) -> Result<(f64, super::Profile)> {
    match shape {
        ShapeSpec::Epigraph { halfwidth, profile } => Ok((*halfwidth, *profile)),
        other => Err(Error::Precondition(format!("expected an epigraph, got {}", other.kind()))),
    }
}

/// Smallest center abscissa `c` with the disk `B_rho((c, 0))` inside the
/// epigraph: `c = max_theta f(rho sin theta) - rho cos theta`, plus a margin.
fn min_center(r: f64, profile: super::Profile, rho: f64) -> f64 {
    let g = |th: f64| profile.eval(r, rho * th.sin()) - rho * th.cos();
    let h = PI / ANGLE_SAMPLES as f64;
    let mut best = (0.0, g(0.0));
    for k in 1..=ANGLE_SAMPLES {
        let th = h * k as f64;
        let v = g(th);
        if v > best.1 {
            best = (th, v);
        }
    }
    let (lo, hi) = ((best.0 - h).max(0.0), (best.0 + h).min(PI));
    let (_, neg) = golden_section(|th| -g(th), lo, hi, 1e-14);
    best.1.max(-neg) + 1e-9 * r
}

fn verify_inside(r: f64, profile: super::Profile, c: f64, rho: f64) -> Result<()> {
    for k in 0..VERIFY_SAMPLES {
        let th = 2.0 * PI * k as f64 / VERIFY_SAMPLES as f64;
        let (x1, x2) = (c + rho * th.cos(), rho * th.sin());
        if !(x1 > profile.eval(r, x2)) {
            return Err(Error::Containment(format!(
                "disk of radius {rho} at ({c}, 0) leaves the epigraph near angle {th}"
            )));
        }
    }
    Ok(())
}

fn check_demo_exponent(e: Exponent) -> Result<()> {
    super::planar(e)?;
    if !(e.q() > 1.0) {
        return Err(Error::Precondition(format!("the demo needs 1 < q < 2, got q = {}", e.q())));
    }
    Ok(())
}

/// Disks of radii `r - delta_k` with `delta_k = r / 2^(k+1)`, each placed as
/// far left as the profile allows. Each step shifts the disk right and scales
/// it by `t_k > 1`.
pub fn nonexistence_demo(shape: &ShapeSpec, e: Exponent, steps: usize) -> Result<Vec<DemoStep>> {
    let (r, _) = epigraph_params(shape)?;
    if steps < 2 {
        return Err(Error::Precondition("need at least 2 steps".into()));
    }
    let rho0 = 0.5 * r;
    let scales: Vec<f64> = (1..steps)
        .map(|k| {
            let prev = r - r / 2f64.powi(k as i32);
            let next = r - r / 2f64.powi(k as i32 + 1);
            next / prev
        })
        .collect();
    nonexistence_schedule(shape, e, rho0, &scales)
}

/// Same construction with explicit per-step scale factors `t_k >= 1`.
pub fn nonexistence_schedule(shape: &ShapeSpec, e: Exponent, rho0: f64, scales: &[f64]) -> Result<Vec<DemoStep>> {
    let (r, profile) = epigraph_params(shape)?;
    check_demo_exponent(e)?;
    if !(rho0 > 0.0 && rho0 < r) {
        return Err(Error::Precondition(format!("initial radius must lie in (0, {r}), got {rho0}")));
    }
    let mut out = Vec::with_capacity(scales.len() + 1);
    let mut rho = rho0;
    let mut c = min_center(r, profile, rho);
    verify_inside(r, profile, c, rho)?;
    out.push(DemoStep { step: 0, center_x: c, radius: rho, shift: 0.0, scale: 1.0, ratio: hq_ball(e, rho)? });
    for (k, &t) in scales.iter().enumerate() {
        if !(t >= 1.0) {
            return Err(Error::Precondition(format!("scale factors must be >= 1, got {t}")));
        }
        let next = rho * t;
        if next >= r {
            return Err(Error::Containment(format!(
                "radius {next} does not fit in an epigraph of half-width {r}"
            )));
        }
        let c_next = if t == 1.0 { c } else { min_center(r, profile, next).max(c) };
        verify_inside(r, profile, c_next, next)?;
        out.push(DemoStep {
            step: k + 1,
            center_x: c_next,
            radius: next,
            shift: c_next - c,
            scale: t,
            ratio: hq_ball(e, next)?,
        });
        rho = next;
        c = c_next;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElongationFamily {
    /// Radius 1, core length `size`.
    Stadium,
    /// Semi-axes `size` and 1.
    Ellipse,
    /// `(0, 1) x (0, size)`.
    Rectangle,
}

impl std::str::FromStr for ElongationFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stadium" => Ok(ElongationFamily::Stadium),
            "ellipse" => Ok(ElongationFamily::Ellipse),
            "rectangle" | "cylinder" => Ok(ElongationFamily::Rectangle),
            _ => Err(Error::Precondition(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub size: f64,
    pub q: f64,
    pub perimeter: f64,
    pub area: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElongationResult {
    pub family: ElongationFamily,
    pub q: f64,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln ratio` against `ln size`.
    pub slope: f64,
}

impl ElongationFamily {
    pub fn measures(&self, size: f64) -> (f64, f64) {
        match self {
            ElongationFamily::Stadium => (2.0 * PI + 2.0 * size, PI + 2.0 * size),
            ElongationFamily::Ellipse => (ellipse_perimeter(size, 1.0), PI * size),
            ElongationFamily::Rectangle => (2.0 * (1.0 + size), size),
        }
    }
}

pub fn elongation_demo(family: ElongationFamily, e: Exponent, sizes: &[f64]) -> Result<ElongationResult> {
    super::planar(e)?;
    if sizes.len() < 2 {
        return Err(Error::Precondition("need at least two sizes".into()));
    }
    if sizes.iter().any(|s| !(*s > 0.0 && s.is_finite())) || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("sizes must be positive and strictly increasing".into()));
    }
    let rows: Vec<SweepRow> = sizes
        .iter()
        .map(|&size| {
            let (perimeter, area) = family.measures(size);
            SweepRow { size, q: e.q(), perimeter, area, ratio: perimeter / area.powf(e.inv_q()) }
        })
        .collect();
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    Ok(ElongationResult { family, q: e.q(), slope: loglog_slope(sizes, &ratios), rows })
}

/// For `q < 1`: a stadium of radius `w` (inside the half-strip of half-width
/// `w`) whose ratio is below `eps`. Returns its core length and ratio.
pub fn stadium_witness(w: f64, e: Exponent, eps: f64) -> Result<(f64, f64)> {
    super::planar(e)?;
    if !(e.q() < 1.0) {
        return Err(Error::Precondition("stadium witnesses need q < 1".into()));
    }
    if !(eps > 0.0) || !(w > 0.0) {
        return Err(Error::Precondition("need positive width and tolerance".into()));
    }
    let f = |d: f64| (2.0 * PI * w + 2.0 * d) / (PI * w * w + 2.0 * w * d).powf(e.inv_q());
    let mut d = w;
    while f(d) >= eps {
        d *= 2.0;
        if !d.is_finite() || d > 1e300 {
            return Err(Error::Precondition(format!("no representable stadium reaches ratio {eps}")));
        }
    }
    Ok((d, f(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::Profile;

    fn epi() -> ShapeSpec {
        ShapeSpec::Epigraph { halfwidth: 1.0, profile: Profile::Log }
    }

    #[test]
    fn demo_is_strictly_decreasing() {
        let e = Exponent::planar(1.5).unwrap();
        let steps = nonexistence_demo(&epi(), e, 10).unwrap();
        assert_eq!(steps.len(), 10);
        assert!(steps.windows(2).all(|w| w[1].ratio < w[0].ratio));
        assert!(steps.iter().skip(1).all(|s| s.scale > 1.0 && s.shift > 0.0));
    }

    #[test]
    fn unit_scales_give_constant_sequence() {
        let e = Exponent::planar(1.5).unwrap();
        let steps = nonexistence_schedule(&epi(), e, 0.5, &[1.0; 5]).unwrap();
        assert!(steps.windows(2).all(|w| w[1].ratio == w[0].ratio && w[1].shift == 0.0));
    }

    #[test]
    fn oversized_disks_rejected() {
        let e = Exponent::planar(1.5).unwrap();
        assert!(matches!(
            nonexistence_schedule(&epi(), e, 0.9, &[1.2]),
            Err(Error::Containment(_))
        ));
        assert!(nonexistence_demo(&epi(), Exponent::planar(0.5).unwrap(), 5).is_err());
    }

    #[test]
    fn stadium_value_and_slope() {
        let e = Exponent::planar(0.5).unwrap();
        let r = elongation_demo(ElongationFamily::Stadium, e, &[10.0, 20.0]).unwrap();
        assert!((r.rows[0].ratio - (2.0 * PI + 20.0) / (PI + 20.0).powi(2)).abs() < 1e-15);
        assert!((r.rows[0].ratio - 0.049077).abs() < 2e-6);
        let r = elongation_demo(ElongationFamily::Stadium, e, &[1e2, 1e3, 1e4]).unwrap();
        assert!((r.slope + 1.0).abs() < 0.05, "{}", r.slope);
    }

    #[test]
    fn growth_for_q_above_one() {
        let e = Exponent::planar(1.5).unwrap();
        for fam in [ElongationFamily::Stadium, ElongationFamily::Ellipse, ElongationFamily::Rectangle] {
            let r = elongation_demo(fam, e, &[10.0, 100.0, 1000.0]).unwrap();
            assert!(r.rows.windows(2).all(|w| w[1].ratio > w[0].ratio));
        }
    }

    #[test]
    fn bad_sizes_rejected() {
        let e = Exponent::planar(0.5).unwrap();
        assert!(elongation_demo(ElongationFamily::Ellipse, e, &[10.0]).is_err());
        assert!(elongation_demo(ElongationFamily::Ellipse, e, &[10.0, 5.0]).is_err());
        assert!("blob".parse::<ElongationFamily>().is_err());
    }

    #[test]
    fn witness_goes_below_eps() {
        let e = Exponent::planar(0.5).unwrap();
        let (d, v) = stadium_witness(1.0, e, 1e-6).unwrap();
        assert!(v < 1e-6 && d > 0.0);
        assert!(stadium_witness(1.0, Exponent::planar(1.5).unwrap(), 1e-6).is_err());
    }
}
