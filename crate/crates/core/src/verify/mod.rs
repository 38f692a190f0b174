// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! The inequality suite: runs the solver over a corpus of shapes and records
//! every comparison as a [`CheckResult`].
//!
//! A one-sided check passes when `lhs <= rhs * (1 + margin)`, an identity when
//! `|lhs - rhs| <= margin * max(|lhs|, |rhs|)`. Solver-backed inequalities use
//! [`SOLVER_MARGIN`], closed-form identities [`IDENTITY_MARGIN`].

mod render;

use std::f64::consts::PI;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    combine_disjoint, decompose_ratio, hq_ball, lambda_upper_proxy_two_balls, phi_beta_min, two_ball_h,
    Exponent, PhiAttainment, PhiParams,
};
use crate::constants::{a_const, b_const, comparison_constants};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, inradius, Point};
use crate::numerics::{ellipse_perimeter, golden_section};
use crate::solver::{elongation_demo, estimate, CheegerEstimate, ElongationFamily, ElongationResult, ShapeSpec, SolverOptions};

pub use render::{elongation_svg, sandwich_svg};

pub const SOLVER_MARGIN: f64 = 0.05;
pub const IDENTITY_MARGIN: f64 = 1e-9;

/// Check identifiers and the statement each one tests.
pub const CHECKS: &[(&str, &str)] = &[
    ("isoperimetric_floor", "planar isoperimetric inequality P >= 2 sqrt(pi) A^(1/2)"),
    ("ball_value", "ball value N omega_N^(1-1/q) R^(N-1-N/q)"),
    ("comparison_lower", "lower comparison h_q >= C_lower h_1^(N/q-N+1), equality on balls"),
    ("comparison_upper", "upper comparison h_q <= C_upper h_1^(N/q-N+1)"),
    ("small_q_upper", "one-sided comparison for q < 1: h_q <= C h_1^(N/q-N+1)"),
    ("scaling_law", "homogeneity h_q(t Omega) = t^(N-1-N/q) h_q(Omega)"),
    ("decomposition", "P/A^(1/q) = (P/A)^(N/q-N+1) (P/A^((N-1)/N))^(N-N/q)"),
    ("union_min", "disjoint union, q >= 1: the constant is the smallest component constant"),
    ("union_proxy_below", "disjoint union, q < 1: the power-mean combination stays below h_q"),
    ("two_ball_example", "disks of radii 0.1 and 1 at q = 1/2: h_q = 2/pi"),
    ("two_ball_gap", "disks of radii 0.1 and 1 at q = 1/2: power-mean combination strictly below h_q"),
    ("phi_minimum", "closed-form minimum of (a + t b)/(c + t^beta d)^(1/beta)"),
    ("moser_a", "A_{N,1,q} = 1"),
    ("moser_b_closed_form", "B_{2,1,1} series sums to 2^(N(N+1)) = 64"),
    ("elongation_monotone", "stadium ratios decrease in length for q < 1 and increase for q > 1"),
    ("elongation_slope", "stadium ratios decay like length^(1-1/q) for q < 1"),
    ("ellipse_perimeter_bound", "perimeter of the ellipse with semi-axes (L, 1) is at most 2 pi L"),
    ("domain_monotonicity", "Omega_1 inside Omega_2 implies h_q(Omega_1) >= h_q(Omega_2)"),
];

pub fn anchor(check_id: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(id, _)| *id == check_id).map(|(_, a)| *a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    OneSided,
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub anchor: String,
    pub shape: String,
    pub q: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub kind: CheckKind,
    pub passed: bool,
}

impl CheckResult {
    fn new(id: &str, shape: &str, q: Option<f64>, lhs: f64, rhs: f64, margin: f64, kind: CheckKind) -> Self {
        let passed = match kind {
            CheckKind::OneSided => lhs <= rhs * (1.0 + margin),
            CheckKind::Identity => (lhs - rhs).abs() <= margin * lhs.abs().max(rhs.abs()),
        };
        CheckResult {
            check_id: id.to_string(),
            anchor: anchor(id).expect("registered check").to_string(),
            shape: shape.to_string(),
            q,
            lhs,
            rhs,
            margin,
            kind,
            passed,
        }
    }

    fn one_sided(id: &str, shape: &str, q: Option<f64>, lhs: f64, rhs: f64, margin: f64) -> Self {
        Self::new(id, shape, q, lhs, rhs, margin, CheckKind::OneSided)
    }

    fn identity(id: &str, shape: &str, q: Option<f64>, lhs: f64, rhs: f64, margin: f64) -> Self {
        Self::new(id, shape, q, lhs, rhs, margin, CheckKind::Identity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// One point of the comparison plot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichPoint {
    pub shape: String,
    pub q: f64,
    pub h1: f64,
    pub hq: f64,
    /// `C h_1^(2/q - 1)` with the lower constant (or the one-sided constant
    /// for `q < 1`).
    pub comparison: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub corpus: Vec<String>,
    pub qs: Vec<f64>,
    pub seed: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub summary: Summary,
    pub results: Vec<CheckResult>,
    pub sandwich: Vec<SandwichPoint>,
    pub elongation: Vec<ElongationResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Precondition(format!("report serialization: {e}")))
    }

    pub fn to_markdown(&self) -> String {
        render::markdown(self)
    }
}

/// Default corpus: unit disk, unit square, 3:1 rectangle, two random
/// hexagons, two disjoint disks, a stadium and an ellipse.
pub fn default_corpus(seed: u64) -> Result<Vec<ShapeSpec>> {
    let mut corpus = vec![
        ShapeSpec::Disk { center: Point::ORIGIN, radius: 1.0 },
        ShapeSpec::Rectangle { width: 1.0, height: 1.0, origin: Point::ORIGIN },
        ShapeSpec::Rectangle { width: 3.0, height: 1.0, origin: Point::ORIGIN },
    ];
    corpus.extend(random_hexagons(seed, 2)?);
    corpus.push(ShapeSpec::Union {
        members: vec![
            ShapeSpec::Disk { center: Point::ORIGIN, radius: 1.0 },
            ShapeSpec::Disk { center: Point::new(3.0, 0.0), radius: 0.5 },
        ],
    });
    corpus.push(ShapeSpec::Stadium { radius: 1.0, length: 2.0, center: Point::ORIGIN });
    corpus.push(ShapeSpec::Ellipse { a: 2.0, b: 1.0, center: Point::ORIGIN });
    Ok(corpus)
}

/// Hulls of 6 points uniform in the annulus `1/2 <= |x| <= 1`, rejected when
/// the inradius is below a tenth of the largest distance from the centroid.
pub fn random_hexagons(seed: u64, count: usize) -> Result<Vec<ShapeSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::Precondition("could not sample a non-degenerate hexagon".into()));
        }
        let pts: Vec<Point> = (0..6)
            .map(|_| {
                let r = rng.gen_range(0.25f64..1.0).sqrt();
                Point::polar(rng.gen_range(0.0..2.0 * PI)) * r
            })
            .collect();
        let Ok(hull) = convex_hull(&pts) else { continue };
        let c = hull.centroid();
        let circ = hull.vertices().iter().map(|v| v.distance(c)).fold(0.0, f64::max);
        if inradius(&hull)?.radius >= 0.1 * circ {
            out.push(ShapeSpec::Polygon { vertices: hull.vertices().to_vec() });
        }
    }
    Ok(out)
}

/// Runs the suite with default solver options seeded by `seed`.
pub fn run_suite(corpus: &[ShapeSpec], qs: &[f64], seed: u64) -> Result<Report> {
    run_suite_with(corpus, qs, &SolverOptions { rng_seed: seed, ..Default::default() })
}

pub fn run_suite_with(corpus: &[ShapeSpec], qs: &[f64], opts: &SolverOptions) -> Result<Report> {
    if corpus.is_empty() {
        return Err(Error::Precondition("the corpus is empty".into()));
    }
    if qs.is_empty() {
        return Err(Error::Precondition("no q values given".into()));
    }
    let exps: Vec<Exponent> = qs.iter().map(|&q| Exponent::planar(q)).collect::<Result<_>>()?;
    for s in corpus {
        s.validate()?;
        if !s.is_bounded() {
            return Err(Error::Precondition(format!("corpus shapes must be bounded, got {}", s.summary())));
        }
    }
    opts.validate()?;
    let one = Exponent::planar(1.0)?;
    let labels: Vec<String> = corpus.iter().enumerate().map(|(i, s)| format!("#{i} {}", s.summary())).collect();

    let mut results = Vec::new();
    let mut sandwich = Vec::new();
    // estimates[i][j]: shape i at qs[j].
    let mut estimates: Vec<Vec<CheegerEstimate>> = Vec::with_capacity(corpus.len());
    for (i, shape) in corpus.iter().enumerate() {
        let label = &labels[i];
        let h1 = estimate(shape, one, opts)?;
        let mut row = Vec::with_capacity(exps.len());
        for &e in &exps {
            let est = if e.q() == 1.0 { h1.clone() } else { estimate(shape, e, opts)? };
            shape_checks(shape, label, e, &est, &h1, opts, &mut results, &mut sandwich)?;
            row.push(est);
        }
        // Homogeneity at the last requested q.
        let e = *exps.last().expect("nonempty");
        let big = estimate(&shape.scaled(2.0)?, e, opts)?;
        let expected = 2f64.powf(e.scaling_power()) * row.last().expect("nonempty").value;
        results.push(CheckResult::identity("scaling_law", label, Some(e.q()), big.value, expected, 1e-2));
        estimates.push(row);
    }

    for (i, a) in corpus.iter().enumerate() {
        for (j, b) in corpus.iter().enumerate() {
            if i != j && nested(a, b) {
                let label = format!("{} inside {}", labels[i], labels[j]);
                for (k, e) in exps.iter().enumerate() {
                    results.push(CheckResult::one_sided(
                        "domain_monotonicity",
                        &label,
                        Some(e.q()),
                        estimates[j][k].value,
                        estimates[i][k].value,
                        SOLVER_MARGIN,
                    ));
                }
            }
        }
    }

    global_checks(&exps, opts.rng_seed, &mut results)?;
    let mut elongation = Vec::new();
    for &e in &exps {
        elongation_checks(e, &mut results, &mut elongation)?;
    }

    let passed = results.iter().filter(|r| r.passed).count();
    Ok(Report {
        corpus: labels,
        qs: qs.to_vec(),
        seed: opts.rng_seed,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        summary: Summary { total: results.len(), passed, failed: results.len() - passed },
        results,
        sandwich,
        elongation,
    })
}

/// Containment for the pairs the suite can decide exactly.
fn nested(inner: &ShapeSpec, outer: &ShapeSpec) -> bool {
    match (inner, outer) {
        (
            ShapeSpec::Rectangle { width: w1, height: h1, origin: o1 },
            ShapeSpec::Rectangle { width: w2, height: h2, origin: o2 },
        ) => o1.x >= o2.x && o1.y >= o2.y && o1.x + w1 <= o2.x + w2 && o1.y + h1 <= o2.y + h2 && inner != outer,
        (ShapeSpec::Disk { center: c1, radius: r1 }, ShapeSpec::Disk { center: c2, radius: r2 }) => {
            c1.distance(*c2) + r1 <= *r2 && inner != outer
        }
        _ => false,
    }
}

#[allow(clippy::too_many_arguments)]
fn shape_checks(
    shape: &ShapeSpec,
    label: &str,
    e: Exponent,
    est: &CheegerEstimate,
    h1: &CheegerEstimate,
    opts: &SolverOptions,
    results: &mut Vec<CheckResult>,
    sandwich: &mut Vec<SandwichPoint>,
) -> Result<()> {
    let q = e.q();
    results.push(CheckResult::one_sided("isoperimetric_floor", label, Some(q), est.lower_bound, est.value, IDENTITY_MARGIN));
    if let ShapeSpec::Disk { radius, .. } = shape {
        results.push(CheckResult::identity("ball_value", label, Some(q), est.value, hq_ball(e, *radius)?, IDENTITY_MARGIN));
    }
    if est.perimeter.is_finite() && est.area.is_finite() && est.area > 0.0 {
        let d = decompose_ratio(est.perimeter, est.area, e)?;
        results.push(CheckResult::identity("decomposition", label, Some(q), d.product, est.value, IDENTITY_MARGIN));
    }

    let k = e.cheeger_power();
    let cmp = comparison_constants(2, q)?;
    if q != 1.0 {
        let comparison = cmp.lower.unwrap_or(cmp.upper) * h1.value.powf(k);
        sandwich.push(SandwichPoint { shape: label.to_string(), q, h1: h1.value, hq: est.value, comparison });
    }
    if q > 1.0 {
        let lower = cmp.lower.expect("two-sided for q > 1") * h1.value.powf(k);
        let is_disk = matches!(shape, ShapeSpec::Disk { .. });
        results.push(if is_disk {
            CheckResult::identity("comparison_lower", label, Some(q), lower, est.value, 1e-10)
        } else {
            CheckResult::one_sided("comparison_lower", label, Some(q), lower, est.value, SOLVER_MARGIN)
        });
        let upper = cmp.upper * h1.value.powf(k);
        results.push(CheckResult::one_sided("comparison_upper", label, Some(q), est.value, upper, SOLVER_MARGIN));
    } else if q < 1.0 {
        let upper = cmp.upper * h1.value.powf(k);
        results.push(CheckResult::one_sided("small_q_upper", label, Some(q), est.value, upper, SOLVER_MARGIN));
    }

    if let ShapeSpec::Union { members } = shape {
        let parts: Vec<f64> = members
            .iter()
            .map(|m| estimate(m, e, opts).map(|x| x.value))
            .collect::<Result<_>>()?;
        let combined = combine_disjoint(&parts, e)?;
        if q >= 1.0 {
            results.push(CheckResult::identity("union_min", label, Some(q), est.value, combined, IDENTITY_MARGIN));
        } else {
            let exact = members.iter().all(|m| matches!(m, ShapeSpec::Disk { .. }));
            let margin = if exact { IDENTITY_MARGIN } else { SOLVER_MARGIN };
            results.push(CheckResult::one_sided("union_proxy_below", label, Some(q), combined, est.value, margin));
        }
    }
    Ok(())
}

/// Minimum of `phi` by a logarithmic grid and golden-section refinement.
fn phi_search(p: &PhiParams) -> (f64, f64) {
    const LO: f64 = -30.0;
    const HI: f64 = 30.0;
    const NODES: usize = 6001;
    let f = |s: f64| p.eval(s.exp());
    let h = (HI - LO) / (NODES - 1) as f64;
    let best = (0..NODES).map(|i| LO + h * i as f64).min_by(|a, b| f(*a).total_cmp(&f(*b))).expect("nonempty");
    let (s, v) = golden_section(f, best - h, best + h, 1e-13);
    (s.exp(), v)
}

fn global_checks(exps: &[Exponent], seed: u64, results: &mut Vec<CheckResult>) -> Result<()> {
    let two = "disks r=0.1 and R=1";
    let tb = two_ball_h(0.1, 1.0, 0.5)?;
    results.push(CheckResult::identity("two_ball_example", two, Some(0.5), tb.value, 2.0 / PI, 1e-6));
    let proxy = lambda_upper_proxy_two_balls(0.1, 1.0, 0.5)?;
    results.push(CheckResult::one_sided("two_ball_gap", two, Some(0.5), proxy * (1.0 + 1e-4), tb.value, 0.0));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for beta in [0.3, 0.5, 0.8] {
        for _ in 0..5 {
            let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(0.1..10.0));
            let p = PhiParams::new(a, b, c, d, beta)?;
            let closed = phi_beta_min(&p);
            let (_, searched) = phi_search(&p);
            let label = format!("phi a={a:.4} b={b:.4} c={c:.4} d={d:.4}");
            if let PhiAttainment::Interior { .. } = closed.attainment {
                results.push(CheckResult::identity("phi_minimum", &label, Some(beta), closed.infimum, searched, 1e-8));
            }
        }
    }

    for e in exps.iter().filter(|e| e.q() >= 1.0) {
        results.push(CheckResult::identity("moser_a", "N=2", Some(e.q()), a_const(2, 1.0, e.q())?, 1.0, 0.0));
    }
    let b = b_const(2, 1.0, 1.0, 60)?;
    results.push(CheckResult::identity("moser_b_closed_form", "N=2, 60 terms", Some(1.0), b.partial, b.closed_form, 1e-10));

    for l in [1e2, 1e3, 1e4] {
        let label = format!("ellipse {l}x1");
        results.push(CheckResult::one_sided("ellipse_perimeter_bound", &label, None, ellipse_perimeter(l, 1.0), 2.0 * PI * l, 0.0));
    }
    Ok(())
}

fn elongation_checks(e: Exponent, results: &mut Vec<CheckResult>, out: &mut Vec<ElongationResult>) -> Result<()> {
    let q = e.q();
    if q == 1.0 {
        return Ok(());
    }
    let sweep = elongation_demo(ElongationFamily::Stadium, e, &[1e1, 1e2, 1e3, 1e4])?;
    // Largest relative step against the expected direction; must be negative.
    let sign = if q < 1.0 { 1.0 } else { -1.0 };
    let worst = sweep
        .rows
        .windows(2)
        .map(|w| sign * (w[1].ratio - w[0].ratio) / w[0].ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    results.push(CheckResult::one_sided("elongation_monotone", "stadium r=1, d=10..1e4", Some(q), worst, 0.0, 0.0));
    if q < 1.0 {
        let tail = elongation_demo(ElongationFamily::Stadium, e, &[1e2, 1e3, 1e4])?;
        results.push(CheckResult::identity("elongation_slope", "stadium r=1, d=1e2..1e4", Some(q), tail.slope, 1.0 - 1.0 / q, 0.05));
        out.push(elongation_demo(ElongationFamily::Ellipse, e, &[1e1, 1e2, 1e3, 1e4])?);
    }
    out.push(sweep);
    Ok(())
}
