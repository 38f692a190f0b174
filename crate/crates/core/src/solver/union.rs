// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Disjoint unions of bounded convex members.
//!
//! For `q >= 1` the best member wins. For `q < 1` pieces in several members
//! are combined: with candidate sets `E_i` of perimeter `P_i` and area `A_i`,
//! shrinking `E_i` by `s_i in [0, 1]` gives
//! `sum s_i P_i / (sum s_i^2 A_i)^(1/q)`. In each `s_i` this is
//! `(a + s b) / (c + s^2 d)^(1/q)`, whose derivative changes sign once (from
//! + to -) when `q < 2`, so the minimum sits at `s_i in {0, 1}`: it suffices
//! to enumerate which members are kept.

use super::{estimate, isoperimetric_floor, ratio, CheegerEstimate, Method, ShapeSpec, SolverOptions};
use crate::closed_forms::{two_ball_h, Exponent, TwoBallMethod};
use crate::error::{Error, Result};

const MAX_ENUMERATED: usize = 20;

/// Minimum of `sum_{i in S} P_i / (sum_{i in S} A_i)^(1/q)` over nonempty
/// subsets `S`; returns the value and the kept indices.
pub fn joint_subset_minimum(perimeters: &[f64], areas: &[f64], e: Exponent) -> Result<(f64, Vec<usize>)> {
    let k = perimeters.len();
    if k == 0 || k != areas.len() {
        return Err(Error::Precondition("need matching, nonempty perimeter and area lists".into()));
    }
    if k > MAX_ENUMERATED {
        return Err(Error::Precondition(format!("at most {MAX_ENUMERATED} members supported, got {k}")));
    }
    let mut best = (f64::INFINITY, 0usize);
    for mask in 1usize..(1 << k) {
        let (mut p, mut a) = (0.0, 0.0);
        for i in 0..k {
            if mask & (1 << i) != 0 {
                p += perimeters[i];
                a += areas[i];
            }
        }
        let v = ratio(p, a, e);
        if v < best.0 {
            best = (v, mask);
        }
    }
    let kept = (0..k).filter(|i| best.1 & (1 << i) != 0).collect();
    Ok((best.0, kept))
}

pub fn solve_union(shape: &ShapeSpec, e: Exponent, opts: &SolverOptions) -> Result<CheegerEstimate> {
    shape.validate()?;
    let ShapeSpec::Union { members } = shape else {
        return Err(Error::Precondition(format!("expected a union, got {}", shape.kind())));
    };
    let floor = isoperimetric_floor(shape.area(), e);

    if e.q() < 1.0 {
        if let [ShapeSpec::Disk { radius: r1, .. }, ShapeSpec::Disk { radius: r2, .. }] = members.as_slice() {
            let (small, big) = if r1 <= r2 { (*r1, *r2) } else { (*r2, *r1) };
            let res = two_ball_h(small, big, e.q())?;
            let (t, s) = res.radii;
            return Ok(CheegerEstimate {
                value: res.value,
                minimizer: None,
                perimeter: 2.0 * std::f64::consts::PI * (t + s),
                area: std::f64::consts::PI * (t * t + s * s),
                lower_bound: floor,
                method: match res.method {
                    TwoBallMethod::Analytic => Method::Analytic,
                    TwoBallMethod::Grid => Method::Grid,
                },
                iterations: 0,
                converged: true,
                detail: format!("disks of radii {t:.10} and {s:.10} kept in the two members"),
            });
        }
    }

    let parts: Vec<CheegerEstimate> =
        members.iter().map(|m| estimate(m, e, opts)).collect::<Result<_>>()?;
    let iterations = parts.iter().map(|p| p.iterations).sum();
    let converged = parts.iter().all(|p| p.converged);

    if e.q() >= 1.0 {
        let (i, best) = parts
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
            .expect("validated nonempty");
        let mut est = best.clone();
        est.lower_bound = floor;
        est.iterations = iterations;
        est.converged = converged;
        est.detail = format!("member {i}: {}", best.detail);
        return Ok(est);
    }

    let perimeters: Vec<f64> = parts.iter().map(|p| p.perimeter).collect();
    let areas: Vec<f64> = parts.iter().map(|p| p.area).collect();
    let (value, kept) = joint_subset_minimum(&perimeters, &areas, e)?;
    let all_analytic = parts.iter().all(|p| p.method == Method::Analytic);
    Ok(CheegerEstimate {
        value,
        minimizer: None,
        perimeter: kept.iter().map(|&i| perimeters[i]).sum(),
        area: kept.iter().map(|&i| areas[i]).sum(),
        lower_bound: floor,
        method: if all_analytic { Method::Analytic } else { Method::Grid },
        iterations,
        converged,
        detail: format!("best member sets kept in members {kept:?}"),
    })
}
