// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Exact formulas: ball values, the admissible exponent window, the
//! one-variable minimization behind disjoint-union combinations, the
//! two-ball configuration and the ratio decomposition identity.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};
use crate::numerics::unit_ball_volume;
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// Dimension `N` and exponent `q`, restricted to `0 < q < N/(N-1)`
/// (`q` may be `+inf` when `N = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExponent", into = "RawExponent")]
pub struct Exponent {
    dim: u32,
    q: f64,
}

#[derive(Serialize, Deserialize)]
struct RawExponent {
    #[serde(rename = "N")]
    dim: u32,
    q: f64,
}

impl TryFrom<RawExponent> for Exponent {
    type Error = Error;
    fn try_from(r: RawExponent) -> Result<Self> {
        Exponent::new(r.dim, r.q)
    }
}

impl From<Exponent> for RawExponent {
    fn from(e: Exponent) -> Self {
        RawExponent { dim: e.dim, q: e.q }
    }
}

impl Exponent {
    pub fn new(dim: u32, q: f64) -> Result<Self> {
        let invalid = |reason: String| Err(Error::InvalidExponent { dim, q, reason });
        if dim == 0 {
            return invalid("dimension must be at least 1".into());
        }
        if q.is_nan() || q <= 0.0 {
            return invalid("q must be positive".into());
        }
        if dim == 1 {
            return Ok(Exponent { dim, q });
        }
        let limit = dim as f64 / (dim as f64 - 1.0);
        if q >= limit || q.is_infinite() {
            let iso = dim as f64 * unit_ball_volume(dim).powf(1.0 / dim as f64);
            return invalid(format!(
                "q must satisfy 0 < q < N/(N-1) = {limit}. At q = N/(N-1) the constant does not \
                 depend on the domain (it equals the isoperimetric constant N*omega_N^(1/N) = \
                 {iso:.6}), and for q > N/(N-1) shrinking balls drive it to 0 for every domain"
            ));
        }
        Ok(Exponent { dim, q })
    }

    /// Planar exponent (`N = 2`).
    pub fn planar(q: f64) -> Result<Self> {
        Exponent::new(2, q)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn inv_q(&self) -> f64 {
        if self.q.is_infinite() {
            0.0
        } else {
            1.0 / self.q
        }
    }

    /// Exponent `N/q - (N-1)` carried by `h_1` in the comparison bounds.
    pub fn cheeger_power(&self) -> f64 {
        let n = self.dim as f64;
        n * self.inv_q() - (n - 1.0)
    }

    /// Exponent `N - N/q` carried by the isoperimetric quotient.
    pub fn isoperimetric_power(&self) -> f64 {
        let n = self.dim as f64;
        n - n * self.inv_q()
    }

    /// Scaling exponent `N - 1 - N/q`: `h_q(t Omega) = t^s h_q(Omega)`.
    pub fn scaling_power(&self) -> f64 {
        let n = self.dim as f64;
        n - 1.0 - n * self.inv_q()
    }
}

/// `h_q(B_R) = N omega_N^(1-1/q) R^(N-1-N/q)`.
pub fn hq_ball(e: Exponent, radius: f64) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Precondition(format!("ball radius must be positive, got {radius}")));
    }
    let n = e.dim() as f64;
    Ok(n * unit_ball_volume(e.dim()).powf(1.0 - e.inv_q()) * radius.powf(e.scaling_power()))
}

/// Domain-independent value at the endpoint `q = N/(N-1)`: `N omega_N^(1/N)`;
/// for `N = 1` the `q = inf` convention gives 2.
pub fn q_limit_value(dim: u32) -> f64 {
    if dim <= 1 {
        return 2.0;
    }
    let n = dim as f64;
    n * unit_ball_volume(dim).powf(1.0 / n)
}

/// Parameters of `phi(t) = (a + t b) / (c + t^beta d)^(1/beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub beta: f64,
}

impl PhiParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, beta: f64) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0 && c > 0.0 && d > 0.0 && beta > 0.0)
            || ![a, b, c, d, beta].iter().all(|v| v.is_finite())
        {
            return Err(Error::Precondition(format!(
                "need a, b >= 0 and c, d, beta > 0 (a={a}, b={b}, c={c}, d={d}, beta={beta})"
            )));
        }
        Ok(PhiParams { a, b, c, d, beta })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.a + t * self.b) / (self.c + t.powf(self.beta) * self.d).powf(1.0 / self.beta)
    }
}

/// How the infimum of `phi` over `t > 0` is reached.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiAttainment {
    /// Attained at a unique interior point.
    Interior { t: f64 },
    /// `beta >= 1`: strict inequality for every `t > 0`.
    NotAttained,
    /// `beta < 1` with `a = 0` (`t -> 0`) or `b = 0` (`t -> inf`).
    Boundary { at_zero: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiMinimum {
    pub infimum: f64,
    pub attainment: PhiAttainment,
}

/// Closed-form infimum of `phi_beta` over `t > 0`.
pub fn phi_beta_min(p: &PhiParams) -> PhiMinimum {
    let PhiParams { a, b, c, d, beta } = *p;
    if beta >= 1.0 {
        let infimum = (a / c.powf(1.0 / beta)).min(b / d.powf(1.0 / beta));
        return PhiMinimum { infimum, attainment: PhiAttainment::NotAttained };
    }
    if a == 0.0 || b == 0.0 {
        return PhiMinimum { infimum: 0.0, attainment: PhiAttainment::Boundary { at_zero: a == 0.0 } };
    }
    let k = beta / (1.0 - beta);
    let infimum =
        ((c.powf(1.0 / beta) / a).powf(k) + (d.powf(1.0 / beta) / b).powf(k)).powf((beta - 1.0) / beta);
    let t = (a / c * d / b).powf(1.0 / (1.0 - beta));
    PhiMinimum { infimum, attainment: PhiAttainment::Interior { t } }
}

/// Constant of a disjoint union from the constants of its pieces: the
/// minimum for `q >= 1`, the power-mean
/// `(sum v_i^(-q/(1-q)))^((q-1)/q)` for `q < 1` (0 if any piece is 0).
pub fn combine_disjoint(values: &[f64], e: Exponent) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Precondition("no component values".into()));
    }
    if values.iter().any(|v| v.is_nan() || *v < 0.0) {
        return Err(Error::Precondition("component values must be nonnegative".into()));
    }
    let q = e.q();
    if q >= 1.0 {
        return Ok(values.iter().copied().fold(f64::INFINITY, f64::min));
    }
    if values.iter().any(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let k = q / (1.0 - q);
    let s: f64 = values.iter().map(|v| v.powf(-k)).sum();
    Ok(s.powf((q - 1.0) / q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoBallMethod {
    Analytic,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBallResult {
    pub value: f64,
    /// Optimal radii `(r_1, r_2)` kept in the small and the large disk.
    pub radii: (f64, f64),
    pub method: TwoBallMethod,
}

/// `2 pi (t + s) / (pi (t^2 + s^2))^(1/q)`: the ratio of two disjoint disks
/// of radii `t` and `s`.
pub fn two_ball_objective(t: f64, s: f64, q: f64) -> f64 {
    if t <= 0.0 && s <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * PI * (t + s) / (PI * (t * t + s * s)).powf(1.0 / q)
}

/// Threshold on `r/R` below which, for `q = 1/2`, the optimum keeps only
/// the large disk.
pub fn two_ball_threshold() -> f64 {
    (7f64.sqrt() - 2.0) / 3.0
}

fn check_two_ball(r: f64, big_r: f64, q: f64) -> Result<()> {
    if !(r > 0.0 && r <= big_r && big_r.is_finite()) {
        return Err(Error::Precondition(format!("need 0 < r <= R (r = {r}, R = {big_r})")));
    }
    Exponent::planar(q)?;
    Ok(())
}

/// `h_q` of two disjoint disks of radii `r <= R` in the plane.
pub fn two_ball_h(r: f64, big_r: f64, q: f64) -> Result<TwoBallResult> {
    check_two_ball(r, big_r, q)?;
    if q == 0.5 && r / big_r < two_ball_threshold() {
        return Ok(TwoBallResult {
            value: 2.0 / (PI * big_r.powi(3)),
            radii: (0.0, big_r),
            method: TwoBallMethod::Analytic,
        });
    }
    two_ball_h_grid(r, big_r, q)
}

/// Grid-and-refine minimization of [`two_ball_objective`] over
/// `[0, r] x [0, R]` without the origin.
pub fn two_ball_h_grid(r: f64, big_r: f64, q: f64) -> Result<TwoBallResult> {
    check_two_ball(r, big_r, q)?;
    const CELLS: usize = 2000;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=CELLS {
        let t = r * i as f64 / CELLS as f64;
        for j in 0..=CELLS {
            let s = big_r * j as f64 / CELLS as f64;
            let v = two_ball_objective(t, s, q);
            if v < best.0 {
                best = (v, t, s);
            }
        }
    }
    let clamp = |x: &[f64]| (x[0].clamp(0.0, r), x[1].clamp(0.0, big_r));
    let opts = NelderMeadOptions { tol_rel: 1e-15, max_iters: 2_000, ..Default::default() };
    let m = nelder_mead(
        |x| {
            let (t, s) = clamp(x);
            two_ball_objective(t, s, q)
        },
        &[best.1, best.2],
        &[r / CELLS as f64, big_r / CELLS as f64],
        &opts,
    );
    let (t, s) = clamp(&m.x);
    let refined = two_ball_objective(t, s, q);
    let (value, radii) = if refined < best.0 { (refined, (t, s)) } else { (best.0, (best.1, best.2)) };
    Ok(TwoBallResult { value, radii, method: TwoBallMethod::Grid })
}

/// Upper bound for the Poincare-type constant `lambda_{1,q}` of two disjoint
/// disks, `q < 1`: the power-mean combination of the two ball values.
pub fn lambda_upper_proxy_two_balls(r: f64, big_r: f64, q: f64) -> Result<f64> {
    check_two_ball(r, big_r, q)?;
    if q >= 1.0 {
        return Err(Error::Precondition(format!("the lambda proxy needs q < 1, got {q}")));
    }
    let e = Exponent::planar(q)?;
    combine_disjoint(&[hq_ball(e, r)?, hq_ball(e, big_r)?], e)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// `(P/A)^(N/q - (N-1))`.
    pub cheeger_factor: f64,
    /// `(P / A^((N-1)/N))^(N - N/q)`.
    pub isoperimetric_factor: f64,
    pub product: f64,
}

/// Splits `P / A^(1/q)` into a Cheeger factor and an isoperimetric factor.
pub fn decompose_ratio(perimeter: f64, area: f64, e: Exponent) -> Result<Decomposition> {
    if !(perimeter > 0.0 && area > 0.0) {
        return Err(Error::Precondition(format!(
            "need positive perimeter and area (P = {perimeter}, A = {area})"
        )));
    }
    let n = e.dim() as f64;
    let cheeger_factor = (perimeter / area).powf(e.cheeger_power());
    let isoperimetric_factor = (perimeter / area.powf((n - 1.0) / n)).powf(e.isoperimetric_power());
    Ok(Decomposition { cheeger_factor, isoperimetric_factor, product: cheeger_factor * isoperimetric_factor })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    /// `(h_1 / 2)^2`.
    pub classical: f64,
    /// `h_q^(2/(N/q - (N-1))) / C`.
    pub generalized: f64,
    /// `C = 4 K^(2/(N/q - (N-1)))` with `K` the upper comparison constant.
    pub constant: f64,
}

/// Lower bounds on the first Dirichlet eigenvalue from `h_1` and from `h_q`.
pub fn cheeger_spectral_bounds(h1: f64, hq: f64, e: Exponent) -> Result<SpectralBounds> {
    if !(h1 >= 0.0 && hq >= 0.0) {
        return Err(Error::Precondition("Cheeger constants must be nonnegative".into()));
    }
    let k = e.cheeger_power();
    let upper = constants::comparison_constants(e.dim(), e.q())?.upper_side();
    let constant = 4.0 * upper.powf(2.0 / k);
    Ok(SpectralBounds {
        classical: (h1 / 2.0).powi(2),
        generalized: hq.powf(2.0 / k) / constant,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn exponent_window() {
        assert!(Exponent::new(2, 1.999).is_ok());
        let err = Exponent::new(2, 2.0).unwrap_err();
        assert!(err.to_string().contains("isoperimetric constant"), "{err}");
        assert!(Exponent::new(2, 0.0).is_err());
        assert!(Exponent::new(3, 1.5).is_err());
        assert!(Exponent::new(3, 1.49).is_ok());
        assert!(Exponent::new(1, f64::INFINITY).is_ok());
        assert!(Exponent::new(2, f64::NAN).is_err());
    }

    #[test]
    fn ball_values() {
        assert!(rel(hq_ball(Exponent::new(2, 1.0).unwrap(), 1.0).unwrap(), 2.0) < 1e-14);
        assert!(rel(hq_ball(Exponent::new(2, 0.5).unwrap(), 1.0).unwrap(), 2.0 / PI) < 1e-14);
        assert!(rel(hq_ball(Exponent::new(3, 1.0).unwrap(), 1.0).unwrap(), 3.0) < 1e-14);
        assert!(rel(hq_ball(Exponent::new(1, f64::INFINITY).unwrap(), 7.0).unwrap(), 2.0) < 1e-14);
        assert!(hq_ball(Exponent::new(2, 1.0).unwrap(), 0.0).is_err());
    }

    #[test]
    fn limit_values() {
        assert!(rel(q_limit_value(2), 2.0 * PI.sqrt()) < 1e-14);
        assert!((q_limit_value(2) - 3.544908).abs() < 1e-6);
        assert!((q_limit_value(3) - 4.835976).abs() < 1e-6);
        assert_eq!(q_limit_value(1), 2.0);
    }

    #[test]
    fn phi_examples() {
        let p = PhiParams::new(1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        let m = phi_beta_min(&p);
        assert!((m.infimum - 0.5).abs() < 1e-15);
        assert_eq!(m.attainment, PhiAttainment::Interior { t: 1.0 });
        // grid oracle over (0, 10]
        let grid = (1..=100_000).map(|i| p.eval(i as f64 * 1e-4)).fold(f64::INFINITY, f64::min);
        assert!(grid >= m.infimum - 1e-15 && grid - m.infimum < 1e-8);

        let m = phi_beta_min(&PhiParams::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap());
        assert_eq!(m.infimum, 1.0);
        assert_eq!(m.attainment, PhiAttainment::NotAttained);

        let p = PhiParams::new(2.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        let m = phi_beta_min(&p);
        let PhiAttainment::Interior { t } = m.attainment else { panic!() };
        assert!((t - 4.0).abs() < 1e-14);
        assert!((m.infimum - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.eval(4.0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn phi_boundary_cases() {
        let m = phi_beta_min(&PhiParams::new(0.0, 1.0, 1.0, 1.0, 0.5).unwrap());
        assert_eq!(m.infimum, 0.0);
        assert_eq!(m.attainment, PhiAttainment::Boundary { at_zero: true });
        let m = phi_beta_min(&PhiParams::new(1.0, 0.0, 1.0, 1.0, 0.5).unwrap());
        assert_eq!(m.attainment, PhiAttainment::Boundary { at_zero: false });
        assert!(PhiParams::new(1.0, 1.0, 0.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn combine_examples() {
        let one = Exponent::planar(1.0).unwrap();
        let half = Exponent::planar(0.5).unwrap();
        assert_eq!(combine_disjoint(&[2.0, 3.0], one).unwrap(), 2.0);
        assert!((combine_disjoint(&[2.0, 2.0], half).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(combine_disjoint(&[5.0, 0.0], half).unwrap(), 0.0);
        assert!(combine_disjoint(&[], half).is_err());
    }

    #[test]
    fn two_ball_examples() {
        let a = two_ball_h(0.1, 1.0, 0.5).unwrap();
        assert_eq!(a.method, TwoBallMethod::Analytic);
        assert!((a.value - 2.0 / PI).abs() < 1e-15);
        assert_eq!(a.radii, (0.0, 1.0));

        let b = two_ball_h(1.0, 1.0, 0.5).unwrap();
        assert!(rel(b.value, 1.0 / PI) < 1e-12);
        assert!((b.radii.0 - 1.0).abs() < 1e-12 && (b.radii.1 - 1.0).abs() < 1e-12);

        let c = two_ball_h(0.1, 1.0, 1.0).unwrap();
        assert!(rel(c.value, 2.0) < 1e-12);
        assert!(c.radii.0.abs() < 1e-12 && (c.radii.1 - 1.0).abs() < 1e-12);
        assert!(two_ball_h(2.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn analytic_branch_matches_grid() {
        for &(r, big_r) in &[(0.1, 1.0), (0.2, 1.0), (0.05, 2.0)] {
            let a = two_ball_h(r, big_r, 0.5).unwrap();
            let g = two_ball_h_grid(r, big_r, 0.5).unwrap();
            assert!(rel(g.value, a.value) < 1e-6);
        }
    }

    #[test]
    fn lambda_proxy_examples() {
        let v = lambda_upper_proxy_two_balls(0.1, 1.0, 0.5).unwrap();
        // (pi/2000 + pi/2)^(-1)
        assert!(rel(v, 1.0 / (PI / 2000.0 + PI / 2.0)) < 1e-14);
        assert!(v < 2.0 / PI);
        let w = lambda_upper_proxy_two_balls(1.0, 1.0, 0.5).unwrap();
        assert!(rel(w, 1.0 / PI) < 1e-14);
        let tiny = lambda_upper_proxy_two_balls(1e-6, 1.0, 0.5).unwrap();
        assert!(rel(tiny, 2.0 / PI) < 1e-12);
        assert!(lambda_upper_proxy_two_balls(0.1, 1.0, 1.0).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_ratio(2.0 * PI, PI, Exponent::planar(1.0).unwrap()).unwrap();
        assert!((d.cheeger_factor - 2.0).abs() < 1e-15);
        assert_eq!(d.isoperimetric_factor, 1.0);
        let d = decompose_ratio(4.0, 1.0, Exponent::planar(1.5).unwrap()).unwrap();
        assert!((d.product - 4.0).abs() < 1e-14);
    }

    #[test]
    fn spectral_bounds() {
        let s = cheeger_spectral_bounds(2.0, 2.0, Exponent::planar(1.0).unwrap()).unwrap();
        assert_eq!(s.classical, 1.0);
        assert!((s.generalized - 1.0).abs() < 1e-15);
        let z = cheeger_spectral_bounds(2.0, 0.0, Exponent::planar(1.5).unwrap()).unwrap();
        assert_eq!(z.generalized, 0.0);
        assert!((2.0 / Exponent::planar(1.5).unwrap().cheeger_power() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn generalized_bound_consistent_with_comparison() {
        // Plugging h_q = K h_1^k into the generalized bound recovers (h_1/2)^2.
        for &q in &[0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 1.9] {
            let e = Exponent::planar(q).unwrap();
            let k = e.cheeger_power();
            let upper = constants::comparison_constants(2, q).unwrap().upper_side();
            for &h1 in &[0.5f64, 2.0, 7.0] {
                let hq = upper * h1.powf(k);
                let s = cheeger_spectral_bounds(h1, hq, e).unwrap();
                assert!(rel(s.generalized, s.classical) < 1e-12, "q={q} h1={h1}");
            }
        }
    }

    proptest! {
        #[test]
        fn ball_scaling(q in 0.05..1.99f64, r in 0.01..100.0f64, t in 0.01..100.0f64) {
            let e = Exponent::planar(q).unwrap();
            let lhs = hq_ball(e, t * r).unwrap();
            let rhs = t.powf(e.scaling_power()) * hq_ball(e, r).unwrap();
            prop_assert!(rel(lhs, rhs) < 1e-12);
        }

        #[test]
        fn decomposition_identity(p in 0.01..1e3f64, a in 0.01..1e3f64, q in 0.05..1.99f64) {
            let e = Exponent::planar(q).unwrap();
            let d = decompose_ratio(p, a, e).unwrap();
            prop_assert!(rel(d.product, p / a.powf(1.0 / q)) < 1e-12);
        }

        #[test]
        fn phi_closed_form_is_a_lower_bound(
            a in 0.01..10.0f64, b in 0.01..10.0f64, c in 0.01..10.0f64, d in 0.01..10.0f64,
            beta in 0.1..0.95f64,
        ) {
            let p = PhiParams::new(a, b, c, d, beta).unwrap();
            let m = phi_beta_min(&p);
            let grid = (0..=1200)
                .map(|i| p.eval(10f64.powf(-6.0 + 12.0 * i as f64 / 1200.0)))
                .fold(f64::INFINITY, f64::min);
            prop_assert!(grid >= m.infimum * (1.0 - 1e-9));
        }

        #[test]
        fn combine_is_symmetric_monotone_and_below(v1 in 0.01..50.0f64, v2 in 0.01..50.0f64, dv in 0.0..5.0f64, q in 0.05..0.95f64) {
            let e = Exponent::planar(q).unwrap();
            let c12 = combine_disjoint(&[v1, v2], e).unwrap();
            let c21 = combine_disjoint(&[v2, v1], e).unwrap();
            prop_assert!(rel(c12, c21) < 1e-14);
            prop_assert!(c12 <= v1 && c12 <= v2);
            if v1.max(v2) / v1.min(v2) < 2.0 { prop_assert!(c12 < v1.min(v2)); }
            let bigger = combine_disjoint(&[v1 + dv, v2], e).unwrap();
            prop_assert!(bigger >= c12 * (1.0 - 1e-14));
        }
    }
}
