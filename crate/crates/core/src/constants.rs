// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Explicit constants: the Talenti limit `T_{N,1}`, the Moser factors
//! `A_{N,p,q}`, `B_{N,p,q}`, `C_{N,1,q}` and the comparison constants between
//! `h_q` and `h_1^(N/q - (N-1))`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::closed_forms::Exponent;
use crate::error::{Error, Result};
use crate::numerics::unit_ball_volume;

/// `N omega_N^(1/N)`.
fn isoperimetric_constant(dim: u32) -> f64 {
    let n = dim as f64;
    n * unit_ball_volume(dim).powf(1.0 / n)
}

fn need_planar_or_higher(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::Precondition(format!("need N >= 2, got N = {dim}")));
    }
    Ok(())
}

/// `T_{N,1} = 1 / (N omega_N^(1/N))`.
pub fn talenti_limit(dim: u32) -> Result<f64> {
    need_planar_or_higher(dim)?;
    Ok(1.0 / isoperimetric_constant(dim))
}

/// Sobolev conjugate `p* = N p / (N - p)`.
fn sobolev_conjugate(dim: u32, p: f64) -> f64 {
    let n = dim as f64;
    n * p / (n - p)
}

fn check_moser_range(dim: u32, p: f64, q: f64) -> Result<()> {
    need_planar_or_higher(dim)?;
    let n = dim as f64;
    if !(p >= 1.0 && p < n.min(2.0)) {
        return Err(Error::Precondition(format!("need 1 <= p < min(2, N), got p = {p}, N = {dim}")));
    }
    let p_star = sobolev_conjugate(dim, p);
    if !(q >= p && q <= p_star) {
        return Err(Error::Precondition(format!("need p <= q <= p* = {p_star}, got q = {q}")));
    }
    Ok(())
}

/// `A_{N,p,q} = exp((p-1)/q * N(N-p)/p^2 * ln(p*/p)) * exp(N/p * (p-1)/q * ln(q/p))`.
pub fn a_const(dim: u32, p: f64, q: f64) -> Result<f64> {
    check_moser_range(dim, p, q)?;
    let n = dim as f64;
    let p_star = sobolev_conjugate(dim, p);
    let first = (p - 1.0) / q * n * (n - p) / (p * p) * (p_star / p).ln();
    let second = n / p * (p - 1.0) / q * (q / p).ln();
    Ok(first.exp() * second.exp())
}

/// Truncated evaluation of `B_{N,p,q} = exp((p/q) ln 2 * sum_{i>=0} (i+2) x^i)`
/// with `x = 1 - 1/N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BSeries {
    pub terms: usize,
    /// Value from the first `terms` summands.
    pub partial: f64,
    /// Value with the exact geometric tail added; `partial <= upper`.
    pub upper: f64,
    /// `2^((p/q) N (N+1))`.
    pub closed_form: f64,
}

pub fn b_const(dim: u32, p: f64, q: f64, truncation: usize) -> Result<BSeries> {
    check_moser_range(dim, p, q)?;
    if truncation == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    let n = dim as f64;
    let x = 1.0 - 1.0 / n;
    let mut sum = 0.0;
    let mut xi = 1.0;
    for i in 0..truncation {
        sum += (i as f64 + 2.0) * xi;
        xi *= x;
    }
    // sum_{i>=T} (i+2) x^i = x^T ((T+2)/(1-x) + x/(1-x)^2)
    let t = truncation as f64;
    let tail = xi * ((t + 2.0) / (1.0 - x) + x / (1.0 - x).powi(2));
    let scale = p / q * LN_2;
    Ok(BSeries {
        terms: truncation,
        partial: (scale * sum).exp(),
        upper: (scale * (sum + tail)).exp(),
        closed_form: 2f64.powf(p / q * n * (n + 1.0)),
    })
}

/// `C_{N,1,q} = B_{N,1,q} (4 / (N omega_N^(1/N)))^(N/q)` for `1 <= q < N/(N-1)`.
pub fn moser_constant(dim: u32, q: f64) -> Result<f64> {
    need_planar_or_higher(dim)?;
    Exponent::new(dim, q)?;
    if q < 1.0 {
        return Err(Error::Precondition(format!("need q >= 1, got q = {q}")));
    }
    let n = dim as f64;
    let b = 2f64.powf(n * (n + 1.0) / q);
    Ok(b * (4.0 / isoperimetric_constant(dim)).powf(n / q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `q = 1`: both sides are `h_1`.
    Identity,
    /// `q > 1`: `lower h_1^k <= h_q <= upper h_1^k`.
    TwoSided,
    /// `q < 1`: only `h_q <= upper h_1^k` holds.
    OneSided,
}

/// Constants in `lower h_1^k <= h_q <= upper h_1^k`, `k = N/q - (N-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonConstants {
    pub regime: Regime,
    pub lower: Option<f64>,
    pub upper: f64,
}

impl ComparisonConstants {
    /// The constant `K` in `h_q <= K h_1^k`, defined in every regime.
    pub fn upper_side(&self) -> f64 {
        self.upper
    }
}

pub fn comparison_constants(dim: u32, q: f64) -> Result<ComparisonConstants> {
    need_planar_or_higher(dim)?;
    let e = Exponent::new(dim, q)?;
    if q == 1.0 {
        return Ok(ComparisonConstants { regime: Regime::Identity, lower: Some(1.0), upper: 1.0 });
    }
    let ball = isoperimetric_constant(dim).powf(e.isoperimetric_power());
    if q < 1.0 {
        return Ok(ComparisonConstants { regime: Regime::OneSided, lower: None, upper: ball });
    }
    let upper = 3.0 * 2f64.powi(dim as i32) * moser_constant(dim, q)?;
    Ok(ComparisonConstants { regime: Regime::TwoSided, lower: Some(ball), upper })
}

/// All constants attached to `(N, q)`, with the Moser exponent `p = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantBundle {
    #[serde(rename = "N")]
    pub dim: u32,
    pub q: f64,
    pub talenti_limit: f64,
    /// `A_{N,1,q}`; needs `q >= 1`.
    #[serde(rename = "A")]
    pub a: Option<f64>,
    /// `B_{N,1,q}`; needs `q >= 1`.
    #[serde(rename = "B")]
    pub b: Option<f64>,
    #[serde(rename = "C_moser")]
    pub c_moser: Option<f64>,
    #[serde(rename = "C_upper")]
    pub c_upper: f64,
    #[serde(rename = "C_lower")]
    pub c_lower: Option<f64>,
    pub regime: Regime,
}

pub fn constant_bundle(dim: u32, q: f64) -> Result<ConstantBundle> {
    need_planar_or_higher(dim)?;
    Exponent::new(dim, q)?;
    let moser_ok = q >= 1.0;
    let cmp = comparison_constants(dim, q)?;
    Ok(ConstantBundle {
        dim,
        q,
        talenti_limit: talenti_limit(dim)?,
        a: if moser_ok { Some(a_const(dim, 1.0, q)?) } else { None },
        b: if moser_ok { Some(b_const(dim, 1.0, q, 1)?.closed_form) } else { None },
        c_moser: if moser_ok { Some(moser_constant(dim, q)?) } else { None },
        c_upper: cmp.upper,
        c_lower: cmp.lower,
        regime: cmp.regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::hq_ball;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn talenti_values() {
        assert!(rel(talenti_limit(2).unwrap(), 1.0 / (2.0 * PI.sqrt())) < 1e-14);
        assert!((talenti_limit(2).unwrap() - 0.282095).abs() < 1e-6);
        assert!((talenti_limit(3).unwrap() - 0.206783).abs() < 1e-6);
        let seq: Vec<f64> = (2..=20).map(|n| talenti_limit(n).unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[1] < w[0]));
        assert!(talenti_limit(1).is_err());
    }

    #[test]
    fn a_const_values() {
        assert_eq!(a_const(2, 1.0, 1.5).unwrap(), 1.0);
        assert_eq!(a_const(3, 1.0, 1.2).unwrap(), 1.0);
        // (3, 1.5, 2): p* = 3, factors recomputed separately.
        let f1 = (0.5f64 / 2.0 * 3.0 * 1.5 / 2.25 * 2f64.ln()).exp();
        let f2 = (2.0f64 * 0.5 / 2.0 * (2.0f64 / 1.5).ln()).exp();
        assert!(rel(a_const(3, 1.5, 2.0).unwrap(), f1 * f2) < 1e-14);
        assert!(a_const(2, 2.0, 2.0).is_err());
        assert!(a_const(3, 1.5, 3.5).is_err());
    }

    #[test]
    fn b_const_values() {
        let b = b_const(2, 1.0, 1.0, 60).unwrap();
        assert!((b.closed_form - 64.0).abs() < 1e-12);
        assert!((b.partial - 64.0).abs() < 1e-10);
        assert!(b.partial <= b.upper);
        assert!(rel(b.upper, 64.0) < 1e-14);
        assert!((b_const(2, 1.0, 2.0, 60).unwrap().closed_form - 8.0).abs() < 1e-12);
        let partials: Vec<f64> = (1..40).map(|t| b_const(3, 1.0, 1.2, t).unwrap().partial).collect();
        assert!(partials.windows(2).all(|w| w[1] > w[0]));
        assert!(partials.iter().all(|&v| v <= b_const(3, 1.0, 1.2, 1).unwrap().closed_form));
    }

    #[test]
    fn b_asymptotics() {
        let n = 30u32;
        let b = b_const(n, 1.0, 1.0, 1).unwrap().closed_form;
        let ratio = b.log2() / (n * n) as f64;
        assert!((ratio - 1.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn moser_values() {
        let c = moser_constant(2, 1.5).unwrap();
        assert!(rel(c, 16.0 * (2.0 / PI.sqrt()).powf(4.0 / 3.0)) < 1e-13);
        assert!((c - 18.796).abs() < 1e-3);
        assert!((moser_constant(2, 1.0).unwrap() - 64.0 * 4.0 / PI).abs() < 1e-10);
        assert!(moser_constant(3, 1.1).unwrap() > moser_constant(2, 1.1).unwrap());
        assert!(moser_constant(2, 2.0).is_err());
    }

    #[test]
    fn comparison_values() {
        let c = comparison_constants(2, 1.0).unwrap();
        assert_eq!((c.lower, c.upper), (Some(1.0), 1.0));
        let c = comparison_constants(2, 1.5).unwrap();
        assert!((c.lower.unwrap() - 2.324).abs() < 1e-3);
        assert!((c.upper - 225.55).abs() < 1e-2);
        let c = comparison_constants(2, 0.5).unwrap();
        assert_eq!(c.regime, Regime::OneSided);
        assert_eq!(c.lower, None);
        assert!(rel(c.upper, 1.0 / (4.0 * PI)) < 1e-14);
    }

    #[test]
    fn lower_constant_is_sharp_on_balls() {
        for &q in &[1.1, 1.3, 1.5, 1.9] {
            let e = Exponent::planar(q).unwrap();
            let c = comparison_constants(2, q).unwrap();
            assert!(c.lower.unwrap() <= c.upper);
            for &r in &[0.5, 1.0, 3.0] {
                let lhs = c.lower.unwrap() * (2.0f64 / r).powf(e.cheeger_power());
                assert!(rel(lhs, hq_ball(e, r).unwrap()) < 1e-12);
            }
            let k = e.cheeger_power();
            assert!(k > 0.0 && k < 1.0);
        }
    }

    #[test]
    fn bundle() {
        let b = constant_bundle(2, 1.5).unwrap();
        assert_eq!(b.a, Some(1.0));
        assert!((b.b.unwrap() - 16.0).abs() < 1e-12);
        let json = serde_json::to_value(b).unwrap();
        assert!(json.get("C_upper").is_some());
        let half = constant_bundle(2, 0.5).unwrap();
        assert_eq!(half.c_moser, None);
        assert!(constant_bundle(2, 2.0).is_err());
    }
}
