// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Small numerical building blocks: Gamma function, unit-ball volumes,
//! Gauss–Legendre rules, golden-section search, the AGM ellipse perimeter
//! and log-log slope fitting.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function by the Lanczos approximation (g = 7, nine terms).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Volume `omega_N` of the unit ball in R^N.
pub fn unit_ball_volume(dim: u32) -> f64 {
    let n = dim as f64;
    PI.powf(n / 2.0) / gamma(n / 2.0 + 1.0)
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmin, min)`; the endpoints are compared as well.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Perimeter of the ellipse with semi-axes `a`, `b` through the
/// arithmetic-geometric mean:
/// `P = 2 pi / M(a, b) * (a^2 - sum_n 2^(n-1) c_n^2)`.
pub fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    let (mut an, mut bn) = if a >= b { (a, b) } else { (b, a) };
    let mut sum = 0.5 * (an * an - bn * bn);
    let mut pow = 0.5;
    for _ in 0..64 {
        let cn = 0.5 * (an - bn);
        let next_a = 0.5 * (an + bn);
        let next_b = (an * bn).sqrt();
        an = next_a;
        bn = next_b;
        pow *= 2.0;
        sum += pow * cn * cn;
        if cn.abs() <= 1e-17 * an {
            break;
        }
    }
    let big = if a >= b { a } else { b };
    2.0 * PI / an * (big * big - sum)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_known_points() {
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0];
        for (n, f) in fact.iter().enumerate() {
            let g = gamma(n as f64 + 1.0);
            assert!((g - f).abs() / f < 1e-13, "Gamma({}) = {g}", n + 1);
        }
        assert!((gamma(0.5) - PI.sqrt()).abs() / PI.sqrt() < 1e-13);
        assert!((gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-13);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-13);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 30 is integrated exactly: int x^30 = 2/31
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
        let odd: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(7)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn golden_section_parabola() {
        let (x, f) = golden_section(|t| (t - 0.3).powi(2) + 1.0, 0.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((f - 1.0).abs() < 1e-15);
        let (x, _) = golden_section(|t| t, 0.0, 1.0, 1e-10);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn ellipse_perimeter_against_quadrature() {
        assert!((ellipse_perimeter(1.0, 1.0) - 2.0 * PI).abs() < 1e-14);
        // Oracle: composite Gauss–Legendre on the arc-length integrand.
        let (x, w) = gauss_legendre(40);
        for &(a, b) in &[(2.0, 1.0), (10.0, 1.0), (1.0, 0.3)] {
            let panels = 200;
            let h = 0.5 * PI / panels as f64;
            let mut s = 0.0;
            for k in 0..panels {
                let mid = (k as f64 + 0.5) * h;
                for (xi, wi) in x.iter().zip(&w) {
                    let t: f64 = mid + 0.5 * h * xi;
                    s += 0.5 * h * wi * ((a * t.sin()).powi(2) + (b * t.cos()).powi(2)).sqrt();
                }
            }
            let p = ellipse_perimeter(a, b);
            assert!((p - 4.0 * s).abs() / p < 1e-12, "{a} {b}: {p} vs {}", 4.0 * s);
            assert_eq!(p, ellipse_perimeter(b, a));
        }
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 10.0, 100.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.5)).collect();
        assert!((loglog_slope(&xs, &ys) + 1.5).abs() < 1e-12);
    }
}
