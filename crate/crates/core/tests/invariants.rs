// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Invariants of the solver estimates under scaling, translation and
//! inclusion, on randomly drawn rectangles and disks.

use std::f64::consts::PI;

use cheeger_core::solver::{estimate, ShapeSpec, SolverOptions};
use cheeger_core::{Exponent, Point};
use proptest::prelude::*;

fn opts() -> SolverOptions {
    SolverOptions { vertex_count: 24, multistarts: 1, ..SolverOptions::default() }
}

fn h(shape: &ShapeSpec, q: f64) -> f64 {
    estimate(shape, Exponent::planar(q).unwrap(), &opts()).unwrap().value
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn rect(width: f64, height: f64, x: f64, y: f64) -> ShapeSpec {
    ShapeSpec::Rectangle { width, height, origin: Point::new(x, y) }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn scaling(w in 0.5..3.0f64, ht in 0.5..3.0f64, t in 0.2..5.0f64, q in 1.05..1.95f64) {
        let base = rect(w, ht, 0.0, 0.0);
        let lhs = h(&base.scaled(t).unwrap(), q);
        let rhs = t.powf(1.0 - 2.0 / q) * h(&base, q);
        prop_assert!(rel(lhs, rhs) < 1e-3, "{lhs} vs {rhs}");
    }

    #[test]
    fn translation(w in 0.5..3.0f64, ht in 0.5..3.0f64, x in -50.0..50.0f64, y in -50.0..50.0f64, q in 0.3..1.95f64) {
        let a = h(&rect(w, ht, 0.0, 0.0), q);
        let b = h(&rect(w, ht, x, y), q);
        prop_assert!(rel(a, b) < 1e-3, "{a} vs {b}");
    }

    #[test]
    fn nested_rectangles(w in 0.5..3.0f64, ht in 0.5..3.0f64, gw in 0.0..2.0f64, gh in 0.0..2.0f64, q in 1.05..1.95f64) {
        let inner = h(&rect(w, ht, 0.0, 0.0), q);
        let outer = h(&rect(w + gw, ht + gh, -0.5 * gw, -0.5 * gh), q);
        prop_assert!(outer <= inner * (1.0 + 1e-3), "outer {outer} > inner {inner}");
    }

    #[test]
    fn nested_disks(r in 0.1..5.0f64, grow in 0.0..5.0f64, cx in -1.0..1.0f64, q in 0.1..1.95f64) {
        let inner = ShapeSpec::Disk { center: Point::new(cx * grow, 0.0), radius: r };
        let outer = ShapeSpec::Disk { center: Point::ORIGIN, radius: r + grow };
        prop_assert!(h(&outer, q) <= h(&inner, q) * (1.0 + 1e-12));
    }

    #[test]
    fn isoperimetric_floor(w in 0.2..5.0f64, ht in 0.2..5.0f64, q in 0.3..1.95f64) {
        // No subset beats a disk of the full area.
        let floor = 2.0 * PI.sqrt() * (w * ht).powf(0.5 - 1.0 / q);
        let est = estimate(&rect(w, ht, 0.0, 0.0), Exponent::planar(q).unwrap(), &opts()).unwrap();
        prop_assert!(est.value >= floor * (1.0 - 1e-9));
        prop_assert!(est.lower_bound <= est.value);
    }
}
