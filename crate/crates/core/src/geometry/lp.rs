// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Dense tableau simplex for `max c.z  s.t.  A z <= b, z >= 0` with `b >= 0`.
//!
//! The problems solved here have a handful of columns and at most a few
//! hundred rows, so a dense tableau with Bland's rule is plenty.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 100_000;

#[derive(Clone, Debug)]
pub(crate) struct LpSolution {
    pub z: Vec<f64>,
    pub objective: f64,
}

pub(crate) fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::Lp("inconsistent dimensions".into()));
    }
    if b.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::Lp("origin must be feasible (b >= 0)".into()));
    }
    let width = n + m + 1;
    // Row m is the objective row holding reduced costs -c.
    let mut t = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let row = &mut t[i * width..(i + 1) * width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[width - 1] = b[i];
    }
    for j in 0..n {
        t[m * width + j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..MAX_PIVOTS {
        let obj = &t[m * width..(m + 1) * width];
        let Some(enter) = (0..n + m).find(|&j| obj[j] < -PIVOT_EPS) else {
            let mut z = vec![0.0; n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    z[bv] = t[i * width + width - 1];
                }
            }
            return Ok(LpSolution { z, objective: t[m * width + width - 1] });
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let coef = t[i * width + enter];
            if coef > PIVOT_EPS {
                let ratio = t[i * width + width - 1] / coef;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[l])
                    }
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(row) = leave else {
            return Err(Error::Lp("objective is unbounded".into()));
        };
        pivot(&mut t, width, m, row, enter);
        basis[row] = enter;
    }
    Err(Error::Lp("pivot limit reached".into()))
}

fn pivot(t: &mut [f64], width: usize, m: usize, row: usize, col: usize) {
    let p = t[row * width + col];
    for j in 0..width {
        t[row * width + j] /= p;
    }
    let pivot_row: Vec<f64> = t[row * width..(row + 1) * width].to_vec();
    for i in 0..=m {
        if i == row {
            continue;
        }
        let f = t[i * width + col];
        if f != 0.0 {
            let r = &mut t[i * width..(i + 1) * width];
            for j in 0..width {
                r[j] -= f * pivot_row[j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let s = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        )
        .unwrap();
        assert!((s.objective - 36.0).abs() < 1e-12);
        assert!((s.z[0] - 2.0).abs() < 1e-12 && (s.z[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_detected() {
        let r = maximize(&[1.0, 0.0], &[vec![0.0, 1.0]], &[1.0]);
        assert!(matches!(r, Err(Error::Lp(_))));
    }
}
