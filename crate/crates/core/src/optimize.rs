// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Derivative-free minimization: adaptive Nelder–Mead with restarts.

#[derive(Clone, Debug)]
pub struct NelderMeadOptions {
    /// Iteration cap per run.
    pub max_iters: usize,
    /// Stop when `(f_worst - f_best) <= tol_rel * |f_best|`.
    pub tol_rel: f64,
    /// Dimension-dependent coefficients (Gao–Han) instead of the classic ones.
    pub adaptive: bool,
    /// Restarts from the incumbent with the step shrunk by `restart_shrink`.
    pub max_restarts: usize,
    pub restart_shrink: f64,
    /// Also stop, as converged, once the best value has improved by at most
    /// `tol_rel * |f_best|` over this many iterations.
    pub stall_iters: Option<usize>,
    /// Cap on objective evaluations, shared by all restarts. A run stopped by
    /// it is not converged.
    pub max_evals: Option<usize>,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iters: 10_000,
            tol_rel: 1e-8,
            adaptive: true,
            max_restarts: 3,
            restart_shrink: 0.5,
            stall_iters: None,
            max_evals: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of edge
/// lengths `steps`, restarting around the incumbent until a restart stops
/// improving.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    steps: &[f64],
    opts: &NelderMeadOptions,
) -> Minimum {
    let budget = opts.max_evals.unwrap_or(usize::MAX);
    let mut best = single_run(&mut f, x0, steps, opts, budget);
    let mut step: Vec<f64> = steps.to_vec();
    for _ in 0..opts.max_restarts {
        if best.evaluations >= budget {
            break;
        }
        step.iter_mut().for_each(|s| *s *= opts.restart_shrink);
        let run = single_run(&mut f, &best.x, &step, opts, budget - best.evaluations);
        let improved = run.value < best.value - opts.tol_rel * best.value.abs();
        let total_iters = best.iterations + run.iterations;
        let total_evals = best.evaluations + run.evaluations;
        if run.value <= best.value {
            best = Minimum { iterations: total_iters, evaluations: total_evals, ..run };
        } else {
            best.iterations = total_iters;
            best.evaluations = total_evals;
            best.converged = best.converged || run.converged;
        }
        if !improved {
            break;
        }
    }
    best
}

fn single_run<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    steps: &[f64],
    opts: &NelderMeadOptions,
    budget: usize,
) -> Minimum {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = if opts.adaptive && n > 1 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evaluations);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let mut anchor = (0usize, f64::INFINITY);
    while iterations < opts.max_iters && evaluations < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let fbest = simplex[0].1;
        let fworst = simplex[n].1;
        if fworst.is_finite() && fworst - fbest <= opts.tol_rel * fbest.abs() + f64::MIN_POSITIVE {
            converged = true;
            break;
        }
        if let Some(window) = opts.stall_iters {
            if anchor.1 - fbest > opts.tol_rel * fbest.abs() {
                anchor = (iterations, fbest);
            } else if iterations - anchor.0 >= window {
                converged = true;
                break;
            }
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (x, _) in simplex.iter().take(n) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / nf;
            }
        }
        let worst = simplex[n].0.clone();
        let along = |coef: f64, out: &mut Vec<f64>| {
            for i in 0..n {
                out[i] = centroid[i] + coef * (centroid[i] - worst[i]);
            }
        };

        along(alpha, &mut trial);
        let fr = eval(&trial, &mut evaluations);
        if fr < simplex[0].1 {
            let reflected = trial.clone();
            along(alpha * beta, &mut trial);
            let fe = eval(&trial, &mut evaluations);
            simplex[n] = if fe < fr { (trial.clone(), fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (trial.clone(), fr);
            continue;
        }
        // Contraction, outside or inside.
        let outside = fr < simplex[n].1;
        along(if outside { alpha * gamma } else { -gamma }, &mut trial);
        let fc = eval(&trial, &mut evaluations);
        if (outside && fc <= fr) || (!outside && fc < simplex[n].1) {
            simplex[n] = (trial.clone(), fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for i in 0..n {
                x[i] = best[i] + delta * (x[i] - best[i]);
            }
            *v = eval(x, &mut evaluations);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations, evaluations, converged }
}
