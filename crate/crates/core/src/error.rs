// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid exponent (N = {dim}, q = {q}): {reason}")]
    InvalidExponent { dim: u32, q: f64, reason: String },

    #[error("degenerate shape: {0}")]
    Degenerate(String),

    #[error("shape is not convex: {0}")]
    NotConvex(String),

    #[error("origin must lie strictly inside the polygon (margin {margin:e})")]
    OriginNotInterior { margin: f64 },

    #[error(
        "mollification index n = {n} is too small: C_E/n = {ratio:.4} must stay below 1; use n > {min_n}"
    )]
    RefineN { n: u32, ratio: f64, min_n: u32 },

    #[error("invalid shape description: {0}")]
    InvalidShape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("containment check failed: {0}")]
    Containment(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
