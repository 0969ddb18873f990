//! Sampled verification suites.
//!
//! Each suite evaluates both sides of a claim on a grid and records the
//! oriented margin (positive when the claim holds). Suites run their grid
//! points in parallel and report them in grid order.

mod functions;
mod grid;
mod suites;

pub use functions::{
    h_derivative_signed, h_minus_one, h_value, kernel_w, poly_bound_margin, H_MERGE_THRESHOLD,
    KERNEL_SERIES_SWITCH,
};
pub use grid::{Grid, GridSpec, Spacing};
pub use suites::{
    check_cm_direct, check_cm_laplace, check_inequality, check_limit, check_representations,
    run_suite, InequalitySuite, CM_AGREEMENT, POLYBOUND_GUARD,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// One evaluated point of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckEntry {
    pub t: f64,
    pub k: Option<u32>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: SuiteId,
    pub grid: GridSpec,
    pub k_max: Option<u32>,
    pub tol: f64,
    pub entries: Vec<CheckEntry>,
    pub min_margin: f64,
    pub pass: bool,
    pub elapsed_seconds: f64,
    /// Points that failed to evaluate, and any suite-level condition that
    /// does not fit a per-point margin.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Ineq1,
    Thm13,
    Polybound,
    KernelPos,
    CmDirect,
    CmLaplace,
    Representations,
    Limit,
}

impl SuiteId {
    pub const ALL: [SuiteId; 8] = [
        SuiteId::Ineq1,
        SuiteId::Thm13,
        SuiteId::Polybound,
        SuiteId::KernelPos,
        SuiteId::CmDirect,
        SuiteId::CmLaplace,
        SuiteId::Representations,
        SuiteId::Limit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Ineq1 => "ineq1",
            SuiteId::Thm13 => "thm13",
            SuiteId::Polybound => "polybound",
            SuiteId::KernelPos => "kernel_pos",
            SuiteId::CmDirect => "cm_direct",
            SuiteId::CmLaplace => "cm_laplace",
            SuiteId::Representations => "representations",
            SuiteId::Limit => "limit",
        }
    }

    /// Grid used when the caller does not override it.
    pub fn default_grid(self) -> GridSpec {
        let (lo, hi, count) = match self {
            SuiteId::Ineq1 => (1e-2, 1e3, 200),
            SuiteId::Thm13 => (1e-2, 50.0, 200),
            SuiteId::Polybound => (1e-3, 50.0, 200),
            SuiteId::KernelPos => (1e-4, 200.0, 1000),
            SuiteId::CmDirect => (0.1, 100.0, 200),
            SuiteId::CmLaplace => (0.1, 100.0, 200),
            SuiteId::Representations => (0.1, 100.0, 20),
            SuiteId::Limit => (10.0, 1e4, 50),
        };
        GridSpec {
            lo,
            hi,
            count,
            spacing: Spacing::Log,
        }
    }

    /// Highest derivative or tail order checked by default, for suites that
    /// have one.
    pub fn default_k_max(self) -> Option<u32> {
        match self {
            SuiteId::CmDirect | SuiteId::CmLaplace => Some(10),
            SuiteId::Representations => Some(5),
            _ => None,
        }
    }

    pub fn default_tol(self) -> f64 {
        1e-10
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| crate::error::domain(format!("unknown suite '{s}'")))
    }
}

impl Serialize for SuiteId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}
