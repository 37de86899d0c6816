//! Outcome records for exact and numeric verifications.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use crate::algebra::Rational;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Detail {
    /// Coefficientwise comparison of two q-series. `mismatch` holds the first
    /// differing exponent with both values.
    Exact { order: usize, mismatch: Option<(usize, Rational, Rational)> },
    /// Residual against a tolerance. `bound` is the accumulated numeric error
    /// bound of the inputs.
    Numeric { residual: f64, tol: f64, bound: f64 },
    Message(String),
}

impl fmt::Display for Detail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detail::Exact { order, mismatch: None } => write!(f, "exact match to q^{order}"),
            Detail::Exact { mismatch: Some((n, lhs, rhs)), .. } => {
                write!(f, "first mismatch at q^{n}: lhs {lhs}, rhs {rhs}")
            }
            Detail::Numeric { residual, tol, bound } => {
                write!(f, "residual {residual:.3e} (tol {tol:.1e}, error bound {bound:.3e})")
            }
            Detail::Message(m) => f.write_str(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub detail: Detail,
    /// Filled in by callers that have a clock; the core crate leaves it 0.
    pub runtime_ms: u64,
}

impl RelationReport {
    pub fn new(check: impl Into<String>, status: Status, detail: Detail) -> Self {
        Self { check: check.into(), params: BTreeMap::new(), status, detail, runtime_ms: 0 }
    }

    pub fn from_error(check: impl Into<String>, err: &Error) -> Self {
        Self::new(check, Status::Error, Detail::Message(err.to_string()))
    }

    /// Pass iff no mismatch.
    pub fn exact(check: impl Into<String>, order: usize, mismatch: Option<(usize, Rational, Rational)>) -> Self {
        let status = if mismatch.is_none() { Status::Pass } else { Status::Fail };
        Self::new(check, status, Detail::Exact { order, mismatch })
    }

    /// Pass iff `residual <= tol` and the residual is a number.
    pub fn numeric(check: impl Into<String>, residual: f64, tol: f64, bound: f64) -> Self {
        let status = if residual <= tol { Status::Pass } else { Status::Fail };
        Self::new(check, status, Detail::Numeric { residual, tol, bound })
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
