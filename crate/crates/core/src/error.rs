use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix was added to a Hecke element of a different determinant.
    DeterminantMismatch { expected: i64, found: i64 },
    /// Read past the truncation order of a q-series.
    BeyondOrder { index: usize, order: usize },
    /// The Eulerian-polynomial construction left a nonzero coefficient above
    /// degree `k - 1`.
    EulerianInconsistent { weight: u32, degree: usize },
    /// Exact nullspace of the period relations has the wrong dimension.
    DimensionMismatch { weight: u32, expected: usize, found: usize },
    /// The cuspidal part of `W_k^ev` is more than one-dimensional, so the
    /// `T_2` eigenvalues are not guaranteed rational. Carries the
    /// characteristic polynomial of `T_2` on the cuspidal complement, lowest
    /// degree first.
    IrrationalEigenvalues { weight: u32, charpoly: Vec<Rational> },
    /// The weight has no cusp forms.
    NoCuspForm { weight: u32 },
    /// A period polynomial failed a structural check.
    InvalidPeriodData(String),
    /// Numeric tolerance not reachable within the term budget.
    BudgetExceeded { what: String, tol: f64, budget: u64 },
    /// Truncation order too small for the requested evaluation point.
    OrderTooSmall { order: usize, q: f64 },
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DeterminantMismatch { expected, found } => {
                write!(f, "matrix of determinant {found} in an element of determinant {expected}")
            }
            Error::BeyondOrder { index, order } => {
                write!(f, "coefficient q^{index} requested from a series truncated at order {order}")
            }
            Error::EulerianInconsistent { weight, degree } => {
                write!(f, "Eulerian polynomial Q_{weight} has a surviving coefficient in degree {degree}")
            }
            Error::DimensionMismatch { weight, expected, found } => write!(
                f,
                "W_{weight}^ev has dimension {found}, expected dim M_{weight} = {expected}"
            ),
            Error::IrrationalEigenvalues { weight, charpoly } => {
                write!(f, "weight {weight}: cuspidal T_2 characteristic polynomial [")?;
                for (i, c) in charpoly.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "] (coefficients of x^0, x^1, ...)")
            }
            Error::NoCuspForm { weight } => write!(f, "there are no cusp forms of weight {weight}"),
            Error::InvalidPeriodData(msg) => write!(f, "invalid period polynomial: {msg}"),
            Error::BudgetExceeded { what, tol, budget } => {
                write!(f, "{what}: tolerance {tol:e} not reachable within {budget} terms")
            }
            Error::OrderTooSmall { order, q } => {
                write!(f, "truncation order {order} too small for evaluation at q = {q}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}
