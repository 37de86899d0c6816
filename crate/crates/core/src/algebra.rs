//! Exact scalars and the small combinatorial toolbox shared by every other
//! module: rationals, binomials, Bernoulli numbers, divisor sums, and the
//! integer matrices that make up Hecke elements.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Lossy conversion used by the numeric side only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Bernoulli numbers in the `B_1 = +1/2` convention, computed once up to a
/// fixed index and then read back.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Table holding `B_0 ..= B_max`.
    pub fn new(max: usize) -> Self {
        // sum_{i=0}^{m} C(m+1, i) B_i = m + 1
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut acc = int(m as i64 + 1);
            for (i, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc -= b * big(binomial(m as u64 + 1, i as u64));
                }
            }
            values.push(acc / int(m as i64 + 1));
        }
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `B_j`; panics if `j` exceeds the table.
    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j]
    }
}

/// `B_j` with `B_1 = +1/2`.
pub fn bernoulli_plus(j: usize) -> Rational {
    BernoulliTable::new(j).get(j).clone()
}

/// `sigma_p(n) = sum_{d | n} d^p`.
pub fn divisor_sigma(p: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    acc
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least common multiple of the denominators of `values` (1 for an empty
/// slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Content-free integer representative of a rational vector: multiply by
/// the common denominator, then divide by the gcd of the numerators.
/// The sign is left untouched.
pub fn primitive_part(values: &[Rational]) -> Vec<Rational> {
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return values.to_vec();
    }
    ints.into_iter().map(|v| big(v / &g)).collect()
}

/// `2 x 2` integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);
    /// `S = [[0, -1], [1, 0]]`.
    pub const S: Mat2 = Mat2::new(0, -1, 1, 0);
    /// `U = [[1, -1], [1, 0]]`.
    pub const U: Mat2 = Mat2::new(1, -1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Element of the group ring `Q[M_n]`: a formal rational combination of
/// integer matrices that all have determinant `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    det: i64,
    terms: Vec<(Rational, Mat2)>,
}

impl HeckeElement {
    pub fn new(det: i64) -> Self {
        Self { det, terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self { det: 1, terms: alloc::vec![(Rational::one(), Mat2::IDENTITY)] }
    }

    /// Sum of the given matrices, each with coefficient one.
    pub fn from_matrices(det: i64, matrices: impl IntoIterator<Item = Mat2>) -> Result<Self, Error> {
        let mut out = Self::new(det);
        for m in matrices {
            out.push(Rational::one(), m)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, coeff: Rational, m: Mat2) -> Result<(), Error> {
        if m.det() != self.det {
            return Err(Error::DeterminantMismatch { expected: self.det, found: m.det() });
        }
        self.terms.push((coeff, m));
        Ok(())
    }

    /// Formal sum of two elements of the same determinant.
    pub fn sum(&self, other: &HeckeElement) -> Result<HeckeElement, Error> {
        if other.det != self.det {
            return Err(Error::DeterminantMismatch { expected: self.det, found: other.det });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self { det: self.det, terms })
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn terms(&self) -> &[(Rational, Mat2)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Matrices only, in insertion order.
    pub fn matrices(&self) -> impl Iterator<Item = &Mat2> {
        self.terms.iter().map(|(_, m)| m)
    }
}

/// Sign helper: `(-1)^e`.
pub fn neg_one_pow(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}
