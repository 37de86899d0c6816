//! Homogeneous polynomials of degree `k - 2` in `X, Y`, the right action
//! `(P|g)(X, Y) = P(aX + bY, cX + dY)`, the period relations cutting out
//! `W_k`, and the explicit Hecke elements `T_n` with the pairing
//! `<P, T> = sum alpha_g P(b, d)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{big, binomial, common_denominator, divisors, int, HeckeElement, Mat2, Rational};
use crate::error::Error;
use crate::qseries::QSeries;

/// Element of `V_k`: `sum_i c_i X^{k-2-i} Y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    weight: u32,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(weight: u32) -> Self {
        assert!(weight >= 2, "weight must be at least 2");
        Self { weight, coeffs: vec![Rational::zero(); weight as usize - 1] }
    }

    /// Coefficients indexed by the power of `Y`.
    pub fn from_coeffs(weight: u32, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if weight < 2 || coeffs.len() != weight as usize - 1 {
            return Err(Error::InvalidParameter(format!(
                "weight {weight} needs {} coefficients, got {}",
                weight.saturating_sub(1),
                coeffs.len()
            )));
        }
        Ok(Self { weight, coeffs })
    }

    /// Sum of `coeff * X^x Y^y` terms; repeated monomials add up.
    pub fn from_monomials(
        weight: u32,
        monomials: impl IntoIterator<Item = (u32, u32, Rational)>,
    ) -> Result<Self, Error> {
        if weight < 2 {
            return Err(Error::InvalidParameter(format!("weight {weight} is below 2")));
        }
        let mut p = Self::zero(weight);
        for (x, y, c) in monomials {
            if x + y != weight - 2 {
                return Err(Error::InvalidParameter(format!(
                    "monomial X^{x} Y^{y} is not of degree {}",
                    weight - 2
                )));
            }
            p.coeffs[y as usize] += c;
        }
        Ok(p)
    }

    /// `c X^x Y^y` with `x + y = weight - 2`.
    pub fn monomial(weight: u32, y: u32, c: Rational) -> Self {
        let mut p = Self::zero(weight);
        p.coeffs[y as usize] = c;
        p
    }

    /// `X^{k-2} - Y^{k-2}`, the period polynomial of the Eisenstein series
    /// up to the factor `L*(1)`.
    pub fn eisenstein(weight: u32) -> Self {
        let mut p = Self::zero(weight);
        p.coeffs[0] = Rational::one();
        let last = p.degree() as usize;
        p.coeffs[last] -= Rational::one();
        p
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn degree(&self) -> u32 {
        self.weight - 2
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^{deg - y} Y^y`.
    pub fn coeff_y(&self, y: u32) -> &Rational {
        &self.coeffs[y as usize]
    }

    /// Nonzero terms as `(x, y, coeff)`.
    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        let deg = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(y, c)| (deg - y as u32, y as u32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { weight: self.weight, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Monomials `X^{r-1} Y^{s-1}` with both exponents even.
    pub fn even_part(&self) -> Self {
        self.filter_parity(0)
    }

    /// Monomials with both exponents odd.
    pub fn odd_part(&self) -> Self {
        self.filter_parity(1)
    }

    fn filter_parity(&self, keep: usize) -> Self {
        let deg = self.degree() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(y, c)| {
                if y % 2 == keep && (deg - y) % 2 == keep { c.clone() } else { Rational::zero() }
            })
            .collect();
        Self { weight: self.weight, coeffs }
    }

    pub fn is_even(&self) -> bool {
        *self == self.even_part()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // homogeneous Horner: acc = acc * x + c_i y^i
        let mut acc = Rational::zero();
        let mut ypow = Rational::one();
        for c in &self.coeffs {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        acc
    }

    /// `P | g`.
    pub fn act_matrix(&self, g: &Mat2) -> HomPoly {
        let ev = IntPoly::new(self);
        let out = ev.act(g);
        let den = big(ev.den.clone());
        HomPoly {
            weight: self.weight,
            coeffs: out.into_iter().map(|v| big(v) / &den).collect(),
        }
    }

    /// `P | T` for a group-ring element, extended linearly.
    pub fn act_element(&self, t: &HeckeElement) -> HomPoly {
        let ev = IntPoly::new(self);
        let mut acc = Self::zero(self.weight);
        for (alpha, g) in t.terms() {
            let image = ev.act(g);
            for (a, v) in acc.coeffs.iter_mut().zip(image) {
                if !v.is_zero() {
                    *a += alpha * big(v);
                }
            }
        }
        let den = big(ev.den);
        acc.coeffs.iter_mut().for_each(|c| *c /= &den);
        acc
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;
    fn add(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.weight, rhs.weight, "adding polynomials of different weight");
        HomPoly {
            weight: self.weight,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.weight, rhs.weight, "subtracting polynomials of different weight");
        HomPoly {
            weight: self.weight,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        HomPoly { weight: self.weight, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y, c) in self.monomials() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (x == 0 && y == 0) {
                parts.push(format!("{mag}"));
            }
            match x {
                0 => {}
                1 => parts.push("X".into()),
                _ => parts.push(format!("X^{x}")),
            }
            match y {
                0 => {}
                1 => parts.push("Y".into()),
                _ => parts.push(format!("Y^{y}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Integer numerators over a common denominator; used on hot paths so the
/// action and evaluations run in `BigInt`.
struct IntPoly {
    den: BigInt,
    nums: Vec<BigInt>,
}

impl IntPoly {
    fn new(p: &HomPoly) -> Self {
        let den = common_denominator(&p.coeffs);
        let nums = p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self { den, nums }
    }

    fn degree(&self) -> usize {
        self.nums.len() - 1
    }

    /// Numerator of `P(b, d)`.
    fn eval(&self, b: i64, d: i64) -> BigInt {
        let b = BigInt::from(b);
        let d = BigInt::from(d);
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for (i, c) in self.nums.iter().enumerate() {
            acc *= &b;
            if !c.is_zero() {
                acc += c * &dpow;
            }
            if i < self.nums.len() - 1 {
                dpow *= &d;
            }
        }
        acc
    }

    /// Numerators of `P | g`, indexed by the power of `Y`.
    fn act(&self, g: &Mat2) -> Vec<BigInt> {
        let deg = self.degree();
        let first = linear_powers(g.a, g.b, deg);
        let second = linear_powers(g.c, g.d, deg);
        let mut out = vec![BigInt::zero(); deg + 1];
        for (i, c) in self.nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lhs = &first[deg - i];
            let rhs = &second[i];
            for (s, u) in lhs.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let cu = c * u;
                for (t, v) in rhs.iter().enumerate() {
                    if !v.is_zero() {
                        out[s + t] += &cu * v;
                    }
                }
            }
        }
        out
    }
}

/// `(uX + vY)^j` for `j = 0..=deg`, each as coefficients by power of `Y`.
fn linear_powers(u: i64, v: i64, deg: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(deg + 1);
    out.push(vec![BigInt::one()]);
    for j in 1..=deg {
        let prev: &Vec<BigInt> = &out[j - 1];
        let mut next = vec![BigInt::zero(); j + 1];
        for (t, c) in prev.iter().enumerate() {
            next[t] += c * u;
            next[t + 1] += c * v;
        }
        out.push(next);
    }
    out
}

/// `P | (1 + S)`.
pub fn relation_s(p: &HomPoly) -> HomPoly {
    p + &p.act_matrix(&Mat2::S)
}

/// `P | (1 + U + U^2)`.
pub fn relation_u(p: &HomPoly) -> HomPoly {
    let u2 = Mat2::U.mul(&Mat2::U);
    &(p + &p.act_matrix(&Mat2::U)) + &p.act_matrix(&u2)
}

/// Membership in `W_k`: both period relations hold exactly.
pub fn is_in_wk(p: &HomPoly) -> bool {
    relation_s(p).is_zero() && relation_u(p).is_zero()
}

/// `T_n` in three parts. `t1` carries each matrix together with its
/// `[[a, -b], [-c, d]]` companion as two explicit terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeSplit {
    pub t1: HeckeElement,
    pub t2: HeckeElement,
    pub t3: HeckeElement,
}

impl HeckeSplit {
    pub fn total(&self) -> HeckeElement {
        self.t1
            .sum(&self.t2)
            .and_then(|t| t.sum(&self.t3))
            .expect("parts share the determinant")
    }

    pub fn part(&self, part: HeckePart) -> HeckeElement {
        match part {
            HeckePart::T1 => self.t1.clone(),
            HeckePart::T2 => self.t2.clone(),
            HeckePart::T3 => self.t3.clone(),
            HeckePart::Full => self.total(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckePart {
    T1,
    T2,
    T3,
    Full,
}

/// Enumerates the three parts of `T_n`.
pub fn hecke_element(n: u64) -> HeckeSplit {
    assert!(n >= 1, "Hecke index must be positive");
    let n = n as i64;
    let mut t1 = Vec::new();
    // a > c > 0, d > -b > 0, ad - bc = n; write b = -e with e >= 1
    let mut c = 1;
    while 3 * c + 2 <= n {
        let mut e = 1;
        while (c + 1) * (e + 1) + e * c <= n {
            let rest = n - e * c;
            let mut a = c + 1;
            while a * (e + 1) <= rest {
                if rest % a == 0 {
                    let d = rest / a;
                    t1.push(Mat2::new(a, -e, c, d));
                    t1.push(Mat2::new(a, e, -c, d));
                }
                a += 1;
            }
            e += 1;
        }
        c += 1;
    }
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    for a in divisors(n as u64) {
        let a = a as i64;
        let d = n / a;
        // -d/2 < b <= d/2
        for b in -((d - 1) / 2)..=d / 2 {
            t2.push(Mat2::new(a, b, 0, d));
        }
        // -a/2 < c <= a/2, c != 0
        for c in (-((a - 1) / 2)..=a / 2).filter(|&c| c != 0) {
            t3.push(Mat2::new(a, 0, c, d));
        }
    }
    let build = |ms: Vec<Mat2>| HeckeElement::from_matrices(n, ms).expect("determinant n by construction");
    HeckeSplit { t1: build(t1), t2: build(t2), t3: build(t3) }
}

/// `<P, T> = sum alpha_g P(b, d)`.
pub fn pairing(p: &HomPoly, t: &HeckeElement) -> Rational {
    let ev = IntPoly::new(p);
    let mut acc = Rational::zero();
    for (alpha, g) in t.terms() {
        acc += alpha * big(ev.eval(g.b, g.d));
    }
    acc / big(ev.den)
}

/// `sum_{n=1}^{order} <P, part of T_n> q^n` by direct matrix enumeration.
pub fn hecke_generating_series(p: &HomPoly, part: HeckePart, order: usize) -> QSeries {
    let ev = IntPoly::new(p);
    let den = big(ev.den.clone());
    QSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        let split = hecke_element(n as u64);
        let el = split.part(part);
        let mut acc = BigInt::zero();
        for (alpha, g) in el.terms() {
            debug_assert!(alpha.is_one());
            acc += ev.eval(g.b, g.d);
        }
        big(acc) / &den
    })
}

/// A candidate even period polynomial together with `L*(1)`, read off as the
/// coefficient of `X^{k-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodData {
    poly: HomPoly,
    l1: Rational,
}

impl PeriodData {
    /// Validates an even period polynomial: weight even and at least 4,
    /// even part only, element of `W_k`, and `[Y^{k-2}] = -[X^{k-2}]`.
    pub fn new(poly: HomPoly) -> Result<Self, Error> {
        let k = poly.weight();
        if k < 4 || k % 2 == 1 {
            return Err(Error::InvalidPeriodData(format!("weight {k} is not an even integer >= 4")));
        }
        if !poly.is_even() {
            return Err(Error::InvalidPeriodData("polynomial has odd monomials".into()));
        }
        let l1 = poly.coeff_y(0).clone();
        if *poly.coeff_y(poly.degree()) != -&l1 {
            return Err(Error::InvalidPeriodData("coefficient of Y^(k-2) is not -L*(1)".into()));
        }
        if !relation_s(&poly).is_zero() {
            return Err(Error::InvalidPeriodData("P|(1+S) does not vanish".into()));
        }
        if !relation_u(&poly).is_zero() {
            return Err(Error::InvalidPeriodData("P|(1+U+U^2) does not vanish".into()));
        }
        Ok(Self { poly, l1 })
    }

    pub fn poly(&self) -> &HomPoly {
        &self.poly
    }

    pub fn l1(&self) -> &Rational {
        &self.l1
    }

    pub fn weight(&self) -> u32 {
        self.poly.weight()
    }

    pub fn scaled(&self, mu: &Rational) -> Self {
        Self { poly: self.poly.scale(mu), l1: &self.l1 * mu }
    }
}

/// `36/691 (X^10 - Y^10) - X^2 Y^2 (X^2 - Y^2)^3`, the weight-12 cusp
/// period polynomial in the normalisation `Delta / (45 L*(9))`.
pub fn delta_example() -> HomPoly {
    let l1 = crate::algebra::rat(36, 691);
    HomPoly::from_monomials(
        12,
        [
            (10, 0, l1.clone()),
            (0, 10, -l1),
            (8, 2, int(-1)),
            (6, 4, int(3)),
            (4, 6, int(-3)),
            (2, 8, int(1)),
        ],
    )
    .expect("degree 10 monomials")
}

/// `C(n, k)` as a rational.
pub(crate) fn binom_q(n: u32, k: u32) -> Rational {
    big(binomial(n as u64, k as u64))
}
