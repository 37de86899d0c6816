//! binary64 evaluation of `zeta(k)`, `zeta_hat(r, s)`, classical and
//! level-2 double zeta values and `Li_{r,s}(-1)`, each with an error bound,
//! plus the residual checks built on them.
//!
//! Tails are handled by Euler-Maclaurin expansions in inverse powers. The
//! remainder of each expansion is bounded by its first omitted term, which
//! holds because every summand is completely monotone.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::to_f64;
use crate::error::Error;
use crate::heckespace::RelationCoefficients;
use crate::qseries::QSeries;
use crate::report::{Detail, RelationReport, Status};

/// Largest outer cutoff tried before giving up on a tolerance.
pub const TERM_BUDGET: u64 = 1 << 24;
/// Largest number of partial sums fed to the averaging scheme.
pub const ALTERNATING_BUDGET: u64 = 1 << 13;

const LN2: f64 = core::f64::consts::LN_2;
/// `B_2, B_4, ..., B_12`.
const BERNOULLI_EVEN: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
/// Below this index inner sums are added up term by term.
const DIRECT_BELOW: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumResult {
    pub value: f64,
    /// `|value - true value| <= error_bound`.
    pub error_bound: f64,
    pub terms_used: u64,
}

impl NumResult {
    fn new(value: f64, error_bound: f64, terms_used: u64) -> Self {
        let rounding = 4.0 * terms_used as f64 * f64::EPSILON * value.abs();
        Self { value, error_bound: error_bound + rounding, terms_used }
    }
}

/// `sum_i c_i * v_i` with the bounds combined accordingly.
fn combine(parts: &[(f64, NumResult)]) -> (f64, f64) {
    parts.iter().fold((0.0, 0.0), |(v, b), (c, r)| (v + c * r.value, b + c.abs() * r.error_bound))
}

fn inv_pow(n: f64, p: u32) -> f64 {
    libm::pow(n, -(p as f64))
}

fn rising(p: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (p + i as f64))
}

fn factorial_f(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `sum_t c_t x^{-e_t}` with `|remainder| <= sum_t |r_t| x^{-f_t}` over the
/// entries `(r_t, f_t)` of `rem`.
#[derive(Clone, Debug)]
struct PowerExpansion {
    terms: Vec<(f64, u32)>,
    rem: Vec<(f64, u32)>,
}

impl PowerExpansion {
    fn eval(&self, x: f64) -> (f64, f64) {
        let v = self.terms.iter().fold(0.0, |acc, &(c, e)| acc + c * inv_pow(x, e));
        let b = self.rem.iter().fold(0.0, |acc, &(c, e)| acc + c.abs() * inv_pow(x, e));
        (v, b)
    }

    /// `sum_{n > cut} n^{-s} * expansion(n)`.
    fn tail_against(&self, s: u32, cut: u64) -> (f64, f64) {
        let mut value = 0.0;
        let mut bound = 0.0;
        for &(c, e) in &self.terms {
            let (t, b) = power_tail(s + e, cut);
            value += c * t;
            bound += c.abs() * b;
        }
        for &(c, e) in &self.rem {
            let (t, b) = power_tail(s + e, cut);
            bound += c.abs() * (t + b);
        }
        (value, bound)
    }

    /// Expansion of `expansion(lambda x)` in `x`.
    fn dilate(&self, lambda: f64) -> Self {
        let map = |v: &[(f64, u32)]| v.iter().map(|&(c, e)| (c * libm::pow(lambda, -(e as f64)), e)).collect();
        Self { terms: map(&self.terms), rem: map(&self.rem) }
    }

    fn scale(&self, c: f64) -> Self {
        let map = |v: &[(f64, u32)]| v.iter().map(|&(a, e)| (a * c, e)).collect();
        Self { terms: map(&self.terms), rem: map(&self.rem) }
    }

    /// Product; the remainder collects every cross term involving a remainder.
    fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        let mut rem = Vec::new();
        for &(a, e) in &self.terms {
            for &(b, f) in &other.terms {
                terms.push((a * b, e + f));
            }
            for &(b, f) in &other.rem {
                rem.push((a.abs() * b.abs(), e + f));
            }
        }
        for &(a, e) in &self.rem {
            for &(b, f) in other.terms.iter().chain(&other.rem) {
                rem.push((a.abs() * b.abs(), e + f));
            }
        }
        Self { terms, rem }
    }
}

/// `sum_{n > m} n^{-p}` as an expansion in `m`.
fn tail_expansion(p: u32) -> PowerExpansion {
    let pf = p as f64;
    let mut terms = alloc::vec![(1.0 / (pf - 1.0), p - 1), (-0.5, p)];
    for j in 1..=5 {
        let c = BERNOULLI_EVEN[j - 1] / factorial_f(2 * j) * rising(pf, 2 * j - 1);
        terms.push((c, p + 2 * j as u32 - 1));
    }
    let rem = alloc::vec![(BERNOULLI_EVEN[5] / factorial_f(12) * rising(pf, 11), p + 11)];
    PowerExpansion { terms, rem }
}

/// `sum_{j=n+1}^{2n-1} j^{-r}` as an expansion in `n`; the `r = 1` leading
/// term `ln 2` is stored with exponent 0.
fn inner_hat_expansion(r: u32) -> PowerExpansion {
    let rf = r as f64;
    let lead = if r == 1 { LN2 } else { (1.0 - libm::pow(2.0, 1.0 - rf)) / (rf - 1.0) };
    let mut terms = alloc::vec![(lead, r - 1), (-(1.0 + libm::pow(2.0, -rf)) / 2.0, r)];
    let shrink = |p: u32| 1.0 - libm::pow(2.0, -(p as f64));
    for j in 1..=5 {
        let p = r + 2 * j as u32 - 1;
        terms.push((BERNOULLI_EVEN[j - 1] / factorial_f(2 * j) * rising(rf, 2 * j - 1) * shrink(p), p));
    }
    let p = r + 11;
    let rem = alloc::vec![(BERNOULLI_EVEN[5] / factorial_f(12) * rising(rf, 11) * shrink(p), p)];
    PowerExpansion { terms, rem }
}

/// `(2i)^{-r} + (2i+1)^{-r}` as an expansion in `i >= 1`, from the binomial
/// series of `(1 + 1/(2i))^{-r}` with its Lagrange remainder.
fn pair_expansion(r: u32) -> PowerExpansion {
    const L: u32 = 14;
    let base = libm::pow(2.0, -(r as f64));
    // |C(-r, l)| = C(r+l-1, l)
    let binom = |l: u32| (1..=l).fold(1.0, |acc, i| acc * (r + i - 1) as f64 / i as f64);
    let mut terms = alloc::vec![(2.0 * base, r)];
    for l in 1..=L {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((sign * base * binom(l) * libm::pow(2.0, -(l as f64)), r + l));
    }
    let rem = alloc::vec![(base * binom(L + 1) * libm::pow(2.0, -((L + 1) as f64)), r + L + 1)];
    PowerExpansion { terms, rem }
}

/// `sum_{n > m} n^{-p}` for `p >= 2`, with its error bound.
pub fn power_tail(p: u32, m: u64) -> (f64, f64) {
    assert!(p >= 2, "power tail diverges for p < 2");
    const START: u64 = 16;
    let mut head = 0.0;
    let from = m.max(START);
    for n in (m + 1..=START).rev() {
        head += inv_pow(n as f64, p);
    }
    let (v, b) = tail_expansion(p).eval(from as f64);
    (head + v, b)
}

/// `zeta(k)` for `k >= 2`.
pub fn zeta_num(k: u32) -> Result<NumResult, Error> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("zeta(k) needs k >= 2, got {k}")));
    }
    const CUT: u64 = 32;
    let (tail, bound) = power_tail(k, CUT);
    let head = (1..=CUT).rev().fold(0.0, |acc, n| acc + inv_pow(n as f64, k));
    Ok(NumResult::new(head + tail, bound, CUT))
}

fn check_double_args(r: u32, s: u32, what: &str) -> Result<(), Error> {
    if r < 1 || s < 2 {
        return Err(Error::InvalidParameter(format!("{what} needs r >= 1 and s >= 2, got ({r},{s})")));
    }
    Ok(())
}

/// Repeats `eval` with a growing cutoff until the bound meets `tol`.
fn until_tolerance(
    what: impl FnOnce() -> String,
    tol: f64,
    start: u64,
    budget: u64,
    step: u64,
    mut eval: impl FnMut(u64) -> NumResult,
) -> Result<NumResult, Error> {
    let mut cut = start;
    loop {
        let res = eval(cut);
        if res.error_bound <= tol {
            return Ok(res);
        }
        cut *= step;
        if cut > budget {
            return Err(Error::BudgetExceeded { what: what(), tol, budget });
        }
    }
}

/// `zeta_hat(r, s)` with the outer sum cut at `cut`.
pub fn zeta_hat_fixed(r: u32, s: u32, cut: u64) -> NumResult {
    let exp = inner_hat_expansion(r);
    let mut value = 0.0;
    let mut bound = 0.0;
    for n in (2..=cut).rev() {
        let nf = n as f64;
        let (inner, ib) = if n < DIRECT_BELOW {
            ((n + 1..2 * n).rev().fold(0.0, |acc, j| acc + inv_pow(j as f64, r)), 0.0)
        } else {
            exp.eval(nf)
        };
        let w = inv_pow(nf, s);
        value += w * inner;
        bound += w * ib;
    }
    let (t, tb) = exp.tail_against(s, cut);
    NumResult::new(value + t, bound + tb, cut)
}

/// `zeta_hat(r, s) = sum_{0<m<n} (m+n)^{-r} n^{-s}` to absolute tolerance `tol`.
pub fn zeta_hat_num(r: u32, s: u32, tol: f64) -> Result<NumResult, Error> {
    check_double_args(r, s, "zeta_hat")?;
    until_tolerance(|| format!("zeta_hat({r},{s})"), tol, 64, TERM_BUDGET, 4, |cut| zeta_hat_fixed(r, s, cut))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityFilter {
    Any,
    Odd,
    Even,
}


/// The three sums every parity pattern is built from, cut at `2 * half`:
/// `zeta(r, s)`, `zeta^{e*}(r, s)` (even `m`) and `zeta^{*e}(r, s)` (even `n`).
struct DzetaPieces {
    all: (f64, f64),
    even_m: (f64, f64),
    even_n: (f64, f64),
}

fn dzeta_pieces(r: u32, s: u32, half: u64) -> DzetaPieces {
    let cut = 2 * half;
    let outer = tail_expansion(s);

    // sum_m m^{-r} T(s, m), m <= cut, with T descending from its expansion
    let (mut t, t_bound) = power_tail(s, cut);
    let (mut all, mut even_m, mut weights, mut even_weights) = (0.0, 0.0, 0.0, 0.0);
    for m in (1..=cut).rev() {
        let w = inv_pow(m as f64, r);
        all += w * t;
        weights += w;
        if m % 2 == 0 {
            even_m += w * t;
            even_weights += w;
        }
        t += inv_pow(m as f64, s);
    }
    let (all_tail, all_tb) = outer.tail_against(r, cut);
    // T(s, 2i) expanded in i, weighted by (2i)^{-r}
    let even_exp = outer.dilate(2.0).scale(libm::pow(2.0, -(r as f64)));
    let (even_tail, even_tb) = even_exp.tail_against(r, half);

    // 2^{-s} [zeta(s) + sum_i T(s, i) ((2i)^{-r} + (2i+1)^{-r})]
    let pair = pair_expansion(r);
    let (mut t, th_bound) = power_tail(s, half);
    let mut even_n = 0.0;
    let mut pair_weights = 1.0;
    for i in (1..=half).rev() {
        let w = inv_pow(2.0 * i as f64, r) + inv_pow(2.0 * i as f64 + 1.0, r);
        even_n += w * t;
        pair_weights += w;
        t += inv_pow(i as f64, s);
    }
    even_n += t;
    let (pair_tail, pair_tb) = outer.product(&pair).tail_against(0, half);
    let two_s = libm::pow(2.0, -(s as f64));

    DzetaPieces {
        all: (all + all_tail, t_bound * weights + all_tb),
        even_m: (even_m + even_tail, t_bound * even_weights + even_tb),
        even_n: (two_s * (even_n + pair_tail), two_s * (th_bound * pair_weights + pair_tb)),
    }
}

/// `sum_{0<m<n, m in A, n in B} m^{-r} n^{-s}` with the sums over `m` cut at
/// `cut` (rounded up to even), assembled from [`DzetaPieces`] by
/// inclusion-exclusion. `zeta^{ee}(r, s) = 2^{-r-s} zeta(r, s)`.
pub fn dzeta_fixed(r: u32, s: u32, m_parity: ParityFilter, n_parity: ParityFilter, cut: u64) -> NumResult {
    use ParityFilter::*;
    let half = cut.div_ceil(2).max(8);
    let p = dzeta_pieces(r, s, half);
    let ee = libm::pow(2.0, -((r + s) as f64));
    // coefficients of (all, even_m, even_n)
    let (ca, cm, cn) = match (m_parity, n_parity) {
        (Any, Any) => (1.0, 0.0, 0.0),
        (Even, Any) => (0.0, 1.0, 0.0),
        (Any, Even) => (0.0, 0.0, 1.0),
        (Odd, Any) => (1.0, -1.0, 0.0),
        (Any, Odd) => (1.0, 0.0, -1.0),
        (Even, Even) => (ee, 0.0, 0.0),
        (Odd, Even) => (-ee, 0.0, 1.0),
        (Even, Odd) => (-ee, 1.0, 0.0),
        (Odd, Odd) => (1.0 + ee, -1.0, -1.0),
    };
    let value = ca * p.all.0 + cm * p.even_m.0 + cn * p.even_n.0;
    let bound = ca.abs() * p.all.1 + cm.abs() * p.even_m.1 + cn.abs() * p.even_n.1;
    NumResult::new(value, bound, 2 * half)
}

/// Classical (`Any`, `Any`) or level-2 double zeta value to absolute
/// tolerance `tol`.
pub fn dzeta_num(
    r: u32,
    s: u32,
    m_parity: ParityFilter,
    n_parity: ParityFilter,
    tol: f64,
) -> Result<NumResult, Error> {
    check_double_args(r, s, "double zeta")?;
    until_tolerance(|| format!("zeta({r},{s}) with parities {m_parity:?}/{n_parity:?}"), tol, 64, TERM_BUDGET, 4, |cut| {
        dzeta_fixed(r, s, m_parity, n_parity, cut)
    })
}

/// Limit of a sequence of alternating partial sums by iterated averaging.
/// At each averaging level whose last differences still alternate, the
/// limit lies between the last two entries; the tightest such level wins.
fn averaged_limit(partial: &[f64]) -> (f64, f64) {
    let mut level: Vec<f64> = partial.to_vec();
    let mut best = (*partial.last().unwrap_or(&0.0), f64::INFINITY);
    // rounding already present in the partial sums
    let floor = partial.len() as f64 * f64::EPSILON * partial.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    while level.len() >= 3 {
        let diffs: Vec<f64> = level.windows(2).rev().take(4).map(|w| w[1] - w[0]).collect();
        let alternates = diffs.iter().all(|d| *d != 0.0) && diffs.windows(2).all(|w| (w[0] > 0.0) != (w[1] > 0.0));
        if alternates {
            let (a, b) = (level[level.len() - 2], level[level.len() - 1]);
            let width = (a - b).abs() / 2.0 + floor;
            if width < best.1 {
                best = ((a + b) / 2.0, width);
            }
        }
        level = level.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    }
    best
}

/// `Li_{r,s}(-1)` from the first `terms` partial sums over `n`.
pub fn li_fixed(r: u32, s: u32, terms: u64) -> NumResult {
    let mut partial = Vec::with_capacity(terms as usize);
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for n in 2..terms + 2 {
        harmonic += inv_pow((n - 1) as f64, r);
        let a = harmonic * inv_pow(n as f64, s);
        sum += if n % 2 == 0 { a } else { -a };
        partial.push(sum);
    }
    let (value, bound) = averaged_limit(&partial);
    NumResult::new(value, bound, terms)
}

/// `Li_{r,s}(-1) = sum_{0<m<n} (-1)^n m^{-r} n^{-s}` to tolerance `tol`.
pub fn li_rs_minus1(r: u32, s: u32, tol: f64) -> Result<NumResult, Error> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidParameter(format!("Li_(r,s)(-1) needs r, s >= 1, got ({r},{s})")));
    }
    until_tolerance(|| format!("Li_({r},{s})(-1)"), tol, 64, ALTERNATING_BUDGET, 2, |n| li_fixed(r, s, n))
}

/// Evaluation tolerance for the building blocks of the residual checks.
const INNER_TOL: f64 = 1e-13;

fn relative_report(check: &str, lhs: (f64, f64), rhs: (f64, f64), tol: f64) -> RelationReport {
    let scale = rhs.0.abs().max(lhs.0.abs());
    if scale == 0.0 {
        return RelationReport::new(check, Status::Error, Detail::Message("both sides vanish".into()));
    }
    let residual = (lhs.0 - rhs.0).abs() / scale;
    RelationReport::numeric(check, residual, tol, (lhs.1 + rhs.1) / scale)
}

fn or_error(check: &str, run: impl FnOnce() -> Result<RelationReport, Error>) -> RelationReport {
    run().unwrap_or_else(|e| RelationReport::from_error(check, &e))
}

/// `sum_{r,s>=2} q_{r,s} zeta_hat(r, s)` against `lambda_f zeta(k)`, relative.
pub fn verify_relation(coeffs: &RelationCoefficients, tol: f64) -> RelationReport {
    let k = coeffs.weight;
    or_error("relation", || {
        let mut parts = Vec::new();
        for (&(r, s), q) in &coeffs.qrs {
            if r >= 2 && s >= 2 && !num_traits::Zero::is_zero(q) {
                parts.push((to_f64(q), zeta_hat_num(r, s, INNER_TOL)?));
            }
        }
        let lhs = combine(&parts);
        let rhs = combine(&[(to_f64(&coeffs.lambda), zeta_num(k)?)]);
        Ok(relation_with_zero_guard("relation", lhs, rhs, tol))
    })
    .with_param("k", k)
}

/// A relation whose left side vanishes identically is reported as failing,
/// since `0 = lambda zeta(k)` is not a relation.
fn relation_with_zero_guard(check: &str, lhs: (f64, f64), rhs: (f64, f64), tol: f64) -> RelationReport {
    if lhs.0 == 0.0 && rhs.0 != 0.0 {
        return RelationReport::new(
            check,
            Status::Fail,
            Detail::Message("no double zeta terms: the period polynomial is not cuspidal".into()),
        );
    }
    relative_report(check, lhs, rhs, tol)
}

/// `sum_{r,s>=3 odd} q_{r,s} zeta(r, s)` against `beta_f zeta(k)`, relative.
pub fn gkz_check(coeffs: &RelationCoefficients, tol: f64) -> RelationReport {
    let k = coeffs.weight;
    or_error("gkz", || {
        let mut parts = Vec::new();
        for (&(r, s), q) in &coeffs.qrs {
            if r >= 3 && s >= 3 && r % 2 == 1 && s % 2 == 1 && !num_traits::Zero::is_zero(q) {
                parts.push((to_f64(q), dzeta_num(r, s, ParityFilter::Any, ParityFilter::Any, INNER_TOL)?));
            }
        }
        let lhs = combine(&parts);
        let rhs = combine(&[(to_f64(&coeffs.beta), zeta_num(k)?)]);
        Ok(relation_with_zero_guard("gkz", lhs, rhs, tol))
    })
    .with_param("k", k)
}

/// `zeta(k) = 2^{k-1} sum_{r+s=k, s>=2} zeta_hat(r, s)`, relative.
pub fn sum_formula_check(k: u32, tol: f64) -> RelationReport {
    or_error("sumformula", || {
        if k < 3 {
            return Err(Error::InvalidParameter(format!("sum formula needs k >= 3, got {k}")));
        }
        let w = libm::pow(2.0, (k - 1) as f64);
        let parts = (1..=k - 2).map(|r| Ok((w, zeta_hat_num(r, k - r, INNER_TOL)?))).collect::<Result<Vec<_>, Error>>()?;
        Ok(relative_report("sumformula", combine(&parts), combine(&[(1.0, zeta_num(k)?)]), tol))
    })
    .with_param("k", k)
}

/// `zeta_hat(r, s) = 2^s (zeta^oe(r, s) + zeta^ee(r, s)) - zeta(r, s) - zeta(r+s)`, relative.
pub fn level2_check(r: u32, s: u32, tol: f64) -> RelationReport {
    or_error("level2", || {
        use ParityFilter::*;
        let w = libm::pow(2.0, s as f64);
        let rhs = combine(&[
            (w, dzeta_num(r, s, Odd, Even, INNER_TOL)?),
            (w, dzeta_num(r, s, Even, Even, INNER_TOL)?),
            (-1.0, dzeta_num(r, s, Any, Any, INNER_TOL)?),
            (-1.0, zeta_num(r + s)?),
        ]);
        Ok(relative_report("level2", combine(&[(1.0, zeta_hat_num(r, s, INNER_TOL)?)]), rhs, tol))
    })
    .with_param("r", r)
    .with_param("s", s)
}

/// `zeta_hat(r, s) = 2^{s-1} (Li_{r,s}(-1) + zeta(r, s)) - zeta(r, s) - zeta(r+s)`;
/// absolute residual, reported with the combined error bound.
pub fn mdavasli_check(r: u32, s: u32, tol: f64) -> RelationReport {
    or_error("mdavasli", || {
        let w = libm::pow(2.0, (s - 1) as f64);
        let dz = dzeta_num(r, s, ParityFilter::Any, ParityFilter::Any, INNER_TOL)?;
        let rhs = combine(&[
            (w, li_rs_minus1(r, s, INNER_TOL.max(tol / (4.0 * w)))?),
            (w - 1.0, dz),
            (-1.0, zeta_num(r + s)?),
        ]);
        let lhs = zeta_hat_num(r, s, INNER_TOL)?;
        Ok(RelationReport::numeric("mdavasli", (lhs.value - rhs.0).abs(), tol, lhs.error_bound + rhs.1))
    })
    .with_param("r", r)
    .with_param("s", s)
}

/// `zeta(2a) zeta(2b) = zeta(2a, 2b) + zeta(2b, 2a) + zeta(2a+2b)`, absolute.
pub fn harmonic_check(a: u32, b: u32, tol: f64) -> RelationReport {
    or_error("harmonic", || {
        use ParityFilter::Any;
        let (za, zb) = (zeta_num(2 * a)?, zeta_num(2 * b)?);
        let prod = za.value * zb.value;
        let prod_bound = za.error_bound * zb.value + zb.error_bound * za.value;
        let (sum, sum_bound) = combine(&[
            (1.0, dzeta_num(2 * a, 2 * b, Any, Any, INNER_TOL)?),
            (1.0, dzeta_num(2 * b, 2 * a, Any, Any, INNER_TOL)?),
            (1.0, zeta_num(2 * a + 2 * b)?),
        ]);
        Ok(RelationReport::numeric("harmonic", (prod - sum).abs(), tol, prod_bound + sum_bound))
    })
    .with_param("a", a)
    .with_param("b", b)
}

/// `sum zeta(r, s) = zeta(k)` and `sum 2^{s-1} zeta(r, s) = (k+1)/2 zeta(k)`
/// over `r + s = k`, `s >= 2`; absolute residuals.
pub fn oz_checks(k: u32, tol: f64) -> Vec<RelationReport> {
    let run = |weighted: bool| -> Result<RelationReport, Error> {
        let name = if weighted { "oz-weighted" } else { "oz-sum" };
        if k < 3 {
            return Err(Error::InvalidParameter(format!("sum formulas need k >= 3, got {k}")));
        }
        let parts = (1..=k - 2)
            .map(|r| {
                let s = k - r;
                let w = if weighted { libm::pow(2.0, (s - 1) as f64) } else { 1.0 };
                Ok((w, dzeta_num(r, s, ParityFilter::Any, ParityFilter::Any, INNER_TOL)?))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let (lhs, lb) = combine(&parts);
        let factor = if weighted { (k as f64 + 1.0) / 2.0 } else { 1.0 };
        let (rhs, rb) = combine(&[(factor, zeta_num(k)?)]);
        Ok(RelationReport::numeric(name, (lhs - rhs).abs(), tol, lb + rb))
    };
    [false, true]
        .into_iter()
        .map(|weighted| {
            let name = if weighted { "oz-weighted" } else { "oz-sum" };
            run(weighted).unwrap_or_else(|e| RelationReport::from_error(name, &e)).with_param("k", k)
        })
        .collect()
}

/// `sum_{n > N} n^{p} q^n`, summed until the terms are negligible.
fn weighted_geometric_tail(p: u32, q: f64, order: usize) -> f64 {
    let mut acc = 0.0;
    let mut n = order as f64 + 1.0;
    loop {
        let term = libm::pow(n, p as f64) * libm::pow(q, n);
        acc += term;
        if term <= 1e-18 * acc.max(1e-300) && n > order as f64 + p as f64 / (1.0 - q) {
            return acc;
        }
        n += 1.0;
    }
}

/// Evaluates `(1-q)^k * series` at each `q` in `qs` (ascending) and checks
/// that the distance to `target` does not increase and ends within 10% of
/// `target` (within `1e-2` when `target = 0`). The truncation error is
/// bounded assuming `|c_n| <= C n^{k-1}` with `C` taken from the upper half
/// of the known coefficients.
pub fn q_limit_check(k: u32, series: &QSeries, target: f64, qs: &[f64]) -> Result<RelationReport, Error> {
    let order = series.order();
    let coeffs: Vec<f64> = series.coeffs().iter().map(to_f64).collect();
    let growth = k.saturating_sub(1);
    let envelope = coeffs
        .iter()
        .enumerate()
        .skip(order / 2)
        .filter(|(n, _)| *n > 0)
        .map(|(n, c)| c.abs() / libm::pow(n as f64, growth as f64))
        .fold(0.0, f64::max);
    let mut distances = Vec::with_capacity(qs.len());
    let mut values = Vec::with_capacity(qs.len());
    for &q in qs {
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!("q must lie in [0, 1), got {q}")));
        }
        let scale = libm::pow(1.0 - q, k as f64);
        let value = scale * series.eval_f64(q);
        let tail = scale * envelope * weighted_geometric_tail(growth, q, order);
        if tail > 1e-6 + 1e-4 * value.abs() {
            return Err(Error::OrderTooSmall { order, q });
        }
        values.push(value);
        distances.push((value - target).abs());
    }
    let monotone = distances.windows(2).all(|w| w[1] <= w[0]);
    let last = *distances.last().ok_or_else(|| Error::InvalidParameter("no q values given".into()))?;
    let allowed = if target == 0.0 { 1e-2 } else { 0.1 * target.abs() };
    let status = if monotone && last <= allowed { Status::Pass } else { Status::Fail };
    let listing: Vec<String> = qs.iter().zip(&values).map(|(q, v)| format!("q={q}: {v:.6e}")).collect();
    let detail = Detail::Message(format!(
        "{}; target {target:.6e}; {}",
        listing.join(", "),
        if monotone { "distance non-increasing" } else { "distance not monotone" }
    ));
    Ok(RelationReport::new("qlimit", status, detail).with_param("k", k).with_param("terms", order))
}
