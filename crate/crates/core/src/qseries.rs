//! Exact truncated power series in `q` (and in `x, q`) and the two sides of
//! the modulo-`t` Rogers-Ramanujan type identity
//!
//! ```text
//!   prod_{n ≡ 0, t-1, t, t+1 (mod 2t)} (1 + q^n)
//!     = sum_{a,b,c,d >= 0} q^{Q_t(a,b,c,d) + (t/2)b - c + d}
//!         / ((q^{2t};q^{2t})_a (q^t;q^t)_b (q^t;q^t)_c (q^t;q^t)_d)
//! ```
//!
//! together with the bivariate chain behind it: the maximal-block product in
//! `(x, q)`, its expansion as a product of four single sums, and the staircase
//! substitution `x^m -> x^m q^{t m (m-1) / 2}`.
//!
//! All coefficients are `i128` with checked arithmetic; overflow is an error.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("series coefficient"))
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("series coefficient"))
}

/// Power series in `q` with all terms of degree above `bound` discarded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

impl TruncatedSeries {
    pub fn zero(bound: usize) -> Self {
        Self { coeffs: vec![0; bound + 1] }
    }

    pub fn one(bound: usize) -> Self {
        Self::monomial(0, 1, bound)
    }

    /// `c q^e`, or zero when `e` exceeds the bound.
    pub fn monomial(e: usize, c: i128, bound: usize) -> Self {
        let mut s = Self::zero(bound);
        if e <= bound {
            s.coeffs[e] = c;
        }
        s
    }

    /// Coefficients for degrees `0..=bound`; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(mut coeffs: Vec<i128>, bound: usize) -> Self {
        coeffs.resize(bound + 1, 0);
        Self { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, e: usize) -> i128 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| add(a, b)).collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    /// Multiplies in place by `1 + c q^m`.
    pub fn mul_binomial(&mut self, c: i128, m: usize) -> Result<()> {
        if m == 0 {
            for v in &mut self.coeffs {
                *v = mul(*v, add(1, c)?)?;
            }
            return Ok(());
        }
        for e in (m..self.coeffs.len()).rev() {
            self.coeffs[e] = add(self.coeffs[e], mul(c, self.coeffs[e - m])?)?;
        }
        Ok(())
    }

    /// Multiplies in place by `1 / (1 - q^m)`, expanded as a geometric series.
    pub fn div_one_minus(&mut self, m: usize) -> Result<()> {
        assert!(m > 0, "1/(1 - q^0) has no power series");
        for e in m..self.coeffs.len() {
            self.coeffs[e] = add(self.coeffs[e], self.coeffs[e - m])?;
        }
        Ok(())
    }
}

/// Cauchy product truncated at the common bound.
pub fn mul_truncated(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.bound() != g.bound() {
        return Err(Error::BoundMismatch(f.bound(), g.bound()));
    }
    let n = f.bound();
    let mut out = TruncatedSeries::zero(n);
    for (i, &a) in f.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (j, &b) in g.coeffs[..=n - i].iter().enumerate() {
            out.coeffs[i + j] = add(out.coeffs[i + j], mul(a, b)?)?;
        }
    }
    Ok(out)
}

/// `(q^m; q^m)_count = prod_{i=1}^{count} (1 - q^{m i})`, truncated at `bound`.
pub fn pochhammer(m: usize, count: usize, bound: usize) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::one(bound);
    for i in 1..=count {
        s.mul_binomial(-1, m * i)?;
    }
    Ok(s)
}

/// `1 / (q^m; q^m)_count`, one geometric factor at a time.
pub fn inverse_pochhammer(m: usize, count: usize, bound: usize) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::one(bound);
    for i in 1..=count {
        s.div_one_minus(m * i)?;
    }
    Ok(s)
}

/// The quadratic form `Q_t` and the exponent `E = Q_t + (t/2)b - c + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QtForm {
    pub t: u64,
}

impl QtForm {
    pub fn new(t: u64) -> Self {
        Self { t }
    }

    /// `2 Q_t(a, b, c, d)`, which is always an integer.
    pub fn doubled_quadratic(&self, a: u64, b: u64, c: u64, d: u64) -> Option<u128> {
        let (t, a, b, c, d) = (self.t as u128, a as u128, b as u128, c as u128, d as u128);
        let squares = 4 * a * a + b * b + 2 * c * c + 2 * d * d;
        let cross = 4 * a * b + 4 * a * c + 4 * a * d + 2 * b * c + 2 * b * d + 2 * c * d;
        t.checked_mul(squares.checked_add(cross)?)
    }

    /// `E(a, b, c, d)`. The half-integral part `(t/2)(b² + b)` is even times
    /// `t/2`, so `E` is a nonnegative integer.
    pub fn exponent(&self, a: u64, b: u64, c: u64, d: u64) -> Result<u64> {
        let doubled = self
            .doubled_quadratic(a, b, c, d)
            .and_then(|q| q.checked_add(self.t as u128 * b as u128 + 2 * d as u128))
            .and_then(|q| q.checked_sub(2 * c as u128))
            .ok_or(Error::Overflow("quadratic exponent"))?;
        if doubled % 2 != 0 {
            return Err(Error::Inconsistency(format!("odd doubled exponent at ({a},{b},{c},{d})")));
        }
        u64::try_from(doubled / 2).map_err(|_| Error::Overflow("quadratic exponent"))
    }
}

fn require_hypothesis(t: u64) -> Result<()> {
    if t <= 3 {
        return Err(Error::InvalidParams(format!(
            "the identity is stated for t > 3 (got t = {t}); use the exploratory comparison"
        )));
    }
    Ok(())
}

fn product_side_unchecked(t: u64, bound: usize) -> Result<TruncatedSeries> {
    let t2 = 2 * t as usize;
    let t = t as usize;
    let mut s = TruncatedSeries::one(bound);
    for n in (1..=bound).filter(|n| matches!(n % t2, r if r == 0 || r == t - 1 || r == t || r == t + 1)) {
        s.mul_binomial(1, n)?;
    }
    Ok(s)
}

fn sum_side_unchecked(t: u64, bound: usize) -> Result<TruncatedSeries> {
    let form = QtForm::new(t);
    let n = bound as u64;
    let step = t as usize;
    let mut total = TruncatedSeries::zero(bound);
    // E grows in each index, so every loop stops at the first term past the bound.
    for a in (0..).take_while(|&a| form.exponent(a, 0, 0, 0).is_ok_and(|e| e <= n)) {
        for b in (0..).take_while(|&b| form.exponent(a, b, 0, 0).is_ok_and(|e| e <= n)) {
            for c in (0..).take_while(|&c| form.exponent(a, b, c, 0).is_ok_and(|e| e <= n)) {
                for d in (0..).take_while(|&d| form.exponent(a, b, c, d).is_ok_and(|e| e <= n)) {
                    let e = form.exponent(a, b, c, d)? as usize;
                    let mut term = TruncatedSeries::monomial(e, 1, bound);
                    for i in 1..=a as usize {
                        term.div_one_minus(2 * step * i)?;
                    }
                    for count in [b, c, d] {
                        for i in 1..=count as usize {
                            term.div_one_minus(step * i)?;
                        }
                    }
                    total = total.checked_add(&term)?;
                }
            }
        }
    }
    Ok(total)
}

/// Product side, truncated at `bound`. Requires `t > 3`.
///
/// The coefficient of `q^n` counts partitions of `n` into distinct parts
/// congruent to `0, t-1, t, t+1 (mod 2t)`.
pub fn product_side(t: u64, bound: usize) -> Result<TruncatedSeries> {
    require_hypothesis(t)?;
    product_side_unchecked(t, bound)
}

/// Quadruple-sum side, truncated at `bound`. Requires `t > 3`.
pub fn sum_side(t: u64, bound: usize) -> Result<TruncatedSeries> {
    require_hypothesis(t)?;
    sum_side_unchecked(t, bound)
}

/// Outcome of comparing the two sides coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub t: u64,
    pub bound: usize,
    /// Smallest degree where the sides differ, if any.
    pub first_mismatch: Option<usize>,
    pub mismatches: usize,
    pub product: TruncatedSeries,
    pub sum: TruncatedSeries,
}

impl IdentityReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn compare(t: u64, product: TruncatedSeries, sum: TruncatedSeries) -> IdentityReport {
    let diffs: Vec<usize> = (0..=product.bound()).filter(|&e| product.coeff(e) != sum.coeff(e)).collect();
    IdentityReport {
        t,
        bound: product.bound(),
        first_mismatch: diffs.first().copied(),
        mismatches: diffs.len(),
        product,
        sum,
    }
}

/// Checks the identity for `t > 3` up to `q^bound`.
pub fn verify_identity(t: u64, bound: usize) -> Result<IdentityReport> {
    Ok(compare(t, product_side(t, bound)?, sum_side(t, bound)?))
}

/// Computes both sides for any `t >= 3`, outside the identity's hypothesis
/// included; the report states agreement without asserting it.
pub fn explore_identity(t: u64, bound: usize) -> Result<IdentityReport> {
    if t < 3 {
        return Err(Error::InvalidParams(format!("exploration needs t >= 3, got t = {t}")));
    }
    Ok(compare(t, product_side_unchecked(t, bound)?, sum_side_unchecked(t, bound)?))
}

/// Sparse power series in `x` and `q`, truncated at `x^max_x` and `q^max_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    max_x: usize,
    max_q: usize,
    terms: BTreeMap<(usize, usize), i128>,
}

impl BivariateSeries {
    pub fn zero(max_x: usize, max_q: usize) -> Self {
        Self { max_x, max_q, terms: BTreeMap::new() }
    }

    pub fn one(max_x: usize, max_q: usize) -> Self {
        Self::monomial(0, 0, 1, max_x, max_q)
    }

    /// `c x^i q^j`, or zero outside the truncation box.
    pub fn monomial(i: usize, j: usize, c: i128, max_x: usize, max_q: usize) -> Self {
        let mut s = Self::zero(max_x, max_q);
        if i <= max_x && j <= max_q && c != 0 {
            s.terms.insert((i, j), c);
        }
        s
    }

    /// `sum_{n >= 0} (x^i q^j)^n`, i.e. `1 / (1 - x^i q^j)`.
    pub fn geometric(i: usize, j: usize, max_x: usize, max_q: usize) -> Self {
        assert!(i + j > 0, "1/(1 - 1) has no power series");
        let mut s = Self::zero(max_x, max_q);
        for n in 0.. {
            if n * i > max_x || n * j > max_q {
                break;
            }
            s.terms.insert((n * i, n * j), 1);
        }
        s
    }

    pub fn max_x(&self) -> usize {
        self.max_x
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn coeff(&self, i: usize, j: usize) -> i128 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((x_degree, q_degree), coefficient)`, in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i128)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    fn check_box(&self, other: &Self) -> Result<()> {
        if self.max_x != other.max_x {
            return Err(Error::BoundMismatch(self.max_x, other.max_x));
        }
        if self.max_q != other.max_q {
            return Err(Error::BoundMismatch(self.max_q, other.max_q));
        }
        Ok(())
    }

    fn accumulate(&mut self, key: (usize, usize), c: i128) -> Result<()> {
        let v = add(self.coeff(key.0, key.1), c)?;
        if v == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let mut out = self.clone();
        for (&key, &c) in &other.terms {
            out.accumulate(key, c)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let mut out = Self::zero(self.max_x, self.max_q);
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if i <= self.max_x && j <= self.max_q {
                    out.accumulate((i, j), mul(c1, c2)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `x^m` as a series in `q`.
    pub fn x_slice(&self, m: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.max_q);
        for (&(i, j), &c) in self.terms.range((m, 0)..=(m, self.max_q)) {
            debug_assert_eq!(i, m);
            s.coeffs[j] = c;
        }
        s
    }

    /// Sets `x = 1`.
    pub fn at_x_one(&self) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(self.max_q);
        for (&(_, j), &c) in &self.terms {
            s.coeffs[j] = add(s.coeffs[j], c)?;
        }
        Ok(s)
    }
}

/// Shape of a maximal block of a `D_t` partition after the `t`-staircase has
/// been removed (parts listed increasingly). For a label `ℓ`:
///
/// - `ℓ = tj - 1`: `(tj-1, tj-t+1)^pairs` followed optionally by `tj-1`;
/// - `ℓ = tj`: `(tj)^repeats`;
/// - `ℓ = tj + 1`: the single entry `tj+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockForm {
    BelowMultiple { j: u64, pairs: usize, tail: bool },
    Multiple { j: u64, repeats: usize },
    AboveMultiple { j: u64 },
}

impl BlockForm {
    /// Number of entries (parts) in the block.
    pub fn len(&self) -> usize {
        match *self {
            Self::BelowMultiple { pairs, tail, .. } => 2 * pairs + usize::from(tail),
            Self::Multiple { repeats, .. } => repeats,
            Self::AboveMultiple { .. } => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Matches a block against the three admissible shapes for modulus `t`.
pub fn classify_block(entries: &[i64], t: u64) -> Option<BlockForm> {
    let ti = t as i64;
    let &label = entries.first()?;
    if label <= 0 {
        return None;
    }
    match label.rem_euclid(ti) {
        0 => entries
            .iter()
            .all(|&e| e == label)
            .then_some(BlockForm::Multiple { j: (label / ti) as u64, repeats: entries.len() }),
        1 if entries.len() == 1 && label > ti => Some(BlockForm::AboveMultiple { j: (label / ti) as u64 }),
        r if r == ti - 1 => {
            let low = label - ti + 2;
            let pairs = entries.len() / 2;
            let tail = entries.len() % 2 == 1;
            let fits = entries.iter().enumerate().all(|(i, &e)| e == if i % 2 == 0 { label } else { low });
            fits.then_some(BlockForm::BelowMultiple { j: ((label + 1) / ti) as u64, pairs, tail })
        }
        _ => None,
    }
}

/// Product over `j >= 1` of the block generating functions
/// `(1 + x q^{tj-1}) / (1 - x² q^{2tj-t})`, `1 / (1 - x q^{tj})` and
/// `(1 + x q^{tj+1})`, with `x` marking parts. Requires `t >= 3`.
pub fn block_product_bivariate(t: u64, max_q: usize, max_x: usize) -> Result<BivariateSeries> {
    if t < 3 {
        return Err(Error::InvalidParams(format!("block product needs t >= 3, got t = {t}")));
    }
    let t = t as usize;
    let mut f = BivariateSeries::one(max_x, max_q);
    for j in (1..).take_while(|j| t * j - 1 <= max_q) {
        let factors = [
            BivariateSeries::one(max_x, max_q).checked_add(&BivariateSeries::monomial(
                1,
                t * j - 1,
                1,
                max_x,
                max_q,
            ))?,
            BivariateSeries::geometric(2, 2 * t * j - t, max_x, max_q),
            BivariateSeries::geometric(1, t * j, max_x, max_q),
            BivariateSeries::one(max_x, max_q).checked_add(&BivariateSeries::monomial(
                1,
                t * j + 1,
                1,
                max_x,
                max_q,
            ))?,
        ];
        for g in &factors {
            f = f.checked_mul(g)?;
        }
    }
    Ok(f)
}

/// `sum_n x^{xstep·n} q^{q_exponent(n)} / (q^m; q^m)_n`.
fn single_sum(
    xstep: usize,
    q_exponent: impl Fn(usize) -> usize,
    m: usize,
    max_x: usize,
    max_q: usize,
) -> Result<BivariateSeries> {
    let mut out = BivariateSeries::zero(max_x, max_q);
    for n in (0..).take_while(|&n| xstep * n <= max_x && q_exponent(n) <= max_q) {
        let e = q_exponent(n);
        let mut inner = TruncatedSeries::monomial(e, 1, max_q);
        for i in 1..=n {
            inner.div_one_minus(m * i)?;
        }
        for (j, &c) in inner.coeffs().iter().enumerate().filter(|(_, &c)| c != 0) {
            out.accumulate((xstep * n, j), c)?;
        }
    }
    Ok(out)
}

/// Product of the four single sums
/// `sum_a x^{2a} q^{ta} / (q^{2t};q^{2t})_a`, `sum_b x^b q^{tb} / (q^t;q^t)_b`,
/// `sum_c x^c q^{(t-1)c + tc(c-1)/2} / (q^t;q^t)_c` and
/// `sum_d x^d q^{(t+1)d + td(d-1)/2} / (q^t;q^t)_d`. Requires `t >= 3`.
pub fn quadruple_sum_bivariate(t: u64, max_q: usize, max_x: usize) -> Result<BivariateSeries> {
    if t < 3 {
        return Err(Error::InvalidParams(format!("quadruple sum needs t >= 3, got t = {t}")));
    }
    let t = t as usize;
    let tri = |n: usize| t * n * n.saturating_sub(1) / 2;
    let sums = [
        single_sum(2, |a| t * a, 2 * t, max_x, max_q)?,
        single_sum(1, |b| t * b, t, max_x, max_q)?,
        single_sum(1, |c| (t - 1) * c + tri(c), t, max_x, max_q)?,
        single_sum(1, |d| (t + 1) * d + tri(d), t, max_x, max_q)?,
    ];
    let mut f = BivariateSeries::one(max_x, max_q);
    for g in &sums {
        f = f.checked_mul(g)?;
    }
    Ok(f)
}

/// `x^m q^e -> x^m q^{e + t m(m-1)/2}`; terms pushed past `max_q` are dropped,
/// so the result is exact only up to the caller's `q` bound.
pub fn apply_staircase(f: &BivariateSeries, t: u64) -> Result<BivariateSeries> {
    let mut out = BivariateSeries::zero(f.max_x, f.max_q);
    for (&(m, e), &c) in &f.terms {
        let shift = (t as usize)
            .checked_mul(m * m.saturating_sub(1) / 2)
            .and_then(|s| s.checked_add(e))
            .ok_or(Error::Overflow("staircase exponent"))?;
        if shift <= f.max_q {
            out.terms.insert((m, shift), c);
        }
    }
    Ok(out)
}
