//! Partitions into distinct parts, the numerical semigroup `W = <s, t>` and
//! the membership predicates of the four families.
//!
//! - `C_t`: distinct parts divisible by `t` or congruent to `t ± 1 (mod 2t)`.
//! - `D_t`: distinct parts `> 1`, congruent to `0, ±1 (mod t)`, adjacent parts
//!   differing by at least `t + 1` unless both are multiples of `t` or their
//!   sum is a multiple of `2t`.
//! - `C_st`: distinct parts divisible by `s` or by `t`.
//! - `D_st`: distinct parts subject to conditions D0 to D3.
//!
//! Parts are always stored in strictly decreasing order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition into distinct positive parts, listed in decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts that must already be strictly decreasing
    /// and positive.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not strictly decreasing")));
        }
        parts.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)).ok_or(Error::Overflow("partition weight"))?;
        Ok(Self { parts })
    }

    /// Sorts the parts decreasingly first; still rejects repeated or zero parts.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts. Overflow is ruled out at construction.
    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated decreasing parts, e.g. `84,70,66`. Surrounding
/// parentheses and whitespace are tolerated; the empty string is the empty
/// partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let parts = body
            .split(',')
            .map(|tok| tok.trim().parse::<u64>().map_err(|e| Error::InvalidPartition(format!("bad part {tok:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Coprime generators `s, t > 1` of the numerical semigroup
/// `W = {hs + kt : h, k >= 0}` together with its finite gap set `U = N - W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupParams {
    s: u64,
    t: u64,
    gaps: BTreeSet<u64>,
    max_gap: u64,
}

impl SemigroupParams {
    pub fn new(s: u64, t: u64) -> Result<Self> {
        let gaps = gap_set(s, t)?;
        let max_gap = (s - 1) * (t - 1) - 1;
        Ok(Self { s, t, gaps, max_gap })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn gaps(&self) -> &BTreeSet<u64> {
        &self.gaps
    }

    /// Frobenius number `(s-1)(t-1) - 1`.
    pub fn max_gap(&self) -> u64 {
        self.max_gap
    }

    pub fn in_w(&self, x: u64) -> bool {
        x > self.max_gap || !self.gaps.contains(&x)
    }
}

/// Membership in the semigroup generated by `params.s` and `params.t`.
pub fn in_w(x: u64, params: &SemigroupParams) -> bool {
    params.in_w(x)
}

/// The gap set `N - <s, t>` for coprime `s, t > 1`.
pub fn gap_set(s: u64, t: u64) -> Result<BTreeSet<u64>> {
    if s < 2 || t < 2 {
        return Err(Error::InvalidParams(format!("s = {s} and t = {t} must both exceed 1")));
    }
    if gcd(s, t) != 1 {
        return Err(Error::InvalidParams(format!("s = {s} and t = {t} are not coprime")));
    }
    let limit = (s - 1).checked_mul(t - 1).ok_or(Error::Overflow("Frobenius bound"))?;
    // x is representable iff x - hs is a nonnegative multiple of t for some h.
    let representable = |x: u64| (0..=x / s).any(|h| (x - h * s).is_multiple_of(t));
    Ok((0..=limit).filter(|&x| !representable(x)).collect())
}

/// The four conditions defining `D_st`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    D0,
    D1,
    D2,
    D3,
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D0" => Ok(Self::D0),
            "D1" => Ok(Self::D1),
            "D2" => Ok(Self::D2),
            "D3" => Ok(Self::D3),
            other => Err(Error::InvalidParams(format!("unknown condition {other:?}"))),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::D0 => "D0",
            Self::D1 => "D1",
            Self::D2 => "D2",
            Self::D3 => "D3",
        };
        f.write_str(name)
    }
}

/// Subset of {D0, D1, D2, D3}; the redundancy experiments switch some off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conditions {
    bits: u8,
}

impl Conditions {
    pub const fn all() -> Self {
        Self { bits: 0b1111 }
    }

    pub const fn none() -> Self {
        Self { bits: 0 }
    }

    fn bit(c: Condition) -> u8 {
        1 << (c as u8)
    }

    pub fn contains(self, c: Condition) -> bool {
        self.bits & Self::bit(c) != 0
    }

    pub fn without(self, c: Condition) -> Self {
        Self { bits: self.bits & !Self::bit(c) }
    }

    pub fn with(self, c: Condition) -> Self {
        Self { bits: self.bits | Self::bit(c) }
    }

    pub fn disabling<I: IntoIterator<Item = Condition>>(disabled: I) -> Self {
        disabled.into_iter().fold(Self::all(), Self::without)
    }

    pub fn is_all(self) -> bool {
        self == Self::all()
    }
}

impl Default for Conditions {
    fn default() -> Self {
        Self::all()
    }
}

/// Residue filter for parts of `C_t`.
pub fn c_t_admits_part(x: u64, t: u64) -> bool {
    let r = x % (2 * t);
    x > 0 && (x.is_multiple_of(t) || r == t - 1 || r == t + 1)
}

/// Residue filter for parts of `D_t` (the "larger than 1" clause included).
pub fn d_t_admits_part(x: u64, t: u64) -> bool {
    let r = x % t;
    x > 1 && (r == 0 || r == 1 || r == t - 1)
}

/// Difference rule for two parts `x > y` of a `D_t` partition.
pub fn d_t_pair_ok(x: u64, y: u64, t: u64) -> bool {
    x - y > t || (x.is_multiple_of(t) && y.is_multiple_of(t)) || (x + y).is_multiple_of(2 * t)
}

/// `p` lies in `C_t`. Callers guarantee `t > 2`.
pub fn is_in_c_t(p: &Partition, t: u64) -> bool {
    p.parts().iter().all(|&x| c_t_admits_part(x, t))
}

/// `p` lies in `D_t`, checking the difference rule on adjacent parts only.
/// Callers guarantee `t > 2`.
pub fn is_in_d_t(p: &Partition, t: u64) -> bool {
    let parts = p.parts();
    parts.iter().all(|&x| d_t_admits_part(x, t)) && parts.windows(2).all(|w| d_t_pair_ok(w[0], w[1], t))
}

/// Every part is divisible by `s` or by `t`.
pub fn is_in_c_st(p: &Partition, params: &SemigroupParams) -> bool {
    p.parts().iter().all(|&x| x % params.s == 0 || x % params.t == 0)
}

/// The sequence `f_1, ..., f_p` attached to the parts not divisible by `t`.
///
/// With `m` parts in total and the `q`-th non-multiple of `t` sitting at
/// (1-based) position `i_q`, `f_q = d_{i_q} - (m - i_q - (p - q)) t`. The
/// offset counts the multiples of `t` to the right of `d_{i_q}`.
pub fn d0_f_values(p: &Partition, t: u64) -> Vec<i64> {
    let parts = p.parts();
    let mut multiples_to_right = 0i64;
    let mut out = Vec::new();
    for &x in parts.iter().rev() {
        if x % t == 0 {
            multiples_to_right += 1;
        } else {
            out.push(x as i64 - multiples_to_right * t as i64);
        }
    }
    out.reverse();
    out
}

/// D0: `f_p` and every `f_i - f_{i+1}` are congruent to `0` or `t (mod s)`.
pub fn satisfies_d0(p: &Partition, params: &SemigroupParams) -> bool {
    let s = params.s as i64;
    let t_res = params.t as i64 % s;
    let ok = |v: i64| {
        let r = v.rem_euclid(s);
        r == 0 || r == t_res
    };
    let f = d0_f_values(p, params.t);
    match f.last() {
        None => true,
        Some(&last) => ok(last) && f.windows(2).all(|w| ok(w[0] - w[1])),
    }
}

/// D1: every part lies in `W`.
pub fn satisfies_d1(p: &Partition, params: &SemigroupParams) -> bool {
    p.parts().iter().all(|&x| params.in_w(x))
}

/// D2: a part `d_i` divisible by `t` exceeds `t (m - i)`.
pub fn satisfies_d2(p: &Partition, params: &SemigroupParams) -> bool {
    let t = params.t;
    let m = p.len() as u64;
    p.parts().iter().enumerate().all(|(idx, &x)| x % t != 0 || x > t * (m - 1 - idx as u64))
}

/// D3 for a single pair `x > y` whose difference is below `t + 1`.
pub fn d3_pair_ok(x: u64, y: u64, params: &SemigroupParams) -> bool {
    let (s, t) = (params.s, params.t);
    let diff = x - y;
    if diff > t {
        return true;
    }
    let case_one = !diff.is_multiple_of(s) && x.is_multiple_of(t) && y.is_multiple_of(t);
    let case_two = diff.is_multiple_of(s) && {
        let st = s * t;
        let sum = (x + y) % st;
        sum != diff % st && sum != (st - diff % st) % st
    };
    case_one || case_two
}

/// D3: every pair of parts closer than `t + 1` satisfies case I or case II.
pub fn satisfies_d3(p: &Partition, params: &SemigroupParams) -> bool {
    let parts = p.parts();
    let t = params.t;
    parts
        .iter()
        .enumerate()
        .all(|(i, &x)| parts[i + 1..].iter().take_while(|&&y| x - y <= t).all(|&y| d3_pair_ok(x, y, params)))
}

/// Membership in `D_st` restricted to the enabled conditions.
pub fn is_in_d_st(p: &Partition, params: &SemigroupParams, enabled: Conditions) -> bool {
    (!enabled.contains(Condition::D1) || satisfies_d1(p, params))
        && (!enabled.contains(Condition::D3) || satisfies_d3(p, params))
        && (!enabled.contains(Condition::D2) || satisfies_d2(p, params))
        && (!enabled.contains(Condition::D0) || satisfies_d0(p, params))
}

/// Which family a class vector is computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    C,
    D,
}

/// Residue-class census `(i_1, ..., i_{t-1}; k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassVector {
    /// `counts[h - 1]` is `i_h`.
    pub counts: Vec<u32>,
    pub k: u32,
}

impl ClassVector {
    pub fn zero(t: u64) -> Self {
        Self { counts: vec![0; t as usize - 1], k: 0 }
    }

    /// Number of parts not divisible by `t`.
    pub fn p(&self) -> u32 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({}; {})", counts.join(","), self.k)
    }
}

/// Class vector of a member of `C_st` (side C) or `D_st` (side D).
/// Membership is not re-checked.
///
/// Side C: `i_h` counts parts `≡ hs (mod st)`; `k` counts multiples of `t`
/// above `t·p`. Multiples of `t` at or below that threshold are left
/// unclassified. Side D: `i_h` counts parts `≡ hs (mod t)`; `k` counts all
/// multiples of `t`.
pub fn class_vector(p: &Partition, params: &SemigroupParams, side: Side) -> ClassVector {
    let (s, t) = (params.s, params.t);
    let mut cv = ClassVector::zero(t);
    match side {
        Side::C => {
            for &x in p.parts().iter().filter(|&&x| x % t != 0 && x % s == 0) {
                let h = (x % (s * t)) / s;
                cv.counts[h as usize - 1] += 1;
            }
            let threshold = t * u64::from(cv.p());
            cv.k = p.parts().iter().filter(|&&x| x % t == 0 && x > threshold).count() as u32;
        }
        Side::D => {
            // h = x * s^{-1} (mod t)
            let s_inv = (1..t).find(|&v| (v * s) % t == 1).expect("s is invertible mod t");
            for &x in p.parts() {
                if x % t == 0 {
                    cv.k += 1;
                } else {
                    let h = ((x % t) * s_inv) % t;
                    cv.counts[h as usize - 1] += 1;
                }
            }
        }
    }
    cv
}
