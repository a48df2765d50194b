//! Weight- and class-preserving bijection `C_st(n) -> D_st(n)` and its inverse.
//!
//! Forward direction, for `pi` in `C_st`:
//!
//! 1. split `pi` into `pi1` (parts not divisible by `t`, `p` of them) and
//!    `pi2` (multiples of `t`);
//! 2. split `pi2` at the threshold `t·p` into `pi5` (above) and `pi4`;
//! 3. take the `t`-fold conjugate `pi4*` of `pi4`;
//! 4. `pi6 = pi1 + pi4*` row by row;
//! 5. juxtapose `pi5 / pi6`;
//! 6. subtract the staircase `(p+k-1)t, ..., t, 0`, giving `S_0`;
//! 7. slide the entries coming from `pi5` to the right, last one first;
//! 8. add the staircase back, giving `pi3`.
//!
//! Every intermediate object is returned in a [`BijectionTrace`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{is_in_c_st, is_in_d_st, Conditions, Partition, SemigroupParams};

/// Intermediate objects of one application of the map (or its inverse).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionTrace {
    pub s: u64,
    pub t: u64,
    /// Partition in `C_st`.
    pub pi: Partition,
    pub pi1: Partition,
    pub pi2: Partition,
    pub pi4: Partition,
    pub pi5: Partition,
    /// Row lengths of the `t`-fold conjugate of `pi4`, weakly decreasing.
    pub pi4_star: Vec<u64>,
    /// `pi1 + pi4*`, i.e. the values `a'_i`.
    pub pi6: Partition,
    /// Number of parts not divisible by `t`.
    pub p: usize,
    /// Number of parts of `pi5`.
    pub k: usize,
    /// `(p+k-1)t, ..., t, 0`.
    pub staircase: Vec<i64>,
    pub s0: Vec<i64>,
    /// `S_1, ..., S_k` in the order produced. Only the forward map records them.
    pub insertion_steps: Vec<Vec<i64>>,
    pub s_final: Vec<i64>,
    /// Partition in `D_st`.
    pub pi3: Partition,
}

impl BijectionTrace {
    /// Re-checks the weight bookkeeping and structural invariants.
    pub fn check(&self) -> Result<()> {
        let n = self.pi.weight() as i64;
        let stair: i64 = self.staircase.iter().sum();
        let weights = [
            ("pi1 + pi2", (self.pi1.weight() + self.pi2.weight()) as i64),
            ("pi5 + pi6", (self.pi5.weight() + self.pi6.weight()) as i64),
            ("S_0 + staircase", self.s0.iter().sum::<i64>() + stair),
            ("S_f + staircase", self.s_final.iter().sum::<i64>() + stair),
            ("pi3", self.pi3.weight() as i64),
        ];
        for (stage, w) in weights {
            if w != n {
                return Err(Error::Inconsistency(format!("weight {w} at {stage}, expected {n}")));
            }
        }
        if !self.pi4_star.windows(2).all(|w| w[0] >= w[1]) || self.pi4_star.iter().any(|r| r % self.t != 0) {
            return Err(Error::Inconsistency(format!(
                "conjugate rows {:?} are not decreasing multiples of {}",
                self.pi4_star, self.t
            )));
        }
        let t = self.t as i64;
        let bar_b: Vec<i64> = self.s_final.iter().copied().filter(|c| c.rem_euclid(t) == 0).collect();
        let bar_a: Vec<i64> = self.s_final.iter().copied().filter(|c| c.rem_euclid(t) != 0).collect();
        if bar_b.len() != self.k || bar_a.len() != self.p || self.s0[self.k..] != bar_a[..] {
            return Err(Error::Inconsistency("final string does not split back into the pi5 and pi6 entries".into()));
        }
        Ok(())
    }
}

/// Row lengths of the `t`-fold conjugate of `pi4`, whose parts must all be
/// multiples of `t`.
///
/// Writing the parts as `u_1 t > ... > u_r t`, row `i` has length
/// `t · #{j : u_j >= i}`; there are `u_1` rows.
pub fn t_fold_conjugate(pi4: &Partition, t: u64) -> Result<Vec<u64>> {
    if let Some(&bad) = pi4.parts().iter().find(|&&x| x % t != 0) {
        return Err(Error::InvalidPartition(format!("part {bad} of {pi4} is not a multiple of {t}")));
    }
    let u: Vec<u64> = pi4.parts().iter().map(|&x| x / t).collect();
    let rows = u.first().copied().unwrap_or(0);
    Ok((1..=rows).map(|i| t * u.iter().take_while(|&&uj| uj >= i).count() as u64).collect())
}

/// Regroups conjugate rows into blocks of `t` columns, undoing
/// [`t_fold_conjugate`]. Rows must be decreasing multiples of `t`.
pub fn t_fold_columns(rows: &[u64], t: u64) -> Result<Partition> {
    if rows.iter().any(|r| r % t != 0) || !rows.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::Inconsistency(format!("rows {rows:?} are not decreasing multiples of {t}")));
    }
    let blocks = rows.first().map_or(0, |r| r / t);
    let parts = (1..=blocks).map(|j| t * rows.iter().take_while(|&&r| r / t >= j).count() as u64).collect();
    Partition::new(parts)
}

fn staircase(len: usize, t: u64) -> Vec<i64> {
    (0..len).rev().map(|i| i as i64 * t as i64).collect()
}

fn to_signed(parts: &[u64]) -> Vec<i64> {
    parts.iter().map(|&x| x as i64).collect()
}

fn to_partition(values: &[i64], stage: &str) -> Result<Partition> {
    let parts = values
        .iter()
        .map(|&v| u64::try_from(v).ok().filter(|&x| x > 0))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| Error::Inconsistency(format!("{stage} {values:?} has a nonpositive entry")))?;
    Partition::new(parts).map_err(|e| Error::Inconsistency(format!("{stage}: {e}")))
}

/// Moves `string[from]` rightwards past every element strictly larger than it.
/// Equal entries waiting to its left do not hold it back.
fn slide_right(string: &mut [i64], from: usize) {
    let value = string[from];
    let mut at = from;
    while at + 1 < string.len() && string[at + 1] > value {
        string[at] = string[at + 1];
        at += 1;
    }
    string[at] = value;
}

fn family_error(p: &Partition, family: &str, params: &SemigroupParams) -> Error {
    Error::NotInFamily { partition: p.to_string(), family: format!("{family}(s={}, t={})", params.s(), params.t()) }
}

/// Maps `pi` in `C_st(n)` to `pi3` in `D_st(n)` with the same class vector.
pub fn forward(pi: &Partition, s: u64, t: u64) -> Result<(Partition, BijectionTrace)> {
    let params = SemigroupParams::new(s, t)?;
    if !is_in_c_st(pi, &params) {
        return Err(family_error(pi, "C_st", &params));
    }
    // Step 1
    let (pi2_parts, pi1_parts): (Vec<u64>, Vec<u64>) = pi.parts().iter().partition(|&&x| x % t == 0);
    let p = pi1_parts.len();
    // Step 2
    let threshold = t * p as u64;
    let (pi5_parts, pi4_parts): (Vec<u64>, Vec<u64>) = pi2_parts.iter().partition(|&&x| x > threshold);
    let k = pi5_parts.len();
    let pi4 = Partition::new(pi4_parts)?;
    // Step 3
    let pi4_star = t_fold_conjugate(&pi4, t)?;
    if pi4_star.len() > p {
        return Err(Error::Inconsistency(format!(
            "conjugate of {pi4} has {} rows but only {p} parts to absorb them",
            pi4_star.len()
        )));
    }
    // Step 4
    let pi6_values: Vec<i64> =
        pi1_parts.iter().enumerate().map(|(i, &a)| a as i64 + pi4_star.get(i).copied().unwrap_or(0) as i64).collect();
    let pi6 = to_partition(&pi6_values, "pi6")?;
    // Steps 5 and 6
    let stair = staircase(p + k, t);
    let s0: Vec<i64> = pi5_parts
        .iter()
        .map(|&b| b as i64)
        .chain(pi6_values.iter().copied())
        .zip(&stair)
        .map(|(v, off)| v - off)
        .collect();
    // Step 7: the entries from pi5 occupy the first k slots and are moved
    // last to first, so entry i is still at index i when its turn comes.
    let mut string = s0.clone();
    let mut insertion_steps = Vec::with_capacity(k);
    for i in (0..k).rev() {
        slide_right(&mut string, i);
        insertion_steps.push(string.clone());
    }
    // Step 8
    let d: Vec<i64> = string.iter().zip(&stair).map(|(c, off)| c + off).collect();
    let pi3 = to_partition(&d, "pi3")?;

    let trace = BijectionTrace {
        s,
        t,
        pi: pi.clone(),
        pi1: Partition::new(pi1_parts)?,
        pi2: Partition::new(pi2_parts)?,
        pi4,
        pi5: Partition::new(pi5_parts)?,
        pi4_star,
        pi6,
        p,
        k,
        staircase: stair,
        s0,
        insertion_steps,
        s_final: string,
        pi3: pi3.clone(),
    };
    trace.check()?;
    Ok((pi3, trace))
}

/// Maps `pi3` in `D_st(n)` back to `pi` in `C_st(n)`.
///
/// The staircase is removed, entries divisible by `t` are pulled out as the
/// `pi5` entries and the rest, in order, give `pi6 = (a'_1, ..., a'_p)`. The
/// conjugate diagram is then rebuilt bottom-up: `a'_p ≡ 0 (mod s)` gives an
/// empty bottom row and `a'_p ≡ t` a row of `t` cells; moving up, a row keeps
/// the length of the one below when `a'_i - a'_{i+1} ≡ 0 (mod s)` and grows
/// by `t` when it is `≡ t`.
pub fn inverse(pi3: &Partition, s: u64, t: u64) -> Result<(Partition, BijectionTrace)> {
    let params = SemigroupParams::new(s, t)?;
    if !is_in_d_st(pi3, &params, Conditions::all()) {
        return Err(family_error(pi3, "D_st", &params));
    }
    let (si, ti) = (s as i64, t as i64);
    let m = pi3.len();
    let stair = staircase(m, t);
    // Undo step 8
    let s_final: Vec<i64> = to_signed(pi3.parts()).iter().zip(&stair).map(|(d, off)| d - off).collect();
    // Undo step 7
    let mut bar_b: Vec<i64> = s_final.iter().copied().filter(|c| c.rem_euclid(ti) == 0).collect();
    let bar_a: Vec<i64> = s_final.iter().copied().filter(|c| c.rem_euclid(ti) != 0).collect();
    bar_b.sort_unstable_by(|a, b| b.cmp(a));
    let (k, p) = (bar_b.len(), bar_a.len());
    let s0: Vec<i64> = bar_b.iter().chain(&bar_a).copied().collect();
    // Undo steps 6 and 5
    let string: Vec<i64> = s0.iter().zip(&stair).map(|(c, off)| c + off).collect();
    let pi5 = to_partition(&string[..k], "pi5")?;
    let pi6 = to_partition(&string[k..], "pi6")?;
    let threshold = t * p as u64;
    if let Some(&low) = pi5.parts().iter().find(|&&b| b <= threshold) {
        return Err(Error::Inconsistency(format!("pi5 part {low} is not above the threshold {threshold}")));
    }
    // Rebuild the conjugate diagram from the bottom row up, in units of t.
    let a_prime = &string[k..];
    let mut blocks = vec![0u64; p];
    let t_mod_s = ti.rem_euclid(si);
    let step = |diff: i64, what: &str| -> Result<u64> {
        match diff.rem_euclid(si) {
            0 => Ok(0),
            r if r == t_mod_s => Ok(1),
            r => Err(Error::Inconsistency(format!("{what} is {r} mod {s}, neither 0 nor {t_mod_s}"))),
        }
    };
    for i in (0..p).rev() {
        blocks[i] = if i + 1 == p {
            step(a_prime[i], "last pi6 entry")?
        } else {
            blocks[i + 1] + step(a_prime[i] - a_prime[i + 1], "pi6 difference")?
        };
    }
    let pi4_star: Vec<u64> = blocks.iter().take_while(|&&b| b > 0).map(|&b| b * t).collect();
    let pi4 = t_fold_columns(&pi4_star, t)?;
    let pi1_values: Vec<i64> = a_prime.iter().zip(&blocks).map(|(&a, &b)| a - (b * t) as i64).collect();
    let pi1 = to_partition(&pi1_values, "pi1")?;
    if let Some(&bad) = pi1.parts().iter().find(|&&a| a % s != 0 || a % t == 0) {
        return Err(Error::Inconsistency(format!("recovered pi1 part {bad} is not in C_st")));
    }
    let pi2 = Partition::from_unsorted(pi5.parts().iter().chain(pi4.parts()).copied().collect())?;
    let pi = Partition::from_unsorted(pi1.parts().iter().chain(pi2.parts()).copied().collect())
        .map_err(|e| Error::Inconsistency(format!("reassembled partition: {e}")))?;

    let trace = BijectionTrace {
        s,
        t,
        pi: pi.clone(),
        pi1,
        pi2,
        pi4,
        pi5,
        pi4_star,
        pi6,
        p,
        k,
        staircase: stair,
        s0,
        insertion_steps: Vec::new(),
        s_final,
        pi3: pi3.clone(),
    };
    trace.check()?;
    Ok((pi, trace))
}
