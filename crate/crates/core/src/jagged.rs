//! `k`-jagged partitions, the `k`-staircase and maximal blocks.
//!
//! A `k`-jagged partition is an integer sequence `(a_1, ..., a_m)` with
//! `a_1 > 0` and `a_{i+1} - a_i >= -k`. It is strong when every later entry is
//! at least `k` below no earlier entry, i.e. `a_j - a_i >= -k` for all `j > i`.
//! Adding `(i - 1)k` to `a_i` turns a `k`-jagged sequence into a weakly
//! increasing classical partition.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A sequence validated as `k`-jagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JaggedPartition {
    entries: Vec<i64>,
    k: u64,
}

impl JaggedPartition {
    pub fn new(entries: Vec<i64>, k: u64) -> Result<Self> {
        if !is_jagged(&entries, k) {
            return Err(Error::NotJagged { kind: "k-jagged", k });
        }
        Ok(Self { entries, k })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn is_strong(&self) -> bool {
        is_strong(&self.entries, self.k)
    }

    pub fn to_classical(&self) -> Vec<i64> {
        add_staircase(&self.entries, self.k)
    }

    pub fn maximal_blocks(&self) -> Result<Vec<MaximalBlock>> {
        maximal_blocks(&self.entries, self.k)
    }
}

/// A maximal block `M_j`: opened by a new running maximum `j`, all entries
/// within `[j - k, j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalBlock {
    pub label: i64,
    pub entries: Vec<i64>,
}

pub fn is_jagged(entries: &[i64], k: u64) -> bool {
    let k = k as i64;
    entries.first().is_none_or(|&a| a > 0) && entries.windows(2).all(|w| w[1] - w[0] >= -k)
}

pub fn is_strong(entries: &[i64], k: u64) -> bool {
    let Some(&first) = entries.first() else {
        return true;
    };
    if first <= 0 {
        return false;
    }
    let k = k as i64;
    let mut running_max = first;
    for &a in &entries[1..] {
        if a - running_max < -k {
            return false;
        }
        running_max = running_max.max(a);
    }
    true
}

/// `a_i -> a_i + (i - 1)k`.
pub fn add_staircase(entries: &[i64], k: u64) -> Vec<i64> {
    entries.iter().zip(0i64..).map(|(&a, i)| a + i * k as i64).collect()
}

/// Inverse of [`add_staircase`]; the result must be `k`-jagged.
pub fn remove_staircase(entries: &[i64], k: u64) -> Result<Vec<i64>> {
    let out: Vec<i64> = entries.iter().zip(0i64..).map(|(&b, i)| b - i * k as i64).collect();
    if !is_jagged(&out, k) {
        return Err(Error::NotJagged { kind: "k-jagged after removing the staircase", k });
    }
    Ok(out)
}

/// Splits a strong `k`-jagged sequence into its nonempty maximal blocks, left
/// to right. A block opens exactly when an entry exceeds everything before it.
pub fn maximal_blocks(entries: &[i64], k: u64) -> Result<Vec<MaximalBlock>> {
    if !is_strong(entries, k) {
        return Err(Error::NotJagged { kind: "strong k-jagged", k });
    }
    let mut blocks: Vec<MaximalBlock> = Vec::new();
    for &a in entries {
        match blocks.last_mut() {
            Some(block) if a <= block.label => block.entries.push(a),
            _ => blocks.push(MaximalBlock { label: a, entries: vec![a] }),
        }
    }
    Ok(blocks)
}

/// Entries of `M_label`; empty when no block carries that label.
pub fn block_entries(blocks: &[MaximalBlock], label: i64) -> &[i64] {
    blocks.iter().find(|b| b.label == label).map_or(&[], |b| b.entries.as_slice())
}

/// Random strong `k`-jagged sequence of at most `max_len` entries: labels are
/// drawn strictly increasing from 1, each block starts at its label and the
/// remaining entries are uniform on `[label - k, label]`.
pub fn sample_strong<R: Rng + ?Sized>(rng: &mut R, k: u64, max_len: usize) -> Vec<i64> {
    let k = k as i64;
    let len = rng.gen_range(0..=max_len);
    let mut out = Vec::with_capacity(len);
    let mut label = 0i64;
    while out.len() < len {
        label += rng.gen_range(1..=k + 2);
        let block_len = rng.gen_range(1..=(len - out.len()).min(6));
        out.push(label);
        for _ in 1..block_len {
            out.push(rng.gen_range(label - k..=label));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const MU: [i64; 13] = [3, 5, 5, 4, 5, 6, 4, 3, 4, 0, -2, 5, 11];

    #[test]
    fn jaggedness_of_example() {
        assert!(is_jagged(&MU, 4));
        assert!(!is_strong(&MU, 4));
        assert!(is_strong(&MU, 8));
        assert!(is_jagged(&[1, 2, 5, 9], 0) && is_strong(&[1, 2, 5, 9], 0));
        assert!(!is_jagged(&[1, -2], 1));
        assert!(!is_jagged(&[0, 1], 3));
        assert!(JaggedPartition::new(MU.to_vec(), 3).is_err());
    }

    #[test]
    fn staircase_example() {
        assert_eq!(add_staircase(&MU, 8), vec![3, 13, 21, 28, 37, 46, 52, 59, 68, 72, 78, 93, 107]);
        assert_eq!(add_staircase(&MU, 0), MU.to_vec());
        assert_eq!(remove_staircase(&add_staircase(&MU, 8), 8).unwrap(), MU.to_vec());
        assert!(remove_staircase(&[3, 1], 1).is_err());
    }

    #[test]
    fn blocks_of_example() {
        let blocks = maximal_blocks(&MU, 8).unwrap();
        let expected = [(3, vec![3]), (5, vec![5, 5, 4, 5]), (6, vec![6, 4, 3, 4, 0, -2, 5]), (11, vec![11])];
        assert_eq!(blocks.len(), expected.len());
        for (b, (label, entries)) in blocks.iter().zip(expected) {
            assert_eq!(b.label, label);
            assert_eq!(b.entries, entries);
        }
        for empty in [1, 2, 4, 7, 8, 9, 10, 12, 40] {
            assert!(block_entries(&blocks, empty).is_empty());
        }
        assert!(maximal_blocks(&MU, 4).is_err());
        assert!(maximal_blocks(&[], 3).unwrap().is_empty());
        assert_eq!(maximal_blocks(&[7], 0).unwrap(), vec![MaximalBlock { label: 7, entries: vec![7] }]);
    }

    #[test]
    fn sampled_sequences_are_strong() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(0..=10);
            let seq = sample_strong(&mut rng, k, 30);
            assert!(is_strong(&seq, k), "{seq:?} k={k}");
            assert!(is_jagged(&seq, k));
        }
    }
}
