//! Exhaustive generators and counters for `C_t`, `D_t`, `C_st` and `D_st`.
//!
//! The generator is a depth-first search over parts in decreasing order.
//! Residue filters and pairwise difference rules are applied as parts are
//! placed; conditions that depend on global positions (D0, D2) are checked
//! once a candidate partition is complete. These enumerations serve as the
//! brute-force oracle for every cardinality statement in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{
    self, c_t_admits_part, class_vector, d3_pair_ok, d_t_admits_part, d_t_pair_ok, ClassVector, Condition, Conditions,
    Partition, SemigroupParams, Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "C_t")]
    CT,
    #[serde(rename = "D_t")]
    DT,
    #[serde(rename = "C_st")]
    CSt,
    #[serde(rename = "D_st")]
    DSt,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C_t" | "Ct" | "c_t" => Ok(Self::CT),
            "D_t" | "Dt" | "d_t" => Ok(Self::DT),
            "C_st" | "Cst" | "c_st" => Ok(Self::CSt),
            "D_st" | "Dst" | "d_st" => Ok(Self::DSt),
            other => Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CT => "C_t",
            Self::DT => "D_t",
            Self::CSt => "C_st",
            Self::DSt => "D_st",
        })
    }
}

/// A validated family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    t: u64,
    semigroup: Option<SemigroupParams>,
    conditions: Conditions,
}

impl FamilySpec {
    /// `s` is required exactly for the two-parameter families, and a
    /// non-default condition set is accepted only for `D_st`.
    pub fn new(family: Family, t: u64, s: Option<u64>, conditions: Option<Conditions>) -> Result<Self> {
        let semigroup = match (family, s) {
            (Family::CT | Family::DT, None) => {
                if t <= 2 {
                    return Err(Error::InvalidParams(format!("{family} needs t > 2, got t = {t}")));
                }
                None
            }
            (Family::CT | Family::DT, Some(s)) => {
                return Err(Error::InvalidParams(format!("{family} takes no s parameter (got s = {s})")))
            }
            (Family::CSt | Family::DSt, Some(s)) => Some(SemigroupParams::new(s, t)?),
            (Family::CSt | Family::DSt, None) => {
                return Err(Error::InvalidParams(format!("{family} needs an s parameter")))
            }
        };
        let conditions = match (family, conditions) {
            (_, None) => Conditions::all(),
            (Family::DSt, Some(c)) => c,
            (_, Some(c)) if c.is_all() => c,
            (_, Some(_)) => {
                return Err(Error::InvalidParams(format!("condition toggles apply only to D_st, not {family}")))
            }
        };
        Ok(Self { family, t, semigroup, conditions })
    }

    pub fn c_t(t: u64) -> Result<Self> {
        Self::new(Family::CT, t, None, None)
    }

    pub fn d_t(t: u64) -> Result<Self> {
        Self::new(Family::DT, t, None, None)
    }

    pub fn c_st(s: u64, t: u64) -> Result<Self> {
        Self::new(Family::CSt, t, Some(s), None)
    }

    pub fn d_st(s: u64, t: u64) -> Result<Self> {
        Self::new(Family::DSt, t, Some(s), None)
    }

    pub fn d_st_with(s: u64, t: u64, conditions: Conditions) -> Result<Self> {
        Self::new(Family::DSt, t, Some(s), Some(conditions))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn s(&self) -> Option<u64> {
        self.semigroup.as_ref().map(SemigroupParams::s)
    }

    pub fn semigroup(&self) -> Option<&SemigroupParams> {
        self.semigroup.as_ref()
    }

    pub fn conditions(&self) -> Conditions {
        self.conditions
    }

    /// Full membership predicate for this family.
    pub fn contains(&self, p: &Partition) -> bool {
        match (self.family, &self.semigroup) {
            (Family::CT, _) => partitions::is_in_c_t(p, self.t),
            (Family::DT, _) => partitions::is_in_d_t(p, self.t),
            (Family::CSt, Some(sg)) => partitions::is_in_c_st(p, sg),
            (Family::DSt, Some(sg)) => partitions::is_in_d_st(p, sg, self.conditions),
            _ => unreachable!("validated at construction"),
        }
    }

    fn admits_part(&self, x: u64) -> bool {
        let t = self.t;
        match (self.family, &self.semigroup) {
            (Family::CT, _) => c_t_admits_part(x, t),
            (Family::DT, _) => d_t_admits_part(x, t),
            (Family::CSt, Some(sg)) => x.is_multiple_of(sg.s()) || x.is_multiple_of(t),
            (Family::DSt, Some(sg)) => !self.conditions.contains(Condition::D1) || sg.in_w(x),
            _ => unreachable!("validated at construction"),
        }
    }

    /// Whether `next` may follow the already placed (decreasing) `prefix`.
    fn extends(&self, prefix: &[u64], next: u64) -> bool {
        let t = self.t;
        match (self.family, &self.semigroup) {
            (Family::DT, _) => prefix.last().is_none_or(|&y| d_t_pair_ok(y, next, t)),
            (Family::DSt, Some(sg)) if self.conditions.contains(Condition::D3) => {
                prefix.iter().rev().take_while(|&&y| y - next <= t).all(|&y| d3_pair_ok(y, next, sg))
            }
            _ => true,
        }
    }

    fn leaf_ok(&self, parts: &[u64]) -> bool {
        match (self.family, &self.semigroup) {
            (Family::DSt, Some(sg)) => {
                let needs_d0 = self.conditions.contains(Condition::D0);
                let needs_d2 = self.conditions.contains(Condition::D2);
                if !needs_d0 && !needs_d2 {
                    return true;
                }
                let p = Partition::new(parts.to_vec()).expect("search emits decreasing parts");
                (!needs_d2 || partitions::satisfies_d2(&p, sg)) && (!needs_d0 || partitions::satisfies_d0(&p, sg))
            }
            _ => true,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s() {
            Some(s) => write!(f, "{}(s={s}, t={})", self.family, self.t)?,
            None => write!(f, "{}(t={})", self.family, self.t)?,
        }
        if !self.conditions.is_all() {
            let off: Vec<String> = [Condition::D0, Condition::D1, Condition::D2, Condition::D3]
                .into_iter()
                .filter(|&c| !self.conditions.contains(c))
                .map(|c| c.to_string())
                .collect();
            write!(f, " without {}", off.join(","))?;
        }
        Ok(())
    }
}

/// Admissible parts up to `max` in increasing order, with prefix sums used to
/// bound the weight reachable by distinct parts below a given part.
struct PartTable {
    parts: Vec<u64>,
    prefix: Vec<u64>,
}

impl PartTable {
    fn new(spec: &FamilySpec, max: u64) -> Self {
        let parts: Vec<u64> = (1..=max).filter(|&x| spec.admits_part(x)).collect();
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        prefix.push(0u64);
        for &x in &parts {
            prefix.push(prefix.last().unwrap().saturating_add(x));
        }
        Self { parts, prefix }
    }

    /// Sum of all admissible parts strictly below `bound`.
    fn reachable_below(&self, bound: u64) -> u64 {
        self.prefix[self.parts.partition_point(|&x| x < bound)]
    }

    /// Admissible parts in `[1, hi]`, largest first.
    fn descending_up_to(&self, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let end = self.parts.partition_point(|&x| x <= hi);
        self.parts[..end].iter().rev().copied()
    }
}

/// Depth-first search producing partitions of exactly `n`, in lexicographically
/// decreasing order.
fn search_exact(
    spec: &FamilySpec,
    table: &PartTable,
    remaining: u64,
    prefix: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if remaining == 0 {
        if spec.leaf_ok(prefix) {
            emit(prefix);
        }
        return;
    }
    let hi = prefix.last().map_or(remaining, |&y| remaining.min(y - 1));
    for x in table.descending_up_to(hi) {
        // Remaining weight after x must fit in distinct admissible parts below x.
        if table.reachable_below(x) < remaining - x {
            break;
        }
        if !spec.extends(prefix, x) {
            continue;
        }
        prefix.push(x);
        search_exact(spec, table, remaining - x, prefix, emit);
        prefix.pop();
    }
}

/// Every member of the family with weight `n`, each once, in lexicographically
/// decreasing order of part sequences.
pub fn enumerate(n: u64, spec: &FamilySpec) -> Result<Vec<Partition>> {
    let table = PartTable::new(spec, n);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    search_exact(spec, &table, n, &mut prefix, &mut |parts| {
        out.push(Partition::new(parts.to_vec()).expect("search emits decreasing parts"));
    });
    Ok(out)
}

/// Number of members of weight `n`, without materialising them.
pub fn count(n: u64, spec: &FamilySpec) -> Result<u64> {
    let table = PartTable::new(spec, n);
    let mut total = 0u64;
    let mut overflow = false;
    let mut prefix = Vec::new();
    search_exact(spec, &table, n, &mut prefix, &mut |_| match total.checked_add(1) {
        Some(v) => total = v,
        None => overflow = true,
    });
    if overflow {
        return Err(Error::Overflow("family count"));
    }
    Ok(total)
}

fn sweep(
    spec: &FamilySpec,
    table: &PartTable,
    budget: u64,
    weight: u64,
    prefix: &mut Vec<u64>,
    counts: &mut [u64],
) -> Result<()> {
    if spec.leaf_ok(prefix) {
        let slot = &mut counts[weight as usize];
        *slot = slot.checked_add(1).ok_or(Error::Overflow("count table"))?;
    }
    let hi = prefix.last().map_or(budget, |&y| budget.min(y - 1));
    for x in table.descending_up_to(hi) {
        if !spec.extends(prefix, x) {
            continue;
        }
        prefix.push(x);
        sweep(spec, table, budget - x, weight + x, prefix, counts)?;
        prefix.pop();
    }
    Ok(())
}

/// Distinct-part knapsack over the admissible parts. Valid for the `C`
/// families, whose membership is a per-part residue test.
fn knapsack_counts(spec: &FamilySpec, max_n: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; max_n as usize + 1];
    counts[0] = 1;
    for x in (1..=max_n).filter(|&x| spec.admits_part(x)) {
        let x = x as usize;
        for w in (x..counts.len()).rev() {
            counts[w] = counts[w].checked_add(counts[w - x]).ok_or(Error::Overflow("count table"))?;
        }
    }
    Ok(counts)
}

/// `|family(n)|` for every `n` in `0..=max_n`.
///
/// `C` families are counted with a distinct-parts knapsack; `D` families with
/// a single depth-first sweep over all members of weight at most `max_n`.
pub fn count_table(max_n: u64, spec: &FamilySpec) -> Result<Vec<u64>> {
    match spec.family {
        Family::CT | Family::CSt => knapsack_counts(spec, max_n),
        Family::DT | Family::DSt => count_table_by_sweep(max_n, spec),
    }
}

/// `count_table` computed by one search accumulating by weight, for any family.
pub fn count_table_by_sweep(max_n: u64, spec: &FamilySpec) -> Result<Vec<u64>> {
    let table = PartTable::new(spec, max_n);
    let mut counts = vec![0u64; max_n as usize + 1];
    sweep(spec, &table, max_n, 0, &mut Vec::new(), &mut counts)?;
    Ok(counts)
}

/// Members of weight `n` grouped by class vector. Side C enumerates `C_st`,
/// side D enumerates `D_st` with all conditions.
pub fn refined_counts(n: u64, s: u64, t: u64, side: Side) -> Result<BTreeMap<ClassVector, u64>> {
    let spec = match side {
        Side::C => FamilySpec::c_st(s, t)?,
        Side::D => FamilySpec::d_st(s, t)?,
    };
    refined_counts_in(n, &spec)
}

/// Like [`refined_counts`] for an arbitrary two-parameter family spec, e.g.
/// `D_st` with some conditions switched off.
pub fn refined_counts_in(n: u64, spec: &FamilySpec) -> Result<BTreeMap<ClassVector, u64>> {
    let side = match spec.family() {
        Family::CSt => Side::C,
        Family::DSt => Side::D,
        other => return Err(Error::InvalidParams(format!("class vectors are defined for C_st and D_st, not {other}"))),
    };
    let sg = spec.semigroup().expect("two-parameter family");
    let mut map = BTreeMap::new();
    for p in enumerate(n, spec)? {
        let slot = map.entry(class_vector(&p, sg, side)).or_insert(0u64);
        *slot = slot.checked_add(1).ok_or(Error::Overflow("refined count"))?;
    }
    Ok(map)
}

/// First weights up to `max_n` where dropping D2 from `D_st` admits strictly
/// more partitions than the full condition set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D2Witness {
    pub n: u64,
    pub with_d2: u64,
    pub without_d2: u64,
    /// Lexicographically largest partition admitted only without D2.
    pub example: Partition,
}

/// Smallest `n <= max_n` at which D2 is not redundant for `(s, t)`, if any.
pub fn find_d2_witness(s: u64, t: u64, max_n: u64) -> Result<Option<D2Witness>> {
    let full = FamilySpec::d_st(s, t)?;
    let relaxed = FamilySpec::d_st_with(s, t, Conditions::all().without(Condition::D2))?;
    let with = count_table(max_n, &full)?;
    let without = count_table(max_n, &relaxed)?;
    let Some(n) = (0..=max_n).find(|&n| without[n as usize] > with[n as usize]) else {
        return Ok(None);
    };
    let example = enumerate(n, &relaxed)?
        .into_iter()
        .find(|p| !full.contains(p))
        .ok_or_else(|| Error::Inconsistency(format!("count gap at n = {n} without a witness")))?;
    Ok(Some(D2Witness { n, with_d2: with[n as usize], without_d2: without[n as usize], example }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn parts(list: &[Partition]) -> Vec<Vec<u64>> {
        list.iter().map(|p| p.parts().to_vec()).collect()
    }

    // Every subset of {1..n} summing to n, as a plain oracle.
    fn all_distinct_partitions(n: u64) -> Vec<Partition> {
        fn go(rem: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for x in (1..=rem.min(max)).rev() {
                cur.push(x);
                go(rem - x, x - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumerate_examples() {
        let c = enumerate(9, &FamilySpec::c_t(3).unwrap()).unwrap();
        assert_eq!(parts(&c), vec![vec![9], vec![6, 3], vec![4, 3, 2]]);
        let d = enumerate(9, &FamilySpec::d_t(3).unwrap()).unwrap();
        assert_eq!(parts(&d), vec![vec![9], vec![7, 2], vec![6, 3]]);
        for spec in [
            FamilySpec::c_t(5).unwrap(),
            FamilySpec::d_t(5).unwrap(),
            FamilySpec::c_st(2, 7).unwrap(),
            FamilySpec::d_st(3, 4).unwrap(),
        ] {
            assert_eq!(enumerate(0, &spec).unwrap(), vec![Partition::empty()]);
        }
    }

    #[test]
    fn count_table_examples() {
        assert_eq!(count_table(9, &FamilySpec::c_t(3).unwrap()).unwrap()[9], 3);
        assert_eq!(count_table(9, &FamilySpec::d_t(3).unwrap()).unwrap()[9], 3);
        for t in 3..9 {
            assert_eq!(count_table(10, &FamilySpec::c_t(t).unwrap()).unwrap()[0], 1);
        }
        assert!(count_table(424, &FamilySpec::c_st(2, 7).unwrap()).unwrap()[424] >= 1);
    }

    #[test]
    fn spec_validation() {
        assert!(FamilySpec::c_t(2).is_err());
        assert!(FamilySpec::new(Family::CT, 5, Some(2), None).is_err());
        assert!(FamilySpec::new(Family::DSt, 5, None, None).is_err());
        assert!(FamilySpec::c_st(4, 6).is_err());
        let off = Conditions::all().without(Condition::D2);
        assert!(FamilySpec::new(Family::CSt, 5, Some(2), Some(off)).is_err());
        assert!(FamilySpec::new(Family::DT, 5, None, Some(off)).is_err());
        assert!(FamilySpec::new(Family::DSt, 5, Some(2), Some(off)).is_ok());
        assert_eq!("D_st".parse::<Family>().unwrap(), Family::DSt);
    }

    #[test]
    fn enumeration_agrees_with_filtered_brute_force() {
        let specs = [
            FamilySpec::c_t(3).unwrap(),
            FamilySpec::d_t(3).unwrap(),
            FamilySpec::d_t(4).unwrap(),
            FamilySpec::c_st(2, 5).unwrap(),
            FamilySpec::d_st(2, 5).unwrap(),
            FamilySpec::d_st(3, 4).unwrap(),
            FamilySpec::d_st_with(2, 3, Conditions::all().without(Condition::D2)).unwrap(),
        ];
        for n in 0..=22 {
            let all = all_distinct_partitions(n);
            for spec in &specs {
                let expected: Vec<Partition> = all.iter().filter(|p| spec.contains(p)).cloned().collect();
                assert_eq!(enumerate(n, spec).unwrap(), expected, "{spec} n={n}");
            }
        }
    }

    #[test]
    fn no_duplicates_and_members_only() {
        let spec = FamilySpec::d_st(2, 7).unwrap();
        for n in 0..=40 {
            let list = enumerate(n, &spec).unwrap();
            let set: BTreeSet<_> = list.iter().cloned().collect();
            assert_eq!(set.len(), list.len());
            assert!(list.iter().all(|p| spec.contains(p) && p.weight() == n));
            assert!(list.windows(2).all(|w| w[0].parts() > w[1].parts()));
        }
    }

    #[test]
    fn count_table_routes_agree() {
        for spec in [
            FamilySpec::c_t(4).unwrap(),
            FamilySpec::c_st(3, 5).unwrap(),
            FamilySpec::d_t(5).unwrap(),
            FamilySpec::d_st(2, 7).unwrap(),
        ] {
            let table = count_table(35, &spec).unwrap();
            let swept = count_table_by_sweep(35, &spec).unwrap();
            assert_eq!(table, swept, "{spec}");
            for n in 0..=35 {
                assert_eq!(table[n as usize], enumerate(n, &spec).unwrap().len() as u64);
                assert_eq!(table[n as usize], count(n, &spec).unwrap());
            }
        }
    }

    #[test]
    fn refined_counts_small() {
        let c = refined_counts(9, 2, 3, Side::C).unwrap();
        let d = refined_counts(9, 2, 3, Side::D).unwrap();
        assert_eq!(c, d);
        let zero = refined_counts(0, 2, 7, Side::D).unwrap();
        assert_eq!(zero, BTreeMap::from([(ClassVector::zero(7), 1)]));
        assert_eq!(refined_counts(0, 2, 7, Side::C).unwrap(), zero);
    }

    #[test]
    fn d0_is_vacuous_for_s_two() {
        for t in [3u64, 5, 7] {
            let full = FamilySpec::d_st(2, t).unwrap();
            let no_d0 = FamilySpec::d_st_with(2, t, Conditions::all().without(Condition::D0)).unwrap();
            for n in 0..=40 {
                assert_eq!(enumerate(n, &full).unwrap(), enumerate(n, &no_d0).unwrap());
            }
        }
    }
}
