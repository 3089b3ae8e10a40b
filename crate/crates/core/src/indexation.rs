//! Bead sets and the three indexations of the standard basis of the wedge space, the charge
//! domains A_{L,N}(s), the maps θ_{L,N} and the Weyl-group actions on charge vectors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{Multipartition, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexationError {
    #[error("theta inverse is not integral for {0:?}")]
    NonIntegral(Vec<i64>),
    #[error("expected {expected} charges, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChargedPartition {
    pub partition: Partition,
    pub charge: i64,
}

impl ChargedPartition {
    pub fn new(partition: Partition, charge: i64) -> Self {
        ChargedPartition { partition, charge }
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.partition, self.charge)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChargedMultipartition {
    pub mp: Multipartition,
    pub charges: Vec<i64>,
}

impl ChargedMultipartition {
    pub fn new(mp: Multipartition, charges: Vec<i64>) -> Self {
        assert_eq!(mp.len(), charges.len(), "one charge per component");
        ChargedMultipartition { mp, charges }
    }

    pub fn charge(&self) -> i64 {
        self.charges.iter().sum()
    }
}

impl fmt::Display for ChargedMultipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mp, format_charges(&self.charges))
    }
}

/// `(0,0,-1)`.
pub fn format_charges(c: &[i64]) -> String {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

/// Parses `(0,0,-1)`, `[0,0,-1]` or `0,0,-1`.
pub fn parse_charges(s: &str) -> Option<Vec<i64>> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return None;
    }
    t.split(',').map(|x| x.trim().parse::<i64>().ok()).collect()
}

/// A strictly decreasing integer sequence whose tail is k_i = s - i + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetaSet {
    prefix: Vec<i64>,
    charge: i64,
}

impl BetaSet {
    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// The first r elements (tail included as needed).
    pub fn take(&self, r: usize) -> Vec<i64> {
        (0..r)
            .map(|i| if i < self.prefix.len() { self.prefix[i] } else { self.charge - i as i64 })
            .collect()
    }
}

/// k_i = s + λ_i - i + 1, prefix of length len(λ).
pub fn beta_set(cp: &ChargedPartition) -> BetaSet {
    let s = cp.charge;
    let prefix = cp.partition.parts().iter().enumerate().map(|(i, &p)| s + p as i64 - i as i64).collect();
    BetaSet { prefix, charge: s }
}

pub fn beta_to_partition(b: &BetaSet) -> ChargedPartition {
    partition_of_beads(&b.prefix, b.charge)
}

/// Read a charged partition from a decreasing bead prefix followed by the standard tail.
pub fn partition_of_beads(prefix: &[i64], s: i64) -> ChargedPartition {
    let mut parts: Vec<usize> = prefix
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let v = k - (s - i as i64);
            assert!(v >= 0, "bead prefix is not a beta set of charge {s}");
            v as usize
        })
        .collect();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    ChargedPartition::new(Partition::new(parts), s)
}

/// k = a + n(b-1) + nl·m with a ∈ [1,n], b ∈ [1,l].
pub fn decompose_bead(k: i64, n: usize, l: usize) -> (usize, usize, i64) {
    let (n, l) = (n as i64, l as i64);
    let r = (k - 1).rem_euclid(n * l);
    let m = (k - 1 - r) / (n * l);
    ((r % n + 1) as usize, (r / n + 1) as usize, m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    L,
    N,
}

// bead of the big partition corresponding to value v of component c
fn bead_of(side: Side, c: usize, v: i64, n: usize, l: usize) -> i64 {
    let (n_, l_) = (n as i64, l as i64);
    match side {
        Side::L => {
            let a = (v - 1).rem_euclid(n_) + 1;
            let m = (v - a) / n_;
            a + n_ * (c as i64 - 1) + n_ * l_ * m
        }
        Side::N => {
            let b = (v - 1).rem_euclid(l_) + 1;
            let m = (v - b) / l_;
            c as i64 + n_ * (b - 1) + n_ * l_ * m
        }
    }
}

fn split(cp: &ChargedPartition, n: usize, l: usize, side: Side) -> ChargedMultipartition {
    let big_n = n * l;
    let comps = if side == Side::L { l } else { n };
    // every bead at or below the last one of this prefix is present
    let r = cp.partition.len() + big_n;
    let beads = beta_set(cp).take(r);
    let mut lists: Vec<Vec<i64>> = vec![Vec::new(); comps];
    for k in beads {
        let (a, b, m) = decompose_bead(k, n, l);
        match side {
            Side::L => lists[b - 1].push(a as i64 + n as i64 * m),
            Side::N => lists[a - 1].push(b as i64 + l as i64 * m),
        }
    }
    let mut parts = Vec::with_capacity(comps);
    let mut charges = Vec::with_capacity(comps);
    for list in lists {
        debug_assert!(!list.is_empty());
        let charge = list[list.len() - 1] + list.len() as i64 - 1;
        let cpart = partition_of_beads(&list, charge);
        parts.push(cpart.partition);
        charges.push(charge);
    }
    ChargedMultipartition::new(Multipartition::new(parts), charges)
}

fn merge(cmp: &ChargedMultipartition, n: usize, l: usize, side: Side) -> ChargedPartition {
    let s = cmp.charge();
    // below this threshold all beads are present
    let threshold = cmp
        .mp
        .components()
        .iter()
        .zip(&cmp.charges)
        .enumerate()
        .map(|(c, (p, &ch))| bead_of(side, c + 1, ch - p.len() as i64, n, l))
        .min()
        .unwrap()
        - 1;
    let mut beads = Vec::new();
    for (c, (p, &ch)) in cmp.mp.components().iter().zip(&cmp.charges).enumerate() {
        let mut i = 0usize;
        loop {
            let v = ch + p.row(i + 1) as i64 - i as i64;
            let k = bead_of(side, c + 1, v, n, l);
            if k <= threshold {
                break;
            }
            beads.push(k);
            i += 1;
        }
    }
    beads.sort_unstable_by(|a, b| b.cmp(a));
    partition_of_beads(&beads, s)
}

/// The l-indexation: bead (a, b, m) goes to component b with value a + n·m.
pub fn to_l_indexation(cp: &ChargedPartition, n: usize, l: usize) -> ChargedMultipartition {
    split(cp, n, l, Side::L)
}

/// The n-indexation: bead (a, b, m) goes to component a with value b + l·m.
pub fn to_n_indexation(cp: &ChargedPartition, n: usize, l: usize) -> ChargedMultipartition {
    split(cp, n, l, Side::N)
}

pub fn from_l_indexation(cmp: &ChargedMultipartition, n: usize, l: usize) -> ChargedPartition {
    assert_eq!(cmp.mp.len(), l);
    merge(cmp, n, l, Side::L)
}

pub fn from_n_indexation(cmp: &ChargedMultipartition, n: usize, l: usize) -> ChargedPartition {
    assert_eq!(cmp.mp.len(), n);
    merge(cmp, n, l, Side::N)
}

/// l-side label to the n-side label of the same basis vector.
pub fn cross_convert(cmp_l: &ChargedMultipartition, n: usize, l: usize) -> ChargedMultipartition {
    to_n_indexation(&from_l_indexation(cmp_l, n, l), n, l)
}

/// n-side label to the l-side label of the same basis vector.
pub fn cross_convert_back(cmp_n: &ChargedMultipartition, n: usize, l: usize) -> ChargedMultipartition {
    to_l_indexation(&from_n_indexation(cmp_n, n, l), n, l)
}

/// A_{L,N}(s): r_1 ≥ ... ≥ r_L, sum s, r_1 - r_L ≤ N; lexicographic order.
pub fn fundamental_domain(len: usize, big_n: usize, s: i64) -> Vec<Vec<i64>> {
    assert!(len >= 1);
    let big_n = big_n as i64;
    let mut out = Vec::new();
    let lo = s.div_euclid(len as i64) - big_n - 1;
    let hi = s.div_euclid(len as i64) + 1;
    fn rec(cur: &mut Vec<i64>, len: usize, last: i64, bottom: i64, big_n: i64, s: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len - 1 {
            let rest = s - cur.iter().sum::<i64>();
            if rest == bottom && rest <= last {
                let mut v = cur.clone();
                v.push(rest);
                out.push(v);
            }
            return;
        }
        for x in bottom..=last.min(bottom + big_n) {
            cur.push(x);
            rec(cur, len, x, bottom, big_n, s, out);
            cur.pop();
        }
    }
    if len == 1 {
        return vec![vec![s]];
    }
    for bottom in lo..=hi {
        let mut cur = Vec::new();
        rec(&mut cur, len, bottom + big_n, bottom, big_n, s, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// θ_{L,N}(s) = (N - s_1 + s_L, s_1 - s_2, ..., s_{L-1} - s_L).
pub fn theta(big_n: i64, charges: &[i64]) -> Vec<i64> {
    let len = charges.len();
    let mut out = vec![big_n - charges[0] + charges[len - 1]];
    out.extend(charges.windows(2).map(|w| w[0] - w[1]));
    out
}

/// Inverse of θ_{L,N} on vectors summing to N, for the ambient charge s.
///
/// With a = (a_0, ..., a_{L-1}): s_i = (s - Σ_{j≥1} j·a_j)/L + Σ_{j=i}^{L-1} a_j.
pub fn theta_inverse(a: &[i64], s: i64) -> Result<Vec<i64>, IndexationError> {
    let len = a.len() as i64;
    let weighted: i64 = a.iter().enumerate().skip(1).map(|(j, &x)| j as i64 * x).sum();
    let num = s - weighted;
    if num.rem_euclid(len) != 0 {
        return Err(IndexationError::NonIntegral(a.to_vec()));
    }
    let base = num / len;
    Ok((1..=a.len()).map(|i| base + a[i..].iter().sum::<i64>()).collect())
}

/// σ_0 sends (s_1, ..., s_L) to (s_L + level, s_2, ..., s_{L-1}, s_1 - level); σ_i swaps s_i, s_{i+1}.
pub fn weyl_charge_action(i: usize, charges: &[i64], level: i64) -> Vec<i64> {
    let len = charges.len();
    assert!(i < len.max(1), "generator index out of range");
    let mut s = charges.to_vec();
    if len == 1 {
        return s;
    }
    if i == 0 {
        let (first, last) = (s[0], s[len - 1]);
        s[0] = last + level;
        s[len - 1] = first - level;
    } else {
        s.swap(i - 1, i);
    }
    s
}

/// τ̇_i: s_i += n, s_{i+1} -= n (1 ≤ i ≤ l - 1).
pub fn tau_dot(i: usize, charges: &[i64], n: i64) -> Vec<i64> {
    assert!(i >= 1 && i < charges.len(), "tau index out of range");
    let mut s = charges.to_vec();
    s[i - 1] += n;
    s[i] -= n;
    s
}

pub fn tau_dot_inverse(i: usize, charges: &[i64], n: i64) -> Vec<i64> {
    tau_dot(i, charges, -n)
}

/// Walk a charge vector into A_{L,level}(s); returns the representative and the generators
/// applied, in order.
pub fn orbit_representative(charges: &[i64], level: i64) -> (Vec<i64>, Vec<usize>) {
    let len = charges.len();
    let mut s = charges.to_vec();
    let mut word = Vec::new();
    if len == 1 {
        return (s, word);
    }
    loop {
        if let Some(i) = (0..len - 1).find(|&i| s[i] < s[i + 1]) {
            s = weyl_charge_action(i + 1, &s, level);
            word.push(i + 1);
        } else if s[0] - s[len - 1] > level {
            s = weyl_charge_action(0, &s, level);
            word.push(0);
        } else {
            return (s, word);
        }
    }
}
