//! Partitions, multipartitions, nodes, residues and the i-node statistics.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("not an i-chain: {0}")]
    NotAChain(String),
    #[error("cannot parse: {0}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row i (1-based) length, 0 beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// All partitions of `n`, parts in decreasing lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() || inner == "∅" {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> =
            inner.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| err())).collect::<Result<_, _>>()?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(err());
        }
        Ok(Partition::new(parts))
    }
}

/// An ordered tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a multipartition has at least one component");
        Multipartition(components)
    }

    pub fn empty(len: usize) -> Self {
        Multipartition(vec![Partition::empty(); len])
    }

    pub fn from_parts(parts: &[&[usize]]) -> Self {
        Multipartition(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|p| p.is_empty())
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|p| p.size()).sum()
    }

    pub fn component(&self, b: usize) -> &Partition {
        &self.0[b - 1]
    }

    /// All nodes, in order of component, row, column.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (b, p) in self.0.iter().enumerate() {
            for (i, &r) in p.parts().iter().enumerate() {
                for j in 1..=r {
                    out.push(Node::new(i + 1, j, b + 1));
                }
            }
        }
        out
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (b, p) in self.0.iter().enumerate() {
            for i in 1..=p.len() + 1 {
                if p.row(i) < p.row(i - 1) {
                    out.push(Node::new(i, p.row(i) + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (b, p) in self.0.iter().enumerate() {
            for i in 1..=p.len() {
                if p.row(i) > p.row(i + 1) {
                    out.push(Node::new(i, p.row(i), b + 1));
                }
            }
        }
        out
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.b >= 1 && node.b <= self.len() && node.i >= 1 && node.j >= 1 && self.component(node.b).row(node.i) >= node.j
    }

    /// Add an addable node.
    pub fn add_node(&self, node: &Node) -> Multipartition {
        let mut comps = self.0.clone();
        let p = &mut comps[node.b - 1].0;
        debug_assert!(p.len() + 1 >= node.i && (if node.i <= p.len() { p[node.i - 1] + 1 } else { 1 }) == node.j);
        if node.i > p.len() {
            p.push(1);
        } else {
            p[node.i - 1] += 1;
        }
        debug_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        Multipartition(comps)
    }

    /// Remove a removable node.
    pub fn remove_node(&self, node: &Node) -> Multipartition {
        let mut comps = self.0.clone();
        let p = &mut comps[node.b - 1].0;
        debug_assert_eq!(p[node.i - 1], node.j);
        p[node.i - 1] -= 1;
        if p[node.i - 1] == 0 {
            p.pop();
        }
        debug_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        Multipartition(comps)
    }

    /// Is `self` contained in `other` as Young diagrams?
    pub fn is_subset_of(&self, other: &Multipartition) -> bool {
        self.len() == other.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.len() <= b.len() && a.parts().iter().zip(b.parts()).all(|(x, y)| x <= y))
    }

    /// Nodes of `other` not in `self` (assumes containment).
    pub fn nodes_between(&self, other: &Multipartition) -> Vec<Node> {
        let mut out = Vec::new();
        for (b, (small, big)) in self.0.iter().zip(&other.0).enumerate() {
            for (i, &r) in big.parts().iter().enumerate() {
                for j in small.row(i + 1) + 1..=r {
                    out.push(Node::new(i + 1, j, b + 1));
                }
            }
        }
        out
    }

    /// All multipartitions with `len` components and total size `size`.
    pub fn all_of(size: usize, len: usize) -> Vec<Multipartition> {
        fn rec(size: usize, len: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
            if len == 1 {
                for p in Partition::all_of(size) {
                    cur.push(p);
                    out.push(Multipartition(cur.clone()));
                    cur.pop();
                }
                return;
            }
            for k in 0..=size {
                for p in Partition::all_of(k) {
                    cur.push(p);
                    rec(size - k, len - 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(size, len, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Multipartition {
    type Err = PartitionError;
    /// Parses `[[1,1],[1,1],[1]]` or `((1,1),(1,1),(1))`; empty components may be `[]`, `()` or `∅`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
            .ok_or_else(err)?;
        let mut comps = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        for ch in inner.chars() {
            match ch {
                '[' | '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' | ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                ',' if depth == 0 => {
                    comps.push(cur.parse::<Partition>()?);
                    cur.clear();
                }
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(err());
        }
        comps.push(cur.parse::<Partition>()?);
        Ok(Multipartition(comps))
    }
}

/// A box (i, j, b): row i, column j of component b, all 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Node {
    pub i: usize,
    pub j: usize,
    pub b: usize,
}

impl Node {
    pub fn new(i: usize, j: usize, b: usize) -> Self {
        Node { i, j, b }
    }

    /// s_b + j - i.
    pub fn content(&self, charges: &[i64]) -> i64 {
        charges[self.b - 1] + self.j as i64 - self.i as i64
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.b)
    }
}

impl FromStr for Node {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let t = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(err)?;
        let v: Vec<usize> = t.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect::<Result<_, _>>()?;
        if v.len() != 3 || v.iter().any(|&x| x == 0) {
            return Err(err());
        }
        Ok(Node::new(v[0], v[1], v[2]))
    }
}

/// (s_b + j - i) mod n.
pub fn residue(node: &Node, charges: &[i64], n: usize) -> usize {
    node.content(charges).rem_euclid(n as i64) as usize
}

/// The total order on nodes: by content s_b + j - i, ties broken by component.
pub fn node_cmp(a: &Node, b: &Node, charges: &[i64]) -> Ordering {
    (a.content(charges), a.b).cmp(&(b.content(charges), b.b))
}

pub fn node_order_less(a: &Node, b: &Node, charges: &[i64]) -> bool {
    node_cmp(a, b, charges) == Ordering::Less
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NodeStats {
    pub n_c: usize,
    pub a_c: usize,
    pub r_c: usize,
    pub m_c: i64,
}

pub fn node_stats(mp: &Multipartition, charges: &[i64], n: usize, c: usize) -> NodeStats {
    let n_c = mp.nodes().iter().filter(|x| residue(x, charges, n) == c).count();
    let a_c = mp.addable_nodes().iter().filter(|x| residue(x, charges, n) == c).count();
    let r_c = mp.removable_nodes().iter().filter(|x| residue(x, charges, n) == c).count();
    NodeStats { n_c, a_c, r_c, m_c: a_c as i64 - r_c as i64 }
}

/// Residue census (N_0, ..., N_{n-1}).
pub fn content_vector(mp: &Multipartition, charges: &[i64], n: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for x in mp.nodes() {
        v[residue(&x, charges, n)] += 1;
    }
    v
}

/// Residue contents of the n-cores of size at most `max_size` for one charge.
///
/// The cores form the orbit of ∅ under "add every addable i-node" and "remove every removable
/// i-node" (a core never has both kinds for the same residue).
pub fn core_contents(charge: i64, n: usize, max_size: usize) -> BTreeSet<Vec<usize>> {
    let ch = [charge];
    let start = Multipartition::empty(1);
    if n < 2 {
        return BTreeSet::from([vec![0; n]]);
    }
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(mp) = stack.pop() {
        for i in 0..n {
            let add: Vec<Node> = mp.addable_nodes().into_iter().filter(|x| residue(x, &ch, n) == i).collect();
            let rem: Vec<Node> = mp.removable_nodes().into_iter().filter(|x| residue(x, &ch, n) == i).collect();
            let next = match (add.is_empty(), rem.is_empty()) {
                (false, true) => add.iter().fold(mp.clone(), |m, x| m.add_node(x)),
                (true, false) => rem.iter().fold(mp.clone(), |m, x| m.remove_node(x)),
                _ => continue,
            };
            if next.size() <= max_size && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.iter().map(|m| content_vector(m, &ch, n)).collect()
}

/// Is there an L-multipartition with these charges and residue content?
///
/// Each component contributes the content of its core plus a multiple of (1, ..., 1), and every
/// such sum occurs (add n boxes to the first row). The search runs over tuples of cores.
pub fn content_is_attained(charges: &[i64], n: usize, content: &[usize]) -> bool {
    let total: usize = content.iter().sum();
    let fits = |v: &[usize]| v.iter().zip(content).all(|(a, b)| a <= b);
    let mut sums: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0; n]]);
    for &s in charges {
        let cores = core_contents(s, n, total);
        let mut next = BTreeSet::new();
        for acc in &sums {
            for c in &cores {
                let v: Vec<usize> = acc.iter().zip(c).map(|(a, b)| a + b).collect();
                if fits(&v) {
                    next.insert(v);
                }
            }
        }
        sums = next;
    }
    sums.iter().any(|v| {
        let gap: Vec<usize> = content.iter().zip(v).map(|(a, b)| a - b).collect();
        gap.iter().all(|&g| g == gap[0])
    })
}

/// (M^>, M^<) for a chain src -> dst of c-nodes.
///
/// M^> sums, over the added nodes g, the number of addable c-nodes of dst above g minus the
/// number of removable c-nodes of src above g; M^< is the same with "below".
pub fn m_statistics(
    src: &Multipartition,
    dst: &Multipartition,
    charges: &[i64],
    n: usize,
    c: usize,
) -> Result<(i64, i64), PartitionError> {
    if !src.is_subset_of(dst) {
        return Err(PartitionError::NotAChain(format!("{src} is not contained in {dst}")));
    }
    let added = src.nodes_between(dst);
    if let Some(bad) = added.iter().find(|x| residue(x, charges, n) != c) {
        return Err(PartitionError::NotAChain(format!("node {bad} does not have residue {c}")));
    }
    Ok(m_stats_unchecked(src, dst, &added, charges, n, c))
}

pub(crate) fn m_stats_unchecked(
    src: &Multipartition,
    dst: &Multipartition,
    added: &[Node],
    charges: &[i64],
    n: usize,
    c: usize,
) -> (i64, i64) {
    let key = |x: &Node| (x.content(charges), x.b);
    let addable: Vec<_> = dst.addable_nodes().into_iter().filter(|x| residue(x, charges, n) == c).map(|x| key(&x)).collect();
    let removable: Vec<_> =
        src.removable_nodes().into_iter().filter(|x| residue(x, charges, n) == c).map(|x| key(&x)).collect();
    let mut greater = 0i64;
    let mut less = 0i64;
    for g in added {
        let kg = key(g);
        greater += addable.iter().filter(|&&k| k > kg).count() as i64 - removable.iter().filter(|&&k| k > kg).count() as i64;
        less += addable.iter().filter(|&&k| k < kg).count() as i64 - removable.iter().filter(|&&k| k < kg).count() as i64;
    }
    (greater, less)
}

/// Strict dominance λ ◁ μ.
pub fn dominance_less(lambda: &Partition, mu: &Partition) -> Result<bool, PartitionError> {
    if lambda.size() != mu.size() {
        return Err(PartitionError::SizeMismatch(lambda.size(), mu.size()));
    }
    if lambda == mu {
        return Ok(false);
    }
    let (mut a, mut b) = (0usize, 0usize);
    for i in 1..=lambda.len().max(mu.len()) {
        a += lambda.row(i);
        b += mu.row(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All multipartitions with `len` components whose residue census is `content`, sorted by
/// component sequence.
pub fn enumerate_by_content(len: usize, charges: &[i64], n: usize, content: &[usize]) -> Vec<Multipartition> {
    assert_eq!(charges.len(), len);
    assert_eq!(content.len(), n);
    let size: usize = content.iter().sum();
    // Depth-first growth by adding nodes keeps only diagrams whose census stays below `content`.
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![Multipartition::empty(len)];
    let mut census = std::collections::HashMap::new();
    census.insert(Multipartition::empty(len), vec![0usize; n]);
    while let Some(mp) = stack.pop() {
        let cur = census[&mp].clone();
        if mp.size() == size {
            out.push(mp);
            continue;
        }
        for a in mp.addable_nodes() {
            let r = residue(&a, charges, n);
            if cur[r] < content[r] {
                let next = mp.add_node(&a);
                if seen.insert(next.clone()) {
                    let mut c2 = cur.clone();
                    c2[r] += 1;
                    census.insert(next.clone(), c2);
                    stack.push(next);
                }
            }
        }
    }
    out.sort();
    out
}
