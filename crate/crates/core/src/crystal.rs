//! The crystal of a level-l Fock space at q = 0: i-signatures, Kashiwara operators, i-strings,
//! the string reflections σ_i and their dotted counterparts σ̇_i.
//!
//! Every function takes a `modulus`: n for the l-side crystal, l when the same machinery runs on
//! n-side labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::indexation::{cross_convert, cross_convert_back, ChargedMultipartition};
use crate::partitions::{content_vector, node_cmp, residue, Multipartition, Node};
use crate::weights::{inner_product, weight_from_content, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    Addable,
    Removable,
}

/// The i-signature of a label: its addable and removable i-nodes read in increasing node order,
/// and what is left after cancelling adjacent addable-removable pairs.
#[derive(Clone, Debug, Serialize)]
pub struct Signature {
    pub residue: usize,
    pub letters: Vec<(Node, Tag)>,
    pub reduced: Vec<(Node, Tag)>,
}

impl Signature {
    /// φ_i: surviving addable nodes.
    pub fn phi(&self) -> usize {
        self.reduced.iter().filter(|(_, t)| *t == Tag::Addable).count()
    }

    /// ε_i: surviving removable nodes.
    pub fn eps(&self) -> usize {
        self.reduced.iter().filter(|(_, t)| *t == Tag::Removable).count()
    }

    pub fn good_addable(&self) -> Option<Node> {
        self.reduced.iter().find(|(_, t)| *t == Tag::Addable).map(|(x, _)| *x)
    }

    pub fn good_removable(&self) -> Option<Node> {
        self.reduced.iter().rev().find(|(_, t)| *t == Tag::Removable).map(|(x, _)| *x)
    }
}

pub fn signature(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Signature {
    let mut letters: Vec<(Node, Tag)> = mp
        .addable_nodes()
        .into_iter()
        .filter(|x| residue(x, charges, modulus) == i)
        .map(|x| (x, Tag::Addable))
        .chain(mp.removable_nodes().into_iter().filter(|x| residue(x, charges, modulus) == i).map(|x| (x, Tag::Removable)))
        .collect();
    letters.sort_by(|a, b| node_cmp(&a.0, &b.0, charges));
    let mut reduced: Vec<(Node, Tag)> = Vec::with_capacity(letters.len());
    for &(x, t) in &letters {
        if t == Tag::Removable && matches!(reduced.last(), Some((_, Tag::Addable))) {
            reduced.pop();
        } else {
            reduced.push((x, t));
        }
    }
    Signature { residue: i, letters, reduced }
}

pub fn phi(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> usize {
    signature(mp, charges, modulus, i).phi()
}

pub fn eps(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> usize {
    signature(mp, charges, modulus, i).eps()
}

/// f̃_i: add the good addable i-node.
pub fn kashiwara_f(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Option<Multipartition> {
    signature(mp, charges, modulus, i).good_addable().map(|x| mp.add_node(&x))
}

/// ẽ_i: remove the good removable i-node.
pub fn kashiwara_e(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Option<Multipartition> {
    signature(mp, charges, modulus, i).good_removable().map(|x| mp.remove_node(&x))
}

/// Weight of a label in the Fock space of rank `modulus`.
pub fn crystal_weight(mp: &Multipartition, charges: &[i64], modulus: usize) -> Weight {
    weight_from_content(charges, modulus, &content_vector(mp, charges, modulus))
}

/// (wt(λ), α_i).
pub fn weight_pairing(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> i64 {
    let p = inner_product(&crystal_weight(mp, charges, modulus), &Weight::simple_root(i, modulus));
    debug_assert!(p.is_integer());
    p.to_integer()
}

/// The i-string through a label, from its head (ε_i = 0) to its tail (φ_i = 0).
pub fn i_string(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Vec<Multipartition> {
    let mut head = mp.clone();
    while let Some(up) = kashiwara_e(&head, charges, modulus, i) {
        head = up;
    }
    let mut out = vec![head];
    while let Some(next) = kashiwara_f(out.last().unwrap(), charges, modulus, i) {
        out.push(next);
    }
    out
}

/// σ_i: the reflection of the i-string through λ about its midpoint.
pub fn sigma_i(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Multipartition {
    let d = weight_pairing(mp, charges, modulus, i);
    let mut cur = mp.clone();
    let step = if d >= 0 { kashiwara_f } else { kashiwara_e };
    for _ in 0..d.unsigned_abs() {
        cur = step(&cur, charges, modulus, i).expect("string long enough for its own reflection");
    }
    cur
}

/// λ together with all of its addable i-nodes.
pub fn add_all_addable(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize) -> Multipartition {
    let mut out = mp.clone();
    for x in mp.addable_nodes() {
        if residue(&x, charges, modulus) == i {
            out = out.add_node(&x);
        }
    }
    out
}

/// σ̇_i on an l-side label: cross to the n-side, reflect the i-string of the rank-l crystal
/// there, cross back. The result carries the charges σ̇_i.s_l.
pub fn sigma_dot_i(mp: &Multipartition, charges_l: &[i64], n: usize, l: usize, i: usize) -> ChargedMultipartition {
    assert!(i < l, "dotted generator index out of range");
    let side_n = cross_convert(&ChargedMultipartition::new(mp.clone(), charges_l.to_vec()), n, l);
    let moved = sigma_i(&side_n.mp, &side_n.charges, l, i);
    cross_convert_back(&ChargedMultipartition::new(moved, side_n.charges), n, l)
}

/// Apply σ̇-generators right to left: `word[last]` acts first.
pub fn sigma_dot_word(mp: &Multipartition, charges_l: &[i64], n: usize, l: usize, word: &[usize]) -> ChargedMultipartition {
    let mut cur = ChargedMultipartition::new(mp.clone(), charges_l.to_vec());
    for &g in word.iter().rev() {
        cur = sigma_dot_i(&cur.mp, &cur.charges, n, l, g);
    }
    cur
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalEdge {
    pub src: Multipartition,
    pub i: usize,
    pub dst: Multipartition,
}

/// Crystal graph on all labels of size below `max_size`, with their f̃-arrows.
pub fn crystal_edges(charges: &[i64], modulus: usize, max_size: usize) -> Vec<CrystalEdge> {
    let mut out = Vec::new();
    for size in 0..max_size {
        for mp in Multipartition::all_of(size, charges.len()) {
            for i in 0..modulus {
                if let Some(dst) = kashiwara_f(&mp, charges, modulus, i) {
                    out.push(CrystalEdge { src: mp.clone(), i, dst });
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.src, a.i).cmp(&(&b.src, b.i)));
    out
}

/// Only the component of the empty label.
pub fn highest_weight_component(charges: &[i64], modulus: usize, max_size: usize) -> Vec<CrystalEdge> {
    let mut seen = BTreeSet::from([Multipartition::empty(charges.len())]);
    let mut frontier = vec![Multipartition::empty(charges.len())];
    let mut out = Vec::new();
    while let Some(mp) = frontier.pop() {
        if mp.size() >= max_size {
            continue;
        }
        for i in 0..modulus {
            if let Some(dst) = kashiwara_f(&mp, charges, modulus, i) {
                if seen.insert(dst.clone()) {
                    frontier.push(dst.clone());
                }
                out.push(CrystalEdge { src: mp.clone(), i, dst });
            }
        }
    }
    out.sort_by(|a, b| (&a.src, a.i).cmp(&(&b.src, b.i)));
    out
}

pub fn edges_to_dot(edges: &[CrystalEdge]) -> String {
    let mut ids: BTreeMap<&Multipartition, usize> = BTreeMap::new();
    for e in edges {
        let k = ids.len();
        ids.entry(&e.src).or_insert(k);
        let k = ids.len();
        ids.entry(&e.dst).or_insert(k);
    }
    let mut s = String::from("digraph crystal {\n");
    for (mp, id) in &ids {
        let _ = writeln!(s, "  v{id} [label=\"{mp}\"];");
    }
    for e in edges {
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", ids[&e.src], ids[&e.dst], e.i);
    }
    s.push_str("}\n");
    s
}

pub fn edges_to_json(edges: &[CrystalEdge]) -> String {
    let rows: Vec<_> = edges
        .iter()
        .map(|e| serde_json::json!({"src": e.src.to_string(), "i": e.i, "dst": e.dst.to_string()}))
        .collect();
    serde_json::to_string_pretty(&rows).expect("edge list serializes")
}
