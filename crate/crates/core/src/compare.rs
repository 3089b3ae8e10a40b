//! Similarity of transition matrices and the harnesses checking it: reflection of a weight
//! across a wall it cannot cross (σ_i), reflection of the charges (σ̇_i), and stabilization
//! along dominant families of charges (products of τ̇_i).

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canonical::{bar_matrix, check_transition, lusztig_lemma, CanonicalError, TransitionMatrix};
use crate::cones::{is_dominant, psi_int, stabilization_constants, StabilizationConstants};
use crate::crystal::{add_all_addable, sigma_dot_word, sigma_i};
use crate::indexation::{format_charges, fundamental_domain, tau_dot, weyl_charge_action};
use crate::partitions::{content_vector, Multipartition};
use crate::weights::{
    content_of_weight, corresponding_dot, d_shift, weight_from_content, weight_is_attained, weyl_reflect, Weight,
    WeightError,
};

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("bijection invalid: {0}")]
    BijectionInvalid(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),
    #[error("word validation failed: {0}")]
    ValidationFailed(String),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

pub type Result<T> = std::result::Result<T, CompareError>;

#[derive(Clone, Debug, Serialize)]
pub struct SimilarityWitness {
    /// Pairs (label of the first matrix, label of the second).
    pub bijection: Vec<(String, String)>,
    pub verified: bool,
    /// Entry positions (row, column) of the first matrix that disagree.
    pub mismatches: Vec<(usize, usize)>,
}

/// Compare Δ_A with Δ_B reindexed by `images` (the image of each basis label of A).
pub fn similar(a: &TransitionMatrix, b: &TransitionMatrix, images: &[Multipartition]) -> Result<SimilarityWitness> {
    if a.dim() != b.dim() || images.len() != a.dim() {
        return Err(CompareError::BijectionInvalid(format!(
            "dimensions {} and {} with {} images",
            a.dim(),
            b.dim(),
            images.len()
        )));
    }
    let mut idx = Vec::with_capacity(images.len());
    let mut used = vec![false; b.dim()];
    for (src, img) in a.basis.iter().zip(images) {
        let j = b
            .index_of(img)
            .ok_or_else(|| CompareError::BijectionInvalid(format!("{src} goes to {img}, outside the second basis")))?;
        if std::mem::replace(&mut used[j], true) {
            return Err(CompareError::BijectionInvalid(format!("{img} is hit twice")));
        }
        idx.push(j);
    }
    let mut mismatches = Vec::new();
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            if a.entries.get(r, c) != b.entries.get(idx[r], idx[c]) {
                mismatches.push((r, c));
            }
        }
    }
    Ok(SimilarityWitness {
        bijection: a.basis.iter().zip(images).map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        verified: mismatches.is_empty(),
        mismatches,
    })
}

/// Search every bijection for one under which the matrices agree. Cheap invariants first.
#[derive(Clone, Debug, Serialize)]
pub struct SimilaritySearch {
    pub nonzero_counts: (usize, usize),
    pub invariant_failure: Option<String>,
    pub permutation: Option<Vec<usize>>,
}

pub fn find_similarity(a: &TransitionMatrix, b: &TransitionMatrix) -> SimilaritySearch {
    let counts = (a.entries.nonzero_count(), b.entries.nonzero_count());
    let fail = |msg: String| SimilaritySearch { nonzero_counts: counts, invariant_failure: Some(msg), permutation: None };
    if a.dim() != b.dim() {
        return fail(format!("dimensions {} and {}", a.dim(), b.dim()));
    }
    if counts.0 != counts.1 {
        return fail(format!("nonzero entries {} and {}", counts.0, counts.1));
    }
    let multiset = |t: &TransitionMatrix| {
        let mut v: Vec<String> = (0..t.dim()).flat_map(|r| (0..t.dim()).map(move |c| (r, c))).map(|(r, c)| t.entries.get(r, c).to_string()).collect();
        v.sort();
        v
    };
    if multiset(a) != multiset(b) {
        return fail("entry multisets differ".into());
    }
    fn extend(a: &TransitionMatrix, b: &TransitionMatrix, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let r = perm.len();
        if r == a.dim() {
            return true;
        }
        for j in 0..b.dim() {
            if used[j] {
                continue;
            }
            let ok = (0..r).all(|k| a.entries.get(r, k) == b.entries.get(j, perm[k]) && a.entries.get(k, r) == b.entries.get(perm[k], j))
                && a.entries.get(r, r) == b.entries.get(j, j);
            if ok {
                perm.push(j);
                used[j] = true;
                if extend(a, b, perm, used) {
                    return true;
                }
                used[j] = false;
                perm.pop();
            }
        }
        false
    }
    let mut perm = Vec::new();
    let mut used = vec![false; b.dim()];
    let found = extend(a, b, &mut perm, &mut used);
    SimilaritySearch { nonzero_counts: counts, invariant_failure: None, permutation: found.then_some(perm) }
}

/// Δ^+ and Δ^− of one weight space, from a single bar matrix.
pub fn both_signs(charges_l: &[i64], w: &Weight, n: usize, l: usize) -> Result<(TransitionMatrix, TransitionMatrix)> {
    let a = bar_matrix(charges_l, w, n, l)?;
    let plus = lusztig_lemma(&a, 1)?;
    let minus = lusztig_lemma(&a, -1)?;
    check_transition(&a, &plus)?;
    check_transition(&a, &minus)?;
    Ok((plus, minus))
}

#[derive(Clone, Debug, Serialize)]
pub struct SignVerdict {
    pub sign: i8,
    pub witness: SimilarityWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub theorem: &'static str,
    pub n: usize,
    pub l: usize,
    pub i: usize,
    pub source_charges: Vec<i64>,
    pub source_content: Vec<usize>,
    pub target_charges: Vec<i64>,
    pub target_content: Vec<usize>,
    pub dimension: usize,
    pub hypothesis: String,
    /// Lemma bound s_i − s_{i+1} ≥ n(N_0 + 1), when it applies.
    pub bound_certifies: Option<bool>,
    /// The two constructions of the bijection coincide.
    pub routes_agree: bool,
    pub verdicts: Vec<SignVerdict>,
    pub verified: bool,
    #[serde(skip)]
    pub matrices: Vec<TransitionMatrix>,
}

fn finish(mut rep: ReflectionReport, pairs: [(TransitionMatrix, TransitionMatrix); 2], images: &[Multipartition]) -> Result<ReflectionReport> {
    for (a, b) in pairs {
        let witness = similar(&a, &b, images)?;
        rep.verdicts.push(SignVerdict { sign: a.sign, witness });
        rep.matrices.push(a);
        rep.matrices.push(b);
    }
    rep.verified = rep.routes_agree && rep.verdicts.iter().all(|v| v.witness.verified);
    Ok(rep)
}

/// Δ^± at w and at σ_i.w agree under σ_i, when w + α_i is not a weight.
pub fn verify_theorem1(charges_l: &[i64], w: &Weight, i: usize, n: usize, l: usize) -> Result<ReflectionReport> {
    let up = w.add(&Weight::simple_root(i, n));
    if weight_is_attained(charges_l, &up, n) {
        return Err(CompareError::HypothesisFailed(format!("w + α_{i} = {up} is a weight")));
    }
    let w2 = weyl_reflect(w, i);
    let (src, dst) = rayon::join(|| both_signs(charges_l, w, n, l), || both_signs(charges_l, &w2, n, l));
    let ((ap, am), (bp, bm)) = (src?, dst?);
    // σ_i adds every addable i-node here; the crystal reflection must agree
    let images: Vec<Multipartition> = ap.basis.iter().map(|m| add_all_addable(m, charges_l, n, i)).collect();
    let routes_agree = ap.basis.iter().zip(&images).all(|(m, img)| &sigma_i(m, charges_l, n, i) == img);
    let rep = ReflectionReport {
        theorem: "weight reflection",
        n,
        l,
        i,
        source_charges: charges_l.to_vec(),
        source_content: content_of_weight(w, charges_l, n)?,
        target_charges: charges_l.to_vec(),
        target_content: content_of_weight(&w2, charges_l, n)?,
        dimension: ap.dim(),
        hypothesis: format!("w + α_{i} is not a weight"),
        bound_certifies: None,
        routes_agree,
        verdicts: Vec::new(),
        verified: false,
        matrices: Vec::new(),
    };
    finish(rep, [(ap, bp), (am, bm)], &images)
}

/// The gap s_i − s_{i+1} (with s_0 = n + s_l for i = 0).
pub fn charge_gap(charges_l: &[i64], i: usize, n: usize) -> i64 {
    let l = charges_l.len();
    if i == 0 {
        n as i64 + charges_l[l - 1] - charges_l[0]
    } else {
        charges_l[i - 1] - charges_l[i]
    }
}

/// The sufficient condition s_i − s_{i+1} ≥ n(N_0 + 1) for ẇ + α̇_i not to be a dotted weight.
pub fn dotted_bound_holds(charges_l: &[i64], content: &[usize], i: usize, n: usize) -> bool {
    charge_gap(charges_l, i, n) >= n as i64 * (content[0] as i64 + 1)
}

/// Is ẇ + α̇_i a weight of the n-side Fock space? Decided by enumeration.
pub fn dotted_raise_attained(charges_l: &[i64], w: &Weight, i: usize, n: usize, l: usize) -> Result<bool> {
    let (charges_n, wd) = corresponding_dot(charges_l, w, n)?;
    let up = wd.add(&Weight::simple_root(i, l));
    Ok(weight_is_attained(&charges_n, &up, l))
}

/// Δ^± over s_l at w and over σ̇_i.s_l at w + d(s_l, σ̇_i.s_l)δ agree under σ̇_i, when
/// ẇ + α̇_i is not a dotted weight.
pub fn verify_theorem2(charges_l: &[i64], w: &Weight, i: usize, n: usize, l: usize) -> Result<ReflectionReport> {
    let content = content_of_weight(w, charges_l, n)?;
    let bound = dotted_bound_holds(charges_l, &content, i, n);
    if dotted_raise_attained(charges_l, w, i, n, l)? {
        return Err(CompareError::HypothesisFailed(format!(
            "ẇ + α̇_{i} is a dotted weight{}",
            if bound { " although the gap bound holds" } else { "" }
        )));
    }
    let t = weyl_charge_action(i, charges_l, n as i64);
    let w2 = w.add_delta(d_shift(charges_l, &t, n as i64)?);
    let (src, dst) = rayon::join(|| both_signs(charges_l, w, n, l), || both_signs(&t, &w2, n, l));
    let ((ap, am), (bp, bm)) = (src?, dst?);
    let mut images = Vec::with_capacity(ap.dim());
    for m in &ap.basis {
        let img = sigma_dot_word(m, charges_l, n, l, &[i]);
        if img.charges != t {
            return Err(CompareError::BijectionInvalid(format!("{m} lands over {}", format_charges(&img.charges))));
        }
        images.push(img.mp);
    }
    let rep = ReflectionReport {
        theorem: "charge reflection",
        n,
        l,
        i,
        source_charges: charges_l.to_vec(),
        source_content: content,
        target_charges: t.clone(),
        target_content: content_of_weight(&w2, &t, n)?,
        dimension: ap.dim(),
        hypothesis: format!("ẇ + α̇_{i} is not a dotted weight"),
        bound_certifies: Some(bound),
        routes_agree: true,
        verdicts: Vec::new(),
        verified: false,
        matrices: Vec::new(),
    };
    finish(rep, [(ap, bp), (am, bm)], &images)
}

/// Vertices of Γ(M) inside a window, its arrows and connected components.
#[derive(Clone, Debug, Serialize)]
pub struct GammaGraph {
    pub n: usize,
    pub m: i64,
    pub window: i64,
    pub vertices: Vec<Vec<i64>>,
    /// (source, target, generator) as vertex indices.
    pub edges: Vec<(usize, usize, usize)>,
    pub components: Vec<Vec<usize>>,
    /// σ̇-distance from the domain representative, within the padded window.
    pub lengths: Vec<Option<usize>>,
    /// Per component, the vertices of least length.
    pub minimal: Vec<Vec<usize>>,
}

/// Orbit elements of r with spread max − min ≤ window: same sum, same residues mod n up to order.
fn orbit_window(r: &[i64], n: usize, window: i64) -> Vec<Vec<i64>> {
    let l = r.len();
    let s: i64 = r.iter().sum();
    let mut res: Vec<i64> = r.iter().map(|x| x.rem_euclid(n as i64)).collect();
    res.sort();
    let lo = s.div_euclid(l as i64) - window;
    let hi = s.div_euclid(l as i64) + window + 1;
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<i64>, l: usize, lo: i64, hi: i64, window: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for x in lo..=hi {
            let (mn, mx) = cur.iter().fold((x, x), |(a, b), &y| (a.min(y), b.max(y)));
            if mx - mn <= window {
                cur.push(x);
                rec(cur, l, lo, hi, window, out);
                cur.pop();
            }
        }
    }
    rec(&mut Vec::new(), l, lo, hi, window, &mut out);
    out.retain(|t| {
        let mut rt: Vec<i64> = t.iter().map(|x| x.rem_euclid(n as i64)).collect();
        rt.sort();
        t.iter().sum::<i64>() == s && rt == res
    });
    out.sort();
    out
}

pub fn gamma_graph(r: &[i64], m: i64, window: i64, n: usize) -> GammaGraph {
    let l = r.len();
    let vertices = orbit_window(r, n, window);
    let index: HashMap<&Vec<i64>, usize> = vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut edges = Vec::new();
    let mut uf = UnionFind::new(vertices.len());
    for (k, v) in vertices.iter().enumerate() {
        for i in 0..l {
            if charge_gap(v, i, n) < m {
                continue;
            }
            if let Some(&j) = index.get(&weyl_charge_action(i, v, n as i64)) {
                edges.push((k, j, i));
                uf.union(k, j);
            }
        }
    }
    let mut comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..vertices.len() {
        comp.entry(uf.find(k)).or_default().push(k);
    }
    let mut components: Vec<Vec<usize>> = comp.into_values().collect();
    components.sort();

    // σ̇-distances from r, searched in a window padded by n
    let mut dist: HashMap<Vec<i64>, usize> = HashMap::from([(r.to_vec(), 0)]);
    let mut queue = VecDeque::from([r.to_vec()]);
    let spread = |v: &[i64]| v.iter().max().unwrap() - v.iter().min().unwrap();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for i in 0..l {
            let t = weyl_charge_action(i, &v, n as i64);
            if spread(&t) <= window + n as i64 && !dist.contains_key(&t) {
                dist.insert(t.clone(), d + 1);
                queue.push_back(t);
            }
        }
    }
    let lengths: Vec<Option<usize>> = vertices.iter().map(|v| dist.get(v).copied()).collect();
    let minimal = components
        .iter()
        .map(|c| {
            let best = c.iter().filter_map(|&k| lengths[k]).min();
            c.iter().copied().filter(|&k| best.is_some() && lengths[k] == best).collect()
        })
        .collect();
    GammaGraph { n, m, window, vertices, edges, components, lengths, minimal }
}

impl GammaGraph {
    pub fn component_of(&self, v: &[i64]) -> Option<usize> {
        let k = self.vertices.iter().position(|x| x == v)?;
        self.components.iter().position(|c| c.contains(&k))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gamma {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{k} [label=\"{}\"];\n", format_charges(v)));
        }
        for (a, b, i) in &self.edges {
            s.push_str(&format!("  v{a} -> v{b} [label=\"{i}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The σ̇-word (rightmost generator acts first) written out for τ̇_i, 2 ≤ i ≤ l − 3.
pub fn displayed_tau_word(i: usize, l: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..i).rev().collect();
    w.push(0);
    w.extend((i + 2..l).rev());
    w.push(i + 1);
    w.extend(i + 2..l);
    w.push(0);
    w.extend(1..=i);
    w
}

fn act(word: &[usize], s: &[i64], n: i64) -> Vec<i64> {
    word.iter().rev().fold(s.to_vec(), |acc, &g| weyl_charge_action(g, &acc, n))
}

/// Shortest σ̇-word acting as τ̇_i, by breadth-first search on the image of a generic point.
fn search_tau_word(i: usize, l: usize) -> Option<Vec<usize>> {
    let n = 1_000_003i64;
    let start: Vec<i64> = (0..l as i64).map(|k| 7919 * (k + 1) * (k + 3)).collect();
    let goal = tau_dot(i, &start, n);
    let mut prev: HashMap<Vec<i64>, (Vec<i64>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let mut seen = std::collections::HashSet::from([start.clone()]);
    while let Some((v, d)) = queue.pop_front() {
        if v == goal {
            // generators in order of application, so the last applied is leftmost
            let mut word = Vec::new();
            let mut cur = v;
            while let Some((p, g)) = prev.get(&cur) {
                word.push(*g);
                cur = p.clone();
            }
            return Some(word);
        }
        if d >= 2 * l {
            continue;
        }
        for g in 0..l {
            let t = weyl_charge_action(g, &v, n);
            if seen.insert(t.clone()) {
                prev.insert(t.clone(), (v.clone(), g));
                queue.push_back((t, d + 1));
            }
        }
    }
    None
}

/// A σ̇-word acting on charges as τ̇_i, validated on 50 random charge vectors.
pub fn tau_dot_factorization(i: usize, l: usize) -> Result<Vec<usize>> {
    if i == 0 || i >= l {
        return Err(CompareError::ValidationFailed(format!("τ̇_{i} needs 1 ≤ i ≤ {}", l.saturating_sub(1))));
    }
    let word = if i >= 2 && i + 3 <= l {
        displayed_tau_word(i, l)
    } else {
        search_tau_word(i, l).ok_or_else(|| CompareError::ValidationFailed(format!("no word for τ̇_{i} up to length {}", 2 * l)))?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a0 + (i * 31 + l) as u64);
    for _ in 0..50 {
        let n = rng.gen_range(2..9i64);
        let s: Vec<i64> = (0..l).map(|_| rng.gen_range(-20..=20)).collect();
        if act(&word, &s, n) != tau_dot(i, &s, n) {
            return Err(CompareError::ValidationFailed(format!("{word:?} does not act as τ̇_{i} on {s:?}")));
        }
    }
    Ok(word)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyPoint {
    pub x: Vec<i64>,
    pub charges: Vec<i64>,
    pub dominant: bool,
    pub included: bool,
    pub dimension: Option<usize>,
    pub nonzero_plus: Option<usize>,
    pub nonzero_minus: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyStep {
    pub from: Vec<i64>,
    pub to: Vec<i64>,
    pub generator: usize,
    pub word: Vec<usize>,
    pub verdicts: Vec<SignVerdict>,
    /// When the σ̇-path bijection fails: whether any bijection works.
    pub search: Option<SimilaritySearch>,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem3Report {
    pub n: usize,
    pub l: usize,
    pub vacuum: Vec<i64>,
    pub content: Vec<usize>,
    pub constants: StabilizationConstants,
    pub threshold: i64,
    pub conjectural: bool,
    pub forced: bool,
    pub points: Vec<FamilyPoint>,
    pub steps: Vec<FamilyStep>,
    pub verified: bool,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub matrices: Vec<TransitionMatrix>,
}

#[derive(Clone, Debug, Default)]
pub struct FamilyOptions {
    /// Use N′ = Σ N_i instead of N as dominance threshold.
    pub conjectured_threshold: bool,
    /// Include charges below the threshold.
    pub force: bool,
}

/// Similarity of Δ^± along the charges ψ(x), x ∈ [k_lo, k_hi]^{l−1}, for the weight of content
/// `content` over the vacuum r, shifted to each charge.
pub fn verify_theorem3(r: &[i64], content: &[usize], k_range: (i64, i64), n: usize, l: usize, opts: &FamilyOptions) -> Result<Theorem3Report> {
    let s: i64 = r.iter().sum();
    if r.len() != l || !fundamental_domain(l, n, s).iter().any(|v| v == r) {
        return Err(CompareError::HypothesisFailed(format!("{} is not in the fundamental domain", format_charges(r))));
    }
    let w = weight_from_content(r, n, content);
    if !weight_is_attained(r, &w, n) {
        return Err(CompareError::HypothesisFailed(format!("content {content:?} is not attained over {}", format_charges(r))));
    }
    let constants = stabilization_constants(content, n, l);
    let threshold = if opts.conjectured_threshold { constants.n_prime } else { constants.big_n };

    let d = l - 1;
    let mut xs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        xs = xs.into_iter().flat_map(|p| (k_range.0..=k_range.1).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    let points: Vec<(Vec<i64>, Vec<i64>, bool)> = xs
        .into_iter()
        .map(|x| {
            let ch = psi_int(&x, r, n);
            let dom = is_dominant(&ch, threshold);
            (x, ch, dom)
        })
        .collect();
    let included: Vec<bool> = points.iter().map(|(_, _, dom)| *dom || opts.force).collect();

    let results: Vec<Option<(TransitionMatrix, TransitionMatrix)>> = points
        .par_iter()
        .zip(&included)
        .map(|((_, ch, _), &inc)| -> Result<_> {
            if !inc {
                return Ok(None);
            }
            let wx = w.add_delta(d_shift(r, ch, n as i64)?);
            Ok(Some(both_signs(ch, &wx, n, l)?))
        })
        .collect::<Result<_>>()?;

    let mut rep_points = Vec::new();
    for ((x, ch, dom), (res, &inc)) in points.iter().zip(results.iter().zip(&included)) {
        rep_points.push(FamilyPoint {
            x: x.clone(),
            charges: ch.clone(),
            dominant: *dom,
            included: inc,
            dimension: res.as_ref().map(|(p, _)| p.dim()),
            nonzero_plus: res.as_ref().map(|(p, _)| p.entries.nonzero_count()),
            nonzero_minus: res.as_ref().map(|(_, m)| m.entries.nonzero_count()),
        });
    }

    let mut steps = Vec::new();
    for (a, (x, ch, _)) in points.iter().enumerate() {
        for g in 1..=d {
            let mut y = x.clone();
            y[g - 1] += 1;
            let Some(b) = points.iter().position(|(p, _, _)| *p == y) else { continue };
            let (Some((ap, am)), Some((bp, bm))) = (&results[a], &results[b]) else { continue };
            let word = tau_dot_factorization(g, l)?;
            let target = &points[b].1;
            let mut images = Vec::with_capacity(ap.dim());
            for m in &ap.basis {
                let img = sigma_dot_word(m, ch, n, l, &word);
                debug_assert_eq!(&img.charges, target);
                images.push(img.mp);
            }
            let mut verdicts = Vec::new();
            let mut verified = true;
            for (p, q) in [(ap, bp), (am, bm)] {
                let witness = similar(p, q, &images).unwrap_or_else(|e| SimilarityWitness {
                    bijection: vec![("invalid".into(), e.to_string())],
                    verified: false,
                    mismatches: Vec::new(),
                });
                verified &= witness.verified;
                verdicts.push(SignVerdict { sign: p.sign, witness });
            }
            let search = (!verified).then(|| find_similarity(ap, bp));
            steps.push(FamilyStep { from: ch.clone(), to: target.clone(), generator: g, word, verdicts, search, verified });
        }
    }

    let mut notes = Vec::new();
    if opts.conjectured_threshold {
        notes.push(format!("threshold N′ = {} is conjectural", constants.n_prime));
    }
    if opts.force {
        notes.push("charges below the threshold were included on request".into());
    }
    let checked = included.iter().filter(|&&b| b).count();
    if checked == 0 {
        notes.push(format!("no charge in range is {threshold}-dominant; nothing to compare"));
    }
    let verified = steps.iter().all(|s| s.verified);
    let matrices = results.into_iter().flatten().flat_map(|(p, m)| [p, m]).collect();
    Ok(Theorem3Report {
        n,
        l,
        vacuum: r.to_vec(),
        content: content.to_vec(),
        constants,
        threshold,
        conjectural: opts.conjectured_threshold || opts.force,
        forced: opts.force,
        points: rep_points,
        steps,
        verified,
        notes,
        matrices,
    })
}

/// Outcome of one instance of the gap-bound soundness check.
#[derive(Clone, Debug, Serialize)]
pub struct BoundInstance {
    pub charges: Vec<i64>,
    pub content: Vec<usize>,
    pub i: usize,
    pub bound_holds: bool,
    pub raise_attained: bool,
}

impl BoundInstance {
    pub fn sound(&self) -> bool {
        !self.bound_holds || !self.raise_attained
    }
}

pub fn bound_instance(charges_l: &[i64], content: &[usize], i: usize, n: usize, l: usize) -> Result<BoundInstance> {
    let w = weight_from_content(charges_l, n, content);
    Ok(BoundInstance {
        charges: charges_l.to_vec(),
        content: content.to_vec(),
        i,
        bound_holds: dotted_bound_holds(charges_l, content, i, n),
        raise_attained: dotted_raise_attained(charges_l, &w, i, n, l)?,
    })
}

/// Random small instances (charges, content of an actual label, i) satisfying the hypothesis
/// of the weight-reflection check.
pub fn random_reflection_instances<R: Rng>(n: usize, l: usize, count: usize, max_size: usize, rng: &mut R) -> Vec<(Vec<i64>, Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 200 * count {
        tries += 1;
        let charges: Vec<i64> = (0..l).map(|_| rng.gen_range(-2..=2)).collect();
        let size = rng.gen_range(1..=max_size);
        let labels = Multipartition::all_of(size, l);
        let mp = &labels[rng.gen_range(0..labels.len())];
        let content = content_vector(mp, &charges, n);
        let i = rng.gen_range(0..n);
        let w = weight_from_content(&charges, n, &content);
        if !weight_is_attained(&charges, &w.add(&Weight::simple_root(i, n)), n) {
            out.push((charges, content, i));
        }
    }
    out
}
