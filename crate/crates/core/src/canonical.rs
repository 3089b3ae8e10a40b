//! The bar involution on a combined weight space, computed from bar-invariant spanning vectors,
//! and the canonical bases G^± with their transition matrices.
//!
//! Spanning vectors have the shape ḟ-word · B_{-m}-monomial · f-word · |∅, r⟩ for vacua r of
//! A_{l,n}(s). Vectors are stored on the "big partition" side (one charge s), so all three
//! families act on the same keys.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::actions::{f_on_label, FockContext};
use crate::indexation::{
    cross_convert, format_charges, from_l_indexation, from_n_indexation, fundamental_domain, theta, theta_inverse,
    to_l_indexation, to_n_indexation, ChargedMultipartition, ChargedPartition,
};
use crate::laurent::{solve_unitriangular, Laurent, LaurentError, LaurentMatrix, Matrix};
use crate::partitions::{content_vector, enumerate_by_content, Multipartition, Partition};
use crate::wedge::{Straightener, WedgeError, WedgeVector};
use crate::weights::{
    content_of_weight, dot_weight_of_charges, root_decomposition, weight_from_content, Weight, WeightError,
};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("weight: {0}")]
    Weight(#[from] WeightError),
    #[error("wedge: {0}")]
    Wedge(#[from] WedgeError),
    #[error("matrix: {0}")]
    Matrix(#[from] LaurentError),
    #[error("weight {0} is not attained in this Fock space")]
    NotAttained(String),
    #[error("spanning vectors reach rank {rank} of {dim} within word-length bound {bound}")]
    SpanningFailed { rank: usize, dim: usize, bound: usize },
    #[error("bar matrix check failed: {0}")]
    BarCheck(String),
    #[error("triangular recursion has no solution at ({row}, {col}): {detail}")]
    NoSolution { row: usize, col: usize, detail: String },
    #[error("positivity fails at ({row}, {col}): {entry}")]
    Positivity { row: usize, col: usize, entry: String },
    #[error("relabelling through the other indexation is not a bijection onto charges {0}")]
    Relabel(String),
}

pub type Result<T> = std::result::Result<T, CanonicalError>;

/// Knobs for the spanning search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Largest word cost Σd + Σḋ + nl·m tried; defaults to a bound covering every word.
    pub bound: Option<usize>,
    /// Randomize which candidate columns are kept (the resulting A must not change).
    pub seed: Option<u64>,
}

/// Matrix of the bar involution in the standard basis of one weight space.
#[derive(Clone, Debug)]
pub struct BarMatrix {
    pub n: usize,
    pub l: usize,
    pub charges: Vec<i64>,
    pub content: Vec<usize>,
    pub basis: Vec<Multipartition>,
    pub big: Vec<Partition>,
    pub entries: LaurentMatrix,
}

/// Entry (r, c) is the coefficient of basis[r] in G(basis[c]).
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub n: usize,
    pub l: usize,
    pub charges: Vec<i64>,
    pub content: Vec<usize>,
    pub sign: i8,
    pub basis: Vec<Multipartition>,
    pub big: Vec<Partition>,
    pub entries: LaurentMatrix,
    /// true when labels are n-multipartitions (output of [`dotted_transition`]).
    pub dotted: bool,
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    n: usize,
    l: usize,
    charges: &'a [i64],
    content: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    sign: Option<i8>,
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn entries_as_strings(m: &LaurentMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

fn csv_of(basis: &[Multipartition], m: &LaurentMatrix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["label".to_string()];
    head.extend(basis.iter().map(|b| b.to_string()));
    w.write_record(&head).expect("in-memory csv");
    for (r, b) in basis.iter().enumerate() {
        let mut row = vec![b.to_string()];
        row.extend((0..m.cols()).map(|c| m.get(r, c).to_string()));
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

impl BarMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            n: self.n,
            l: self.l,
            charges: &self.charges,
            content: &self.content,
            sign: None,
            basis: self.basis.iter().map(|b| b.to_string()).collect(),
            entries: entries_as_strings(&self.entries),
        })
        .expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        csv_of(&self.basis, &self.entries)
    }
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, mp: &Multipartition) -> Option<usize> {
        self.basis.iter().position(|b| b == mp)
    }

    pub fn entry(&self, row: &Multipartition, col: &Multipartition) -> Option<&Laurent> {
        Some(self.entries.get(self.index_of(row)?, self.index_of(col)?))
    }

    /// The matrix with rows and columns listed in `order` (given as labels).
    pub fn reordered(&self, order: &[Multipartition]) -> Option<TransitionMatrix> {
        let perm: Option<Vec<usize>> = order.iter().map(|m| self.index_of(m)).collect();
        let perm = perm?;
        if perm.len() != self.dim() {
            return None;
        }
        let mut out = self.clone();
        out.basis = perm.iter().map(|&i| self.basis[i].clone()).collect();
        out.big = perm.iter().map(|&i| self.big[i].clone()).collect();
        out.entries = self.entries.permute(&perm);
        Some(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            n: self.n,
            l: self.l,
            charges: &self.charges,
            content: &self.content,
            sign: Some(self.sign),
            basis: self.basis.iter().map(|b| b.to_string()).collect(),
            entries: entries_as_strings(&self.entries),
        })
        .expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        csv_of(&self.basis, &self.entries)
    }

    /// Plain text table.
    pub fn render(&self) -> String {
        let ents = entries_as_strings(&self.entries);
        let width = ents.iter().flatten().map(|s| s.len()).max().unwrap_or(1).max(1);
        let mut s = format!(
            "n={} l={} charges={} sign={}\n",
            self.n,
            self.l,
            format_charges(&self.charges),
            if self.sign > 0 { "+" } else { "-" }
        );
        for (r, row) in ents.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            s.push_str(&format!("{}  {}\n", cells.join("  "), self.basis[r]));
        }
        s
    }
}

/// Decompose a level-0 weight as Σ D_i α_i with integer D_i.
fn integral_decomposition(w: &Weight) -> Option<Vec<i64>> {
    if w.rank() == 1 {
        // α_0 = δ in rank one
        return if w.coeffs[0] == 0 && w.delta.is_integer() { Some(vec![w.delta.to_integer()]) } else { None };
    }
    let d = root_decomposition(w)?;
    d.into_iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

type BigVec = BTreeMap<Partition, Laurent>;

/// Chevalley operators of both algebras acting on big-partition keys of one charge.
struct Engine {
    n: usize,
    l: usize,
    s: i64,
    wedge: Straightener,
    f_cache: Mutex<HashMap<(Partition, usize, usize, bool), Arc<Vec<(Partition, Laurent)>>>>,
}

impl Engine {
    fn new(n: usize, l: usize, s: i64) -> Result<Self> {
        Ok(Engine { n, l, s, wedge: Straightener::with_global_rules(n, l)?, f_cache: Mutex::new(HashMap::new()) })
    }

    fn f_label(&self, lam: &Partition, i: usize, k: usize, dotted: bool) -> Arc<Vec<(Partition, Laurent)>> {
        let key = (lam.clone(), i, k, dotted);
        if let Some(v) = self.f_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let cp = ChargedPartition::new(lam.clone(), self.s);
        let out: Vec<(Partition, Laurent)> = if dotted {
            let cmp = to_n_indexation(&cp, self.n, self.l);
            let ctx = FockContext::n_side(cmp.charges.clone(), self.l);
            f_on_label(&ctx, &cmp.mp, i, k)
                .into_iter()
                .map(|(mp, c)| {
                    let back = from_n_indexation(&ChargedMultipartition::new(mp, cmp.charges.clone()), self.n, self.l);
                    (back.partition, c)
                })
                .collect()
        } else {
            let cmp = to_l_indexation(&cp, self.n, self.l);
            let ctx = FockContext::l_side(cmp.charges.clone(), self.n);
            f_on_label(&ctx, &cmp.mp, i, k)
                .into_iter()
                .map(|(mp, c)| {
                    let back = from_l_indexation(&ChargedMultipartition::new(mp, cmp.charges.clone()), self.n, self.l);
                    (back.partition, c)
                })
                .collect()
        };
        let out = Arc::new(out);
        let mut cache = self.f_cache.lock().unwrap();
        if cache.len() > 200_000 {
            cache.clear();
        }
        cache.insert(key, out.clone());
        out
    }

    fn f(&self, v: &BigVec, i: usize, k: usize, dotted: bool) -> BigVec {
        let mut out: BigVec = BTreeMap::new();
        for (lam, c) in v {
            for (mu, e) in self.f_label(lam, i, k, dotted).iter() {
                *out.entry(mu.clone()).or_default() += &(c * e);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn b_minus(&self, parts: &[usize], v: &BigVec) -> Result<BigVec> {
        let mut wv = WedgeVector::zero(self.s);
        for (lam, c) in v {
            wv.add_term(lam.clone(), c);
        }
        for &m in parts {
            wv = self.wedge.b_operator(-(m as i64), &wv)?;
            if wv.is_zero() {
                break;
            }
        }
        Ok(wv.terms().map(|(p, c)| (p.clone(), c.clone())).collect())
    }
}

/// Incremental row echelon form over Q for the rank test (sparse rows keyed by partition).
#[derive(Default)]
struct Echelon {
    rows: Vec<(Partition, BTreeMap<Partition, BigRational>)>,
}

impl Echelon {
    fn try_add(&mut self, mut v: BTreeMap<Partition, BigRational>) -> bool {
        for (piv, row) in &self.rows {
            let f = match v.get(piv) {
                Some(x) => x / &row[piv],
                None => continue,
            };
            for (k, y) in row {
                let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &f * y;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        match v.keys().next().cloned() {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn evaluate(v: &BigVec, x: &BigRational) -> BTreeMap<Partition, BigRational> {
    v.iter().map(|(k, c)| (k.clone(), c.eval(x))).filter(|(_, c)| !c.is_zero()).collect()
}

/// A maximal subset of `cands` that is linearly independent at q = x.
fn independent_subset(mut cands: Vec<BigVec>, x: &BigRational, rng: &mut Option<ChaCha8Rng>) -> Vec<BigVec> {
    if let Some(g) = rng.as_mut() {
        cands.shuffle(g);
    }
    let mut ech = Echelon::default();
    cands.into_iter().filter(|v| !v.is_empty() && ech.try_add(evaluate(v, x))).collect()
}

/// Images of `start` under every word of exactly `blocks` divided powers f_i^{(k)} (adjacent
/// letters distinct) with letter multiplicities `target`. Words are walked depth first so that
/// prefixes are shared, and branches die as soon as the vector vanishes.
fn block_words(engine: &Engine, start: &BigVec, target: &[i64], blocks: usize, dotted: bool, out: &mut Vec<BigVec>) {
    fn rec(
        engine: &Engine,
        v: &BigVec,
        rest: &mut [i64],
        left: usize,
        prev: Option<usize>,
        dotted: bool,
        out: &mut Vec<BigVec>,
    ) {
        if left == 0 {
            if rest.iter().all(|&x| x == 0) {
                out.push(v.clone());
            }
            return;
        }
        if !arrangeable(rest, left, prev) {
            return;
        }
        for i in 0..rest.len() {
            if Some(i) == prev || rest[i] == 0 {
                continue;
            }
            let top = rest[i];
            // the last block must use up the only remaining letter
            let ks: Vec<i64> = if left == 1 { vec![top] } else { (1..=top).collect() };
            for k in ks {
                let u = engine.f(v, i, k as usize, dotted);
                if u.is_empty() {
                    continue;
                }
                rest[i] -= k;
                rec(engine, &u, rest, left - 1, Some(i), dotted, out);
                rest[i] += k;
            }
        }
    }
    let mut rest = target.to_vec();
    rec(engine, start, &mut rest, blocks, None, dotted, out);
}

/// Number of words with content `rest` made of `blocks` maximal constant blocks, the first
/// letter differing from `prev`.
fn count_block_words(
    rest: &[i64],
    blocks: usize,
    prev: Option<usize>,
    memo: &mut HashMap<(Vec<i64>, usize, Option<usize>), f64>,
) -> f64 {
    if blocks == 0 {
        return if rest.iter().all(|&x| x == 0) { 1.0 } else { 0.0 };
    }
    if !arrangeable(rest, blocks, prev) {
        return 0.0;
    }
    let key = (rest.to_vec(), blocks, prev);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0.0;
    let mut r = rest.to_vec();
    for i in 0..rest.len() {
        if Some(i) == prev {
            continue;
        }
        for k in 1..=rest[i] {
            r[i] = rest[i] - k;
            total += count_block_words(&r, blocks - 1, Some(i), memo);
        }
        r[i] = rest[i];
    }
    memo.insert(key, total);
    total
}

/// Can `rest` be written as `left` nonempty blocks, adjacent blocks carrying different letters and
/// the first one differing from `prev`?
fn arrangeable(rest: &[i64], left: usize, prev: Option<usize>) -> bool {
    let lo: Vec<usize> = rest.iter().map(|&x| usize::from(x > 0)).collect();
    let hi: Vec<usize> = rest
        .iter()
        .enumerate()
        .map(|(i, &x)| if Some(i) == prev { (x as usize).min(left / 2) } else { x as usize })
        .collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return false;
    }
    if lo.iter().sum::<usize>() > left || hi.iter().sum::<usize>() < left {
        return false;
    }
    // smallest achievable largest block count, by water filling
    let top = (1..=left).find(|&t| lo.iter().zip(&hi).map(|(&a, &b)| b.min(a.max(t))).sum::<usize>() >= left);
    matches!(top, Some(t) if 2 * t <= left + 1)
}

fn letters(c: &[i64]) -> usize {
    c.iter().sum::<i64>() as usize
}

fn distinct(c: &[i64]) -> usize {
    c.iter().filter(|&&x| x > 0).count()
}

struct Combo {
    cost: usize,
    m: usize,
    d: Vec<i64>,
    dd: Vec<i64>,
}

/// Standard basis of F_q[s_l]⟨w⟩ in canonical order (big partitions lexicographically decreasing).
pub fn weight_space_basis(charges_l: &[i64], content: &[usize], n: usize, l: usize) -> (Vec<Multipartition>, Vec<Partition>) {
    let mut pairs: Vec<(Partition, Multipartition)> = enumerate_by_content(l, charges_l, n, content)
        .into_iter()
        .map(|mp| {
            let big = from_l_indexation(&ChargedMultipartition::new(mp.clone(), charges_l.to_vec()), n, l).partition;
            (big, mp)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    pairs.into_iter().map(|(b, m)| (m, b)).unzip()
}

/// The bar involution on F_q[s_l]⟨w⟩.
pub fn bar_matrix(charges_l: &[i64], w: &Weight, n: usize, l: usize) -> Result<BarMatrix> {
    bar_matrix_with(charges_l, w, n, l, &SearchOptions::default())
}

pub fn bar_matrix_with(charges_l: &[i64], w: &Weight, n: usize, l: usize, opts: &SearchOptions) -> Result<BarMatrix> {
    assert_eq!(charges_l.len(), l, "one charge per component");
    let content = content_of_weight(w, charges_l, n)?;
    let (basis, big) = weight_space_basis(charges_l, &content, n, l);
    let dim = basis.len();
    if dim == 0 {
        return Err(CanonicalError::NotAttained(w.to_string()));
    }
    let s: i64 = charges_l.iter().sum();
    let ww = weight_from_content(charges_l, n, &content);
    let wd = dot_weight_of_charges(charges_l, n, content[0]);
    let nl = n * l;

    let mut cols: Vec<BigVec> = Vec::new();
    let mut ech = Echelon::default();
    let qv = BigRational::new(BigInt::from(3), BigInt::from(7));
    let index: HashMap<&Partition, usize> = big.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let engine = Engine::new(n, l, s)?;
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    let mut max_cost = 0usize;

    // Per vacuum, the admissible (m, d, ḋ) combinations.
    let mut plans: Vec<(Partition, Vec<Combo>)> = Vec::new();
    for r in fundamental_domain(l, n, s) {
        let w0 = weight_from_content(&r, n, &vec![0; n]);
        let wd0 = dot_weight_of_charges(&r, n, 0);
        let (dv, ddv) = match (integral_decomposition(&w0.sub(&ww)), integral_decomposition(&wd0.sub(&wd))) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        if dv.iter().chain(&ddv).any(|&x| x < 0) || dv[0] != ddv[0] {
            continue;
        }
        let mut combos = Vec::new();
        for m in 0..=dv[0] {
            for e0 in 0..=(dv[0] - m) {
                let d: Vec<i64> = dv.iter().map(|x| x - e0 - m).collect();
                if d.iter().any(|&x| x < 0) {
                    continue;
                }
                let dd: Vec<i64> = ddv.iter().map(|x| x - d[0] - m).collect();
                if dd.iter().any(|&x| x < 0) || dd[0] != e0 {
                    continue;
                }
                let cost = (d.iter().sum::<i64>() + dd.iter().sum::<i64>()) as usize + nl * m as usize;
                max_cost = max_cost.max(cost);
                combos.push(Combo { cost, m: m as usize, d, dd });
            }
        }
        // cheapest words first, measured in boxes added
        combos.sort_by(|a, b| (a.cost, a.m, &a.d, &a.dd).cmp(&(b.cost, b.m, &b.d, &b.dd)));
        let vac = from_l_indexation(&ChargedMultipartition::new(Multipartition::empty(l), r.clone()), n, l).partition;
        plans.push((vac, combos));
    }
    let bound = opts.bound.unwrap_or(max_cost);

    // Tasks (combo, f-blocks, B-partition, ḟ-blocks) run in rounds of doubling estimated work,
    // the estimate being the number of block words weighted by 2^blocks, times 2^boxes for B.
    let mut counts = HashMap::new();
    let mut ways = |c: &[i64], blocks: usize| count_block_words(c, blocks, None, &mut counts) * 2f64.powi(blocks as i32);
    let mut largest = 0.0f64;
    for (_, combos) in &plans {
        for c in combos {
            let pen = 2f64.powi((nl * c.m) as i32);
            for bf in distinct(&c.d)..=letters(&c.d) {
                for bd in distinct(&c.dd)..=letters(&c.dd) {
                    largest = largest.max(ways(&c.d, bf) * ways(&c.dd, bd) * pen);
                }
            }
        }
    }
    let mut f_memo: HashMap<(Partition, Vec<i64>, usize), Vec<BigVec>> = HashMap::new();
    let mut b_memo: HashMap<(Partition, Vec<i64>, usize, Vec<usize>), Vec<BigVec>> = HashMap::new();
    let mut ceiling = 1.0f64;
    'outer: loop {
        let floor = ceiling / 2.0;
        for (vac, combos) in &plans {
            for combo in combos {
                if combo.cost > bound {
                    continue;
                }
                let pen = 2f64.powi((nl * combo.m) as i32);
                for bf in distinct(&combo.d)..=letters(&combo.d) {
                    for bd in distinct(&combo.dd)..=letters(&combo.dd) {
                        let est = ways(&combo.d, bf) * ways(&combo.dd, bd) * pen;
                        if est == 0.0 || est <= floor || est > ceiling {
                            continue;
                        }
                        let mut bparts: Vec<Partition> =
                            if combo.m == 0 { vec![Partition::empty()] } else { Partition::all_of(combo.m) };
                        if let Some(g) = rng.as_mut() {
                            bparts.shuffle(g);
                        }
                        for bp in bparts {
                            let fkey = (vac.clone(), combo.d.clone(), bf);
                            if !f_memo.contains_key(&fkey) {
                                let start: BigVec = BTreeMap::from([(vac.clone(), Laurent::one())]);
                                let mut got = Vec::new();
                                block_words(&engine, &start, &combo.d, bf, false, &mut got);
                                f_memo.insert(fkey.clone(), independent_subset(got, &qv, &mut rng));
                            }
                            let bkey = (vac.clone(), combo.d.clone(), bf, bp.parts().to_vec());
                            if !b_memo.contains_key(&bkey) {
                                let mut mid = Vec::new();
                                for v in &f_memo[&fkey] {
                                    mid.push(if bp.is_empty() { v.clone() } else { engine.b_minus(bp.parts(), v)? });
                                }
                                b_memo.insert(bkey.clone(), independent_subset(mid, &qv, &mut rng));
                            }
                            for v in &b_memo[&bkey] {
                                let mut finals = Vec::new();
                                block_words(&engine, v, &combo.dd, bd, true, &mut finals);
                                if let Some(g) = rng.as_mut() {
                                    finals.shuffle(g);
                                }
                                for u in finals {
                                    if let Some(stray) = u.keys().find(|b| !index.contains_key(b)) {
                                        return Err(CanonicalError::BarCheck(format!(
                                            "spanning vector leaves the weight space at {stray}"
                                        )));
                                    }
                                    if ech.try_add(evaluate(&u, &qv)) {
                                        cols.push(u);
                                        if cols.len() == dim {
                                            break 'outer;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if ceiling >= largest {
            break;
        }
        ceiling *= 2.0;
    }
    if cols.len() < dim {
        return Err(CanonicalError::SpanningFailed { rank: cols.len(), dim, bound });
    }

    let c = Matrix::from_fn(dim, dim, |r, j| cols[j].get(&big[r]).cloned().unwrap_or_default());
    let cinv = solve_unitriangular(&c.bar().to_rational())?;
    let a = c
        .to_rational()
        .mul(&cinv)?
        .to_laurent()
        .ok_or_else(|| CanonicalError::BarCheck("an entry of C·C̄⁻¹ is not a Laurent polynomial".into()))?;
    if !a.is_lower_unitriangular() {
        return Err(CanonicalError::BarCheck("bar matrix is not lower unitriangular".into()));
    }
    if !a.mul(&a.bar())?.is_identity() {
        return Err(CanonicalError::BarCheck("bar matrix is not an involution".into()));
    }
    Ok(BarMatrix { n, l, charges: charges_l.to_vec(), content, basis, big, entries: a })
}

/// The unique bar-invariant unitriangular solution with off-diagonal entries in qℤ[q]
/// (sign +1) or q⁻¹ℤ[q⁻¹] (sign −1).
pub fn lusztig_lemma(a: &BarMatrix, sign: i8) -> Result<TransitionMatrix> {
    let dim = a.dim();
    let am = &a.entries;
    let mut d = LaurentMatrix::identity(dim);
    for mu in 0..dim {
        for nu in mu + 1..dim {
            let mut r = Laurent::zero();
            for la in mu..nu {
                let x = am.get(nu, la);
                if !x.is_zero() {
                    r += &(x * &d.get(la, mu).bar());
                }
            }
            // d - bar(d) = r
            if !r.coeff(0).is_zero() || r.bar() != -&r {
                return Err(CanonicalError::NoSolution { row: nu, col: mu, detail: r.to_string() });
            }
            let entry = if sign > 0 { r.positive_part() } else { r.negative_part() };
            d.set(nu, mu, entry);
        }
    }
    Ok(TransitionMatrix {
        n: a.n,
        l: a.l,
        charges: a.charges.clone(),
        content: a.content.clone(),
        sign,
        basis: a.basis.clone(),
        big: a.big.clone(),
        entries: d,
        dotted: false,
    })
}

/// Δ^± on F_q[s_l]⟨w⟩, with positivity and bar-invariance re-checked.
pub fn canonical_basis(charges_l: &[i64], w: &Weight, n: usize, l: usize, sign: i8) -> Result<TransitionMatrix> {
    canonical_basis_with(charges_l, w, n, l, sign, &SearchOptions::default())
}

pub fn canonical_basis_with(
    charges_l: &[i64],
    w: &Weight,
    n: usize,
    l: usize,
    sign: i8,
    opts: &SearchOptions,
) -> Result<TransitionMatrix> {
    let a = bar_matrix_with(charges_l, w, n, l, opts)?;
    let t = lusztig_lemma(&a, sign)?;
    check_transition(&a, &t)?;
    Ok(t)
}

/// Convenience: the weight space is given by its content vector.
pub fn canonical_basis_for_content(
    charges_l: &[i64],
    content: &[usize],
    n: usize,
    l: usize,
    sign: i8,
    opts: &SearchOptions,
) -> Result<TransitionMatrix> {
    let w = weight_from_content(charges_l, n, content);
    canonical_basis_with(charges_l, &w, n, l, sign, opts)
}

/// Lattice, positivity and bar-invariance checks on a computed transition matrix.
pub fn check_transition(a: &BarMatrix, t: &TransitionMatrix) -> Result<()> {
    let d = &t.entries;
    for r in 0..t.dim() {
        for c in 0..t.dim() {
            let e = d.get(r, c);
            let ok = if t.sign > 0 { e.in_nat_q() } else { e.in_nat_p() };
            if !ok {
                return Err(CanonicalError::Positivity { row: r, col: c, entry: e.to_string() });
            }
        }
    }
    if a.entries.mul(&d.bar())? != *d {
        return Err(CanonicalError::BarCheck("a canonical column is not bar-invariant".into()));
    }
    Ok(())
}

/// Δ̇^± on F_p[s_n]⟨ẇ⟩ via the equal undotted matrix, relabelled through the other indexation.
pub fn dotted_transition(charges_n: &[i64], wdot: &Weight, n: usize, l: usize, sign: i8) -> Result<TransitionMatrix> {
    assert_eq!(charges_n.len(), n, "one charge per component");
    let s: i64 = charges_n.iter().sum();
    let charges_l = theta_inverse(&wdot.coeffs, s).map_err(WeightError::from)?;
    let w = Weight { coeffs: theta(l as i64, charges_n), delta: wdot.delta, dotted: false };
    let t = canonical_basis(&charges_l, &w, n, l, sign)?;
    relabel_to_n_side(t, charges_n)
}

/// Replace l-side labels by n-side labels; every label must land on `charges_n`.
pub fn relabel_to_n_side(t: TransitionMatrix, charges_n: &[i64]) -> Result<TransitionMatrix> {
    let mut labels = Vec::with_capacity(t.dim());
    for mp in &t.basis {
        let cmp = cross_convert(&ChargedMultipartition::new(mp.clone(), t.charges.clone()), t.n, t.l);
        if cmp.charges != charges_n {
            return Err(CanonicalError::Relabel(format_charges(charges_n)));
        }
        labels.push(cmp.mp);
    }
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labels.len() {
        return Err(CanonicalError::Relabel(format_charges(charges_n)));
    }
    let content = labels.first().map(|m| content_vector(m, charges_n, t.l)).unwrap_or_else(|| vec![0; t.l]);
    Ok(TransitionMatrix { basis: labels, charges: charges_n.to_vec(), content, dotted: true, ..t })
}
