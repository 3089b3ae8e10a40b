//! Finite q-wedge words, normal ordering by the two-factor straightening relations, and the
//! bead-shift operators B_m.
//!
//! The relations are read from a versioned rule file (see `data/straightening.rules`); the
//! copy checked into the repository is compiled in, and `FOCK_RULES_PATH` points the engine at
//! a replacement.
//!
//! Normal ordering works by insertion: a word u_{x} ∧ W with W already ordered is expanded by
//! rewriting the leading pair (x, W_1) and recursively inserting the two new indices. Each
//! rewrite of a pair k1 < k2 produces pairs (k2 - t, k1 + t) with 0 ≤ 2t < D, all of whose
//! entries lie in [k1, k2], and the inserted index strictly increases towards its final
//! position, so the recursion terminates; only adjacent equal indices give zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::indexation::{beta_set, decompose_bead, partition_of_beads, ChargedPartition};
use crate::laurent::Laurent;
use crate::partitions::Partition;

/// The rule file shipped with the library.
pub const BUNDLED_RULES: &str = include_str!("../data/straightening.rules");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error("rule table: {0}")]
    RuleSyntax(String),
    #[error("no straightening rule for case ({0}, {1})")]
    TranscriptionUnavailable(&'static str, &'static str),
    #[error("cannot read rule table at {path}: {msg}")]
    RuleFile { path: String, msg: String },
    #[error("heisenberg check failed: {0}")]
    CheckFailed(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OffsetBase {
    Gamma,
    NDelta,
    GammaPlusNDelta,
    Period,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub base: OffsetBase,
    pub factor: Laurent,
    pub top: (i64, i64),
    pub terms: (i64, i64),
    pub step: i64,
    pub alternating: bool,
}

impl Family {
    fn coefficient(&self, m: i64) -> Laurent {
        let top = self.top.0 * m + self.top.1;
        let count = self.terms.0 * m + self.terms.1;
        let mut sum = Laurent::zero();
        for i in 0..count {
            let sign = if self.alternating && i % 2 == 1 { -1 } else { 1 };
            sum += &Laurent::monomial(top - self.step * i, sign);
        }
        &self.factor * &sum
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Laurent,
    pub families: Vec<Family>,
}

/// Parsed rule file: one rule per (a1 = a2?, b1 = b2?) pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleTable {
    pub version: u32,
    rules: [Option<Rule>; 4],
}

fn case_index(same_a: bool, same_b: bool) -> usize {
    (if same_a { 0 } else { 2 }) + if same_b { 0 } else { 1 }
}

fn case_name(b: bool) -> &'static str {
    if b {
        "same"
    } else {
        "diff"
    }
}

impl RuleTable {
    pub fn parse(text: &str) -> Result<Self, WedgeError> {
        let err = |line: usize, msg: &str| WedgeError::RuleSyntax(format!("line {}: {msg}", line + 1));
        let mut version = None;
        let mut rules: [Option<Rule>; 4] = [None, None, None, None];
        let mut current: Option<(usize, Rule)> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "version" => {
                    let v: u32 = rest.parse().map_err(|_| err(ln, "bad version"))?;
                    if v != 1 {
                        return Err(err(ln, "unsupported format version"));
                    }
                    version = Some(v);
                }
                "case" => {
                    if current.is_some() {
                        return Err(err(ln, "nested case"));
                    }
                    let w: Vec<&str> = rest.split_whitespace().collect();
                    if w.len() != 2 {
                        return Err(err(ln, "case needs two selectors"));
                    }
                    let sel = |s: &str| match s {
                        "same" => Ok(true),
                        "diff" => Ok(false),
                        _ => Err(err(ln, "selector must be same or diff")),
                    };
                    let idx = case_index(sel(w[0])?, sel(w[1])?);
                    current = Some((idx, Rule { lead: Laurent::zero(), families: Vec::new() }));
                }
                "lead" => {
                    let (_, r) = current.as_mut().ok_or_else(|| err(ln, "lead outside case"))?;
                    r.lead = rest.parse().map_err(|_| err(ln, "bad lead coefficient"))?;
                }
                "family" => {
                    let (_, r) = current.as_mut().ok_or_else(|| err(ln, "family outside case"))?;
                    r.families.push(parse_family(rest).map_err(|m| err(ln, &m))?);
                }
                "end" => {
                    let (idx, r) = current.take().ok_or_else(|| err(ln, "end outside case"))?;
                    if rules[idx].is_some() {
                        return Err(err(ln, "duplicate case"));
                    }
                    rules[idx] = Some(r);
                }
                _ => return Err(err(ln, "unknown directive")),
            }
        }
        if current.is_some() {
            return Err(WedgeError::RuleSyntax("unterminated case".into()));
        }
        let version = version.ok_or_else(|| WedgeError::RuleSyntax("missing version line".into()))?;
        Ok(RuleTable { version, rules })
    }

    /// The bundled table, or the file named by `FOCK_RULES_PATH`.
    pub fn load() -> Result<Self, WedgeError> {
        match std::env::var("FOCK_RULES_PATH") {
            Ok(path) if !path.is_empty() => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| WedgeError::RuleFile { path: path.clone(), msg: e.to_string() })?;
                Self::parse(&text)
            }
            _ => Self::parse(BUNDLED_RULES),
        }
    }

    /// The process-wide table, loaded once.
    pub fn global() -> Result<Arc<RuleTable>, WedgeError> {
        static TABLE: OnceLock<Result<Arc<RuleTable>, WedgeError>> = OnceLock::new();
        TABLE.get_or_init(|| Self::load().map(Arc::new)).clone()
    }

    fn rule(&self, same_a: bool, same_b: bool) -> Result<&Rule, WedgeError> {
        self.rules[case_index(same_a, same_b)]
            .as_ref()
            .ok_or(WedgeError::TranscriptionUnavailable(case_name(same_a), case_name(same_b)))
    }

    /// Is every case present?
    pub fn is_complete(&self) -> bool {
        self.rules.iter().all(|r| r.is_some())
    }
}

fn parse_family(rest: &str) -> Result<Family, String> {
    const KEYS: [&str; 6] = ["base=", "factor=", "top=", "terms=", "step=", "alt="];
    let mut found: Vec<(usize, &str)> = Vec::new();
    for k in KEYS {
        let pos = rest.find(k).ok_or_else(|| format!("missing {k}"))?;
        found.push((pos, k));
    }
    found.sort();
    let mut vals: HashMap<&str, &str> = HashMap::new();
    for (idx, (pos, k)) in found.iter().enumerate() {
        let end = found.get(idx + 1).map(|x| x.0).unwrap_or(rest.len());
        vals.insert(k, rest[pos + k.len()..end].trim());
    }
    let pair = |s: &str| -> Result<(i64, i64), String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected pair, got {s}"))?;
        Ok((a.trim().parse().map_err(|_| s.to_string())?, b.trim().parse().map_err(|_| s.to_string())?))
    };
    let base = match vals["base="] {
        "gamma" => OffsetBase::Gamma,
        "ndelta" => OffsetBase::NDelta,
        "gamma+ndelta" => OffsetBase::GammaPlusNDelta,
        "N" => OffsetBase::Period,
        other => return Err(format!("unknown base {other}")),
    };
    Ok(Family {
        base,
        factor: vals["factor="].parse().map_err(|_| "bad factor".to_string())?,
        top: pair(vals["top="])?,
        terms: pair(vals["terms="])?,
        step: vals["step="].parse().map_err(|_| "bad step".to_string())?,
        alternating: match vals["alt="] {
            "0" => false,
            "1" => true,
            _ => return Err("alt must be 0 or 1".into()),
        },
    })
}

type Word = Vec<i64>;
type Expansion = Vec<(Word, Laurent)>;

/// Normal ordering engine for fixed (n, l). Memo tables are internally synchronized.
pub struct Straightener {
    n: usize,
    l: usize,
    table: Arc<RuleTable>,
    pairs: Mutex<HashMap<(i64, i64, i64), Arc<Vec<(i64, Laurent)>>>>,
    inserts: Mutex<HashMap<(i64, Word), Arc<Expansion>>>,
}

impl fmt::Debug for Straightener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Straightener(n={}, l={})", self.n, self.l)
    }
}

impl Straightener {
    pub fn new(n: usize, l: usize, table: Arc<RuleTable>) -> Self {
        Straightener { n, l, table, pairs: Mutex::new(HashMap::new()), inserts: Mutex::new(HashMap::new()) }
    }

    /// Engine using the global rule table.
    pub fn with_global_rules(n: usize, l: usize) -> Result<Self, WedgeError> {
        Ok(Self::new(n, l, RuleTable::global()?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Offsets t and coefficients with u_{k1} ∧ u_{k2} = Σ c_t u_{k2-t} ∧ u_{k1+t} (k1 < k2).
    pub fn pair_expansion(&self, k1: i64, k2: i64) -> Result<Arc<Vec<(i64, Laurent)>>, WedgeError> {
        assert!(k1 < k2);
        let big_n = (self.n * self.l) as i64;
        let key = (k1.rem_euclid(big_n), k2.rem_euclid(big_n), k2 - k1);
        if let Some(v) = self.pairs.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let (a1, b1, _) = decompose_bead(k1, self.n, self.l);
        let (a2, b2, _) = decompose_bead(k2, self.n, self.l);
        let rule = self.table.rule(a1 == a2, b1 == b2)?;
        let d = k2 - k1;
        let gamma = (a2 as i64 - a1 as i64).rem_euclid(big_n);
        let ndelta = self.n as i64 * (b2 as i64 - b1 as i64).rem_euclid(self.l as i64);
        let mut acc: BTreeMap<i64, Laurent> = BTreeMap::new();
        acc.insert(0, rule.lead.clone());
        for fam in &rule.families {
            let base = match fam.base {
                OffsetBase::Gamma => gamma,
                OffsetBase::NDelta => ndelta,
                OffsetBase::GammaPlusNDelta => gamma + ndelta,
                OffsetBase::Period => big_n,
            };
            let mut m = 0;
            while 2 * (base + big_n * m) < d {
                let t = base + big_n * m;
                if t > 0 {
                    *acc.entry(t).or_default() += &fam.coefficient(m);
                }
                m += 1;
            }
        }
        let v: Vec<(i64, Laurent)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let v = Arc::new(v);
        self.pairs.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Expand u_x ∧ W for an ordered word W.
    pub fn insert(&self, x: i64, w: &[i64]) -> Result<Arc<Expansion>, WedgeError> {
        if w.is_empty() || x > w[0] {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(x);
            word.extend_from_slice(w);
            return Ok(Arc::new(vec![(word, Laurent::one())]));
        }
        if x == w[0] {
            return Ok(Arc::new(Vec::new()));
        }
        let key = (x, w.to_vec());
        if let Some(v) = self.inserts.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut acc: HashMap<Word, Laurent> = HashMap::new();
        let exp = self.pair_expansion(x, w[0])?;
        for (t, c) in exp.iter() {
            let a = w[0] - t;
            let b = x + t;
            for (v, cv) in self.insert(b, &w[1..])?.iter() {
                let cvc = c * cv;
                for (u, cu) in self.insert(a, v)?.iter() {
                    *acc.entry(u.clone()).or_default() += &(&cvc * cu);
                }
            }
        }
        let out: Expansion = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let out = Arc::new(out);
        self.inserts.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// P ∧ u_x ∧ T with P and T ordered and x > T_1: move x to the left.
    fn insert_left(&self, p: &[i64], x: i64, t: &[i64]) -> Result<Expansion, WedgeError> {
        match p.last() {
            None => {
                let mut word = vec![x];
                word.extend_from_slice(t);
                return Ok(vec![(word, Laurent::one())]);
            }
            Some(&y) if y > x => {
                let mut word = p.to_vec();
                word.push(x);
                word.extend_from_slice(t);
                return Ok(vec![(word, Laurent::one())]);
            }
            Some(&y) if y == x => return Ok(Vec::new()),
            _ => {}
        }
        let y = *p.last().unwrap();
        let head = &p[..p.len() - 1];
        let mut acc: HashMap<Word, Laurent> = HashMap::new();
        for (off, c) in self.pair_expansion(y, x)?.iter() {
            let a = x - off;
            let b = y + off;
            for (v, cv) in self.insert(b, t)?.iter() {
                for (v2, cw) in self.insert(a, v)?.iter() {
                    let coef = &(c * cv) * cw;
                    for (u, cu) in self.insert_left(head, v2[0], &v2[1..])? {
                        *acc.entry(u).or_default() += &(&coef * &cu);
                    }
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Normal order an arbitrary finite word (entries above the implicit tail).
    pub fn normal_order_word(&self, word: &[i64]) -> Result<Expansion, WedgeError> {
        let mut cur: HashMap<Word, Laurent> = HashMap::from([(Vec::new(), Laurent::one())]);
        for &x in word.iter().rev() {
            let mut next: HashMap<Word, Laurent> = HashMap::new();
            for (w, c) in &cur {
                for (u, cu) in self.insert(x, w)?.iter() {
                    *next.entry(u.clone()).or_default() += &(c * cu);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        Ok(cur.into_iter().collect())
    }

    /// Normal order a word given by its prefix over the tail of charge s; pads the prefix so
    /// that every index lies in the explicit region first.
    pub fn normal_order(&self, w: &WedgeWord) -> Result<WedgeVector, WedgeError> {
        let s = w.charge;
        let mut prefix = w.prefix.clone();
        let lowest = prefix.iter().copied().min().unwrap_or(s);
        // the tail after position r is s - r, s - r - 1, ...; make it start below `lowest`
        let need = (s - lowest + 1).max(prefix.len() as i64) as usize;
        while prefix.len() < need {
            prefix.push(s - prefix.len() as i64);
        }
        let mut out = WedgeVector::zero(s);
        for (word, c) in self.normal_order_word(&prefix)? {
            out.add_term(partition_of_beads(&word, s).partition, &c);
        }
        Ok(out)
    }

    /// B_m for m ≠ 0: shift each bead by -nl·m and normal order.
    pub fn b_operator(&self, m: i64, v: &WedgeVector) -> Result<WedgeVector, WedgeError> {
        assert!(m != 0, "B_0 is not defined");
        let big_n = (self.n * self.l) as i64;
        let s = v.charge;
        let mut out = WedgeVector::zero(s);
        for (lam, c) in v.terms() {
            // beads further down collide with the tail and contribute nothing
            let r = lam.len() + (big_n * m.abs()) as usize + 1;
            let cp = ChargedPartition::new(lam.clone(), s);
            if m < 0 {
                let ks = beta_set(&cp).take(r);
                for j in 0..r {
                    let x = ks[j] - big_n * m;
                    for (word, cw) in self.insert_left(&ks[..j], x, &ks[j + 1..])? {
                        out.add_term(partition_of_beads(&word, s).partition, &(c * &cw));
                    }
                }
            } else {
                let ks = beta_set(&cp).take(r + (big_n * m) as usize);
                for j in 0..r {
                    let x = ks[j] - big_n * m;
                    for (tail, cw) in self.insert(x, &ks[j + 1..])?.iter() {
                        let mut word = ks[..j].to_vec();
                        word.extend_from_slice(tail);
                        out.add_term(partition_of_beads(&word, s).partition, &(c * cw));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply B_{m_1} B_{m_2} ... (rightmost first).
    pub fn b_monomial(&self, ms: &[i64], v: &WedgeVector) -> Result<WedgeVector, WedgeError> {
        let mut cur = v.clone();
        for &m in ms.iter().rev() {
            cur = self.b_operator(m, &cur)?;
            if cur.is_zero() {
                break;
            }
        }
        Ok(cur)
    }
}

/// A finite prefix (k_1, ..., k_r) followed by the tail s - r, s - r - 1, ...
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WedgeWord {
    pub prefix: Vec<i64>,
    pub charge: i64,
}

impl WedgeWord {
    pub fn new(prefix: Vec<i64>, charge: i64) -> Self {
        WedgeWord { prefix, charge }
    }

    pub fn is_normal(&self) -> bool {
        let r = self.prefix.len() as i64;
        self.prefix.windows(2).all(|w| w[0] > w[1]) && self.prefix.last().is_none_or(|&x| x > self.charge - r)
    }
}

/// Finite combination of ordered wedges of charge s, keyed by partition.
#[derive(Clone, PartialEq, Eq)]
pub struct WedgeVector {
    pub charge: i64,
    coeffs: BTreeMap<Partition, Laurent>,
}

impl WedgeVector {
    pub fn zero(charge: i64) -> Self {
        WedgeVector { charge, coeffs: BTreeMap::new() }
    }

    pub fn basis(lam: Partition, charge: i64) -> Self {
        let mut v = Self::zero(charge);
        v.coeffs.insert(lam, Laurent::one());
        v
    }

    pub fn add_term(&mut self, lam: Partition, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(lam.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&lam);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Laurent)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> Laurent {
        self.coeffs.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &WedgeVector) -> WedgeVector {
        assert_eq!(self.charge, o.charge);
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &WedgeVector) -> WedgeVector {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> WedgeVector {
        let mut out = WedgeVector::zero(self.charge);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), &c.scale(&BigInt::from(k)));
        }
        out
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({c})|{m},{}>", self.charge)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone)]
pub struct HeisenbergReport {
    pub m: i64,
    pub m2: i64,
    pub samples: usize,
    /// The common scalar by which [B_m, B_{-m}] acts, when m + m2 = 0.
    pub scalar: Option<Laurent>,
}

/// Check [B_m, B_{m'}] = 0 (m + m' ≠ 0), or that [B_m, B_{-m}] acts by one scalar.
pub fn heisenberg_commutator_check(
    st: &Straightener,
    m: i64,
    m2: i64,
    samples: &[WedgeVector],
) -> Result<HeisenbergReport, WedgeError> {
    let mut scalar: Option<Laurent> = None;
    for v in samples {
        let ab = st.b_operator(m, &st.b_operator(m2, v)?)?;
        let ba = st.b_operator(m2, &st.b_operator(m, v)?)?;
        let comm = ab.sub(&ba);
        if m + m2 != 0 {
            if !comm.is_zero() {
                return Err(WedgeError::CheckFailed(format!("[B_{m}, B_{m2}] is nonzero on {v}")));
            }
            continue;
        }
        if v.is_zero() {
            continue;
        }
        let (lam, c) = v.terms().next().unwrap();
        let k = comm.coeff(lam);
        // comm must equal (k / c) v; compare c' * comm with k * v for every term
        for (mu, cm) in v.terms() {
            if &(cm * &k) != &(&comm.coeff(mu) * c) {
                return Err(WedgeError::CheckFailed(format!("[B_{m}, B_{m2}] is not scalar on {v}")));
            }
        }
        for (mu, _) in comm.terms() {
            if v.coeff(mu).is_zero() {
                return Err(WedgeError::CheckFailed(format!("[B_{m}, B_{m2}] leaves the line of {v}")));
            }
        }
        let sc = if c.is_one() { k.clone() } else { k.div_unit(c).map_err(|e| WedgeError::CheckFailed(e.to_string()))? };
        match &scalar {
            None => scalar = Some(sc),
            Some(s0) if *s0 != sc => {
                return Err(WedgeError::CheckFailed(format!("[B_{m}, B_{m2}] scalars differ: {s0} vs {sc}")))
            }
            _ => {}
        }
    }
    Ok(HeisenbergReport { m, m2, samples: samples.len(), scalar })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: usize, l: usize) -> Straightener {
        Straightener::new(n, l, Arc::new(RuleTable::parse(BUNDLED_RULES).unwrap()))
    }

    #[test]
    fn bundled_table_is_complete() {
        let t = RuleTable::parse(BUNDLED_RULES).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.version, 1);
    }

    #[test]
    fn missing_case_is_reported() {
        let t = RuleTable::parse("version 1\ncase same same\nlead -1\nend\n").unwrap();
        let s = Straightener::new(2, 2, Arc::new(t));
        assert!(s.pair_expansion(1, 3).is_err());
        assert!(matches!(s.pair_expansion(1, 5), Ok(_)));
    }

    #[test]
    fn fixed_point_and_zero() {
        let s = st(2, 2);
        let w = WedgeWord::new(vec![5, 2, 0], 0);
        let v = s.normal_order(&w).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v.coeff(&Partition::new(vec![5, 3, 2])).is_one());
        assert!(s.normal_order(&WedgeWord::new(vec![3, 3, -2], 0)).unwrap().is_zero());
    }

    #[test]
    fn same_class_anticommutes() {
        let s = st(2, 3);
        // k1 ≡ k2 mod 6
        let v = s.normal_order(&WedgeWord::new(vec![1, 7], 2)).unwrap();
        assert_eq!(v.len(), 1);
        let (lam, c) = v.terms().next().unwrap();
        assert_eq!(c, &Laurent::constant(-1));
        assert_eq!(partition_of_beads(&[7, 1], 2).partition, *lam);
    }

    #[test]
    fn b_minus_one_on_vacuum() {
        let s = st(2, 2);
        let v = s.b_operator(-1, &WedgeVector::basis(Partition::empty(), 0)).unwrap();
        assert!(v.coeff(&Partition::new(vec![4])).is_one());
        for (lam, _) in v.terms() {
            assert_eq!(lam.size(), 4);
        }
    }
}
