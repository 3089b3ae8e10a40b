//! Command-line front end: argument parsing, dispatch and output.
//!
//! Exit codes: 0 ok or verified, 1 verification mismatch, 2 unsupported input or failed
//! hypothesis, 3 malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::actions::{e_action, f_action, t_action, FockContext, FockVector};
use crate::canonical::{bar_matrix_with, canonical_basis_with, lusztig_lemma, BarMatrix, CanonicalError, SearchOptions, TransitionMatrix};
use crate::compare::{gamma_graph, verify_theorem1, verify_theorem2, verify_theorem3, CompareError, FamilyOptions};
use crate::cones::{audit_constructive_c, cone_vertex, constructive_c, stabilization_constants, CartanData, Q};
use crate::crystal::{
    crystal_edges, edges_to_dot, edges_to_json, highest_weight_component, i_string, kashiwara_e, kashiwara_f, sigma_dot_i, sigma_i,
    signature,
};
use crate::indexation::{
    cross_convert, cross_convert_back, format_charges, from_l_indexation, parse_charges, to_l_indexation, to_n_indexation,
    ChargedMultipartition, ChargedPartition,
};
use crate::laurent::LaurentMatrix;
use crate::partitions::{Multipartition, Partition};
use crate::wedge::{Straightener, WedgeVector};
use crate::weights::{content_of_weight, weight_from_content, Weight};

#[derive(Parser, Debug)]
#[command(name = "fock", version, about = "Canonical bases of higher-level Fock spaces in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the result to this file; for verification reports, a directory for matrix files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for independent weight spaces.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A charge vector: `(1,0)`, `[1,0]` or `1,0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charges(pub Vec<i64>);

impl FromStr for Charges {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_charges(s).map(Charges).ok_or_else(|| format!("cannot read charges from {s:?}"))
    }
}

/// A residue content `N_0,...,N_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Content(pub Vec<usize>);

impl FromStr for Content {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| format!("cannot read content from {s:?}"))).collect::<Result<_, _>>().map(Content)
    }
}

/// An inclusive integer range `a..b` or `a..=b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange(pub i64, pub i64);

impl FromStr for KRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let err = || format!("expected a range like 1..2, got {s:?}");
        let (a, b) = s.split_once("..").ok_or_else(err)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?);
        if a > b {
            return Err(err());
        }
        Ok(KRange(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "plus", alias = "1")]
    Plus,
    #[value(name = "-", alias = "minus", alias = "-1")]
    Minus,
    Both,
}

/// One weight space F[s_l]⟨w⟩.
#[derive(Args, Clone, Debug)]
pub struct Space {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    /// l-side charges, e.g. (1,0).
    #[arg(long, allow_hyphen_values = true)]
    pub charges: Charges,
    /// Total charge; checked against the charges when given.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    /// Residue content N_0,...,N_{n-1} relative to the charges.
    #[arg(long, conflicts_with = "weight")]
    pub content: Option<Content>,
    /// Raw weight `a_0,...,a_{n-1};d` meaning Σ a_i Λ_i + d δ.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Show the three labels of one standard basis vector.
    Convert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// A partition with one charge.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<i64>,
        /// A multipartition with its charges instead.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        charges: Option<Charges>,
        /// Which indexation --label uses.
        #[arg(long, value_enum, default_value = "l")]
        side: SideArg,
        /// Convert back to the input indexation and echo it.
        #[arg(long)]
        round_trip: bool,
    },
    /// Transition matrices Δ^± of a weight space.
    Canonical {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
        /// Largest word cost tried by the spanning search.
        #[arg(long)]
        bound: Option<usize>,
        /// Randomize the spanning search.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The matrix of the bar involution on a weight space.
    Bar {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Similarity of Δ^± at w and σ_i.w, when w + α_i is not a weight.
    #[command(name = "verify-thm1")]
    VerifyThm1 {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
    },
    /// Similarity of Δ^± over s_l and σ̇_i.s_l, when ẇ + α̇_i is not a dotted weight.
    #[command(name = "verify-thm2")]
    VerifyThm2 {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
    },
    /// Similarity of Δ^± along a family of dominant charges.
    #[command(name = "verify-thm3")]
    VerifyThm3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// The vacuum charges r_l, in the fundamental domain.
        #[arg(long, allow_hyphen_values = true)]
        charges: Charges,
        #[arg(long)]
        content: Content,
        /// Range of each lattice coordinate, e.g. 1..2.
        #[arg(long, allow_hyphen_values = true)]
        k_range: KRange,
        /// Use the conjectured threshold N′ = Σ N_i.
        #[arg(long)]
        conjectured_threshold: bool,
        /// Include charges below the threshold.
        #[arg(long)]
        force: bool,
    },
    /// The graph Γ(M) on an orbit of charges, within a window.
    Gamma {
        #[arg(long)]
        n: usize,
        /// Domain representative r_l.
        #[arg(long, allow_hyphen_values = true)]
        charges: Charges,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Largest spread max − min of a vertex.
        #[arg(long, default_value_t = 10)]
        window: i64,
    },
    /// Cartan data, stabilization constants, cone vertices and the constructive element.
    Cones {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        content: Option<Content>,
        /// Cone bound b, e.g. 0,0 or 1/3,2.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Number of random pairs for the connectivity audit of the constructive element.
        #[arg(long)]
        audit: Option<usize>,
        /// Search box radius for connectivity.
        #[arg(long = "box", default_value_t = 6)]
        box_radius: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Crystal operators on one label, or the crystal graph up to a size.
    Crystal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        charges: Charges,
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        /// Use σ̇_i (through the n-side) instead of σ_i.
        #[arg(long)]
        dotted: bool,
        /// Dump the crystal graph on labels of size below this.
        #[arg(long)]
        degree: Option<usize>,
        /// With --degree, keep only the component of the empty label.
        #[arg(long)]
        highest: bool,
    },
    /// Apply f_i, e_i, t_i or B_m to a standard basis vector.
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        charges: Charges,
        #[arg(long)]
        label: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Divided power.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Index of B_m.
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        m: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    L,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    F,
    E,
    T,
    B,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Unsupported(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 3,
            CliError::Unsupported(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Unsupported(m) => write!(f, "{m}"),
        }
    }
}

impl From<CanonicalError> for CliError {
    fn from(e: CanonicalError) -> Self {
        match e {
            CanonicalError::NotAttained(_) | CanonicalError::Weight(_) => CliError::Input(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<CompareError> for CliError {
    fn from(e: CompareError) -> Self {
        match e {
            CompareError::Canonical(c) => c.into(),
            CompareError::Weight(w) => CliError::Input(w.to_string()),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// The outcome of a command: text for stdout (or --out) and an exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn check_space(sp: &Space) -> CliResult<Weight> {
    let ch = &sp.charges.0;
    if sp.n < 2 || sp.l < 1 {
        return Err(CliError::Input("need n ≥ 2 and l ≥ 1".into()));
    }
    if ch.len() != sp.l {
        return Err(CliError::Input(format!("{} charges given for l = {}", ch.len(), sp.l)));
    }
    if let Some(s) = sp.s {
        if s != ch.iter().sum::<i64>() {
            return Err(CliError::Input(format!("charges {} do not sum to s = {s}", format_charges(ch))));
        }
    }
    match (&sp.content, &sp.weight) {
        (Some(c), _) => {
            if c.0.len() != sp.n {
                return Err(CliError::Input(format!("content needs {} entries", sp.n)));
            }
            Ok(weight_from_content(ch, sp.n, &c.0))
        }
        (None, Some(raw)) => {
            let (a, d) = raw.split_once(';').ok_or_else(|| CliError::Input("raw weight is `a_0,...,a_{n-1};d`".into()))?;
            let coeffs = parse_charges(a).ok_or_else(|| CliError::Input(format!("bad coefficients {a:?}")))?;
            if coeffs.len() != sp.n {
                return Err(CliError::Input(format!("raw weight needs {} coefficients", sp.n)));
            }
            let delta: i64 = d.trim().parse().map_err(input)?;
            let w = Weight { coeffs, delta: Rational64::from_integer(delta), dotted: false };
            content_of_weight(&w, ch, sp.n).map_err(input)?;
            Ok(w)
        }
        (None, None) => Err(CliError::Input("give --content or --weight".into())),
    }
}

fn render_matrix(basis: &[Multipartition], m: &LaurentMatrix, head: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut s = format!("{head}\n");
    for (r, row) in cells.iter().enumerate() {
        let line: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
        let _ = writeln!(s, "{}  {}", line.join("  "), basis[r]);
    }
    s
}

fn emit_transition(ts: &[TransitionMatrix], fmt: Format) -> String {
    match fmt {
        Format::Json if ts.len() == 1 => pretty(&ts[0].to_json()),
        Format::Json => pretty(&Value::Array(ts.iter().map(|t| t.to_json()).collect())),
        Format::Csv => ts.iter().map(|t| t.to_csv()).collect::<Vec<_>>().join("\n"),
        Format::Text => ts.iter().map(|t| t.render()).collect::<Vec<_>>().join("\n"),
    }
}

fn emit_bar(a: &BarMatrix, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&a.to_json()),
        Format::Csv => a.to_csv(),
        Format::Text => render_matrix(&a.basis, &a.entries, &format!("bar involution, n={} l={} charges={}", a.n, a.l, format_charges(&a.charges))),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn write_matrices(dir: &Path, tag: &str, ms: &[TransitionMatrix]) -> CliResult<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(input)?;
    let mut names = Vec::new();
    for (k, t) in ms.iter().enumerate() {
        let name = format!("{tag}_{k}_{}.json", if t.sign > 0 { "plus" } else { "minus" });
        std::fs::write(dir.join(&name), pretty(&t.to_json())).map_err(input)?;
        names.push(name);
    }
    Ok(names)
}

fn report_output(mut v: Value, verified: bool, matrices: &[TransitionMatrix], tag: &str, fmt: Format, out: Option<&Path>) -> CliResult<Outcome> {
    if let Some(dir) = out {
        v["matrix_files"] = json!(write_matrices(dir, tag, matrices)?);
    }
    let output = match fmt {
        Format::Json => pretty(&v),
        Format::Text => {
            let mut s = summarize(&v);
            let _ = writeln!(s, "verdict: {}", if verified { "verified" } else { "MISMATCH" });
            s
        }
        Format::Csv => return Err(CliError::Input("reports are available as json or text".into())),
    };
    Ok(Outcome { output, code: if verified { 0 } else { 1 } })
}

/// Flat `key: value` lines for the scalar fields of a report.
fn summarize(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Array(notes) if k == "notes" => {
                    for note in notes {
                        let _ = writeln!(s, "note: {}", note.as_str().unwrap_or_default());
                    }
                }
                Value::Array(_) | Value::Object(_) if k != "constants" => {}
                _ => {
                    let _ = writeln!(s, "{k}: {x}");
                }
            }
        }
    }
    s
}

fn parse_label(text: &str, len: usize) -> CliResult<Multipartition> {
    let mp: Multipartition = text.parse().map_err(input)?;
    if mp.len() != len {
        return Err(CliError::Input(format!("{text} has {} components, expected {len}", mp.len())));
    }
    Ok(mp)
}

fn parse_rationals(text: &str) -> CliResult<Vec<Q>> {
    text.trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(',')
        .map(|x| {
            let x = x.trim();
            match x.split_once('/') {
                Some((a, b)) => {
                    let (a, b): (i64, i64) = (a.trim().parse().map_err(input)?, b.trim().parse().map_err(input)?);
                    if b == 0 {
                        return Err(CliError::Input("zero denominator".into()));
                    }
                    Ok(Q::new(a, b))
                }
                None => Ok(Q::from_integer(x.parse().map_err(input)?)),
            }
        })
        .collect()
}

fn three_labels(cp: &ChargedPartition, n: usize, l: usize) -> Value {
    let ml = to_l_indexation(cp, n, l);
    let mn = to_n_indexation(cp, n, l);
    json!({
        "partition": cp.partition.to_string(),
        "charge": cp.charge,
        "l_label": ml.mp.to_string(),
        "l_charges": format_charges(&ml.charges),
        "n_label": mn.mp.to_string(),
        "n_charges": format_charges(&mn.charges),
    })
}

fn fock_vector_json(v: &FockVector) -> Value {
    Value::Array(v.terms().map(|(m, c)| json!({"label": m.to_string(), "coeff": c.to_string()})).collect())
}

fn fock_vector_text(v: &FockVector) -> String {
    if v.is_zero() {
        return "0\n".into();
    }
    let mut s = String::new();
    for (m, c) in v.terms() {
        let _ = writeln!(s, "({c}) |{m}⟩");
    }
    s
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let fmt = cli.format;
    let out_dir = cli.out.as_deref();
    match &cli.command {
        Command::Convert { n, l, partition, charge, label, charges, side, round_trip } => {
            let (n, l) = (*n, *l);
            if n < 1 || l < 1 {
                return Err(CliError::Input("need n, l ≥ 1".into()));
            }
            let cp = match (partition, label) {
                (Some(p), None) => {
                    let p: Partition = p.parse().map_err(input)?;
                    ChargedPartition::new(p, charge.ok_or_else(|| CliError::Input("--partition needs --charge".into()))?)
                }
                (None, Some(t)) => {
                    let ch = charges.as_ref().ok_or_else(|| CliError::Input("--label needs --charges".into()))?.0.clone();
                    let len = if *side == SideArg::L { l } else { n };
                    if ch.len() != len {
                        return Err(CliError::Input(format!("{} charges for {len} components", ch.len())));
                    }
                    let cmp = ChargedMultipartition::new(parse_label(t, len)?, ch);
                    match side {
                        SideArg::L => from_l_indexation(&cmp, n, l),
                        SideArg::N => crate::indexation::from_n_indexation(&cmp, n, l),
                    }
                }
                _ => return Err(CliError::Input("give either --partition/--charge or --label/--charges".into())),
            };
            let mut v = three_labels(&cp, n, l);
            if *round_trip {
                let back = match (partition.is_some(), side) {
                    (true, _) => {
                        let ml = to_l_indexation(&cp, n, l);
                        let p = from_l_indexation(&ml, n, l);
                        json!({"partition": p.partition.to_string(), "charge": p.charge})
                    }
                    (false, SideArg::L) => {
                        let c = cross_convert_back(&cross_convert(&to_l_indexation(&cp, n, l), n, l), n, l);
                        json!({"label": c.mp.to_string(), "charges": format_charges(&c.charges)})
                    }
                    (false, SideArg::N) => {
                        let c = cross_convert(&cross_convert_back(&to_n_indexation(&cp, n, l), n, l), n, l);
                        json!({"label": c.mp.to_string(), "charges": format_charges(&c.charges)})
                    }
                };
                v["round_trip"] = back;
            }
            let output = match fmt {
                Format::Json => pretty(&v),
                _ => {
                    let mut s = format!(
                        "partition {} charge {}\nl-side    {} {}\nn-side    {} {}\n",
                        v["partition"].as_str().unwrap(),
                        v["charge"],
                        v["l_label"].as_str().unwrap(),
                        v["l_charges"].as_str().unwrap(),
                        v["n_label"].as_str().unwrap(),
                        v["n_charges"].as_str().unwrap()
                    );
                    if let Some(rt) = v.get("round_trip") {
                        let _ = writeln!(s, "round trip {rt}");
                    }
                    s
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::Canonical { space, sign, bound, seed } => {
            let w = check_space(space)?;
            let opts = SearchOptions { bound: *bound, seed: *seed };
            let ch = &space.charges.0;
            let ts = match sign {
                SignArg::Plus => vec![canonical_basis_with(ch, &w, space.n, space.l, 1, &opts)?],
                SignArg::Minus => vec![canonical_basis_with(ch, &w, space.n, space.l, -1, &opts)?],
                SignArg::Both => {
                    let a = bar_matrix_with(ch, &w, space.n, space.l, &opts)?;
                    let (p, m) = (lusztig_lemma(&a, 1)?, lusztig_lemma(&a, -1)?);
                    crate::canonical::check_transition(&a, &p)?;
                    crate::canonical::check_transition(&a, &m)?;
                    vec![p, m]
                }
            };
            Ok(Outcome::ok(emit_transition(&ts, fmt)))
        }
        Command::Bar { space, bound, seed } => {
            let w = check_space(space)?;
            let a = bar_matrix_with(&space.charges.0, &w, space.n, space.l, &SearchOptions { bound: *bound, seed: *seed })?;
            Ok(Outcome::ok(emit_bar(&a, fmt)))
        }
        Command::VerifyThm1 { space, i } => {
            let w = check_space(space)?;
            if *i >= space.n {
                return Err(CliError::Input(format!("i must be below n = {}", space.n)));
            }
            let rep = verify_theorem1(&space.charges.0, &w, *i, space.n, space.l)?;
            let v = serde_json::to_value(&rep).expect("report serializes");
            report_output(v, rep.verified, &rep.matrices, "thm1", fmt, out_dir)
        }
        Command::VerifyThm2 { space, i } => {
            let w = check_space(space)?;
            if *i >= space.l {
                return Err(CliError::Input(format!("i must be below l = {}", space.l)));
            }
            let rep = verify_theorem2(&space.charges.0, &w, *i, space.n, space.l)?;
            let v = serde_json::to_value(&rep).expect("report serializes");
            report_output(v, rep.verified, &rep.matrices, "thm2", fmt, out_dir)
        }
        Command::VerifyThm3 { n, l, charges, content, k_range, conjectured_threshold, force } => {
            if charges.0.len() != *l || content.0.len() != *n {
                return Err(CliError::Input("charges need l entries and content n entries".into()));
            }
            let opts = FamilyOptions { conjectured_threshold: *conjectured_threshold, force: *force };
            let rep = verify_theorem3(&charges.0, &content.0, (k_range.0, k_range.1), *n, *l, &opts)?;
            let mut v = serde_json::to_value(&rep).expect("report serializes");
            v["N"] = json!(rep.constants.big_n);
            v["N_prime"] = json!(rep.constants.n_prime);
            report_output(v, rep.verified, &rep.matrices, "thm3", fmt, out_dir)
        }
        Command::Gamma { n, charges, m, window } => {
            let r = &charges.0;
            let s: i64 = r.iter().sum();
            if !crate::indexation::fundamental_domain(r.len(), *n, s).contains(r) {
                return Err(CliError::Input(format!("{} is not in the fundamental domain", format_charges(r))));
            }
            let g = gamma_graph(r, *m, *window, *n);
            let output = match fmt {
                Format::Json => pretty(&serde_json::to_value(&g).expect("graph serializes")),
                Format::Text => g.to_dot(),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["source", "target", "generator"]).map_err(input)?;
                    for (a, b, i) in &g.edges {
                        w.write_record([format_charges(&g.vertices[*a]), format_charges(&g.vertices[*b]), i.to_string()]).map_err(input)?;
                    }
                    String::from_utf8(w.into_inner().map_err(input)?).map_err(input)?
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::Cones { n, l, content, b, audit, box_radius, seed } => {
            if *l < 2 {
                return Err(CliError::Input("cones need l ≥ 2".into()));
            }
            let cd = CartanData::new(*l);
            let mut v = json!({ "cartan": cd, "determinant": cd.determinant().to_string() });
            if let Some(c) = content {
                if c.0.len() != *n {
                    return Err(CliError::Input(format!("content needs {n} entries")));
                }
                v["constants"] = serde_json::to_value(stabilization_constants(&c.0, *n, *l)).expect("serializes");
            }
            if let Some(bt) = b {
                let bv = parse_rationals(bt)?;
                if bv.len() + 1 != *l {
                    return Err(CliError::Input(format!("b needs {} entries", l - 1)));
                }
                let c = constructive_c(&bv);
                let show = |x: &[Q]| x.iter().map(|q| q.to_string()).collect::<Vec<_>>();
                v["b"] = json!(show(&bv));
                v["vertex"] = json!(show(&cone_vertex(&bv)));
                v["constructive_c"] = json!(show(&c));
                if let Some(pairs) = audit {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    v["audit"] = serde_json::to_value(audit_constructive_c(&bv, &c, *pairs, 4, *box_radius, &mut rng)).expect("serializes");
                }
            }
            let output = match fmt {
                Format::Json => pretty(&v),
                _ => {
                    let mut s = String::new();
                    if let Value::Object(map) = &v {
                        for (k, x) in map {
                            let _ = writeln!(s, "{k}: {x}");
                        }
                    }
                    s
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::Crystal { n, l, charges, label, i, dotted, degree, highest } => {
            let ch = &charges.0;
            if let Some(d) = degree {
                let edges = if *highest { highest_weight_component(ch, *n, *d) } else { crystal_edges(ch, *n, *d) };
                let output = match fmt {
                    Format::Json => edges_to_json(&edges) + "\n",
                    Format::Text => edges_to_dot(&edges),
                    Format::Csv => {
                        let mut s = String::from("source,generator,target\n");
                        for e in &edges {
                            let _ = writeln!(s, "\"{}\",{},\"{}\"", e.src, e.i, e.dst);
                        }
                        s
                    }
                };
                return Ok(Outcome::ok(output));
            }
            let label = label.as_ref().ok_or_else(|| CliError::Input("give --label or --degree".into()))?;
            let i = i.ok_or_else(|| CliError::Input("--label needs --i".into()))?;
            let mp = parse_label(label, ch.len())?;
            let v = if *dotted {
                let l = l.ok_or_else(|| CliError::Input("--dotted needs --l".into()))?;
                if i >= l || ch.len() != l {
                    return Err(CliError::Input("dotted index below l and l charges".into()));
                }
                let img = sigma_dot_i(&mp, ch, *n, l, i);
                json!({"label": mp.to_string(), "i": i, "sigma_dot": img.mp.to_string(), "charges": format_charges(&img.charges)})
            } else {
                if i >= *n {
                    return Err(CliError::Input(format!("i must be below n = {n}")));
                }
                let sig = signature(&mp, ch, *n, i);
                json!({
                    "label": mp.to_string(),
                    "i": i,
                    "phi": sig.phi(),
                    "eps": sig.eps(),
                    "f": kashiwara_f(&mp, ch, *n, i).map(|x| x.to_string()),
                    "e": kashiwara_e(&mp, ch, *n, i).map(|x| x.to_string()),
                    "sigma": sigma_i(&mp, ch, *n, i).to_string(),
                    "string": i_string(&mp, ch, *n, i).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })
            };
            let output = match fmt {
                Format::Json => pretty(&v),
                _ => summarize(&v) + &v.get("string").map(|s| format!("string: {s}\n")).unwrap_or_default(),
            };
            Ok(Outcome::ok(output))
        }
        Command::Act { n, l, charges, label, op, i, k, m } => {
            let ch = &charges.0;
            if ch.len() != *l {
                return Err(CliError::Input(format!("{} charges for l = {l}", ch.len())));
            }
            let mp = parse_label(label, *l)?;
            let ctx = FockContext::l_side(ch.clone(), *n);
            let v = FockVector::basis(ctx.clone(), mp.clone());
            let result = match op {
                Op::F | Op::E | Op::T if *i >= *n => return Err(CliError::Input(format!("i must be below n = {n}"))),
                Op::F => f_action(*i, &v, *k),
                Op::E => e_action(*i, &v, *k),
                Op::T => t_action(*i, &v),
                Op::B => {
                    if *m == 0 {
                        return Err(CliError::Input("B_0 is not defined".into()));
                    }
                    let st = Straightener::with_global_rules(*n, *l).map_err(|e| CliError::Unsupported(e.to_string()))?;
                    let big = from_l_indexation(&ChargedMultipartition::new(mp, ch.clone()), *n, *l);
                    let w = st.b_operator(*m, &WedgeVector::basis(big.partition, big.charge)).map_err(|e| CliError::Unsupported(e.to_string()))?;
                    let mut out = FockVector::zero(ctx);
                    for (p, c) in w.terms() {
                        let lab = to_l_indexation(&ChargedPartition::new(p.clone(), big.charge), *n, *l);
                        if &lab.charges != ch {
                            return Err(CliError::Unsupported("B_m left the charge sector".into()));
                        }
                        out.add_term(lab.mp, c);
                    }
                    out
                }
            };
            let output = match fmt {
                Format::Json => pretty(&fock_vector_json(&result)),
                Format::Csv => {
                    let mut s = String::from("label,coeff\n");
                    for (m, c) in result.terms() {
                        let _ = writeln!(s, "\"{m}\",\"{c}\"");
                    }
                    s
                }
                Format::Text => fock_vector_text(&result),
            };
            Ok(Outcome::ok(output))
        }
    }
}

/// Parse arguments, run, print, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // a second build in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            let is_report = matches!(cli.command, Command::VerifyThm1 { .. } | Command::VerifyThm2 { .. } | Command::VerifyThm3 { .. });
            match (&cli.out, is_report) {
                (Some(path), false) => {
                    if let Err(e) = std::fs::write(path, &out.output) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 3;
                    }
                }
                _ => print!("{}", out.output),
            }
            out.code
        }
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}
