//! Affine type A weight lattices, the invariant form, Δ(s, N), weights of standard basis
//! vectors and the correspondence between the two weight pictures.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::indexation::{theta, theta_inverse, ChargedMultipartition};
use crate::partitions::{content_is_attained, content_vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("value {0} is not an integer")]
    NonIntegral(Rational64),
    #[error("weight is not of the form wt(empty) - sum N_i alpha_i with N_i >= 0: {0}")]
    NotAWeightShape(String),
    #[error("rank mismatch")]
    RankMismatch,
    #[error("{0}")]
    Indexation(#[from] crate::indexation::IndexationError),
}

/// Σ a_i Λ_i + d δ. `dotted` marks weights of the second algebra (Λ̇, δ̇).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Weight {
    pub coeffs: Vec<i64>,
    #[serde(serialize_with = "ser_rat")]
    pub delta: Rational64,
    pub dotted: bool,
}

pub type DotWeight = Weight;

fn ser_rat<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { coeffs: vec![0; rank], delta: Rational64::zero(), dotted: false }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dot(mut self) -> Self {
        self.dotted = true;
        self
    }

    pub fn fundamental(j: i64, rank: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coeffs[j.rem_euclid(rank as i64) as usize] = 1;
        w
    }

    pub fn null_root(rank: usize) -> Self {
        let mut w = Self::zero(rank);
        w.delta = Rational64::one();
        w
    }

    /// α_i = 2Λ_i - Λ_{i-1} - Λ_{i+1} + δ_{i,0} δ.
    pub fn simple_root(i: usize, rank: usize) -> Self {
        let mut w = Self::zero(rank);
        let r = rank as i64;
        let i = i as i64;
        w.coeffs[i as usize] += 2;
        w.coeffs[(i - 1).rem_euclid(r) as usize] -= 1;
        w.coeffs[(i + 1).rem_euclid(r) as usize] -= 1;
        if i == 0 {
            w.delta = Rational64::one();
        }
        w
    }

    pub fn level(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        Weight {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            delta: self.delta + o.delta,
            dotted: self.dotted,
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            delta: self.delta * Rational64::from_integer(k),
            dotted: self.dotted,
        }
    }

    pub fn add_delta(&self, d: i64) -> Weight {
        let mut w = self.clone();
        w.delta += Rational64::from_integer(d);
        w
    }

    pub fn delta_integer(&self) -> Result<i64, WeightError> {
        if self.delta.is_integer() {
            Ok(self.delta.to_integer())
        } else {
            Err(WeightError::NonIntegral(self.delta))
        }
    }

    /// Coordinates (x, y_0..y_{r-1}) with w = x Λ_0 + Σ y_i α_i.
    fn root_coordinates(&self) -> (Rational64, Vec<Rational64>) {
        let r = self.rank();
        let x: i64 = self.level();
        let mut b: Vec<Rational64> = self.coeffs.iter().map(|&c| Rational64::from_integer(c)).collect();
        b[0] -= Rational64::from_integer(x);
        let y = solve_cartan(&b, self.delta);
        debug_assert_eq!(y.len(), r);
        (Rational64::from_integer(x), y)
    }
}

/// Solve A y = b for the affine Cartan matrix A of rank r ≥ 2 with y_0 fixed. Requires Σ b = 0.
fn solve_cartan(b: &[Rational64], y0: Rational64) -> Vec<Rational64> {
    let r = b.len();
    assert!(r >= 2, "affine Cartan data needs rank at least 2");
    debug_assert!(b.iter().sum::<Rational64>().is_zero());
    // u_j = y_j - y_{j-1} (cyclically) satisfies b_j = u_j - u_{j+1}
    let mut prefix = Rational64::zero();
    let mut total = Rational64::zero();
    for bj in b.iter().take(r) {
        total += prefix;
        prefix += bj;
    }
    let u0 = total / Rational64::from_integer(r as i64);
    let mut y = vec![y0];
    let mut u = u0;
    for j in 1..r {
        u -= b[j - 1];
        let prev = y[j - 1];
        y.push(prev + u);
    }
    y
}

/// Solve w = Σ D_i α_i exactly; None unless w has level 0.
pub fn root_decomposition(w: &Weight) -> Option<Vec<Rational64>> {
    if w.level() != 0 {
        return None;
    }
    let b: Vec<Rational64> = w.coeffs.iter().map(|&c| Rational64::from_integer(c)).collect();
    Some(solve_cartan(&b, w.delta))
}

/// Integral root decomposition, if it exists.
pub fn root_decomposition_int(w: &Weight) -> Option<Vec<i64>> {
    root_decomposition(w)?.into_iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lsym, dsym) = if self.dotted { ("L.", "d.") } else { ("L", "d") };
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, c: Rational64, sym: String| -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{sym}")
            } else {
                write!(f, "{a}*{sym}")
            }
        };
        for (i, &c) in self.coeffs.iter().enumerate() {
            emit(f, Rational64::from_integer(c), format!("{lsym}{i}"))?;
        }
        emit(f, self.delta, dsym.to_string())?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The invariant form: (α_i, α_j) = a_ij, (Λ_0, α_i) = δ_{i,0}, (Λ_0, Λ_0) = 0.
pub fn inner_product(w1: &Weight, w2: &Weight) -> Rational64 {
    assert_eq!(w1.rank(), w2.rank());
    let r = w1.rank();
    let (x1, y1) = w1.root_coordinates();
    let (x2, y2) = w2.root_coordinates();
    let mut acc = x1 * y2[0] + x2 * y1[0];
    for i in 0..r {
        for j in 0..r {
            let a = Weight::simple_root(i, r).coeffs[j];
            if a != 0 {
                acc += y1[i] * y2[j] * Rational64::from_integer(a);
            }
        }
    }
    acc
}

/// Δ(s, N) = ½ Σ_b (s_b²/N - s_b) - ((s_b mod N)²/N - (s_b mod N)).
pub fn delta_charge(charges: &[i64], big_n: i64) -> Result<i64, WeightError> {
    let n = Rational64::from_integer(big_n);
    let mut t = Rational64::zero();
    for &s in charges {
        let r = s.rem_euclid(big_n);
        let s = Rational64::from_integer(s);
        let r = Rational64::from_integer(r);
        t += s * s / n - s - (r * r / n - r);
    }
    t /= Rational64::from_integer(2);
    if t.is_integer() {
        Ok(t.to_integer())
    } else {
        Err(WeightError::NonIntegral(t))
    }
}

/// d(a, b) = Δ(a, n) - Δ(b, n).
pub fn d_shift(a: &[i64], b: &[i64], n: i64) -> Result<i64, WeightError> {
    Ok(delta_charge(a, n)? - delta_charge(b, n)?)
}

/// wt(|∅, s⟩) - Σ N_i α_i for charges on the side of rank `rank`.
pub fn weight_from_content(charges: &[i64], rank: usize, content: &[usize]) -> Weight {
    let mut w = Weight::zero(rank);
    for &s in charges {
        w.coeffs[s.rem_euclid(rank as i64) as usize] += 1;
    }
    w.delta = -Rational64::from_integer(delta_charge(charges, rank as i64).expect("Δ is integral"));
    for (i, &c) in content.iter().enumerate() {
        w = w.sub(&Weight::simple_root(i, rank).scale(c as i64));
    }
    w
}

/// wt(|λ_l, s_l⟩) for the algebra of rank n.
pub fn wt_l(cmp: &ChargedMultipartition, n: usize) -> Weight {
    let content = content_vector(&cmp.mp, &cmp.charges, n);
    weight_from_content(&cmp.charges, n, &content)
}

/// ẇt(|λ_n, s_n⟩•) for the algebra of rank l (the n-side label read with modulus l).
pub fn wt_dot(cmp_n: &ChargedMultipartition, l: usize) -> DotWeight {
    let content = content_vector(&cmp_n.mp, &cmp_n.charges, l);
    weight_from_content(&cmp_n.charges, l, &content).dot()
}

/// ẇt(|λ_l, s_l⟩) = -(Δ(s_l,n) + N_0) δ̇ + (n - s_1 + s_l) Λ̇_0 + Σ (s_i - s_{i+1}) Λ̇_i.
pub fn wt_dot_of_l_label(cmp_l: &ChargedMultipartition, n: usize) -> DotWeight {
    let n0 = content_vector(&cmp_l.mp, &cmp_l.charges, n)[0];
    dot_weight_of_charges(&cmp_l.charges, n, n0)
}

pub(crate) fn dot_weight_of_charges(charges_l: &[i64], n: usize, n0: usize) -> DotWeight {
    let coeffs = theta(n as i64, charges_l);
    let d = delta_charge(charges_l, n as i64).expect("Δ is integral") + n0 as i64;
    Weight { coeffs, delta: -Rational64::from_integer(d), dotted: true }
}

/// wt(|λ_n, s_n⟩•) = -(Δ(s_n,l) + N_0) δ + (l - s_1 + s_n) Λ_0 + Σ (s_i - s_{i+1}) Λ_i.
pub fn wt_of_n_label(cmp_n: &ChargedMultipartition, l: usize) -> Weight {
    let n0 = content_vector(&cmp_n.mp, &cmp_n.charges, l)[0];
    let coeffs = theta(l as i64, &cmp_n.charges);
    let d = delta_charge(&cmp_n.charges, l as i64).expect("Δ is integral") + n0 as i64;
    Weight { coeffs, delta: -Rational64::from_integer(d), dotted: false }
}

/// N_i(w; s) with w = wt(∅, s) - Σ N_i α_i.
pub fn content_of_weight(w: &Weight, charges: &[i64], rank: usize) -> Result<Vec<usize>, WeightError> {
    if w.rank() != rank {
        return Err(WeightError::RankMismatch);
    }
    let top = weight_from_content(charges, rank, &vec![0; rank]);
    let diff = top.sub(w);
    let d = root_decomposition(&diff).ok_or_else(|| WeightError::NotAWeightShape(w.to_string()))?;
    d.into_iter()
        .map(|x| {
            if x.is_integer() && !x.is_negative() {
                Ok(x.to_integer() as usize)
            } else {
                Err(WeightError::NotAWeightShape(w.to_string()))
            }
        })
        .collect()
}

/// The unique (s_n, ẇ) with F_q[s_l]⟨w⟩ = F_p[s_n]⟨ẇ⟩.
pub fn corresponding_dot(charges_l: &[i64], w: &Weight, n: usize) -> Result<(Vec<i64>, DotWeight), WeightError> {
    let s: i64 = charges_l.iter().sum();
    let charges_n = theta_inverse(&w.coeffs, s)?;
    let d = w.delta;
    let mut wd = Weight { coeffs: theta(n as i64, charges_l), delta: d, dotted: true };
    wd.delta = d;
    Ok((charges_n, wd))
}

/// Is w a weight of the Fock space with these charges (rank = modulus)?
pub fn weight_is_attained(charges: &[i64], w: &Weight, rank: usize) -> bool {
    match content_of_weight(w, charges, rank) {
        Ok(c) => content_is_attained(charges, rank, &c),
        Err(_) => false,
    }
}

/// σ_i.w = w - (w, α_i) α_i.
pub fn weyl_reflect(w: &Weight, i: usize) -> Weight {
    let a = Weight::simple_root(i, w.rank());
    let k = inner_product(w, &a);
    debug_assert!(k.is_integer());
    let mut out = w.sub(&a.scale(k.to_integer()));
    out.dotted = w.dotted;
    out
}

/// Reflection through the fundamental-weight formula: σ_i fixes Λ_j (j ≠ i) and δ, and sends
/// Λ_i to Λ_{i-1} + Λ_{i+1} - Λ_i - δ_{i,0} δ.
pub fn weyl_reflect_by_fundamentals(w: &Weight, i: usize) -> Weight {
    let r = w.rank();
    let ai = w.coeffs[i];
    let mut out = w.clone();
    out.coeffs[i] -= ai;
    let mut img = Weight::fundamental(i as i64 - 1, r).add(&Weight::fundamental(i as i64 + 1, r));
    img = img.sub(&Weight::fundamental(i as i64, r));
    if i == 0 {
        img.delta -= Rational64::one();
    }
    let mut out = out.add(&img.scale(ai));
    out.dotted = w.dotted;
    out
}
