//! Chevalley generators, divided powers, Cartan and degree operators on Fock spaces, and the
//! diagonal bilinear form.
//!
//! A [`FockVector`] lives either on the l-side (labels are l-multipartitions, residues are taken
//! mod n, coefficients are powers of q) or on the n-side (labels are n-multipartitions, residues
//! mod l, coefficients are powers of p = -q^-1).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::laurent::Laurent;
use crate::partitions::{content_vector, m_stats_unchecked, residue, Multipartition};
use crate::weights::{delta_charge, inner_product, weight_from_content, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("norm (wt, wt)/2 is not an integer for {0}")]
    NonIntegralNorm(String),
    #[error("vectors live in different Fock spaces")]
    ContextMismatch,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    /// l-multipartitions, residues mod n, q-powers.
    L,
    /// n-multipartitions, residues mod l, p-powers.
    N,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockContext {
    pub side: Side,
    pub charges: Vec<i64>,
    /// n for the l-side, l for the n-side.
    pub modulus: usize,
}

impl FockContext {
    pub fn l_side(charges: Vec<i64>, n: usize) -> Self {
        FockContext { side: Side::L, charges, modulus: n }
    }

    pub fn n_side(charges: Vec<i64>, l: usize) -> Self {
        FockContext { side: Side::N, charges, modulus: l }
    }

    /// q^e on the l-side, p^e on the n-side.
    pub fn power(&self, e: i64) -> Laurent {
        match self.side {
            Side::L => Laurent::monomial(e, 1),
            Side::N => Laurent::p_pow(e),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    pub ctx: FockContext,
    coeffs: BTreeMap<Multipartition, Laurent>,
}

impl FockVector {
    pub fn zero(ctx: FockContext) -> Self {
        FockVector { ctx, coeffs: BTreeMap::new() }
    }

    pub fn basis(ctx: FockContext, mp: Multipartition) -> Self {
        assert_eq!(mp.len(), ctx.charges.len());
        let mut v = Self::zero(ctx);
        v.coeffs.insert(mp, Laurent::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mp: Multipartition, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(mp.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&mp);
        }
    }

    pub fn coeff(&self, mp: &Multipartition) -> Laurent {
        self.coeffs.get(mp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multipartition, &Laurent)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero(self.ctx.clone());
        for (m, x) in &self.coeffs {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn add(&self, o: &FockVector) -> Self {
        assert_eq!(self.ctx, o.ctx);
        let mut out = self.clone();
        for (m, x) in &o.coeffs {
            out.add_term(m.clone(), x);
        }
        out
    }

    pub fn sub(&self, o: &FockVector) -> Self {
        self.add(&o.scale(&Laurent::constant(-1)))
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({c})|{m}>")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All ξ obtained from `mp` by adding k nodes of residue i one at a time.
pub fn chains_up(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize, k: usize) -> BTreeSet<Multipartition> {
    let mut cur = BTreeSet::from([mp.clone()]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for m in &cur {
            for a in m.addable_nodes() {
                if residue(&a, charges, modulus) == i {
                    next.insert(m.add_node(&a));
                }
            }
        }
        cur = next;
    }
    cur
}

/// All λ obtained from `mp` by removing k nodes of residue i one at a time.
pub fn chains_down(mp: &Multipartition, charges: &[i64], modulus: usize, i: usize, k: usize) -> BTreeSet<Multipartition> {
    let mut cur = BTreeSet::from([mp.clone()]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for m in &cur {
            for a in m.removable_nodes() {
                if residue(&a, charges, modulus) == i {
                    next.insert(m.remove_node(&a));
                }
            }
        }
        cur = next;
    }
    cur
}

/// f_i^{(k)} on a single label: Σ_ξ q^{M^>(ν;ξ)} ξ (p-powers on the n-side).
pub fn f_on_label(ctx: &FockContext, mp: &Multipartition, i: usize, k: usize) -> Vec<(Multipartition, Laurent)> {
    chains_up(mp, &ctx.charges, ctx.modulus, i, k)
        .into_iter()
        .map(|xi| {
            let added = mp.nodes_between(&xi);
            let (g, _) = m_stats_unchecked(mp, &xi, &added, &ctx.charges, ctx.modulus, i);
            let c = ctx.power(g);
            (xi, c)
        })
        .collect()
}

/// e_i^{(k)} on a single label: Σ_λ q^{-M^<(λ;ν)} λ (p-powers on the n-side).
pub fn e_on_label(ctx: &FockContext, mp: &Multipartition, i: usize, k: usize) -> Vec<(Multipartition, Laurent)> {
    chains_down(mp, &ctx.charges, ctx.modulus, i, k)
        .into_iter()
        .map(|lam| {
            let added = lam.nodes_between(mp);
            let (_, less) = m_stats_unchecked(&lam, mp, &added, &ctx.charges, ctx.modulus, i);
            let c = ctx.power(-less);
            (lam, c)
        })
        .collect()
}

pub fn f_action(i: usize, v: &FockVector, k: usize) -> FockVector {
    let mut out = FockVector::zero(v.ctx.clone());
    for (mp, c) in v.terms() {
        for (xi, e) in f_on_label(&v.ctx, mp, i, k) {
            out.add_term(xi, &(c * &e));
        }
    }
    out
}

pub fn e_action(i: usize, v: &FockVector, k: usize) -> FockVector {
    let mut out = FockVector::zero(v.ctx.clone());
    for (mp, c) in v.terms() {
        for (lam, e) in e_on_label(&v.ctx, mp, i, k) {
            out.add_term(lam, &(c * &e));
        }
    }
    out
}

/// t_i acts on |ν⟩ by q^{M_i(ν)} (p-powers on the n-side), M_i = A_i - R_i.
pub fn t_action(i: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.ctx.clone());
    for (mp, c) in v.terms() {
        let st = crate::partitions::node_stats(mp, &v.ctx.charges, v.ctx.modulus, i);
        out.add_term(mp.clone(), &(c * &v.ctx.power(st.m_c)));
    }
    out
}

/// The degree operator: |ν⟩ ↦ -(Δ(s, modulus) + N_0(ν)) |ν⟩.
pub fn degree_action(v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.ctx.clone());
    let d = delta_charge(&v.ctx.charges, v.ctx.modulus as i64).expect("Δ is integral");
    for (mp, c) in v.terms() {
        let n0 = content_vector(mp, &v.ctx.charges, v.ctx.modulus)[0] as i64;
        out.add_term(mp.clone(), &c.scale(&BigInt::from(-(d + n0))));
    }
    out
}

/// Weight of a label in the algebra whose residues the context uses.
pub fn label_weight(ctx: &FockContext, mp: &Multipartition) -> Weight {
    let content = content_vector(mp, &ctx.charges, ctx.modulus);
    let w = weight_from_content(&ctx.charges, ctx.modulus, &content);
    match ctx.side {
        Side::L => w,
        Side::N => w.dot(),
    }
}

/// ‖λ‖ = (wt(λ), wt(λ))/2, a rational number in general.
pub fn norm(ctx: &FockContext, mp: &Multipartition) -> num_rational::Rational64 {
    let w = label_weight(ctx, mp);
    inner_product(&w, &w) / num_rational::Rational64::from_integer(2)
}

/// ‖λ‖ − ‖∅‖; an integer since wt(λ) and wt(∅) differ by an element of the root lattice.
pub fn norm_exponent(ctx: &FockContext, mp: &Multipartition) -> Result<i64, ActionError> {
    let v = norm(ctx, mp) - norm(ctx, &Multipartition::empty(ctx.charges.len()));
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(ActionError::NonIntegralNorm(mp.to_string()))
    }
}

/// (u, v) with (λ, μ) = q^{‖λ‖} δ_{λμ}, bilinear without bar twist, divided by the global
/// factor q^{‖∅‖} so that values stay Laurent. Multiply by q^{‖∅‖} (see [`norm`]) for the
/// unnormalised form.
pub fn bilinear_form(u: &FockVector, v: &FockVector) -> Result<Laurent, ActionError> {
    if u.ctx != v.ctx {
        return Err(ActionError::ContextMismatch);
    }
    let mut acc = Laurent::zero();
    for (mp, a) in u.terms() {
        let b = v.coeff(mp);
        if b.is_zero() {
            continue;
        }
        let e = norm_exponent(&u.ctx, mp)?;
        acc += &(&(a * &b) * &Laurent::monomial(e, 1));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FockContext {
        FockContext::l_side(vec![1, 0], 3)
    }

    #[test]
    fn one_box() {
        let e = FockVector::basis(ctx(), Multipartition::empty(2));
        let f0 = f_action(0, &e, 1);
        assert_eq!(f0.len(), 1);
        let want: Multipartition = "[[],[1]]".parse().unwrap();
        assert!(f0.coeff(&want).is_one());
        assert_eq!(e_action(0, &f0, 1), e);
        assert!(e_action(1, &e, 1).is_zero());
        assert!(f_action(0, &FockVector::zero(ctx()), 1).is_zero());
    }

    #[test]
    fn cartan_and_degree() {
        let e = FockVector::basis(ctx(), Multipartition::empty(2));
        let t = t_action(0, &e);
        assert_eq!(t.coeff(&Multipartition::empty(2)), Laurent::q());
        assert!(degree_action(&e).is_zero());
    }

    #[test]
    fn divided_power_vanishes_past_addable_count() {
        let e = FockVector::basis(FockContext::l_side(vec![0, 0], 2), Multipartition::empty(2));
        assert_eq!(f_action(0, &e, 2).len(), 1);
        assert!(f_action(0, &e, 3).is_zero());
        let top = f_action(0, &e, 2);
        let (_, c) = top.terms().next().unwrap();
        assert!(c.is_one());
        // f_0 f_0 = [2] f_0^{(2)}
        let ff = f_action(0, &f_action(0, &e, 1), 1);
        let (_, c2) = ff.terms().next().unwrap();
        assert_eq!(c2, &"q^-1 + q".parse::<Laurent>().unwrap());
    }

    #[test]
    fn dotted_on_empty() {
        let c = FockContext::n_side(vec![2, 1, -2], 2);
        let e = FockVector::basis(c.clone(), Multipartition::empty(3));
        assert!(e_action(0, &e, 1).is_zero());
        let f = f_action(0, &e, 1);
        let count = c.charges.iter().filter(|s| s.rem_euclid(2) == 0).count();
        assert_eq!(f.len(), count);
    }

    #[test]
    fn vacuum_norm_is_a_third() {
        // wt(∅) = Λ_0 + Λ_1 with no δ part; (Λ_1, Λ_1) = 2/3 for n = 3
        let e = Multipartition::empty(2);
        assert_eq!(norm(&ctx(), &e), num_rational::Rational64::new(1, 3));
        let v = FockVector::basis(ctx(), e);
        assert!(bilinear_form(&v, &v).unwrap().is_one());
    }
}
