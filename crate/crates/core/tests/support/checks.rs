// Shared by the proptest suite and the acceptance runner. Every check returns Err(reason)
// instead of panicking so the runner can count failures.
#![allow(dead_code)]

use fock::actions::{bilinear_form, e_action, f_action, FockContext, FockVector};
use fock::canonical::{bar_matrix, bar_matrix_with, check_transition, lusztig_lemma, SearchOptions};
use fock::compare::bound_instance;
use fock::cones::{
    audit_constructive_c, constructive_c, dominance_cone, is_dominant, phi, psi, psi_int, same_lattice, Q,
};
use fock::crystal::{
    add_all_addable, crystal_weight, eps, i_string, kashiwara_e, kashiwara_f, phi as crystal_phi, sigma_i, weight_pairing,
};
use fock::indexation::{
    cross_convert, cross_convert_back, from_l_indexation, from_n_indexation, fundamental_domain, orbit_representative, tau_dot,
    to_l_indexation, to_n_indexation, weyl_charge_action, ChargedPartition,
};
use fock::laurent::Laurent;
use fock::partitions::{content_vector, dominance_less, residue, Multipartition, Partition};
use fock::wedge::{heisenberg_commutator_check, Straightener, WedgeVector};
use fock::weights::{content_of_weight, corresponding_dot, d_shift, weight_from_content, weyl_reflect, wt_l, Weight};
use rand::Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn multipartition(rows: &[Vec<usize>]) -> Multipartition {
    Multipartition::new(rows.iter().map(|r| sorted_partition(r.clone())).collect())
}

pub fn sorted_partition(mut parts: Vec<usize>) -> Partition {
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

pub fn random_multipartition<R: Rng>(rng: &mut R, l: usize, max_rows: usize, max_part: usize) -> Multipartition {
    let rows: Vec<Vec<usize>> = (0..l).map(|_| (0..rng.gen_range(0..=max_rows)).map(|_| rng.gen_range(1..=max_part)).collect()).collect();
    multipartition(&rows)
}

pub fn random_charges<R: Rng>(rng: &mut R, l: usize, spread: i64) -> Vec<i64> {
    (0..l).map(|_| rng.gen_range(-spread..=spread)).collect()
}

pub fn laurent_bar_involution(terms: &[(i64, i64)]) -> Check {
    let x = Laurent::from_terms(terms.iter().map(|&(e, c)| (e, c)));
    ensure!(x.bar().bar() == x, "bar twice moved {x}");
    let y = Laurent::from_terms(terms.iter().rev().map(|&(e, c)| (e + 1, -c)));
    ensure!((&x * &y).bar() == &x.bar() * &y.bar(), "bar is not multiplicative on {x}, {y}");
    Ok(())
}

pub fn indexation_round_trip(parts: Vec<usize>, charge: i64, n: usize, l: usize) -> Check {
    let cp = ChargedPartition::new(sorted_partition(parts), charge);
    let ml = to_l_indexation(&cp, n, l);
    let mn = to_n_indexation(&cp, n, l);
    ensure!(from_l_indexation(&ml, n, l) == cp, "l-side round trip failed for {cp}");
    ensure!(from_n_indexation(&mn, n, l) == cp, "n-side round trip failed for {cp}");
    ensure!(cross_convert(&ml, n, l) == mn, "cross conversion disagrees for {cp}");
    ensure!(cross_convert_back(&mn, n, l) == ml, "backward cross conversion disagrees for {cp}");
    ensure!(ml.charges.iter().sum::<i64>() == charge && mn.charges.iter().sum::<i64>() == charge, "charge not preserved");
    Ok(())
}

/// The orbit walk lands in A_{L,N}(s), and every charge vector of one orbit lands on the same point.
pub fn fundamental_domain_unique(charges: &[i64], word: &[usize], level: i64) -> Check {
    let s: i64 = charges.iter().sum();
    let (rep, _) = orbit_representative(charges, level);
    let domain = fundamental_domain(charges.len(), level as usize, s);
    ensure!(domain.iter().filter(|r| **r == rep).count() == 1, "{rep:?} is not in the domain");
    let mut moved = charges.to_vec();
    for &g in word {
        moved = weyl_charge_action(g % charges.len(), &moved, level);
    }
    let (rep2, _) = orbit_representative(&moved, level);
    ensure!(rep == rep2, "{charges:?} and {moved:?} reach {rep:?} and {rep2:?}");
    Ok(())
}

/// (e_i u, v) = (u, f_i v), with u running over the support of f_i v and a random extra label.
pub fn adjointness(charges: &[i64], n: usize, v_label: &Multipartition, extra: &Multipartition, i: usize) -> Check {
    let ctx = FockContext::l_side(charges.to_vec(), n);
    let v = FockVector::basis(ctx.clone(), v_label.clone());
    let fv = f_action(i, &v, 1);
    let mut us: Vec<Multipartition> = fv.terms().map(|(m, _)| m.clone()).collect();
    us.push(extra.clone());
    for u_label in us {
        let u = FockVector::basis(ctx.clone(), u_label.clone());
        let lhs = bilinear_form(&e_action(i, &u, 1), &v).map_err(|e| e.to_string())?;
        let rhs = bilinear_form(&u, &fv).map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "(e_{i} {u_label}, {v_label}) = {lhs} but (u, f_{i} v) = {rhs}");
    }
    Ok(())
}

pub fn phi_minus_eps(mp: &Multipartition, charges: &[i64], n: usize, i: usize) -> Check {
    let lhs = crystal_phi(mp, charges, n, i) as i64 - eps(mp, charges, n, i) as i64;
    let rhs = weight_pairing(mp, charges, n, i);
    ensure!(lhs == rhs, "φ−ε = {lhs} but (wt, α_{i}) = {rhs} at {mp}");
    Ok(())
}

/// σ_i is an involution; it agrees with adding every addable i-node when there is no removable
/// one; f̃ and ẽ invert each other, shift weights by α_i and walk a string of length ε + φ.
pub fn crystal_identities(mp: &Multipartition, charges: &[i64], n: usize, i: usize) -> Check {
    let s = sigma_i(mp, charges, n, i);
    ensure!(sigma_i(&s, charges, n, i) == *mp, "σ_{i} is not an involution at {mp}");
    let no_removable = mp.removable_nodes().iter().all(|x| residue(x, charges, n) != i);
    if no_removable {
        ensure!(s == add_all_addable(mp, charges, n, i), "σ_{i}({mp}) differs from adding all addable nodes");
        let k = weight_pairing(mp, charges, n, i);
        let mut cur = mp.clone();
        for _ in 0..k {
            cur = kashiwara_f(&cur, charges, n, i).ok_or("f̃ ran out")?;
        }
        for _ in 0..k {
            cur = kashiwara_e(&cur, charges, n, i).ok_or("ẽ ran out")?;
        }
        ensure!(cur == *mp, "ẽ^k f̃^k moved {mp}");
    }
    if let Some(up) = kashiwara_f(mp, charges, n, i) {
        ensure!(kashiwara_e(&up, charges, n, i).as_ref() == Some(mp), "ẽ f̃ moved {mp}");
        let w = crystal_weight(mp, charges, n).sub(&Weight::simple_root(i, n));
        ensure!(crystal_weight(&up, charges, n) == w, "f̃ does not lower the weight by α_{i}");
    }
    let string = i_string(mp, charges, n, i);
    let len = crystal_phi(mp, charges, n, i) + eps(mp, charges, n, i);
    ensure!(string.len() == len + 1, "string of {} labels for ε+φ = {len}", string.len());
    let pos = string.iter().position(|x| x == mp).ok_or("label missing from its string")?;
    ensure!(string[len - pos] == s, "σ_{i} is not the central symmetry of the string");
    Ok(())
}

/// Bar matrix and both transition matrices of one weight space.
pub fn weight_space(charges: &[i64], content: &[usize], n: usize, l: usize, seeds: (u64, u64)) -> Check {
    let w = weight_from_content(charges, n, content);
    let a = bar_matrix(charges, &w, n, l).map_err(|e| e.to_string())?;
    let dim = a.dim();
    ensure!(a.entries.mul(&a.entries.bar()).map_err(|e| e.to_string())?.is_identity(), "A·Ā ≠ I");
    for r in 0..dim {
        ensure!(a.entries.get(r, r).is_one(), "diagonal entry {r} of A is not 1");
    }
    for sign in [1i8, -1] {
        let t = lusztig_lemma(&a, sign).map_err(|e| e.to_string())?;
        check_transition(&a, &t).map_err(|e| e.to_string())?;
        for r in 0..dim {
            for c in 0..dim {
                let x = t.entries.get(r, c);
                if r == c {
                    ensure!(x.is_one(), "diagonal of Δ is not 1");
                    continue;
                }
                if x.is_zero() {
                    continue;
                }
                let below = dominance_less(&t.big[r], &t.big[c]).map_err(|e| e.to_string())?;
                ensure!(below, "Δ entry ({r},{c}) sits outside the dominance order");
                if sign > 0 {
                    ensure!(x.min_exp().unwrap() >= 1 && x.in_nat_q(), "Δ⁺ entry {x} breaks the lattice or positivity");
                } else {
                    ensure!(x.max_exp().unwrap() <= -1 && x.in_nat_p(), "Δ⁻ entry {x} breaks the lattice or positivity");
                }
            }
        }
    }
    for seed in [seeds.0, seeds.1] {
        let b = bar_matrix_with(charges, &w, n, l, &SearchOptions { bound: None, seed: Some(seed) }).map_err(|e| e.to_string())?;
        ensure!(b.entries == a.entries && b.basis == a.basis, "seed {seed} changed A");
    }
    Ok(())
}

/// B_m moves |m|·nl boxes, keeps the l-side charges and the finite part of the weight, and is
/// homogeneous.
pub fn b_operator_shift(st: &Straightener, parts: Vec<usize>, charge: i64, m: i64) -> Check {
    let (n, l) = (st.n(), st.l());
    let lam = sorted_partition(parts);
    let src = to_l_indexation(&ChargedPartition::new(lam.clone(), charge), n, l);
    let w0 = wt_l(&src, n);
    let out = st.b_operator(m, &WedgeVector::basis(lam.clone(), charge)).map_err(|e| e.to_string())?;
    let mut delta: Option<_> = None;
    for (mu, _) in out.terms() {
        ensure!(mu.size() as i64 - lam.size() as i64 == -((n * l) as i64) * m, "B_{m} moved {lam} to {mu}");
        let img = to_l_indexation(&ChargedPartition::new(mu.clone(), charge), n, l);
        ensure!(img.charges == src.charges, "B_{m} changed the l-side charges");
        let w = wt_l(&img, n);
        ensure!(w.coeffs == w0.coeffs, "B_{m} changed the finite weight");
        match delta {
            None => delta = Some(w.delta),
            Some(d) => ensure!(d == w.delta, "B_{m} output is not homogeneous"),
        }
    }
    if let Some(d) = delta {
        ensure!(d - w0.delta == Q::from_integer(m), "B_{m} shifted δ by {}", d - w0.delta);
    }
    Ok(())
}

pub fn heisenberg_same_sign(st: &Straightener, samples: &[WedgeVector]) -> Check {
    for (a, b) in [(-1, -2), (1, 2), (-1, -1)] {
        heisenberg_commutator_check(st, a, b, samples).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn apply_word(charges: &[i64], word: &[usize], n: usize) -> Vec<i64> {
    let mut t = charges.to_vec();
    for &g in word.iter().rev() {
        t = weyl_charge_action(g, &t, n as i64);
    }
    t
}

/// N_i(w + d(s, σ̇.s)δ; σ̇.s) = N_i(w; s).
pub fn content_invariance(charges: &[i64], content: &[usize], word: &[usize], n: usize) -> Check {
    let w = weight_from_content(charges, n, content);
    let t = apply_word(charges, word, n);
    let d = d_shift(charges, &t, n as i64).map_err(|e| e.to_string())?;
    let got = content_of_weight(&w.add_delta(d), &t, n).map_err(|e| e.to_string())?;
    ensure!(got == content, "content {content:?} became {got:?} over {t:?}");
    Ok(())
}

/// The weight/charge pair moves by t = σ̇.s and w′ = w + wt(∅,t) − wt(∅,s) when ẇ moves by σ̇.
pub fn dotted_pair_transport(charges: &[i64], content: &[usize], word: &[usize], n: usize) -> Check {
    let w = weight_from_content(charges, n, content);
    let (sn, wd) = corresponding_dot(charges, &w, n).map_err(|e| e.to_string())?;
    let mut wd2 = wd.clone();
    for &g in word.iter().rev() {
        wd2 = weyl_reflect(&wd2, g);
    }
    let t = apply_word(charges, word, n);
    let zero = vec![0; n];
    let w2 = w.add(&weight_from_content(&t, n, &zero)).sub(&weight_from_content(charges, n, &zero));
    let (sn2, wd3) = corresponding_dot(&t, &w2, n).map_err(|e| e.to_string())?;
    ensure!(sn2 == sn && wd3 == wd2, "({t:?}, {w2}) corresponds to ({sn2:?}, {wd3}) instead of ({sn:?}, {wd2})");
    Ok(())
}

/// Returns whether the bound applied, so callers can tell a vacuous sweep from a real one.
pub fn gap_bound_sound(charges: &[i64], content: &[usize], i: usize, n: usize, l: usize) -> Result<bool, String> {
    let b = bound_instance(charges, content, i, n, l).map_err(|e| e.to_string())?;
    ensure!(b.sound(), "bound holds but the raised weight is attained: {b:?}");
    Ok(b.bound_holds)
}

/// φ and ψ are inverse, ψ turns unit steps into τ̇ and φ maps M-dominant charges onto C_b(M).
pub fn phi_psi(r: &[i64], x: &[i64], n: usize, m: i64) -> Check {
    let s = psi_int(x, r, n);
    ensure!(same_lattice(&s, r, n), "ψ left the lattice of {r:?}");
    let back = phi(&s, r, n);
    ensure!(back.iter().map(|q| q.to_integer()).collect::<Vec<_>>() == x && back.iter().all(|q| q.is_integer()), "φ∘ψ moved {x:?}");
    for j in 0..x.len() {
        let mut y = x.to_vec();
        y[j] += 1;
        ensure!(psi_int(&y, r, n) == tau_dot(j + 1, &s, n as i64), "unit step {j} is not τ̇");
    }
    let cone = dominance_cone(r, m, n);
    ensure!(cone.contains_int(x) == is_dominant(&s, m), "cone membership of {x:?} disagrees with {m}-dominance of {s:?}");
    let half: Vec<Q> = x.iter().map(|&v| Q::new(2 * v + 1, 2)).collect();
    if let Some(t) = psi(&half, r, n) {
        ensure!(phi(&t, r, n) == half, "φ∘ψ moved a rational point");
    }
    Ok(())
}

/// c ≤ b, the box audit finds no disconnected pair, and the audit verdicts survive lowering c
/// and translating b by a lattice vector of the cone.
pub fn constructive_audit<R: Rng + Clone>(b: &[Q], rng: &mut R) -> Check {
    let c = constructive_c(b);
    ensure!(c.iter().zip(b).all(|(x, y)| x <= y), "c = {c:?} is not below b = {b:?}");
    let mut r1 = rng.clone();
    let rep = audit_constructive_c(b, &c, 20, 4, 6, rng);
    ensure!(rep.failures.is_empty(), "disconnected pairs {:?}", rep.failures);
    for j in 0..c.len() {
        let mut lower = c.clone();
        lower[j] -= Q::from_integer(1);
        let mut r2 = r1.clone();
        let down = audit_constructive_c(b, &lower, 20, 4, 6, &mut r2);
        ensure!(down.failures.is_empty(), "lowering c_{j} broke connectivity");
    }
    // b′ = b + A·e_1 has A⁻¹(b′ − b) integral; shift c by the same vector
    let mut shift = vec![Q::from_integer(0); b.len()];
    shift[0] = Q::from_integer(2);
    if b.len() > 1 {
        shift[1] = Q::from_integer(-1);
    }
    let b2: Vec<Q> = b.iter().zip(&shift).map(|(x, y)| x + y).collect();
    let c2: Vec<Q> = c.iter().zip(&shift).map(|(x, y)| x + y).collect();
    let a = audit_constructive_c(b, &c, 20, 4, 6, &mut r1.clone());
    let t = audit_constructive_c(&b2, &c2, 20, 4, 6, &mut r1);
    ensure!((a.failures.is_empty(), a.connected) == (t.failures.is_empty(), t.connected), "translation changed the audit");
    Ok(())
}

pub fn random_wedge_samples<R: Rng>(rng: &mut R, count: usize) -> Vec<WedgeVector> {
    (0..count)
        .map(|_| {
            let parts: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(1..=4)).collect();
            WedgeVector::basis(sorted_partition(parts), rng.gen_range(-2..=2))
        })
        .collect()
}

pub fn content_of(mp: &Multipartition, charges: &[i64], n: usize) -> Vec<usize> {
    content_vector(mp, charges, n)
}
