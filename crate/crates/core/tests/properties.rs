mod support {
    pub mod checks;
}

use fock::cones::Q;
use fock::wedge::Straightener;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::checks::*;

fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn rows(l: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(1usize..=4, 0..4), l)
}

/// (n, l, charges, label, i) with n in 2..=4 and l in 1..=3.
fn crystal_input() -> impl Strategy<Value = (usize, Vec<i64>, Vec<Vec<usize>>, usize)> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(n, l)| (Just(n), prop::collection::vec(-3i64..=3, l), rows(l), 0..n))
}

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config(200, 1))]

    #[test]
    fn bar_conjugation_is_an_involution(terms in prop::collection::vec((-6i64..=6, -5i64..=5), 0..6)) {
        check(laurent_bar_involution(&terms))?;
    }

    #[test]
    fn indexations_are_mutually_inverse(parts in prop::collection::vec(1usize..=9, 0..7), charge in -6i64..=6, n in 1usize..=4, l in 1usize..=4) {
        check(indexation_round_trip(parts, charge, n, l))?;
    }

    #[test]
    fn orbit_walk_meets_the_domain_once(charges in prop::collection::vec(-8i64..=8, 1..=4), word in prop::collection::vec(0usize..4, 0..10), level in 1i64..=4) {
        check(fundamental_domain_unique(&charges, &word, level))?;
    }
}

proptest! {
    #![proptest_config(config(100, 2))]

    #[test]
    fn form_makes_e_and_f_adjoint((n, charges, v, i) in crystal_input(), extra in rows(3)) {
        let l = charges.len();
        let extra = multipartition(&extra[..l]);
        check(adjointness(&charges, n, &multipartition(&v), &extra, i))?;
    }

    #[test]
    fn phi_minus_eps_is_the_pairing((n, charges, v, i) in crystal_input()) {
        check(phi_minus_eps(&multipartition(&v), &charges, n, i))?;
    }

    #[test]
    fn crystal_reflection_identities((n, charges, v, i) in crystal_input()) {
        check(crystal_identities(&multipartition(&v), &charges, n, i))?;
    }

    #[test]
    fn content_survives_charge_reflections(charges in prop::collection::vec(-4i64..=4, 2..=3), content in prop::collection::vec(0usize..=3, 3), word in prop::collection::vec(0usize..3, 0..6)) {
        let l = charges.len();
        let word: Vec<usize> = word.into_iter().map(|g| g % l).collect();
        check(content_invariance(&charges, &content, &word, 3))?;
    }

    #[test]
    fn dotted_pairs_follow_the_charge_action(charges in prop::collection::vec(-4i64..=4, 2..=3), content in prop::collection::vec(0usize..=3, 2), word in prop::collection::vec(0usize..3, 0..6)) {
        let l = charges.len();
        let word: Vec<usize> = word.into_iter().map(|g| g % l).collect();
        check(dotted_pair_transport(&charges, &content, &word, 2))?;
    }

    #[test]
    fn phi_and_psi_match_lattice_and_cones(r in prop::collection::vec(-3i64..=3, 2..=4), x in prop::collection::vec(-4i64..=4, 3), n in 2usize..=4, m in 0i64..=8) {
        let x = &x[..r.len() - 1];
        check(phi_psi(&r, x, n, m))?;
    }
}

proptest! {
    #![proptest_config(config(100, 3))]

    #[test]
    fn weight_spaces_have_sound_bar_and_bases(
        (n, l) in prop_oneof![Just((2usize, 2usize)), Just((3, 2)), Just((2, 3))],
        charges in prop::collection::vec(-2i64..=2, 3),
        label in prop::collection::vec(prop::collection::vec(1usize..=2, 0..=2), 3),
        seeds in (any::<u64>(), any::<u64>()),
    ) {
        let charges = &charges[..l];
        let mp = multipartition(&label[..l]);
        prop_assume!(mp.size() <= 3);
        check(weight_space(charges, &content_of(&mp, charges, n), n, l, seeds))?;
    }
}

proptest! {
    #![proptest_config(config(20, 4))]

    #[test]
    fn heisenberg_operators_move_weight_by_delta(parts in prop::collection::vec(1usize..=4, 0..4), charge in -2i64..=2, m in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)], nl in prop_oneof![Just((2usize, 2usize)), Just((2, 3)), Just((3, 2))]) {
        let st = Straightener::with_global_rules(nl.0, nl.1).unwrap();
        check(b_operator_shift(&st, parts, charge, m))?;
    }

    #[test]
    fn constructive_element_passes_box_audits(b in prop::collection::vec((-6i64..=6, 1i64..=3), 1..=3), seed in any::<u64>()) {
        let b: Vec<Q> = b.into_iter().map(|(p, q)| Q::new(p, q)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        check(constructive_audit(&b, &mut rng))?;
    }
}

#[test]
fn same_sign_heisenberg_operators_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = random_wedge_samples(&mut rng, 20);
    for (n, l) in [(2, 2), (2, 3)] {
        let st = Straightener::with_global_rules(n, l).unwrap();
        heisenberg_same_sign(&st, &samples).unwrap();
    }
}

#[test]
fn gap_bound_sweep() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut applied = 0;
    for _ in 0..50 {
        let (n, l) = if rng.gen_bool(0.5) { (2, 2) } else { (3, 2) };
        let charges = random_charges(&mut rng, l, 6);
        let content: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let i = rng.gen_range(0..l);
        applied += gap_bound_sound(&charges, &content, i, n, l).unwrap() as usize;
    }
    assert!(applied >= 5, "only {applied} instances met the bound");
}
