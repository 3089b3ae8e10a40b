use fock::compare::{
    bound_instance, gamma_graph, random_reflection_instances, verify_theorem1, verify_theorem2, verify_theorem3,
    CompareError, FamilyOptions,
};
use fock::partitions::{content_vector, Multipartition};
use fock::weights::weight_from_content;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn weight_reflection_reference() {
    let ch = [1, 0];
    let w = weight_from_content(&ch, 3, &[2, 3, 1]);
    let rep = verify_theorem1(&ch, &w, 2, 3, 2).unwrap();
    assert!(rep.routes_agree);
    assert!(rep.verified, "{}", serde_json::to_string_pretty(&rep).unwrap());
    assert_eq!(rep.dimension, 8);
}

#[test]
fn weight_reflection_rejects_crossable_wall() {
    // content (2,3,1) can be raised by α_1
    let ch = [1, 0];
    let w = weight_from_content(&ch, 3, &[2, 3, 1]);
    assert!(matches!(verify_theorem1(&ch, &w, 1, 3, 2), Err(CompareError::HypothesisFailed(_))));
}

#[test]
fn weight_reflection_random_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases = random_reflection_instances(2, 2, 20, 4, &mut rng);
    assert_eq!(cases.len(), 20);
    for (ch, content, i) in cases {
        let w = weight_from_content(&ch, 2, &content);
        let rep = verify_theorem1(&ch, &w, i, 2, 2).unwrap();
        assert!(rep.verified, "{ch:?} {content:?} {i}");
    }
}

#[test]
fn charge_reflection_reference() {
    let ch = [0, 2, -1];
    let w = weight_from_content(&ch, 2, &[1, 1]);
    let rep = verify_theorem2(&ch, &w, 2, 2, 3).unwrap();
    assert_eq!(rep.target_charges, vec![0, -1, 2]);
    assert!(rep.verified, "{}", serde_json::to_string_pretty(&rep).unwrap());
}

#[test]
fn gap_bound_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    use rand::Rng;
    let mut holds = 0;
    for _ in 0..50 {
        let ch: Vec<i64> = (0..2).map(|_| rng.gen_range(-6..=6)).collect();
        let content: Vec<usize> = (0..2).map(|_| rng.gen_range(0..=2)).collect();
        let i = rng.gen_range(0..2);
        let b = bound_instance(&ch, &content, i, 2, 2).unwrap();
        holds += b.bound_holds as usize;
        assert!(b.sound(), "{b:?}");
    }
    assert!(holds > 0);
}

#[test]
fn stabilization_reference() {
    let opts = FamilyOptions { conjectured_threshold: true, force: false };
    let rep = verify_theorem3(&[1, 0], &[1, 1, 1], (1, 2), 3, 2, &opts).unwrap();
    assert_eq!(rep.constants.big_n, 30);
    assert_eq!(rep.constants.n_prime, 3);
    assert_eq!(rep.steps.len(), 1);
    assert!(rep.verified, "{}", serde_json::to_string_pretty(&rep).unwrap());
}

#[test]
fn stabilization_fails_below_threshold() {
    let opts = FamilyOptions { conjectured_threshold: true, force: true };
    let rep = verify_theorem3(&[1, 0], &[1, 1, 1], (0, 1), 3, 2, &opts).unwrap();
    assert!(!rep.verified);
    let search = rep.steps[0].search.as_ref().unwrap();
    assert_eq!(search.nonzero_counts, (21, 22));
    assert!(search.permutation.is_none());
}

#[test]
fn component_pairs_have_similar_bases() {
    // arrows of Γ(M) with M above the gap bound: the charge reflection applies along each
    let g = gamma_graph(&[1, 0], 6, 16, 3);
    let label: Multipartition = "((1),(1))".parse().unwrap();
    let mut checked = 0;
    for &(a, _, i) in g.edges.iter().take(5) {
        let s = &g.vertices[a];
        let w = weight_from_content(s, 3, &content_vector(&label, s, 3));
        let rep = verify_theorem2(s, &w, i, 3, 2).unwrap();
        assert!(rep.verified);
        checked += 1;
    }
    assert_eq!(checked, 5);
}
