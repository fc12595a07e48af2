mod common;

use common::{random_straight_instance, QuiverFamily};
use quiver_gkm::fixed::enumerate_fixed_points;
use quiver_gkm::fixtures;
use quiver_gkm::instance::Instance;
use quiver_gkm::reduction::{
    classify_gkm, collapse_arrow, collapsible_arrows, flexible_moves, reduce, remove_vertex, VerdictTag,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Applies removals and collapses in a random order until neither applies.
fn reduce_randomly(inst: &Instance, rng: &mut ChaCha8Rng) -> Instance {
    let mut cur = inst.clone();
    loop {
        let moves = flexible_moves(&cur).expect("feasible");
        let arrows = collapsible_arrows(&cur);
        if moves.is_empty() && arrows.is_empty() {
            return cur;
        }
        let pick = rng.gen_range(0..moves.len() + arrows.len());
        cur = if pick < moves.len() {
            let (v, forced) = &moves[pick];
            remove_vertex(&cur, *v, forced).expect("removal").0
        } else {
            collapse_arrow(&cur, arrows[pick - moves.len()]).expect("collapse").0
        };
    }
}

fn sorted_dims(inst: &Instance) -> (Vec<usize>, Vec<usize>) {
    let mut e = inst.dims.0.clone();
    let mut m = inst.ambient_dims().0;
    e.sort();
    m.sort();
    (e, m)
}

#[test]
fn reduction_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..150 {
        let family = if k % 2 == 0 { QuiverFamily::Acyclic } else { QuiverFamily::Cyclic };
        let inst = random_straight_instance(&mut rng, family, 10);
        let (canonical, _) = reduce(&inst).expect("reduce");
        let points = enumerate_fixed_points(&inst.forest, &inst.dims).len();
        assert_eq!(enumerate_fixed_points(&canonical.forest, &canonical.dims).len(), points);
        for _ in 0..3 {
            let other = reduce_randomly(&inst, &mut rng);
            assert_eq!(sorted_dims(&other), sorted_dims(&canonical), "instance {k}");
            assert_eq!(other.forest.len(), canonical.forest.len());
            assert_eq!(enumerate_fixed_points(&other.forest, &other.dims).len(), points);
        }
    }
}

#[test]
fn random_straight_instances_classify_as_gkm() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let inst = random_straight_instance(&mut rng, QuiverFamily::Cyclic, 12);
        let v = classify_gkm(&inst).unwrap();
        assert!(matches!(v.tag, VerdictTag::GkmStraight | VerdictTag::PointOrEmpty), "{}", v.tag);
        assert!(v.witness.is_none());
    }
}

#[test]
fn fixture_verdicts() {
    let expect = [
        ("fl_4", VerdictTag::GkmStraight),
        ("a2_p1", VerdictTag::GkmStraight),
        ("point", VerdictTag::PointOrEmpty),
        ("no_gkm_sink", VerdictTag::NoGkm),
        ("no_gkm_source", VerdictTag::NoGkm),
    ];
    for (name, tag) in expect {
        let v = classify_gkm(&fixtures::by_name(name).unwrap()).unwrap();
        assert_eq!(v.tag, tag, "{name}");
    }
}

#[test]
fn removing_an_inflexible_vertex_keeps_the_fixed_points() {
    let inst = fixtures::x3124();
    let moves = flexible_moves(&inst).unwrap();
    assert_eq!(moves.len(), 1);
    let (reduced, step) = remove_vertex(&inst, moves[0].0, &moves[0].1).unwrap();
    assert_eq!(step.to_string(), "remove vertex 3: forced in [t1_3, t2_3, t3_3], forced out []");
    assert_eq!(
        enumerate_fixed_points(&reduced.forest, &reduced.dims).len(),
        enumerate_fixed_points(&inst.forest, &inst.dims).len()
    );
}

#[test]
fn collapsing_an_identity_arrow() {
    let mut inst = fixtures::a2_p1();
    inst.dims.0 = vec![1, 1];
    assert_eq!(collapsible_arrows(&inst), vec![0]);
    let (reduced, _) = collapse_arrow(&inst, 0).unwrap();
    assert_eq!(reduced.quiver.vertex_count(), 1);
    assert_eq!(reduced.forest.len(), 2);
    assert_eq!(enumerate_fixed_points(&reduced.forest, &reduced.dims).len(), 2);
}
