mod common;

use common::{check_invariants, random_alignable_instance, random_straight_instance, QuiverFamily};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use quiver_gkm::fixed::{enumerate_fixed_points, evaluate, poincare_polynomial};
use quiver_gkm::grading::{alignment_for, expand_grading, is_constructible, ConstructibleGrading};
use quiver_gkm::moment::{build_moment_graph, tangent_dimension};
use quiver_gkm::oracles::finite_field::count_points_fq;
use quiver_gkm::oracles::hom::hom_dim_triples;
use quiver_gkm::poly::Poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family(cyclic: bool) -> QuiverFamily {
    if cyclic {
        QuiverFamily::Cyclic
    } else {
        QuiverFamily::Acyclic
    }
}

fn small_poly(nvars: usize, terms: &[(Vec<u32>, i64)]) -> Poly {
    Poly::from_terms(
        nvars,
        terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(BigInt::from(*c)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alignable_instances_satisfy_all_invariants(seed in any::<u64>(), cyclic in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (inst, _) = random_alignable_instance(&mut rng, family(cyclic), 12);
        let failures = check_invariants(&inst, false);
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn tangent_dimension_matches_hom_triples(seed in any::<u64>(), cyclic in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (inst, _) = random_alignable_instance(&mut rng, family(cyclic), 10);
        let align = alignment_for(&inst, false).unwrap();
        let g = build_moment_graph(&inst.forest, &align, &inst.dims).unwrap();
        for (x, u) in g.points.iter().enumerate() {
            let t = tangent_dimension(&inst.forest, &align.basis, u);
            prop_assert_eq!(t, g.degree(x));
            prop_assert_eq!(t, hom_dim_triples(&inst.forest, u).unwrap());
        }
    }

    #[test]
    fn point_count_over_f2_is_the_poincare_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (inst, _) = random_alignable_instance(&mut rng, QuiverFamily::Cyclic, 8);
        let align = alignment_for(&inst, false).unwrap();
        let p = poincare_polynomial(&inst.forest, &align.basis, &inst.dims);
        if let Ok(r) = count_points_fq(&inst.forest, &inst.dims, 2, 200_000) {
            prop_assert_eq!(r.count, evaluate(&p, 2));
        }
        prop_assert_eq!(p.iter().sum::<u64>() as usize, enumerate_fixed_points(&inst.forest, &inst.dims).len());
    }

    #[test]
    fn constructible_gradings_round_trip(seed in any::<u64>(), weights in prop::collection::vec(-20i64..20, 6), starts in prop::collection::vec(-50i64..50, 6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_straight_instance(&mut rng, QuiverFamily::Cyclic, 12);
        let f = &inst.forest;
        let g = ConstructibleGrading {
            edge_weights: weights[..inst.quiver.arrow_count()].to_vec(),
            initial_weights: (0..f.component_count()).map(|c| starts[c % starts.len()]).collect(),
        };
        let wt = expand_grading(&g, f);
        let edge = is_constructible(&wt, f).unwrap();
        for (a, w) in edge.iter().enumerate() {
            match w {
                Some(w) => prop_assert_eq!(*w, g.edge_weights[a]),
                None => prop_assert!(f.arrows().iter().all(|x| x.over != a)),
            }
        }
    }

    #[test]
    fn division_by_a_linear_form(
        a in prop::collection::vec(-3i64..=3, 3),
        q in prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4), 0..5),
        r in prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4), 0..4),
    ) {
        prop_assume!(a.iter().any(|&x| x != 0));
        let alpha = Poly::linear(&a);
        let q = small_poly(3, &q.into_iter().map(|((x, y, z), c)| (vec![x, y, z], c)).collect::<Vec<_>>());
        let r = small_poly(3, &r.into_iter().map(|((x, y, z), c)| (vec![x, y, z], c)).collect::<Vec<_>>());
        let p = &(&q * &alpha) + &r;
        let (quot, rem) = p.divide_linear(&alpha).unwrap();
        prop_assert_eq!(&(&quot * &alpha) + &rem, p.clone());
        let exact = (&q * &alpha).exact_divide_linear(&alpha).unwrap();
        prop_assert_eq!(exact, Some(q.clone()));
        prop_assert_eq!(rem.reduce_mod_linear(&alpha).unwrap(), rem.clone());
    }
}
