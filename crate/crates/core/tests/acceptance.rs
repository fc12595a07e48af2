//! Acceptance criteria 1-7, one line each. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;

use common::{check_invariants, random_alignable_instance, QuiverFamily};
use quiver_gkm::cohomology::{kt_basis, verify_gkm_section, verify_kt_class};
use quiver_gkm::fixed::{
    enumerate_fixed_points, evaluate, permutation_of_fixed_point, poincare_polynomial,
};
use quiver_gkm::fixtures;
use quiver_gkm::grading::alignment_for;
use quiver_gkm::instance::Instance;
use quiver_gkm::moment::{build_moment_graph, tangent_dimension, MomentGraph};
use quiver_gkm::oracles::bruhat::{bruhat_leq, differ_by_transposition, inversions, permutations};
use quiver_gkm::oracles::finite_field::{count_points_fq, DEFAULT_BUDGET};
use quiver_gkm::oracles::hom::hom_dim_triples;
use quiver_gkm::poly::Poly;
use quiver_gkm::reduction::{classify_gkm, VerdictTag, WitnessKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_of(inst: &Instance, experimental: bool) -> Result<MomentGraph, String> {
    let align = alignment_for(inst, experimental).map_err(|e| e.to_string())?;
    build_moment_graph(&inst.forest, &align, &inst.dims).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let inst = fixtures::flag(4);
    let points = enumerate_fixed_points(&inst.forest, &inst.dims);
    ensure(points.len() == 24, || format!("{} fixed points", points.len()))?;
    let mut perms = points
        .iter()
        .map(|u| permutation_of_fixed_point(&inst, u).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    perms.sort();
    ensure(perms == permutations(4), || "permutation map is not a bijection onto S4".into())?;
    Ok("24 fixed points, bijective onto S4".into())
}

fn criterion_2() -> Check {
    let inst = fixtures::flag(4);
    let align = alignment_for(&inst, false).map_err(|e| e.to_string())?;
    let p = poincare_polynomial(&inst.forest, &align.basis, &inst.dims);
    ensure(p == [1, 3, 5, 6, 5, 3, 1], || format!("Poincaré coefficients {p:?}"))?;
    let c2 = count_points_fq(&inst.forest, &inst.dims, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?.count;
    let c3 = count_points_fq(&inst.forest, &inst.dims, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?.count;
    ensure(c2 == 315, || format!("{c2} points over F_2"))?;
    ensure(c3 == evaluate(&p, 3), || format!("{c3} points over F_3, P(3) = {}", evaluate(&p, 3)))?;
    Ok(format!("P = {p:?}, |X(F_2)| = {c2}, |X(F_3)| = {c3} = P(3)"))
}

fn criterion_3() -> Check {
    let inst = fixtures::flag(4);
    let align = alignment_for(&inst, false).map_err(|e| e.to_string())?;
    let g = build_moment_graph(&inst.forest, &align, &inst.dims).map_err(|e| e.to_string())?;
    ensure(g.edges.len() == 72, || format!("{} edges", g.edges.len()))?;
    for (x, u) in g.points.iter().enumerate() {
        let t = tangent_dimension(&inst.forest, &align.basis, u);
        let h = hom_dim_triples(&inst.forest, u).map_err(|e| e.to_string())?;
        ensure(g.degree(x) == 6 && t == 6 && h == 6, || format!("point {x}: degree {} tangent {t} hom {h}", g.degree(x)))?;
    }
    let perms: Vec<Vec<usize>> =
        g.points.iter().map(|u| permutation_of_fixed_point(&inst, u).expect("flag shape")).collect();
    // Edges leave the point with the larger cell, so a path x -> y means perm(y) <= perm(x).
    let reach = g.partial_order();
    for x in 0..g.len() {
        for y in 0..g.len() {
            ensure(reach[x][y] == bruhat_leq(&perms[y], &perms[x]), || {
                format!("order differs from Bruhat order at {:?}, {:?}", perms[x], perms[y])
            })?;
        }
    }
    for e in &g.edges {
        let (v, w) = (&perms[e.source], &perms[e.target]);
        ensure(differ_by_transposition(v, w) && inversions(v) > inversions(w), || {
            format!("edge {v:?} -> {w:?} is not a Bruhat graph edge")
        })?;
    }
    Ok("72 edges, degree = tangent = Hom = 6 at all 24 points, order = Bruhat order".into())
}

fn criterion_4() -> Check {
    let mut parts = Vec::new();
    for (name, inst, kind) in [
        ("no_gkm_sink", fixtures::no_gkm_sink(), WitnessKind::TwoSink),
        ("no_gkm_source", fixtures::no_gkm_source(), WitnessKind::TwoSource),
    ] {
        let v = classify_gkm(&inst).map_err(|e| e.to_string())?;
        ensure(v.tag == VerdictTag::NoGkm, || format!("{name}: verdict {}", v.tag))?;
        let w = v.witness.ok_or_else(|| format!("{name}: no witness"))?;
        ensure(w.kind == kind, || format!("{name}: witness {w}"))?;
        parts.push(format!("{name}: NO_GKM ({w})"));
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Check {
    let inst = fixtures::a2_p1();
    let align = alignment_for(&inst, false).map_err(|e| e.to_string())?;
    let g = build_moment_graph(&inst.forest, &align, &inst.dims).map_err(|e| e.to_string())?;
    ensure(g.len() == 2 && g.edges.len() == 1, || format!("{} points, {} edges", g.len(), g.edges.len()))?;
    let label = g.edges[0].character.render(&inst.quiver, &align.basis.supported);
    ensure(label == "+e2 -e1", || format!("edge label {label}"))?;
    let p = poincare_polynomial(&inst.forest, &align.basis, &inst.dims);
    ensure(p == [1, 1], || format!("Poincaré coefficients {p:?}"))?;
    for q in [2, 3] {
        let c = count_points_fq(&inst.forest, &inst.dims, q, DEFAULT_BUDGET).map_err(|e| e.to_string())?.count;
        ensure(c == q as u128 + 1, || format!("{c} points over F_{q}"))?;
    }
    let basis = kt_basis(&g).map_err(|e| e.to_string())?;
    let nvars = 3;
    let alpha = Poly::linear(&[-1, 1, 0]);
    let one = Poly::one(nvars);
    let zero = Poly::zero(nvars);
    let reach = g.partial_order();
    let (top, bottom) = (g.edges[0].source, g.edges[0].target);
    for c in &basis.classes {
        verify_kt_class(&g, &reach, c).map_err(|e| e.to_string())?;
        let s = c.section(g.len(), nvars);
        ensure(verify_gkm_section(&g, &s).is_empty(), || format!("class {} fails the edge congruence", c.base))?;
        let expected = if c.base == bottom { [one.clone(), one.clone()] } else { [alpha.clone(), zero.clone()] };
        let got = [s[top].clone(), s[bottom].clone()];
        ensure(got == expected, || format!("class {} has components {} and {}", c.base, got[0], got[1]))?;
    }
    Ok("2 points, edge +e2 -e1, P = [1, 1], counts 3 and 4, KT basis {(1,1), (e2-e1,0)}".into())
}

fn criterion_6() -> Check {
    let inst = fixtures::x3124();
    let align = alignment_for(&inst, true).map_err(|e| e.to_string())?;
    let g = graph_of(&inst, true)?;
    ensure(g.len() == 4, || format!("{} fixed points", g.len()))?;
    let p = poincare_polynomial(&inst.forest, &align.basis, &inst.dims);
    ensure(p == [1, 2, 1], || format!("Poincaré coefficients {p:?}"))?;
    let c2 = count_points_fq(&inst.forest, &inst.dims, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?.count;
    ensure(c2 == 9, || format!("{c2} points over F_2"))?;
    ensure(g.is_palais_smale(), || "moment graph is not Palais-Smale".into())?;
    let basis = kt_basis(&g).map_err(|e| e.to_string())?;
    ensure(basis.unique, || "KT basis not unique".into())?;
    let below = permutations(4).iter().filter(|w| bruhat_leq(w, &[3, 1, 2, 4])).count();
    ensure(below == g.len(), || format!("{below} permutations below 3124"))?;
    Ok("4 points = |{w <= 3124}|, P = [1, 2, 1], |X(F_2)| = 9, Palais-Smale, unique KT basis".into())
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (name, inst) in fixtures::straight_fixtures() {
        let failures = check_invariants(&inst, false);
        ensure(failures.is_empty(), || format!("{name}: {}", failures.join("; ")))?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rejected = 0;
    for k in 0..200 {
        let family = if k % 2 == 0 { QuiverFamily::Acyclic } else { QuiverFamily::Cyclic };
        let (inst, r) = random_alignable_instance(&mut rng, family, 12);
        rejected += r;
        let failures = check_invariants(&inst, false);
        ensure(failures.is_empty(), || format!("random instance {k}: {}\n{}", failures.join("; "), inst.to_json_string()))?;
    }
    Ok(format!("{checked} fixtures and 200 random alignable instances pass ({rejected} non-alignable draws skipped)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("Fl4 fixed points and permutations", criterion_1),
        ("Fl4 Poincaré polynomial and point counts", criterion_2),
        ("Fl4 moment graph, tangent spaces, Bruhat order", criterion_3),
        ("two-sink and two-source counterexamples", criterion_4),
        ("A2 projective line", criterion_5),
        ("X3124 tree instance", criterion_6),
        ("property suite", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
