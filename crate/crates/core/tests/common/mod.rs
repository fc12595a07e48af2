//! Random straight instances and the invariant checks shared by the test targets.
#![allow(dead_code)]

use quiver_gkm::cohomology::{kt_basis, verify_gkm_section};
use quiver_gkm::fixed::{enumerate_fixed_points, initial_parameters, poincare_polynomial};
use quiver_gkm::forest::{ForestSpec, TreeSpec};
use quiver_gkm::grading::{
    alignment_for, check_alignment, expand_grading, is_constructible, pairing, ConstructibleGrading,
};
use quiver_gkm::instance::Instance;
use quiver_gkm::moment::{build_moment_graph, enumerate_mutations, hall_strata};
use quiver_gkm::oracles::brute::{brute_force_fixed_points, BRUTE_FORCE_LIMIT};
use quiver_gkm::quiver::{DimensionVector, Quiver};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverFamily {
    /// Arrows only go from lower to higher vertex numbers.
    Acyclic,
    /// Any arrows between distinct vertices, oriented cycles allowed.
    Cyclic,
}

/// Random quiver on 2..=5 vertices with up to 6 arrows, and a forest of equioriented
/// strings with at most `max_basis` basis vectors. `e` is the dimension vector of a
/// random successor-closed subset, so the Grassmannian is never empty.
pub fn random_straight_instance<R: Rng>(rng: &mut R, family: QuiverFamily, max_basis: usize) -> Instance {
    let n = rng.gen_range(2..=5usize);
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for k in 0..rng.gen_range(1..=6usize) {
        let (s, t) = match family {
            QuiverFamily::Acyclic => {
                let s = rng.gen_range(0..n - 1);
                (s, rng.gen_range(s + 1..n))
            }
            QuiverFamily::Cyclic => {
                let s = rng.gen_range(0..n);
                let mut t = rng.gen_range(0..n - 1);
                if t >= s {
                    t += 1;
                }
                (s, t)
            }
        };
        arrows.push((format!("a{}", k + 1), vertices[s].clone(), vertices[t].clone()));
    }
    let quiver = Quiver::new(vertices.clone(), arrows.clone()).expect("distinct names");

    let mut components = Vec::new();
    let mut suffixes = Vec::new();
    let mut total = 0;
    let wanted = rng.gen_range(1..=5usize);
    while components.len() < wanted && total < max_basis {
        let budget = (max_basis - total).min(4);
        let len = rng.gen_range(1..=budget);
        let mut path = vec![rng.gen_range(0..n)];
        let mut labels: Vec<String> = Vec::new();
        while path.len() < len {
            let here = *path.last().unwrap();
            let options: Vec<usize> = (0..quiver.arrow_count())
                .filter(|&a| quiver.arrow(a).source == here && !path.contains(&quiver.arrow(a).target))
                .collect();
            if options.is_empty() {
                break;
            }
            let a = options[rng.gen_range(0..options.len())];
            labels.push(quiver.arrow(a).id.clone());
            path.push(quiver.arrow(a).target);
        }
        let c = components.len() + 1;
        let ids: Vec<String> = (1..=path.len()).map(|k| format!("c{c}_{k}")).collect();
        components.push(TreeSpec {
            vertices: ids.iter().zip(&path).map(|(id, &v)| (id.clone(), vertices[v].clone())).collect(),
            arrows: labels
                .iter()
                .enumerate()
                .map(|(k, a)| (ids[k].clone(), ids[k + 1].clone(), a.clone()))
                .collect(),
        });
        let keep = rng.gen_range(0..=path.len());
        suffixes.push(path[path.len() - keep..].to_vec());
        total += path.len();
    }
    let mut dims = vec![0; n];
    for s in &suffixes {
        for &v in s {
            dims[v] += 1;
        }
    }
    Instance::new(quiver, &ForestSpec { components }, DimensionVector(dims), None).expect("generated forest is valid")
}

/// Whether the constructed fiber order satisfies SA1 and SA2. Fails exactly when two
/// strands leave one vertex along different arrows.
pub fn is_alignable(inst: &Instance) -> bool {
    match alignment_for(inst, false) {
        Ok(a) => a.sa1_conflicts.is_empty() && check_alignment(&inst.forest, &a.basis, &a.weights).aligned(),
        Err(_) => false,
    }
}

/// Draws until an alignable instance comes up; also returns the number of rejected draws.
pub fn random_alignable_instance<R: Rng>(rng: &mut R, family: QuiverFamily, max_basis: usize) -> (Instance, usize) {
    let mut rejected = 0;
    loop {
        let inst = random_straight_instance(rng, family, max_basis);
        if is_alignable(&inst) {
            return (inst, rejected);
        }
        rejected += 1;
    }
}

/// Checks every straight-case invariant; returns a description of each failure.
pub fn check_invariants(inst: &Instance, experimental: bool) -> Vec<String> {
    let mut failures = Vec::new();
    let f = &inst.forest;
    let align = match alignment_for(inst, experimental) {
        Ok(a) => a,
        Err(e) => return vec![format!("alignment: {e}")],
    };
    let points = enumerate_fixed_points(f, &inst.dims);
    let g = match build_moment_graph(f, &align, &inst.dims) {
        Ok(g) => g,
        Err(e) => return vec![format!("moment graph: {e}")],
    };

    for (x, u) in points.iter().enumerate() {
        let cell = initial_parameters(f, &align.basis, u);
        if g.out_degree(x) != cell.initial_params.len() || cell.initial_params.len() != cell.dimension {
            failures.push(format!(
                "point {x}: out-degree {} initial parameters {} cell dimension {}",
                g.out_degree(x),
                cell.initial_params.len(),
                cell.dimension
            ));
        }
    }

    let p = poincare_polynomial(f, &align.basis, &inst.dims);
    let derivative: u64 = p.iter().enumerate().map(|(k, c)| k as u64 * c).sum();
    if g.edges.len() as u64 != derivative {
        failures.push(format!("{} edges but P'(1) = {derivative}", g.edges.len()));
    }

    if f.len() <= BRUTE_FORCE_LIMIT {
        match brute_force_fixed_points(f, &inst.dims) {
            Ok(brute) if brute == points => {}
            Ok(brute) => failures.push(format!("{} enumerated points, {} by brute force", points.len(), brute.len())),
            Err(e) => failures.push(format!("brute force: {e}")),
        }
    }

    for e in &g.edges {
        match pairing(&align.chi, &e.character) {
            Ok(v) if v > 0 => {}
            Ok(v) => failures.push(format!("edge {} -> {}: pairing {v}", e.source, e.target)),
            Err(err) => failures.push(format!("edge {} -> {}: {err}", e.source, e.target)),
        }
    }

    match kt_basis(&g) {
        Ok(basis) => {
            let nvars = g.chi.gamma.len() + g.chi.nu.len();
            for c in &basis.classes {
                if !verify_gkm_section(&g, &c.section(g.len(), nvars)).is_empty() {
                    failures.push(format!("class {} is not a GKM section", c.base));
                }
            }
        }
        Err(e) => failures.push(format!("KT basis: {e}")),
    }

    for s in hall_strata(f, &points) {
        let dims: std::collections::BTreeSet<usize> =
            s.members.iter().map(|&x| enumerate_mutations(f, &align.basis, &points[x]).len()).collect();
        if dims.len() > 1 {
            failures.push(format!("tangent dimensions {dims:?} on one Hall stratum {:?}", s.members));
        }
    }

    let report = check_alignment(f, &align.basis, &align.weights);
    if !report.attractive() {
        failures.push(format!("AG1 violations {:?}, AG2 violations {:?}", report.ag1, report.ag2));
    }

    match is_constructible(&align.weights, f) {
        Ok(edge) => {
            let g = ConstructibleGrading {
                edge_weights: edge.iter().map(|w| w.unwrap_or(0)).collect(),
                initial_weights: (0..f.component_count()).map(|c| align.weights[f.component_start(c)]).collect(),
            };
            if expand_grading(&g, f) != align.weights {
                failures.push("expanding the recovered grading does not reproduce the weights".into());
            }
        }
        Err(c) => failures.push(format!("constructed grading is not constructible: {c:?}")),
    }
    failures
}
