//! The Schubert variety X_3124 realized by a tree module, compared with the Bruhat interval below 3124.

use quiver_gkm::cohomology::kt_basis;
use quiver_gkm::fixed::poincare_polynomial;
use quiver_gkm::fixtures;
use quiver_gkm::grading::component_aligned;
use quiver_gkm::moment::build_moment_graph;
use quiver_gkm::oracles::bruhat::{bruhat_leq, inversions, permutations};

fn main() {
    let inst = fixtures::x3124();
    let align = component_aligned(&inst).unwrap();
    let g = build_moment_graph(&inst.forest, &align, &inst.dims).unwrap();
    let below: Vec<Vec<usize>> = permutations(4).into_iter().filter(|w| bruhat_leq(w, &[3, 1, 2, 4])).collect();
    let mut lengths = vec![0u64; 3];
    for w in &below {
        lengths[inversions(w)] += 1;
    }
    println!("fixed points {}, permutations below 3124 {}", g.len(), below.len());
    println!("P = {:?}, length profile {lengths:?}", poincare_polynomial(&inst.forest, &align.basis, &inst.dims));
    println!("edges {}, Palais-Smale {}", g.edges.len(), g.is_palais_smale());
    println!("KT basis unique {}", kt_basis(&g).unwrap().unique);
}
