//! Fixed points of the complete flag variety of C^3 with their cells and permutations.

use quiver_gkm::fixed::{enumerate_fixed_points, initial_parameters, permutation_of_fixed_point, render_permutation};
use quiver_gkm::fixtures;
use quiver_gkm::grading::attractive_aligned;

fn main() {
    let inst = fixtures::flag(3);
    let align = attractive_aligned(&inst).expect("straight fixture");
    for u in enumerate_fixed_points(&inst.forest, &inst.dims) {
        let cell = initial_parameters(&inst.forest, &align.basis, &u);
        let w = permutation_of_fixed_point(&inst, &u).expect("flag shape");
        let params: Vec<String> =
            cell.initial_params.iter().map(|&(j, k)| format!("{}<-{}", inst.forest.id(j), inst.forest.id(k))).collect();
        println!("{} dim {} [{}]", render_permutation(&w), cell.dimension, params.join(" "));
    }
}
