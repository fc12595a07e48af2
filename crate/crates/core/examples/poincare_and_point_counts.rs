//! Poincaré polynomials from cell dimensions, compared with point counts over F_p.

use quiver_gkm::fixed::{evaluate, poincare_polynomial};
use quiver_gkm::fixtures;
use quiver_gkm::grading::alignment_for;
use quiver_gkm::oracles::finite_field::{count_points_fq, DEFAULT_BUDGET};

fn main() {
    for (name, experimental) in [("fl_3", false), ("fl_4", false), ("a2_p1", false), ("x3124", true)] {
        let inst = fixtures::by_name(name).unwrap();
        let align = alignment_for(&inst, experimental).unwrap();
        let p = poincare_polynomial(&inst.forest, &align.basis, &inst.dims);
        println!("{name}: P = {p:?}");
        for q in [2, 3] {
            let count = count_points_fq(&inst.forest, &inst.dims, q, DEFAULT_BUDGET).unwrap();
            println!("  p = {q}: P(p) = {}, counted {} of {} subspace tuples", evaluate(&p, q), count.count, count.enumerated);
        }
    }
}
