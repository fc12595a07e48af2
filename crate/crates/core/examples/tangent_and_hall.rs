//! Tangent dimensions from mutations next to the Hom(U, M/U) triple count, grouped by Hall strata.

use quiver_gkm::fixed::enumerate_fixed_points;
use quiver_gkm::fixtures;
use quiver_gkm::grading::attractive_aligned;
use quiver_gkm::moment::{hall_strata, tangent_dimension};
use quiver_gkm::oracles::hom::hom_dim_triples;

fn main() {
    let mut inst = fixtures::flag(4);
    // Gr(2, 4) inside the middle space only.
    inst.dims.0 = vec![0, 2, 4];
    let f = &inst.forest;
    let align = attractive_aligned(&inst).unwrap();
    let points = enumerate_fixed_points(f, &inst.dims);
    for s in hall_strata(f, &points) {
        println!("U = {}, M/U = {}", s.sub.render(&inst.quiver), s.quotient.render(&inst.quiver));
        for &x in &s.members {
            let u = &points[x];
            println!(
                "  {{{}}}: tangent {} hom {}",
                u.ids(f).join(","),
                tangent_dimension(f, &align.basis, u),
                hom_dim_triples(f, u).unwrap()
            );
        }
    }
}
