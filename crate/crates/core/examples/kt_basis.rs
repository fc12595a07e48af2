//! Knutson-Tao classes of P^1 and Fl(C^3), checked against the edge congruences.

use quiver_gkm::cohomology::{kt_basis, variable_names, verify_gkm_section};
use quiver_gkm::fixtures;
use quiver_gkm::grading::attractive_aligned;
use quiver_gkm::moment::build_moment_graph;

fn main() {
    for name in ["a2_p1", "fl_3"] {
        let inst = fixtures::by_name(name).unwrap();
        let align = attractive_aligned(&inst).unwrap();
        let g = build_moment_graph(&inst.forest, &align, &inst.dims).unwrap();
        let names = variable_names(&g, &inst.quiver);
        let basis = kt_basis(&g).unwrap();
        println!("{name}: {} classes, unique {}", basis.classes.len(), basis.unique);
        for c in &basis.classes {
            let bad = verify_gkm_section(&g, &c.section(g.len(), names.len()));
            println!("  class at {} (degree {}), congruences hold: {}", c.base, c.degree, bad.is_empty());
            for (y, p) in &c.components {
                println!("    {y}: {}", p.render(&names));
            }
        }
    }
}
