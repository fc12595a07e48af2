//! Moment graph of Fl(C^3): edges with their characters, and the DOT rendering.
//!
//! Pass `--dot` to print only the DOT text, e.g. `cargo run --example moment_graph -- --dot | dot -Tsvg`.

use quiver_gkm::fixed::{permutation_of_fixed_point, render_permutation};
use quiver_gkm::fixtures;
use quiver_gkm::grading::attractive_aligned;
use quiver_gkm::moment::build_moment_graph;

fn main() {
    let inst = fixtures::flag(3);
    let align = attractive_aligned(&inst).unwrap();
    let g = build_moment_graph(&inst.forest, &align, &inst.dims).unwrap();
    let label = |x: usize| render_permutation(&permutation_of_fixed_point(&inst, &g.points[x]).unwrap());
    if std::env::args().any(|a| a == "--dot") {
        println!("digraph moment_graph {{");
        for x in 0..g.len() {
            println!("  n{x} [label=\"{}\"];", label(x));
        }
        for e in &g.edges {
            println!("  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.character.render(&inst.quiver, &align.basis.supported));
        }
        println!("}}");
        return;
    }
    println!("cocharacter {}", align.chi);
    for e in &g.edges {
        let m = &e.mutation;
        println!(
            "{} -> {}  {}  (vertex {}, k = {}, l = {})",
            label(e.source),
            label(e.target),
            e.character.render(&inst.quiver, &align.basis.supported),
            inst.quiver.vertex_label(m.vertex),
            m.k_pos + 1,
            m.l_pos + 1
        );
    }
    println!("{} edges, Palais-Smale: {}", g.edges.len(), g.is_palais_smale());
}
