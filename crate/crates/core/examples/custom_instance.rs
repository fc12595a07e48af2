//! Load an instance document (or a fixture name) and run the whole pipeline on it.
//!
//! `cargo run --example custom_instance -- path/to/instance.json`

use quiver_gkm::cohomology::kt_basis;
use quiver_gkm::fixed::poincare_polynomial;
use quiver_gkm::fixtures;
use quiver_gkm::grading::alignment_for;
use quiver_gkm::instance::Instance;
use quiver_gkm::moment::build_moment_graph;
use quiver_gkm::reduction::classify_gkm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "fl_3".into());
    let inst = match fixtures::by_name(&arg) {
        Some(inst) => inst,
        None => Instance::load(std::path::Path::new(&arg))?,
    };
    println!("{}", inst.quiver);
    println!("dim M {} e {}", inst.ambient_dims().render(), inst.dims.render());
    println!("verdict {}", classify_gkm(&inst)?.tag);
    let experimental = !inst.forest.is_straight();
    let align = alignment_for(&inst, experimental)?;
    println!("P = {:?}", poincare_polynomial(&inst.forest, &align.basis, &inst.dims));
    let g = build_moment_graph(&inst.forest, &align, &inst.dims)?;
    println!("{} points, {} edges, Palais-Smale {}", g.len(), g.edges.len(), g.is_palais_smale());
    println!("KT basis unique {}", kt_basis(&g)?.unique);
    Ok(())
}
