//! Classify every built-in fixture and print the reduction trace.

use quiver_gkm::fixtures;
use quiver_gkm::reduction::classify_gkm;

fn main() {
    for name in ["fl_4", "x3124", "a2_p1", "no_gkm_sink", "no_gkm_source", "point"] {
        let inst = fixtures::by_name(name).expect("known fixture");
        let verdict = classify_gkm(&inst).expect("feasible fixture");
        println!("{name}: {}", verdict.tag);
        if let Some(w) = &verdict.witness {
            println!("  witness {w}");
        }
        for step in &verdict.trace {
            println!("  {step}");
        }
    }
}
