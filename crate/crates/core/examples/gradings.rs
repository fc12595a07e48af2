//! The attractive grading built for a straight forest over a quiver with two arrows out of one vertex.

use quiver_gkm::forest::{ForestSpec, TreeSpec};
use quiver_gkm::grading::{attractive_aligned, check_alignment, is_constructible};
use quiver_gkm::instance::Instance;
use quiver_gkm::quiver::{DimensionVector, Quiver};

fn string(ids: &[(&str, &str)], arrows: &[&str]) -> TreeSpec {
    TreeSpec {
        vertices: ids.iter().map(|(b, v)| (b.to_string(), v.to_string())).collect(),
        arrows: arrows.iter().enumerate().map(|(k, a)| (ids[k].0.to_string(), ids[k + 1].0.to_string(), a.to_string())).collect(),
    }
}

fn main() {
    let q = Quiver::new(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "4")].map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )
    .unwrap();
    let forest = ForestSpec {
        components: vec![
            string(&[("x1", "1"), ("x2", "2"), ("x3", "3")], &["a", "b"]),
            string(&[("y1", "2"), ("y2", "3")], &["b"]),
            string(&[("z1", "1"), ("z2", "4")], &["c"]),
            string(&[("w1", "3")], &[]),
        ],
    };
    let inst = Instance::new(q, &forest, DimensionVector(vec![1, 1, 2, 1]), None).unwrap();
    let align = attractive_aligned(&inst).unwrap();
    println!("cocharacter {}", align.chi);
    for (i, fib) in align.basis.fiber_order.iter().enumerate() {
        let row: Vec<String> = fib.iter().map(|&b| format!("{}:{}", inst.forest.id(b), align.weights[b])).collect();
        println!("vertex {}: {}", inst.quiver.vertex_label(i), row.join(" < "));
    }
    println!("arrow weights {:?}", is_constructible(&align.weights, &inst.forest).unwrap());
    let report = check_alignment(&inst.forest, &align.basis, &align.weights);
    println!("attractive {}, aligned {}", report.attractive(), report.aligned());
    for c in &align.sa1_conflicts {
        println!("note: {c}");
    }
}
