//! Generated instances used by the examples, the tests and the command line.

use crate::forest::{ForestSpec, TreeSpec};
use crate::instance::Instance;
use crate::quiver::{DimensionVector, Quiver};

fn s(x: impl Into<String>) -> String {
    x.into()
}

fn arrow(id: &str, source: &str, target: &str) -> (String, String, String) {
    (s(id), s(source), s(target))
}

/// Complete flag variety of `C^n`: `n` full strings over `1 -> ... -> n-1`, `e = (1, ..., n-1)`.
///
/// Components are declared from the top: component `c` has height `n - c`. Basis ids are
/// `h{height}_{vertex}`.
pub fn flag(n: usize) -> Instance {
    assert!(n >= 2, "flag fixtures need n >= 2");
    let q = Quiver::equioriented_a(n - 1);
    let components = (0..n)
        .map(|c| {
            let h = n - c;
            TreeSpec {
                vertices: (1..n).map(|v| (format!("h{h}_{v}"), v.to_string())).collect(),
                arrows: (1..n - 1).map(|v| (format!("h{h}_{v}"), format!("h{h}_{}", v + 1), format!("a{v}"))).collect(),
            }
        })
        .collect();
    let dims = DimensionVector((1..n).collect());
    Instance::new(q, &ForestSpec { components }, dims, None).expect("flag fixture is valid")
}

/// Two strings over `1 -> 2` with `e = (1, 1)`: the projective line.
pub fn a2_p1() -> Instance {
    let q = Quiver::equioriented_a(2);
    let components = (1..=2)
        .map(|j| TreeSpec {
            vertices: vec![(format!("s{j}_1"), s("1")), (format!("s{j}_2"), s("2"))],
            arrows: vec![(format!("s{j}_1"), format!("s{j}_2"), s("a1"))],
        })
        .collect();
    Instance::new(q, &ForestSpec { components }, DimensionVector(vec![1, 1]), None).expect("valid fixture")
}

/// The projective line fixture with `e = 0`, whose Grassmannian is a point.
pub fn point() -> Instance {
    let mut inst = a2_p1();
    inst.dims = DimensionVector(vec![0, 0]);
    inst
}

/// `C^3 -> C^3 <- C^3` with identity maps over `1 -> 2 <- 3`, `e = (1, 2, 1)`.
pub fn no_gkm_sink() -> Instance {
    let q = Quiver::new(["1", "2", "3"], vec![arrow("a", "1", "2"), arrow("b", "3", "2")]).expect("valid quiver");
    let components = (1..=3)
        .map(|j| TreeSpec {
            vertices: (1..=3).map(|v| (format!("s{j}_{v}"), v.to_string())).collect(),
            arrows: vec![
                (format!("s{j}_1"), format!("s{j}_2"), s("a")),
                (format!("s{j}_3"), format!("s{j}_2"), s("b")),
            ],
        })
        .collect();
    Instance::new(q, &ForestSpec { components }, DimensionVector(vec![1, 2, 1]), None).expect("valid fixture")
}

/// `C^3 <- C^3 -> C^3` with identity maps over `1 <- 2 -> 3`, `e = (2, 1, 2)`.
pub fn no_gkm_source() -> Instance {
    let q = Quiver::new(["1", "2", "3"], vec![arrow("a", "2", "1"), arrow("b", "2", "3")]).expect("valid quiver");
    let components = (1..=3)
        .map(|j| TreeSpec {
            vertices: (1..=3).map(|v| (format!("s{j}_{v}"), v.to_string())).collect(),
            arrows: vec![
                (format!("s{j}_2"), format!("s{j}_1"), s("a")),
                (format!("s{j}_2"), format!("s{j}_3"), s("b")),
            ],
        })
        .collect();
    Instance::new(q, &ForestSpec { components }, DimensionVector(vec![2, 1, 2]), None).expect("valid fixture")
}

/// The Schubert variety of `(3124)` in the flag variety of `C^4`: type A over `1 -> 2 -> 3`
/// enhanced by a vertex `4` with an arrow `2 -> 4`. Two branched components over the
/// enhanced quiver and one full string over `1 -> 2 -> 3`; `e = (1, 2, 3, 1)`.
pub fn x3124() -> Instance {
    let q = Quiver::new(
        ["1", "2", "3", "4"],
        vec![arrow("a1", "1", "2"), arrow("a2", "2", "3"), arrow("a3", "2", "4")],
    )
    .expect("valid quiver");
    let branched = |t: &str| TreeSpec {
        vertices: (1..=4).map(|v| (format!("{t}_{v}"), v.to_string())).collect(),
        arrows: vec![
            (format!("{t}_1"), format!("{t}_2"), s("a1")),
            (format!("{t}_2"), format!("{t}_3"), s("a2")),
            (format!("{t}_2"), format!("{t}_4"), s("a3")),
        ],
    };
    let string = TreeSpec {
        vertices: (1..=3).map(|v| (format!("t3_{v}"), v.to_string())).collect(),
        arrows: vec![(s("t3_1"), s("t3_2"), s("a1")), (s("t3_2"), s("t3_3"), s("a2"))],
    };
    let components = vec![branched("t1"), branched("t2"), string];
    Instance::new(q, &ForestSpec { components }, DimensionVector(vec![1, 2, 3, 1]), None).expect("valid fixture")
}

/// Fixture names accepted by [`by_name`].
pub const NAMES: &[&str] = &["fl_N (N >= 2)", "x3124", "a2_p1", "no_gkm_sink", "no_gkm_source", "point"];

pub fn by_name(name: &str) -> Option<Instance> {
    match name {
        "x3124" => Some(x3124()),
        "a2_p1" => Some(a2_p1()),
        "no_gkm_sink" => Some(no_gkm_sink()),
        "no_gkm_source" => Some(no_gkm_source()),
        "point" => Some(point()),
        _ => {
            let n: usize = name.strip_prefix("fl_")?.parse().ok()?;
            (2..=9).contains(&n).then(|| flag(n))
        }
    }
}

/// All straight fixtures with a nonempty Grassmannian, for property sweeps.
pub fn straight_fixtures() -> Vec<(String, Instance)> {
    vec![
        ("fl_2".into(), flag(2)),
        ("fl_3".into(), flag(3)),
        ("fl_4".into(), flag(4)),
        ("a2_p1".into(), a2_p1()),
        ("point".into(), point()),
    ]
}
