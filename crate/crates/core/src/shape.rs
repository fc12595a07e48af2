//! Isomorphism types of coefficient forests.
//!
//! A component's shape is its tree with basis ids forgotten. Because of the
//! winding condition, a label-preserving isomorphism between two components
//! is determined by the image of one vertex, so breadth-first relabeling
//! from a root gives a complete invariant once minimized over roots.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::forest::CoefficientForest;
use crate::quiver::Quiver;

/// One entry per vertex in breadth-first order. The root has `parent == None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeNode {
    pub parent: Option<(usize, Direction, usize)>,
    pub over: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The coefficient arrow points away from the parent.
    Out,
    /// The coefficient arrow points towards the parent.
    In,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentShape {
    pub nodes: Vec<ShapeNode>,
}

impl ComponentShape {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Renders paths as `1 -a-> 2 -b-> 3`, other trees as a node list.
    pub fn render(&self, q: &Quiver) -> String {
        let is_forward_path = self
            .nodes
            .iter()
            .enumerate()
            .skip(1)
            .all(|(i, n)| matches!(n.parent, Some((p, Direction::Out, _)) if p + 1 == i));
        if is_forward_path {
            let mut out = q.vertex_label(self.nodes[0].over).to_string();
            for n in &self.nodes[1..] {
                let (_, _, a) = n.parent.expect("non-root");
                out.push_str(&format!(" -{}-> {}", q.arrow(a).id, q.vertex_label(n.over)));
            }
            return out;
        }
        let parts: Vec<String> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| match n.parent {
                None => format!("v{i}@{}", q.vertex_label(n.over)),
                Some((p, Direction::Out, a)) => format!("v{p}-{}->v{i}@{}", q.arrow(a).id, q.vertex_label(n.over)),
                Some((p, Direction::In, a)) => format!("v{p}<-{}-v{i}@{}", q.arrow(a).id, q.vertex_label(n.over)),
            })
            .collect();
        format!("tree[{}]", parts.join(", "))
    }
}

/// Multiset of component shapes, stored sorted with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ForestIsoType {
    pub shapes: Vec<(ComponentShape, usize)>,
}

impl ForestIsoType {
    pub fn component_count(&self) -> usize {
        self.shapes.iter().map(|(_, m)| m).sum()
    }

    pub fn basis_count(&self) -> usize {
        self.shapes.iter().map(|(s, m)| s.len() * m).sum()
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.shapes.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .shapes
            .iter()
            .map(|(s, m)| if *m == 1 { s.render(q) } else { format!("{m} x ({})", s.render(q)) })
            .collect();
        parts.join(" + ")
    }
}

fn encode_from(f: &CoefficientForest, root: usize) -> ComponentShape {
    let mut order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut nodes = vec![ShapeNode { parent: None, over: f.over(root) }];
    order.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let mut steps: Vec<(Direction, usize, usize)> = f
            .outgoing(x)
            .map(|a| (Direction::Out, a.over, a.target))
            .chain(f.incoming(x).map(|a| (Direction::In, a.over, a.source)))
            .collect();
        steps.sort_unstable();
        for (dir, a, n) in steps {
            if order.contains_key(&n) {
                continue;
            }
            order.insert(n, nodes.len());
            nodes.push(ShapeNode { parent: Some((order[&x], dir, a)), over: f.over(n) });
            queue.push_back(n);
        }
    }
    ComponentShape { nodes }
}

/// Canonical shape of component `c`.
pub fn component_shape(f: &CoefficientForest, c: usize) -> ComponentShape {
    let members = &f.components()[c];
    let min_over = members.iter().map(|&b| f.over(b)).min().expect("components are nonempty");
    members
        .iter()
        .copied()
        .filter(|&b| f.over(b) == min_over)
        .map(|b| encode_from(f, b))
        .min()
        .expect("at least one root")
}

pub fn iso_type(f: &CoefficientForest) -> ForestIsoType {
    let mut counts: BTreeMap<ComponentShape, usize> = BTreeMap::new();
    for c in 0..f.component_count() {
        *counts.entry(component_shape(f, c)).or_default() += 1;
    }
    ForestIsoType { shapes: counts.into_iter().collect() }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Out => "out",
            Direction::In => "in",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{ForestSpec, TreeSpec};

    fn string(prefix: &str, n: usize) -> TreeSpec {
        TreeSpec {
            vertices: (1..=n).map(|i| (format!("{prefix}{i}"), i.to_string())).collect(),
            arrows: (1..n).map(|i| (format!("{prefix}{i}"), format!("{prefix}{}", i + 1), format!("a{i}"))).collect(),
        }
    }

    #[test]
    fn identical_strings_collapse_to_one_shape() {
        let q = Quiver::equioriented_a(2);
        let f = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![string("x", 2), string("y", 2)] })
            .unwrap();
        let t = iso_type(&f);
        assert_eq!(t.shapes.len(), 1);
        assert_eq!(t.shapes[0].1, 2);
        assert_eq!(t.render(&q), "2 x (1 -a1-> 2)");
    }

    #[test]
    fn invariant_under_renaming_and_permutation() {
        let q = Quiver::equioriented_a(3);
        let mut short = string("s", 2);
        short.vertices[0].0 = "zz".into();
        short.arrows[0].0 = "zz".into();
        let a = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![string("x", 3), short.clone()] })
            .unwrap();
        let b = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![short, string("p", 3)] }).unwrap();
        assert_eq!(iso_type(&a), iso_type(&b));
        let c = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![string("x", 3), string("y", 3)] })
            .unwrap();
        assert_ne!(iso_type(&a), iso_type(&c));
    }

    #[test]
    fn tree_shape_is_root_independent() {
        let q = Quiver::new(
            ["1", "2", "3"],
            vec![("a".to_string(), "1".to_string(), "2".to_string()), ("b".to_string(), "3".to_string(), "2".to_string())],
        )
        .unwrap();
        let t1 = TreeSpec {
            vertices: vec![("x".into(), "1".into()), ("y".into(), "2".into()), ("z".into(), "3".into())],
            arrows: vec![("x".into(), "y".into(), "a".into()), ("z".into(), "y".into(), "b".into())],
        };
        let t2 = TreeSpec {
            vertices: vec![("z".into(), "3".into()), ("y".into(), "2".into()), ("x".into(), "1".into())],
            arrows: vec![("z".into(), "y".into(), "b".into()), ("x".into(), "y".into(), "a".into())],
        };
        let f1 = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![t1] }).unwrap();
        let f2 = CoefficientForest::from_spec(&q, &ForestSpec { components: vec![t2] }).unwrap();
        assert_eq!(iso_type(&f1), iso_type(&f2));
        assert!(iso_type(&f1).render(&q).starts_with("tree["));
    }
}
