//! Quivers and dimension vectors.
//!
//! Vertices and arrows carry user-facing text labels; internally everything
//! is addressed by dense indices in declaration order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UnknownEndpoint { arrow: String, vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Loops, multiple arrows and oriented cycles are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::new();
        let mut arrow_lookup = HashMap::new();
        for (id, source, target) in arrows {
            let s = *vertex_lookup.get(&source).ok_or_else(|| QuiverError::UnknownEndpoint {
                arrow: id.clone(),
                vertex: source.clone(),
            })?;
            let t = *vertex_lookup.get(&target).ok_or_else(|| QuiverError::UnknownEndpoint {
                arrow: id.clone(),
                vertex: target.clone(),
            })?;
            if arrow_lookup.insert(id.clone(), out.len()).is_some() {
                return Err(QuiverError::DuplicateArrow(id));
            }
            out.push(Arrow { id, source: s, target: t });
        }
        Ok(Quiver { vertices, arrows: out, vertex_lookup, arrow_lookup })
    }

    /// The equioriented type A quiver `1 -> 2 -> ... -> n` with arrows `a1 .. a{n-1}`.
    pub fn equioriented_a(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()));
        Quiver::new(vertices, arrows).expect("type A quiver is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_lookup.get(label).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_lookup.get(id).copied()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices [{}]", self.vertices.join(", "))?;
        for a in &self.arrows {
            write!(f, "; {}: {} -> {}", a.id, self.vertices[a.source], self.vertices[a.target])?;
        }
        Ok(())
    }
}

/// Non-negative integer per quiver vertex, indexed like the quiver's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Renders as `(e_1,...,e_n)` in vertex declaration order.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
        list.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect()
    }

    #[test]
    fn loops_and_parallel_arrows_are_allowed() {
        let q = Quiver::new(["x", "y"], arrows(&[("l", "x", "x"), ("a", "x", "y"), ("b", "x", "y")]))
            .unwrap();
        assert_eq!(q.arrow_count(), 3);
        assert_eq!(q.arrow(q.arrow_index("l").unwrap()).target, 0);
    }

    #[test]
    fn rejects_duplicates_and_dangling_endpoints() {
        assert_eq!(
            Quiver::new(["x", "x"], vec![]).unwrap_err(),
            QuiverError::DuplicateVertex("x".into())
        );
        assert!(matches!(
            Quiver::new(["x"], arrows(&[("a", "x", "z")])).unwrap_err(),
            QuiverError::UnknownEndpoint { .. }
        ));
        assert_eq!(
            Quiver::new(["x", "y"], arrows(&[("a", "x", "y"), ("a", "y", "x")])).unwrap_err(),
            QuiverError::DuplicateArrow("a".into())
        );
    }

    #[test]
    fn type_a_quiver() {
        let q = Quiver::equioriented_a(3);
        assert_eq!(q.vertices(), &["1", "2", "3"]);
        assert_eq!(q.arrow(1).source, 1);
        assert_eq!(q.arrow(1).target, 2);
    }
}
