//! Problem instances `(Q, M, e)` and their JSON document format.

use std::collections::BTreeMap;
use std::path::Path;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::forest::{CoefficientForest, ForestSpec, TreeSpec, ValidationReport};
use crate::quiver::{DimensionVector, Quiver, QuiverError};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("quiver: {0}")]
    Quiver(#[from] QuiverError),
    #[error("forest: {0}")]
    Forest(ValidationReport),
    #[error("dimension_vector: {0}")]
    Dimension(String),
    #[error("vertex_order: {0}")]
    VertexOrder(String),
}

/// A validated instance: a quiver, a coefficient forest presenting `M`, and a target dimension vector.
#[derive(Debug, Clone)]
pub struct Instance {
    pub quiver: Quiver,
    pub forest: CoefficientForest,
    pub dims: DimensionVector,
    /// Quiver vertices listed in tie-breaking order.
    pub vertex_order: Vec<usize>,
}

impl Instance {
    pub fn new(
        quiver: Quiver,
        forest: &ForestSpec,
        dims: DimensionVector,
        vertex_order: Option<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let forest = CoefficientForest::from_spec(&quiver, forest).map_err(InstanceError::Forest)?;
        Self::from_parts(quiver, forest, dims, vertex_order)
    }

    pub fn from_parts(
        quiver: Quiver,
        forest: CoefficientForest,
        dims: DimensionVector,
        vertex_order: Option<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let n = quiver.vertex_count();
        if dims.len() != n {
            return Err(InstanceError::Dimension(format!("expected {n} entries, got {}", dims.len())));
        }
        let vertex_order = vertex_order.unwrap_or_else(|| (0..n).collect());
        let mut seen = vec![false; n];
        for &v in &vertex_order {
            if v >= n || seen[v] {
                return Err(InstanceError::VertexOrder("must list every vertex exactly once".into()));
            }
            seen[v] = true;
        }
        if vertex_order.len() != n {
            return Err(InstanceError::VertexOrder("must list every vertex exactly once".into()));
        }
        Ok(Instance { quiver, forest, dims, vertex_order })
    }

    /// `m_i`, the dimension of `M` at each vertex.
    pub fn ambient_dims(&self) -> DimensionVector {
        self.forest.push_down_dimensions()
    }

    /// Rank of each vertex in `vertex_order`.
    pub fn vertex_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.vertex_order.len()];
        for (r, &v) in self.vertex_order.iter().enumerate() {
            rank[v] = r;
        }
        rank
    }

    /// Whether some entry of `e` exceeds the corresponding entry of `dim M`.
    pub fn infeasible_vertex(&self) -> Option<usize> {
        let m = self.ambient_dims();
        (0..self.dims.len()).find(|&i| self.dims[i] > m[i])
    }

    pub fn from_json_str(text: &str) -> Result<Self, InstanceError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.into_instance()
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InstanceError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        let doc = Document::from_instance(self);
        let mut text = serde_json::to_string_pretty(&doc).expect("documents always serialize");
        text.push('\n');
        text
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    quiver: QuiverDoc,
    forest: ForestDoc,
    #[serde(serialize_with = "ordered_map", deserialize_with = "dims_de::deserialize")]
    dimension_vector: Vec<(String, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_order: Option<Vec<String>>,
}

fn ordered_map<S: Serializer>(entries: &[(String, usize)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(entries.len()))?;
    for (k, v) in entries {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

mod dims_de {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, usize)>, D::Error> {
        let map: BTreeMap<String, usize> = BTreeMap::deserialize(d)?;
        Ok(map.into_iter().collect())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: String,
    source: String,
    target: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForestDoc {
    components: Vec<TreeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    vertices: Vec<BasisDoc>,
    #[serde(default)]
    arrows: Vec<TreeArrowDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    id: String,
    over: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeArrowDoc {
    source: String,
    target: String,
    over: String,
}

impl Document {
    fn into_instance(self) -> Result<Instance, InstanceError> {
        let quiver = Quiver::new(
            self.quiver.vertices,
            self.quiver.arrows.into_iter().map(|a| (a.id, a.source, a.target)),
        )?;
        let spec = ForestSpec {
            components: self
                .forest
                .components
                .into_iter()
                .map(|t| TreeSpec {
                    vertices: t.vertices.into_iter().map(|b| (b.id, b.over)).collect(),
                    arrows: t.arrows.into_iter().map(|a| (a.source, a.target, a.over)).collect(),
                })
                .collect(),
        };
        let mut dims = vec![None; quiver.vertex_count()];
        for (label, value) in self.dimension_vector {
            let v = quiver
                .vertex_index(&label)
                .ok_or_else(|| InstanceError::Dimension(format!("undeclared vertex `{label}`")))?;
            dims[v] = Some(value);
        }
        let dims = dims
            .into_iter()
            .enumerate()
            .map(|(v, d)| d.ok_or_else(|| InstanceError::Dimension(format!("missing entry for `{}`", quiver.vertex_label(v)))))
            .collect::<Result<Vec<_>, _>>()?;
        let order = match self.vertex_order {
            None => None,
            Some(labels) => Some(
                labels
                    .iter()
                    .map(|l| {
                        quiver
                            .vertex_index(l)
                            .ok_or_else(|| InstanceError::VertexOrder(format!("undeclared vertex `{l}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Instance::new(quiver, &spec, DimensionVector(dims), order)
    }

    fn from_instance(inst: &Instance) -> Self {
        let q = &inst.quiver;
        let spec = inst.forest.to_spec(q);
        let default_order: Vec<usize> = (0..q.vertex_count()).collect();
        Document {
            quiver: QuiverDoc {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowDoc {
                        id: a.id.clone(),
                        source: q.vertex_label(a.source).to_string(),
                        target: q.vertex_label(a.target).to_string(),
                    })
                    .collect(),
            },
            forest: ForestDoc {
                components: spec
                    .components
                    .into_iter()
                    .map(|t| TreeDoc {
                        vertices: t.vertices.into_iter().map(|(id, over)| BasisDoc { id, over }).collect(),
                        arrows: t
                            .arrows
                            .into_iter()
                            .map(|(source, target, over)| TreeArrowDoc { source, target, over })
                            .collect(),
                    })
                    .collect(),
            },
            dimension_vector: (0..q.vertex_count()).map(|v| (q.vertex_label(v).to_string(), inst.dims[v])).collect(),
            vertex_order: (inst.vertex_order != default_order)
                .then(|| inst.vertex_order.iter().map(|&v| q.vertex_label(v).to_string()).collect()),
        }
    }
}
