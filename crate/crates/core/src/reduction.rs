//! Normalizing instances and deciding their GKM status.
//!
//! Two moves preserve the Grassmannian: removing an inflexible vertex (its
//! subspace is forced) and collapsing an arrow whose map is a bijection between
//! fibers of equal target dimension.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fixed::enumerate_fixed_points;
use crate::forest::{ForestSpec, TreeSpec};
use crate::instance::{Instance, InstanceError};
use crate::quiver::{DimensionVector, Quiver};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("e_{vertex} = {e} exceeds dim M at `{vertex}` = {m}")]
    InfeasibleDimension { vertex: String, e: usize, m: usize },
    #[error("malformed instance after reduction: {0}")]
    Malformed(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// Vertex removed because its subspace is forced; `forced_in` vectors lie in every
    /// subrepresentation, `forced_out` vectors in none.
    RemoveVertex { vertex: String, forced_in: Vec<String>, forced_out: Vec<String> },
    /// Arrow collapsed; each removed basis vector is identified with its kept predecessor.
    Collapse { arrow: String, removed_vertex: String, merged: Vec<(String, String)> },
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::RemoveVertex { vertex, forced_in, forced_out } => write!(
                f,
                "remove vertex {vertex}: forced in [{}], forced out [{}]",
                forced_in.join(", "),
                forced_out.join(", ")
            ),
            ReductionStep::Collapse { arrow, removed_vertex, merged } => {
                let pairs: Vec<String> = merged.iter().map(|(k, r)| format!("{r}->{k}")).collect();
                write!(f, "collapse arrow {arrow} into its source, dropping vertex {removed_vertex}: [{}]", pairs.join(", "))
            }
        }
    }
}

fn check_feasible(inst: &Instance) -> Result<(), ReductionError> {
    if let Some(v) = inst.infeasible_vertex() {
        return Err(ReductionError::InfeasibleDimension {
            vertex: inst.quiver.vertex_label(v).to_string(),
            e: inst.dims[v],
            m: inst.ambient_dims()[v],
        });
    }
    Ok(())
}

/// Per-vertex flexibility: a vertex is flexible when the fixed points project to at least
/// two different coordinate subspaces there. An empty Grassmannian makes every vertex
/// inflexible.
pub fn is_flexible(inst: &Instance) -> Result<Vec<bool>, ReductionError> {
    check_feasible(inst)?;
    let points = enumerate_fixed_points(&inst.forest, &inst.dims);
    let n = inst.quiver.vertex_count();
    Ok((0..n)
        .map(|i| {
            let fiber = inst.forest.fiber(i);
            let projections: BTreeSet<Vec<usize>> =
                points.iter().map(|u| fiber.iter().copied().filter(|&b| u.contains(b)).collect()).collect();
            projections.len() >= 2
        })
        .collect())
}

/// Inflexible vertices of an instance with a nonempty Grassmannian, with their forced
/// subsets (basis vectors over the vertex that every fixed point selects).
fn forced_subsets(inst: &Instance) -> Result<Vec<(usize, Vec<usize>)>, ReductionError> {
    check_feasible(inst)?;
    let points = enumerate_fixed_points(&inst.forest, &inst.dims);
    let Some(first) = points.first() else { return Ok(Vec::new()) };
    let flex = is_flexible(inst)?;
    Ok(inst
        .vertex_order
        .iter()
        .copied()
        .filter(|&i| !flex[i])
        .map(|i| (i, inst.forest.fiber(i).into_iter().filter(|&b| first.contains(b)).collect()))
        .collect())
}

fn spec_with_quiver(inst: &Instance, keep: &[bool]) -> ForestSpec {
    inst.forest.induced(keep).to_spec(&inst.quiver)
}

/// Removes vertex `i`, whose selected fiber vectors must be `forced`.
pub fn remove_vertex(inst: &Instance, i: usize, forced: &[usize]) -> Result<(Instance, ReductionStep), ReductionError> {
    let f = &inst.forest;
    let mut inside = vec![false; f.len()];
    let mut outside = vec![false; f.len()];
    for &b in forced {
        inside[b] = true;
        for d in f.descendants(b) {
            inside[d] = true;
        }
    }
    for b in f.fiber(i).into_iter().filter(|b| !forced.contains(b)) {
        outside[b] = true;
        for a in f.ancestors(b) {
            outside[a] = true;
        }
    }
    if (0..f.len()).any(|b| inside[b] && outside[b]) {
        return Err(ReductionError::Malformed(format!(
            "vertex `{}` has contradictory forced vectors",
            inst.quiver.vertex_label(i)
        )));
    }
    let mut dims = inst.dims.entries().to_vec();
    for b in (0..f.len()).filter(|&b| inside[b]) {
        let v = f.over(b);
        dims[v] = dims[v]
            .checked_sub(1)
            .ok_or_else(|| ReductionError::Malformed(format!("dimension underflow at `{}`", inst.quiver.vertex_label(v))))?;
    }
    let keep: Vec<bool> = (0..f.len()).map(|b| !inside[b] && !outside[b]).collect();
    let spec = spec_with_quiver(inst, &keep);
    let q = &inst.quiver;
    let vertices: Vec<String> = (0..q.vertex_count()).filter(|&v| v != i).map(|v| q.vertex_label(v).to_string()).collect();
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .filter(|a| a.source != i && a.target != i)
        .map(|a| (a.id.clone(), q.vertex_label(a.source).to_string(), q.vertex_label(a.target).to_string()))
        .collect();
    let new_q = Quiver::new(vertices, arrows).map_err(InstanceError::from)?;
    let new_dims: Vec<usize> = (0..q.vertex_count()).filter(|&v| v != i).map(|v| dims[v]).collect();
    let order: Vec<usize> = inst
        .vertex_order
        .iter()
        .filter(|&&v| v != i)
        .map(|&v| new_q.vertex_index(q.vertex_label(v)).expect("kept vertex"))
        .collect();
    let step = ReductionStep::RemoveVertex {
        vertex: q.vertex_label(i).to_string(),
        forced_in: (0..f.len()).filter(|&b| inside[b]).map(|b| f.id(b).to_string()).collect(),
        forced_out: (0..f.len()).filter(|&b| outside[b]).map(|b| f.id(b).to_string()).collect(),
    };
    let reduced = Instance::new(new_q, &spec, DimensionVector(new_dims), Some(order))?;
    Ok((reduced, step))
}

/// Inflexible vertices available for removal, in `vertex_order`.
pub fn flexible_moves(inst: &Instance) -> Result<Vec<(usize, Vec<usize>)>, ReductionError> {
    forced_subsets(inst)
}

/// Removes inflexible vertices until none is left (or the Grassmannian is empty).
pub fn flexible_reduce(inst: &Instance) -> Result<(Instance, Vec<ReductionStep>), ReductionError> {
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    while let Some((i, forced)) = flexible_moves(&cur)?.into_iter().next() {
        let (next, step) = remove_vertex(&cur, i, &forced)?;
        trace.push(step);
        cur = next;
    }
    Ok((cur, trace))
}

/// Arrows `a: i -> j` (`i != j`) whose map is a bijection between the fibers, with `e_i = e_j`.
pub fn collapsible_arrows(inst: &Instance) -> Vec<usize> {
    let f = &inst.forest;
    (0..inst.quiver.arrow_count())
        .filter(|&a| {
            let arr = inst.quiver.arrow(a);
            let (i, j) = (arr.source, arr.target);
            i != j
                && inst.dims[i] == inst.dims[j]
                && f.fiber(i).iter().all(|&b| f.successor_along(b, a).is_some())
                && f.fiber(j).iter().all(|&b| f.predecessor_along(b, a).is_some())
        })
        .collect()
}

fn fresh_id(taken: &BTreeSet<String>, base: String) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('\'');
    }
    id
}

/// Collapses arrow `a: i -> j`: vertex `j` is dropped, each vector over `j` is identified
/// with its `a`-predecessor, arrows out of `j` are precomposed with `a` and arrows into `j`
/// are composed with the inverse of `a`.
pub fn collapse_arrow(inst: &Instance, a: usize) -> Result<(Instance, ReductionStep), ReductionError> {
    let q = &inst.quiver;
    let f = &inst.forest;
    let arr = q.arrow(a).clone();
    let (i, j) = (arr.source, arr.target);
    let rep = |b: usize| if f.over(b) == j { f.predecessor_along(b, a).expect("bijective arrow") } else { b };

    let mut taken: BTreeSet<String> = q.arrows().iter().map(|x| x.id.clone()).collect();
    let mut renamed: Vec<Option<(String, usize, usize)>> = vec![None; q.arrow_count()];
    for (c, x) in q.arrows().iter().enumerate() {
        if c == a {
            continue;
        }
        let touches_source = x.source == j;
        let touches_target = x.target == j;
        let (src, tgt) = (if touches_source { i } else { x.source }, if touches_target { i } else { x.target });
        let id = match (touches_source, touches_target) {
            (false, false) => x.id.clone(),
            (true, false) => fresh_id(&taken, format!("{}*{}", x.id, arr.id)),
            (false, true) => fresh_id(&taken, format!("{}^-1*{}", arr.id, x.id)),
            (true, true) => fresh_id(&taken, format!("{}^-1*{}*{}", arr.id, x.id, arr.id)),
        };
        taken.insert(id.clone());
        renamed[c] = Some((id, src, tgt));
    }
    let vertices: Vec<String> = (0..q.vertex_count()).filter(|&v| v != j).map(|v| q.vertex_label(v).to_string()).collect();
    let arrows: Vec<(String, String, String)> = renamed
        .iter()
        .flatten()
        .map(|(id, s, t)| (id.clone(), q.vertex_label(*s).to_string(), q.vertex_label(*t).to_string()))
        .collect();
    let new_q = Quiver::new(vertices, arrows).map_err(InstanceError::from)?;

    let components = f
        .components()
        .iter()
        .map(|members| TreeSpec {
            vertices: members
                .iter()
                .filter(|&&b| f.over(b) != j)
                .map(|&b| (f.id(b).to_string(), q.vertex_label(f.over(b)).to_string()))
                .collect(),
            arrows: members
                .iter()
                .flat_map(|&b| f.outgoing(b))
                .filter(|x| x.over != a)
                .map(|x| {
                    let (id, _, _) = renamed[x.over].as_ref().expect("renamed arrow");
                    (f.id(rep(x.source)).to_string(), f.id(rep(x.target)).to_string(), id.clone())
                })
                .collect(),
        })
        .collect();
    let merged: Vec<(String, String)> =
        f.fiber(j).into_iter().map(|b| (f.id(rep(b)).to_string(), f.id(b).to_string())).collect();
    let new_dims: Vec<usize> = (0..q.vertex_count()).filter(|&v| v != j).map(|v| inst.dims[v]).collect();
    let order: Vec<usize> = inst
        .vertex_order
        .iter()
        .filter(|&&v| v != j)
        .map(|&v| new_q.vertex_index(q.vertex_label(v)).expect("kept vertex"))
        .collect();
    let step = ReductionStep::Collapse { arrow: arr.id.clone(), removed_vertex: q.vertex_label(j).to_string(), merged };
    let reduced = Instance::new(new_q, &ForestSpec { components }, DimensionVector(new_dims), Some(order))?;
    Ok((reduced, step))
}

/// Collapses eligible arrows until the instance is identity-free.
pub fn collapse_identity_arrows(inst: &Instance) -> Result<(Instance, Vec<ReductionStep>), ReductionError> {
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    while let Some(&a) = collapsible_arrows(&cur).first() {
        let (next, step) = collapse_arrow(&cur, a)?;
        trace.push(step);
        cur = next;
    }
    Ok((cur, trace))
}

/// Alternates both reductions until neither applies.
pub fn reduce(inst: &Instance) -> Result<(Instance, Vec<ReductionStep>), ReductionError> {
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    loop {
        let (a, mut t1) = flexible_reduce(&cur)?;
        let (b, mut t2) = collapse_identity_arrows(&a)?;
        let done = t1.is_empty() && t2.is_empty();
        trace.append(&mut t1);
        trace.append(&mut t2);
        cur = b;
        if done {
            return Ok((cur, trace));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VerdictTag {
    GkmStraight,
    NoGkm,
    PointOrEmpty,
    UnknownTree,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::GkmStraight => "GKM_STRAIGHT",
            VerdictTag::NoGkm => "NO_GKM",
            VerdictTag::PointOrEmpty => "POINT_OR_EMPTY",
            VerdictTag::UnknownTree => "UNKNOWN_TREE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `x -> y <- z`
    TwoSink,
    /// `x <- y -> z`
    TwoSource,
}

/// Three basis vectors of one string around a turning point, with the quiver data below them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    /// Outer, middle, outer basis ids.
    pub basis: [String; 3],
    /// Quiver vertices under the three basis vectors.
    pub vertices: [String; 3],
    /// Quiver arrows under the two coefficient arrows.
    pub arrows: [String; 2],
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [b0, b1, b2] = &self.basis;
        let [v0, v1, v2] = &self.vertices;
        let [a0, a1] = &self.arrows;
        match self.kind {
            WitnessKind::TwoSink => write!(f, "two-sink {v0} -{a0}-> {v1} <-{a1}- {v2} (basis {b0}, {b1}, {b2})"),
            WitnessKind::TwoSource => write!(f, "two-source {v0} <-{a0}- {v1} -{a1}-> {v2} (basis {b0}, {b1}, {b2})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GkmVerdict {
    pub tag: VerdictTag,
    pub witness: Option<Witness>,
    pub reduced: Instance,
    pub trace: Vec<ReductionStep>,
}

fn find_witness(inst: &Instance) -> Option<Witness> {
    let f = &inst.forest;
    let q = &inst.quiver;
    for b in 0..f.len() {
        for (kind, list) in [
            (WitnessKind::TwoSink, f.incoming(b).map(|a| (a.source, a.over)).collect::<Vec<_>>()),
            (WitnessKind::TwoSource, f.outgoing(b).map(|a| (a.target, a.over)).collect::<Vec<_>>()),
        ] {
            if list.len() >= 2 {
                let (x, ax) = list[0];
                let (z, az) = list[1];
                return Some(Witness {
                    kind,
                    basis: [f.id(x).to_string(), f.id(b).to_string(), f.id(z).to_string()],
                    vertices: [
                        q.vertex_label(f.over(x)).to_string(),
                        q.vertex_label(f.over(b)).to_string(),
                        q.vertex_label(f.over(z)).to_string(),
                    ],
                    arrows: [q.arrow(ax).id.clone(), q.arrow(az).id.clone()],
                });
            }
        }
    }
    None
}

pub fn classify_gkm(inst: &Instance) -> Result<GkmVerdict, ReductionError> {
    check_feasible(inst)?;
    let (reduced, trace) = reduce(inst)?;
    let f = &reduced.forest;
    let empty = enumerate_fixed_points(f, &reduced.dims).is_empty();
    let (tag, witness) = if empty || reduced.quiver.vertex_count() == 0 || f.is_empty() {
        (VerdictTag::PointOrEmpty, None)
    } else if !f.is_string_forest() {
        (VerdictTag::UnknownTree, None)
    } else if f.is_straight() {
        (VerdictTag::GkmStraight, None)
    } else {
        (VerdictTag::NoGkm, find_witness(&reduced))
    };
    Ok(GkmVerdict { tag, witness, reduced, trace })
}
