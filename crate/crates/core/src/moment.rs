//! Mutations of successor-closed subquivers and the moment graph they generate.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fixed::{enumerate_fixed_points, quotient_forest, restriction_forest, FixedPoint};
use crate::forest::CoefficientForest;
use crate::grading::{pairing, AlignedBasis, Alignment, Character, Cocharacter};
use crate::quiver::DimensionVector;
use crate::shape::{iso_type, ForestIsoType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("edge {source_point} -> {target_point} has character with non-positive pairing {value}")]
    GenericityViolation { source_point: usize, target_point: usize, value: i64 },
    #[error("edge {source_point} -> {target_point} has the zero character")]
    ZeroCharacter { source_point: usize, target_point: usize },
    #[error("moment graph has a directed cycle through point {0}")]
    Cycle(usize),
    #[error("invalid mutation: {0}")]
    InvalidMutation(String),
}

/// Exchange of the path `removed` (starting at `k`) for the path `added` (starting at `l`),
/// both over the same quiver path starting at `vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutation {
    pub base: FixedPoint,
    pub vertex: usize,
    /// Basis vector leaving the subquiver.
    pub k: usize,
    /// Basis vector entering the subquiver.
    pub l: usize,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
    /// Fiber positions of `k` and `l`.
    pub k_pos: usize,
    pub l_pos: usize,
}

impl Mutation {
    pub fn is_fundamental(&self) -> bool {
        self.k_pos < self.l_pos
    }

    pub fn target(&self) -> FixedPoint {
        let mut sel: Vec<usize> = self.base.selected.iter().copied().filter(|b| !self.removed.contains(b)).collect();
        sel.extend_from_slice(&self.added);
        FixedPoint::new(sel)
    }

    /// The mutation of the target that undoes this one.
    pub fn inverse(&self) -> Mutation {
        Mutation {
            base: self.target(),
            vertex: self.vertex,
            k: self.l,
            l: self.k,
            removed: self.added.clone(),
            added: self.removed.clone(),
            k_pos: self.l_pos,
            l_pos: self.k_pos,
        }
    }
}

/// The mutation of `u` at the pair `(k, l)` over one vertex, if it exists.
pub fn mutation_at(f: &CoefficientForest, basis: &AlignedBasis, u: &FixedPoint, k: usize, l: usize) -> Option<Mutation> {
    if f.over(k) != f.over(l) || !u.contains(k) || u.contains(l) {
        return None;
    }
    let mask = u.mask(f.len());
    let mut added = vec![l];
    let mut labels = Vec::new();
    let mut cur = l;
    loop {
        let next: Vec<_> = f.outgoing(cur).filter(|a| !mask[a.target]).collect();
        match next.len() {
            0 => break,
            1 => {
                labels.push(next[0].over);
                cur = next[0].target;
                added.push(cur);
            }
            _ => return None,
        }
    }
    let mut removed = vec![k];
    let mut cur = k;
    for &a in &labels {
        cur = f.successor_along(cur, a)?;
        removed.push(cur);
    }
    let mut new_mask = mask.clone();
    for &b in &removed {
        new_mask[b] = false;
    }
    for &b in &added {
        new_mask[b] = true;
    }
    if !f.is_successor_closed(&new_mask) {
        return None;
    }
    Some(Mutation {
        base: u.clone(),
        vertex: f.over(k),
        k,
        l,
        removed,
        added,
        k_pos: basis.position[k],
        l_pos: basis.position[l],
    })
}

/// All mutations based at `u`, fundamental and inverse, ordered by vertex then positions.
pub fn enumerate_mutations(f: &CoefficientForest, basis: &AlignedBasis, u: &FixedPoint) -> Vec<Mutation> {
    let mut out = Vec::new();
    for fib in &basis.fiber_order {
        for &k in fib.iter().filter(|&&b| u.contains(b)) {
            for &l in fib.iter().filter(|&&b| !u.contains(b)) {
                if let Some(m) = mutation_at(f, basis, u, k, l) {
                    out.push(m);
                }
            }
        }
    }
    out
}

pub fn apply_mutation(f: &CoefficientForest, basis: &AlignedBasis, m: &Mutation) -> Result<FixedPoint, MomentError> {
    match mutation_at(f, basis, &m.base, m.k, m.l) {
        Some(check) if check == *m => Ok(m.target()),
        _ => Err(MomentError::InvalidMutation(format!("no mutation of {} at ({}, {})", m.base, f.id(m.k), f.id(m.l)))),
    }
}

/// Character of the entering vector minus that of the leaving vector.
pub fn edge_character(f: &CoefficientForest, basis: &AlignedBasis, m: &Mutation) -> Character {
    basis.vertex_character(f, m.l).sub(&basis.vertex_character(f, m.k))
}

pub fn tangent_dimension(f: &CoefficientForest, basis: &AlignedBasis, u: &FixedPoint) -> usize {
    enumerate_mutations(f, basis, u).len()
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub mutation: Mutation,
    pub character: Character,
}

#[derive(Debug, Clone)]
pub struct MomentGraph {
    pub points: Vec<FixedPoint>,
    pub edges: Vec<Edge>,
    pub chi: Cocharacter,
    pub basis: AlignedBasis,
    pub experimental: bool,
    /// Points in a linear extension of the order: every edge goes from earlier to later.
    pub topological_order: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// Vertices are the fixed points; one edge per fundamental mutation, oriented base to target.
pub fn build_moment_graph(f: &CoefficientForest, align: &Alignment, e: &DimensionVector) -> Result<MomentGraph, MomentError> {
    let points = enumerate_fixed_points(f, e);
    let index: BTreeMap<&FixedPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (x, u) in points.iter().enumerate() {
        for m in enumerate_mutations(f, &align.basis, u) {
            if !m.is_fundamental() {
                continue;
            }
            let y = index[&m.target()];
            let character = edge_character(f, &align.basis, &m);
            if character.is_zero() {
                return Err(MomentError::ZeroCharacter { source_point: x, target_point: y });
            }
            let value = pairing(&align.chi, &character).expect("characters match the cocharacter");
            if value <= 0 {
                return Err(MomentError::GenericityViolation { source_point: x, target_point: y, value });
            }
            edges.push(Edge { source: x, target: y, mutation: m, character });
        }
    }
    MomentGraph::assemble(points, edges, align.chi.clone(), align.basis.clone(), align.experimental)
}

impl MomentGraph {
    pub fn assemble(
        points: Vec<FixedPoint>,
        edges: Vec<Edge>,
        chi: Cocharacter,
        basis: AlignedBasis,
        experimental: bool,
    ) -> Result<Self, MomentError> {
        let n = points.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.source].push(k);
            in_edges[e.target].push(k);
        }
        let mut indeg: Vec<usize> = in_edges.iter().map(|v| v.len()).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topological_order = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            topological_order.push(x);
            for &k in &out_edges[x] {
                let y = edges[k].target;
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if topological_order.len() != n {
            let stuck = (0..n).find(|&x| indeg[x] > 0).expect("some point remains");
            return Err(MomentError::Cycle(stuck));
        }
        Ok(MomentGraph { points, edges, chi, basis, experimental, topological_order, out_edges, in_edges })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn out_edges(&self, x: usize) -> impl Iterator<Item = &Edge> {
        self.out_edges[x].iter().map(move |&k| &self.edges[k])
    }

    pub fn in_edges(&self, x: usize) -> impl Iterator<Item = &Edge> {
        self.in_edges[x].iter().map(move |&k| &self.edges[k])
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out_edges[x].len()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.out_edges[x].len() + self.in_edges[x].len()
    }

    pub fn index_of(&self, u: &FixedPoint) -> Option<usize> {
        self.points.binary_search(u).ok()
    }

    /// `reach[x][y]` iff there is a directed path (possibly empty) from `x` to `y`.
    pub fn partial_order(&self) -> Vec<Vec<bool>> {
        let n = self.points.len();
        let mut reach = vec![vec![false; n]; n];
        for &x in self.topological_order.iter().rev() {
            reach[x][x] = true;
            for &k in &self.out_edges[x] {
                let y = self.edges[k].target;
                let (head, tail) = if x < y {
                    let (a, b) = reach.split_at_mut(y);
                    (&mut a[x], &b[0])
                } else {
                    let (a, b) = reach.split_at_mut(x);
                    (&mut b[0], &a[y])
                };
                for (h, t) in head.iter_mut().zip(tail) {
                    *h |= *t;
                }
            }
        }
        reach
    }

    /// Every edge strictly lowers the out-degree.
    pub fn is_palais_smale(&self) -> bool {
        self.edges.iter().all(|e| self.out_degree(e.source) > self.out_degree(e.target))
    }
}

/// Fixed points grouped by the isomorphism types of `U` and `M/U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallStratum {
    pub sub: ForestIsoType,
    pub quotient: ForestIsoType,
    pub members: Vec<usize>,
}

pub fn hall_strata(f: &CoefficientForest, points: &[FixedPoint]) -> Vec<HallStratum> {
    let mut groups: BTreeMap<(ForestIsoType, ForestIsoType), Vec<usize>> = BTreeMap::new();
    for (x, u) in points.iter().enumerate() {
        let sub = iso_type(&restriction_forest(f, u).expect("fixed points are successor closed"));
        let quot = iso_type(&quotient_forest(f, u).expect("fixed points are successor closed"));
        groups.entry((sub, quot)).or_default().push(x);
    }
    let mut strata: Vec<HallStratum> =
        groups.into_iter().map(|((sub, quotient), members)| HallStratum { sub, quotient, members }).collect();
    strata.sort_by_key(|s| s.members[0]);
    strata
}

/// Pairs of fixed points whose difference sets are connected and isomorphic but not
/// paths, so no mutation relates them. Only meaningful for tree components.
pub fn branched_exchanges(f: &CoefficientForest, points: &[FixedPoint]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..points.len() {
        for y in x + 1..points.len() {
            let mx = points[x].mask(f.len());
            let my = points[y].mask(f.len());
            let only_x: Vec<bool> = (0..f.len()).map(|b| mx[b] && !my[b]).collect();
            let only_y: Vec<bool> = (0..f.len()).map(|b| my[b] && !mx[b]).collect();
            let gx = f.induced(&only_x);
            let gy = f.induced(&only_y);
            if gx.component_count() != 1 || gy.component_count() != 1 {
                continue;
            }
            if gx.is_straight() {
                continue;
            }
            if iso_type(&gx) == iso_type(&gy) {
                out.push((x, y));
            }
        }
    }
    out
}
