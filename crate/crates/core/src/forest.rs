//! Coefficient forests: the winding data presenting a representation as a
//! direct sum of tree (in particular string) representations.
//!
//! Each basis vector lies over a quiver vertex and each coefficient arrow
//! over a quiver arrow. The represented module has all structure constants
//! equal to one along coefficient arrows.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::quiver::{DimensionVector, Quiver};

/// Unvalidated description of one coefficient tree, using text labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeSpec {
    /// `(basis id, quiver vertex label)`
    pub vertices: Vec<(String, String)>,
    /// `(source basis id, target basis id, quiver arrow id)`
    pub arrows: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestSpec {
    pub components: Vec<TreeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyComponent { component: usize },
    DuplicateBasisId { id: String },
    UnknownQuiverVertex { basis: String, over: String },
    UnknownQuiverArrow { over: String },
    UnknownEndpoint { component: usize, id: String },
    IncompatibleArrow { source: String, target: String, over: String },
    WindingIncoming { vertex: String, over: String },
    WindingOutgoing { vertex: String, over: String },
    Disconnected { component: usize },
    Cycle { component: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyComponent { component } => write!(f, "component {component} has no vertices"),
            Violation::DuplicateBasisId { id } => write!(f, "basis id `{id}` declared twice"),
            Violation::UnknownQuiverVertex { basis, over } => {
                write!(f, "basis vector `{basis}` lies over undeclared vertex `{over}`")
            }
            Violation::UnknownQuiverArrow { over } => write!(f, "coefficient arrow over undeclared arrow `{over}`"),
            Violation::UnknownEndpoint { component, id } => {
                write!(f, "arrow endpoint `{id}` is not a vertex of component {component}")
            }
            Violation::IncompatibleArrow { source, target, over } => {
                write!(f, "arrow `{source}` -> `{target}` does not lie over the endpoints of `{over}`")
            }
            Violation::WindingIncoming { vertex, over } => {
                write!(f, "winding violated: `{vertex}` has two incoming arrows over `{over}`")
            }
            Violation::WindingOutgoing { vertex, over } => {
                write!(f, "winding violated: `{vertex}` has two outgoing arrows over `{over}`")
            }
            Violation::Disconnected { component } => write!(f, "component {component} is not connected"),
            Violation::Cycle { component } => write!(f, "component {component} contains an undirected cycle"),
        }
    }
}

/// Result of [`validate_forest`]; empty means the forest is valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub id: String,
    pub over: usize,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientArrow {
    pub source: usize,
    pub target: usize,
    pub over: usize,
}

/// A validated coefficient forest over a fixed quiver.
#[derive(Debug, Clone)]
pub struct CoefficientForest {
    basis: Vec<BasisVector>,
    arrows: Vec<CoefficientArrow>,
    components: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    lookup: HashMap<String, usize>,
    vertex_count: usize,
    arrow_count: usize,
}

/// Checks every forest invariant and lists all violations found.
pub fn validate_forest(q: &Quiver, spec: &ForestSpec) -> ValidationReport {
    match CoefficientForest::from_spec(q, spec) {
        Ok(_) => ValidationReport::default(),
        Err(report) => report,
    }
}

impl CoefficientForest {
    pub fn from_spec(q: &Quiver, spec: &ForestSpec) -> Result<Self, ValidationReport> {
        let mut violations = Vec::new();
        let mut basis = Vec::new();
        let mut lookup: HashMap<String, usize> = HashMap::new();
        let mut components = Vec::new();

        for (c, tree) in spec.components.iter().enumerate() {
            if tree.vertices.is_empty() {
                violations.push(Violation::EmptyComponent { component: c });
            }
            let mut members = Vec::new();
            for (id, over) in &tree.vertices {
                let Some(v) = q.vertex_index(over) else {
                    violations.push(Violation::UnknownQuiverVertex { basis: id.clone(), over: over.clone() });
                    continue;
                };
                if lookup.contains_key(id) {
                    violations.push(Violation::DuplicateBasisId { id: id.clone() });
                    continue;
                }
                lookup.insert(id.clone(), basis.len());
                members.push(basis.len());
                basis.push(BasisVector { id: id.clone(), over: v, component: c });
            }
            components.push(members);
        }

        let mut arrows = Vec::new();
        for (c, tree) in spec.components.iter().enumerate() {
            for (s, t, over) in &tree.arrows {
                let Some(a) = q.arrow_index(over) else {
                    violations.push(Violation::UnknownQuiverArrow { over: over.clone() });
                    continue;
                };
                let mut endpoint = |id: &String| match lookup.get(id) {
                    Some(&b) if basis[b].component == c => Some(b),
                    _ => {
                        violations.push(Violation::UnknownEndpoint { component: c, id: id.clone() });
                        None
                    }
                };
                let (Some(sb), Some(tb)) = (endpoint(s), endpoint(t)) else { continue };
                let qa = q.arrow(a);
                if basis[sb].over != qa.source || basis[tb].over != qa.target {
                    violations.push(Violation::IncompatibleArrow {
                        source: s.clone(),
                        target: t.clone(),
                        over: over.clone(),
                    });
                    continue;
                }
                arrows.push(CoefficientArrow { source: sb, target: tb, over: a });
            }
        }

        let mut outgoing = vec![Vec::new(); basis.len()];
        let mut incoming = vec![Vec::new(); basis.len()];
        for (k, arr) in arrows.iter().enumerate() {
            outgoing[arr.source].push(k);
            incoming[arr.target].push(k);
        }

        for b in 0..basis.len() {
            for (list, incoming_side) in [(&incoming[b], true), (&outgoing[b], false)] {
                let mut seen: Vec<usize> = Vec::new();
                for &k in list {
                    let a = arrows[k].over;
                    if seen.contains(&a) {
                        let vertex = basis[b].id.clone();
                        let over = q.arrow(a).id.clone();
                        violations.push(if incoming_side {
                            Violation::WindingIncoming { vertex, over }
                        } else {
                            Violation::WindingOutgoing { vertex, over }
                        });
                    } else {
                        seen.push(a);
                    }
                }
            }
        }

        for (c, members) in components.iter().enumerate() {
            if members.is_empty() {
                continue;
            }
            let edge_count = members.iter().map(|&b| outgoing[b].len()).sum::<usize>();
            let mut seen = vec![false; basis.len()];
            let mut queue = VecDeque::from([members[0]]);
            seen[members[0]] = true;
            let mut reached = 1;
            while let Some(b) = queue.pop_front() {
                let nbrs = outgoing[b]
                    .iter()
                    .map(|&k| arrows[k].target)
                    .chain(incoming[b].iter().map(|&k| arrows[k].source));
                for n in nbrs {
                    if !seen[n] {
                        seen[n] = true;
                        reached += 1;
                        queue.push_back(n);
                    }
                }
            }
            if reached != members.len() {
                violations.push(Violation::Disconnected { component: c });
            } else if edge_count + 1 != members.len() {
                violations.push(Violation::Cycle { component: c });
            }
        }

        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }
        Ok(CoefficientForest {
            basis,
            arrows,
            components,
            outgoing,
            incoming,
            lookup,
            vertex_count: q.vertex_count(),
            arrow_count: q.arrow_count(),
        })
    }

    /// Rebuilds the text-level description, e.g. for serialization.
    pub fn to_spec(&self, q: &Quiver) -> ForestSpec {
        let components = self
            .components
            .iter()
            .map(|members| TreeSpec {
                vertices: members
                    .iter()
                    .map(|&b| (self.basis[b].id.clone(), q.vertex_label(self.basis[b].over).to_string()))
                    .collect(),
                arrows: members
                    .iter()
                    .flat_map(|&b| self.outgoing[b].iter())
                    .map(|&k| {
                        let a = self.arrows[k];
                        (
                            self.basis[a.source].id.clone(),
                            self.basis[a.target].id.clone(),
                            q.arrow(a.over).id.clone(),
                        )
                    })
                    .collect(),
            })
            .collect();
        ForestSpec { components }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn arrows(&self) -> &[CoefficientArrow] {
        &self.arrows
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn quiver_vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn quiver_arrow_count(&self) -> usize {
        self.arrow_count
    }

    pub fn basis_index(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn id(&self, b: usize) -> &str {
        &self.basis[b].id
    }

    pub fn over(&self, b: usize) -> usize {
        self.basis[b].over
    }

    pub fn component_of(&self, b: usize) -> usize {
        self.basis[b].component
    }

    pub fn outgoing(&self, b: usize) -> impl Iterator<Item = CoefficientArrow> + '_ {
        self.outgoing[b].iter().map(move |&k| self.arrows[k])
    }

    pub fn incoming(&self, b: usize) -> impl Iterator<Item = CoefficientArrow> + '_ {
        self.incoming[b].iter().map(move |&k| self.arrows[k])
    }

    pub fn out_degree(&self, b: usize) -> usize {
        self.outgoing[b].len()
    }

    pub fn in_degree(&self, b: usize) -> usize {
        self.incoming[b].len()
    }

    /// The unique successor of `b` along quiver arrow `a`, if any.
    pub fn successor_along(&self, b: usize, a: usize) -> Option<usize> {
        self.outgoing(b).find(|arr| arr.over == a).map(|arr| arr.target)
    }

    pub fn predecessor_along(&self, b: usize, a: usize) -> Option<usize> {
        self.incoming(b).find(|arr| arr.over == a).map(|arr| arr.source)
    }

    /// Basis vectors over quiver vertex `i`, in declaration order.
    pub fn fiber(&self, i: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&b| self.basis[b].over == i).collect()
    }

    /// Quiver arrows carrying at least one coefficient arrow, in quiver order.
    pub fn supported_arrows(&self) -> Vec<usize> {
        let mut used = vec![false; self.arrow_count];
        for a in &self.arrows {
            used[a.over] = true;
        }
        (0..self.arrow_count).filter(|&a| used[a]).collect()
    }

    /// All vectors reachable from `b` by following coefficient arrows, `b` excluded.
    pub fn descendants(&self, b: usize) -> Vec<usize> {
        self.reach(b, true)
    }

    pub fn ancestors(&self, b: usize) -> Vec<usize> {
        self.reach(b, false)
    }

    fn reach(&self, b: usize, forward: bool) -> Vec<usize> {
        let mut seen = vec![false; self.basis.len()];
        let mut stack = vec![b];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            let next: Vec<usize> = if forward {
                self.outgoing(x).map(|a| a.target).collect()
            } else {
                self.incoming(x).map(|a| a.source).collect()
            };
            for n in next {
                if !seen[n] {
                    seen[n] = true;
                    out.push(n);
                    stack.push(n);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Distinguished start vector of a component: its first source in declaration order.
    pub fn component_start(&self, c: usize) -> usize {
        let members = &self.components[c];
        members
            .iter()
            .copied()
            .find(|&b| self.incoming[b].is_empty())
            .unwrap_or(members[0])
    }

    /// The undirected path from the component start to `b` as `(quiver arrow, +1 | -1)`,
    /// where `+1` means the coefficient arrow is traversed forwards.
    pub fn path_from_start(&self, b: usize) -> Vec<(usize, i64)> {
        let start = self.component_start(self.basis[b].component);
        let mut parent: HashMap<usize, (usize, usize, i64)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = HashMap::from([(start, ())]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            let steps = self
                .outgoing(x)
                .map(|a| (a.target, a.over, 1))
                .chain(self.incoming(x).map(|a| (a.source, a.over, -1)))
                .collect::<Vec<_>>();
            for (n, a, sign) in steps {
                if seen.insert(n, ()).is_none() {
                    parent.insert(n, (x, a, sign));
                    queue.push_back(n);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = b;
        while cur != start {
            let (p, a, sign) = parent[&cur];
            path.push((a, sign));
            cur = p;
        }
        path.reverse();
        path
    }

    /// Number of basis vectors over each quiver vertex.
    pub fn push_down_dimensions(&self) -> DimensionVector {
        let mut dims = vec![0; self.vertex_count];
        for b in &self.basis {
            dims[b.over] += 1;
        }
        DimensionVector(dims)
    }

    /// Whether component `c` is a directed path (an equioriented string).
    pub fn is_straight_component(&self, c: usize) -> bool {
        self.components[c].iter().all(|&b| self.incoming[b].len() <= 1 && self.outgoing[b].len() <= 1)
    }

    /// Whether component `c` is a string, i.e. a type A tree of any orientation.
    pub fn is_string_component(&self, c: usize) -> bool {
        self.components[c].iter().all(|&b| self.incoming[b].len() + self.outgoing[b].len() <= 2)
    }

    /// Every component is an equioriented string.
    pub fn is_straight(&self) -> bool {
        (0..self.components.len()).all(|c| self.is_straight_component(c))
    }

    /// Every component is a string (not necessarily equioriented).
    pub fn is_string_forest(&self) -> bool {
        (0..self.components.len()).all(|c| self.is_string_component(c))
    }

    /// Whether `selected` (indexed by basis vector) is closed under successors.
    pub fn is_successor_closed(&self, selected: &[bool]) -> bool {
        self.arrows.iter().all(|a| !selected[a.source] || selected[a.target])
    }

    /// The forest on the kept basis vectors with all arrows between kept vectors.
    /// Components are the connected pieces, ordered by their first basis vector.
    pub fn induced(&self, keep: &[bool]) -> CoefficientForest {
        let mut new_index = vec![usize::MAX; self.basis.len()];
        let mut comp_of = vec![usize::MAX; self.basis.len()];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for b in 0..self.basis.len() {
            if !keep[b] || comp_of[b] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut members = vec![b];
            comp_of[b] = c;
            let mut stack = vec![b];
            while let Some(x) = stack.pop() {
                let nbrs: Vec<usize> = self
                    .outgoing(x)
                    .map(|a| a.target)
                    .chain(self.incoming(x).map(|a| a.source))
                    .collect();
                for n in nbrs {
                    if keep[n] && comp_of[n] == usize::MAX {
                        comp_of[n] = c;
                        members.push(n);
                        stack.push(n);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        let mut basis = Vec::new();
        let mut new_components = Vec::new();
        for (c, members) in components.iter().enumerate() {
            let mut renamed = Vec::new();
            for &b in members {
                new_index[b] = basis.len();
                renamed.push(basis.len());
                basis.push(BasisVector { id: self.basis[b].id.clone(), over: self.basis[b].over, component: c });
            }
            new_components.push(renamed);
        }
        let arrows: Vec<CoefficientArrow> = self
            .arrows
            .iter()
            .filter(|a| keep[a.source] && keep[a.target])
            .map(|a| CoefficientArrow { source: new_index[a.source], target: new_index[a.target], over: a.over })
            .collect();
        let mut outgoing = vec![Vec::new(); basis.len()];
        let mut incoming = vec![Vec::new(); basis.len()];
        for (k, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(k);
            incoming[a.target].push(k);
        }
        let lookup = basis.iter().enumerate().map(|(i, b)| (b.id.clone(), i)).collect();
        CoefficientForest {
            basis,
            arrows,
            components: new_components,
            outgoing,
            incoming,
            lookup,
            vertex_count: self.vertex_count,
            arrow_count: self.arrow_count,
        }
    }
}
