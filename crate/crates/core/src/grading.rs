//! Gradings of the basis, cocharacters, aligned fiber orders and characters.
//!
//! A constructible grading is fixed by one weight per quiver arrow and one
//! initial weight per component (at the component's distinguished start).
//! The torus weights used downstream come from a [`Cocharacter`]: `gamma`
//! per component and `nu` per supported arrow.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::forest::CoefficientForest;
use crate::instance::Instance;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("input is not straight: component {component} is not an equioriented string")]
    NotStraight { component: usize },
    #[error("component {component} has two basis vectors over vertex `{vertex}`; the component-wise grading is not fiber-strict")]
    RepeatedVertex { component: usize, vertex: String },
    #[error("dimension mismatch: character has ({eps}, {delta}) entries, cocharacter has ({gamma}, {nu})")]
    DimensionMismatch { eps: usize, delta: usize, gamma: usize, nu: usize },
    #[error("strands leaving `{vertex}` along `{first}` and `{second}` cannot both have their endpoints above the other's image")]
    AlignmentInfeasible { vertex: String, first: String, second: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleGrading {
    /// Indexed by quiver arrow.
    pub edge_weights: Vec<i64>,
    /// Indexed by component; the weight at the component's start vector.
    pub initial_weights: Vec<i64>,
}

/// Weight of every basis vector, propagated from each component's start.
pub fn expand_grading(g: &ConstructibleGrading, f: &CoefficientForest) -> Vec<i64> {
    (0..f.len())
        .map(|b| {
            let start = g.initial_weights[f.component_of(b)];
            start + f.path_from_start(b).iter().map(|&(a, s)| s * g.edge_weights[a]).sum::<i64>()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowConflict {
    pub arrow: usize,
    pub differences: BTreeSet<i64>,
}

/// Checks that every coefficient arrow over the same quiver arrow has the same weight
/// difference. On success returns that difference per quiver arrow (`None` for arrows
/// carrying no coefficient arrow).
pub fn is_constructible(wt: &[i64], f: &CoefficientForest) -> Result<Vec<Option<i64>>, Vec<ArrowConflict>> {
    let mut diffs: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); f.quiver_arrow_count()];
    for a in f.arrows() {
        diffs[a.over].insert(wt[a.target] - wt[a.source]);
    }
    let conflicts: Vec<ArrowConflict> = diffs
        .iter()
        .enumerate()
        .filter(|(_, d)| d.len() > 1)
        .map(|(arrow, d)| ArrowConflict { arrow, differences: d.clone() })
        .collect();
    if conflicts.is_empty() {
        Ok(diffs.iter().map(|d| d.iter().next().copied()).collect())
    } else {
        Err(conflicts)
    }
}

/// `gamma` per component, `nu` per supported arrow (see [`AlignedBasis::supported`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocharacter {
    pub gamma: Vec<i64>,
    pub nu: Vec<i64>,
}

/// Integer torus character in the basis `eps_1..eps_d, delta_1..delta_c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub eps: Vec<i64>,
    pub delta: Vec<i64>,
}

impl Character {
    pub fn zero(d: usize, c: usize) -> Self {
        Character { eps: vec![0; d], delta: vec![0; c] }
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().chain(&self.delta).all(|&x| x == 0)
    }

    pub fn sub(&self, other: &Character) -> Character {
        Character {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect(),
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a - b).collect(),
        }
    }

    /// Coefficients in variable order `eps_1..eps_d, delta_1..delta_c`.
    pub fn coefficients(&self) -> Vec<i64> {
        self.eps.iter().chain(&self.delta).copied().collect()
    }

    /// Renders as e.g. `+e2 -e1 +d[a]`: positive eps terms, negative eps terms, then deltas
    /// in the same sign order.
    pub fn render(&self, q: &Quiver, supported: &[usize]) -> String {
        let mut parts = Vec::new();
        let term = |coef: i64, name: String| {
            let sign = if coef > 0 { '+' } else { '-' };
            match coef.abs() {
                1 => format!("{sign}{name}"),
                mag => format!("{sign}{mag}{name}"),
            }
        };
        let eps = self.eps.iter().enumerate().map(|(j, &c)| (c, format!("e{}", j + 1)));
        let delta = self.delta.iter().enumerate().map(|(k, &c)| (c, format!("d[{}]", q.arrow(supported[k]).id)));
        for group in [eps.collect::<Vec<_>>(), delta.collect::<Vec<_>>()] {
            for positive in [true, false] {
                for (c, name) in &group {
                    if *c != 0 && (*c > 0) == positive {
                        parts.push(term(*c, name.clone()));
                    }
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

pub fn pairing(chi: &Cocharacter, ch: &Character) -> Result<i64, GradingError> {
    if chi.gamma.len() != ch.eps.len() || chi.nu.len() != ch.delta.len() {
        return Err(GradingError::DimensionMismatch {
            eps: ch.eps.len(),
            delta: ch.delta.len(),
            gamma: chi.gamma.len(),
            nu: chi.nu.len(),
        });
    }
    let e: i64 = chi.gamma.iter().zip(&ch.eps).map(|(a, b)| a * b).sum();
    let d: i64 = chi.nu.iter().zip(&ch.delta).map(|(a, b)| a * b).sum();
    Ok(e + d)
}

/// Per-vertex fiber orders plus the indexing of components and supported arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedBasis {
    /// `fiber_order[i]` lists the basis vectors over vertex `i`, lowest index first.
    pub fiber_order: Vec<Vec<usize>>,
    /// Position of each basis vector inside its fiber order.
    pub position: Vec<usize>,
    /// Component of each basis vector.
    pub segment_of: Vec<usize>,
    /// Quiver arrow to index in `0..c`, for arrows in the support of `M`.
    pub arrow_index: Vec<Option<usize>>,
    /// Inverse of `arrow_index`.
    pub supported: Vec<usize>,
}

impl AlignedBasis {
    /// Fiber orders sorted by the given weights, ties broken by declaration order.
    pub fn from_weights(f: &CoefficientForest, wt: &[i64]) -> Self {
        let n = f.quiver_vertex_count();
        let mut fiber_order = Vec::with_capacity(n);
        let mut position = vec![0; f.len()];
        for i in 0..n {
            let mut fib = f.fiber(i);
            fib.sort_by_key(|&b| (wt[b], b));
            for (p, &b) in fib.iter().enumerate() {
                position[b] = p;
            }
            fiber_order.push(fib);
        }
        let supported = f.supported_arrows();
        let mut arrow_index = vec![None; f.quiver_arrow_count()];
        for (k, &a) in supported.iter().enumerate() {
            arrow_index[a] = Some(k);
        }
        AlignedBasis {
            fiber_order,
            position,
            segment_of: (0..f.len()).map(|b| f.component_of(b)).collect(),
            arrow_index,
            supported,
        }
    }

    pub fn component_count(&self) -> usize {
        self.segment_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// `eps` of the component plus the signed arrow counts along the path from its start.
    pub fn vertex_character(&self, f: &CoefficientForest, b: usize) -> Character {
        let mut ch = Character::zero(f.component_count(), self.supported.len());
        ch.eps[f.component_of(b)] = 1;
        for (a, s) in f.path_from_start(b) {
            let k = self.arrow_index[a].expect("arrows on forest paths are supported");
            ch.delta[k] += s;
        }
        ch
    }

    /// Weights induced by a cocharacter: the pairing with every vertex character.
    pub fn cocharacter_weights(&self, f: &CoefficientForest, chi: &Cocharacter) -> Vec<i64> {
        (0..f.len())
            .map(|b| pairing(chi, &self.vertex_character(f, b)).expect("cocharacter sized for this forest"))
            .collect()
    }
}

/// A cocharacter together with the fiber orders it realizes.
#[derive(Debug, Clone)]
pub struct Alignment {
    pub basis: AlignedBasis,
    pub chi: Cocharacter,
    pub weights: Vec<i64>,
    /// Vertices where two strands leave along different arrows, so the endpoint
    /// condition cannot hold for both arrows at once.
    pub sa1_conflicts: Vec<GradingError>,
    /// True for the component-wise grading used on non-straight forests.
    pub experimental: bool,
}

/// `gamma_j = j * l` with `l` the largest component size and `nu = 1`; injective on the basis.
pub fn distinct_weight_cocharacter(f: &CoefficientForest) -> Result<Cocharacter, GradingError> {
    ensure_straight(f)?;
    let l = f.components().iter().map(|c| c.len()).max().unwrap_or(0) as i64;
    Ok(Cocharacter {
        gamma: (0..f.component_count() as i64).map(|j| j * l).collect(),
        nu: vec![1; f.supported_arrows().len()],
    })
}

fn ensure_straight(f: &CoefficientForest) -> Result<(), GradingError> {
    match (0..f.component_count()).find(|&c| !f.is_straight_component(c)) {
        Some(component) => Err(GradingError::NotStraight { component }),
        None => Ok(()),
    }
}

/// Steps from `b` to the end of its (straight) component.
fn remaining_steps(f: &CoefficientForest, b: usize) -> usize {
    let mut r = 0;
    let mut cur = b;
    while let Some(a) = f.outgoing(cur).next() {
        cur = a.target;
        r += 1;
    }
    r
}

/// Attractive grading with aligned fiber orders for a straight forest.
///
/// Components are ranked by (length, end vertex, start vertex, declaration), vertices
/// compared by `vertex_order`. With `D` the number of components, the endpoint of the
/// component of rank `r` gets weight `r + 1` and every arrow weight `D`. Endpoints then
/// outrank everything that continues, and the weights are distinct inside every fiber.
pub fn attractive_aligned(inst: &Instance) -> Result<Alignment, GradingError> {
    let f = &inst.forest;
    ensure_straight(f)?;
    let rank = inst.vertex_rank();
    let d = f.component_count();
    let dd = d.max(1) as i64;
    let mut keys: Vec<(usize, usize, usize, usize)> = (0..d)
        .map(|c| {
            let members = &f.components()[c];
            let start = f.component_start(c);
            let len = members.len() - 1;
            let mut end = start;
            while let Some(a) = f.outgoing(end).next() {
                end = a.target;
            }
            (len, rank[f.over(end)], rank[f.over(start)], c)
        })
        .collect();
    keys.sort_unstable();
    let mut end_weight = vec![0i64; d];
    for (r, key) in keys.iter().enumerate() {
        end_weight[key.3] = r as i64 + 1;
    }
    let gamma: Vec<i64> = (0..d)
        .map(|c| end_weight[c] - dd * (f.components()[c].len() as i64 - 1))
        .collect();
    let supported = f.supported_arrows();
    let chi = Cocharacter { gamma, nu: vec![dd; supported.len()] };
    let provisional = AlignedBasis::from_weights(f, &vec![0; f.len()]);
    let weights = provisional.cocharacter_weights(f, &chi);
    debug_assert!((0..f.len()).all(|b| weights[b] == end_weight[f.component_of(b)] - dd * remaining_steps(f, b) as i64));
    let basis = AlignedBasis::from_weights(f, &weights);
    let sa1_conflicts = sa1_conflicts(&inst.quiver, f);
    Ok(Alignment { basis, chi, weights, sa1_conflicts, experimental: false })
}

/// Component-wise grading for forests with tree components: `gamma_j = j + 1`, `nu = 0`.
/// Requires every component to have at most one basis vector over each vertex.
pub fn component_aligned(inst: &Instance) -> Result<Alignment, GradingError> {
    let f = &inst.forest;
    for (c, members) in f.components().iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &b in members {
            if !seen.insert(f.over(b)) {
                return Err(GradingError::RepeatedVertex {
                    component: c,
                    vertex: inst.quiver.vertex_label(f.over(b)).to_string(),
                });
            }
        }
    }
    let supported = f.supported_arrows();
    let chi = Cocharacter { gamma: (1..=f.component_count() as i64).collect(), nu: vec![0; supported.len()] };
    let weights: Vec<i64> = (0..f.len()).map(|b| f.component_of(b) as i64 + 1).collect();
    let basis = AlignedBasis::from_weights(f, &weights);
    Ok(Alignment { basis, chi, weights, sa1_conflicts: Vec::new(), experimental: true })
}

/// Straight forests get [`attractive_aligned`]; others need `experimental` and get
/// [`component_aligned`].
pub fn alignment_for(inst: &Instance, experimental: bool) -> Result<Alignment, GradingError> {
    if inst.forest.is_straight() {
        return attractive_aligned(inst);
    }
    if !experimental {
        let component = (0..inst.forest.component_count())
            .find(|&c| !inst.forest.is_straight_component(c))
            .expect("some component is not straight");
        return Err(GradingError::NotStraight { component });
    }
    component_aligned(inst)
}

fn sa1_conflicts(q: &Quiver, f: &CoefficientForest) -> Vec<GradingError> {
    let mut out = Vec::new();
    for i in 0..f.quiver_vertex_count() {
        let leaving: BTreeSet<usize> = f.fiber(i).iter().flat_map(|&b| f.outgoing(b).map(|a| a.over)).collect();
        let leaving: Vec<usize> = leaving.into_iter().collect();
        for x in 0..leaving.len() {
            for y in x + 1..leaving.len() {
                out.push(GradingError::AlignmentInfeasible {
                    vertex: q.vertex_label(i).to_string(),
                    first: q.arrow(leaving[x]).id.clone(),
                    second: q.arrow(leaving[y]).id.clone(),
                });
            }
        }
    }
    out
}

/// Literal checks of the attractive and aligned conditions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlignmentReport {
    /// `(vertex, lower, higher)` where the higher fiber index does not carry a larger weight.
    pub ag1: Vec<(usize, usize, usize)>,
    /// Arrows whose coefficient arrows have differing weight differences.
    pub ag2: Vec<usize>,
    /// `(arrow, killed, mapped)` with the killed vector not above the mapped one.
    pub sa1: Vec<(usize, usize, usize)>,
    /// `(arrow, b, b')` where the arrow reverses the fiber order.
    pub sa2: Vec<(usize, usize, usize)>,
}

impl AlignmentReport {
    pub fn attractive(&self) -> bool {
        self.ag1.is_empty() && self.ag2.is_empty()
    }

    pub fn aligned(&self) -> bool {
        self.sa1.is_empty() && self.sa2.is_empty()
    }
}

pub fn check_alignment(f: &CoefficientForest, basis: &AlignedBasis, wt: &[i64]) -> AlignmentReport {
    let mut report = AlignmentReport::default();
    for (i, fib) in basis.fiber_order.iter().enumerate() {
        for x in 0..fib.len() {
            for y in x + 1..fib.len() {
                if wt[fib[y]] <= wt[fib[x]] {
                    report.ag1.push((i, fib[x], fib[y]));
                }
            }
        }
    }
    if let Err(conflicts) = is_constructible(wt, f) {
        report.ag2 = conflicts.into_iter().map(|c| c.arrow).collect();
    }
    for a in 0..f.quiver_arrow_count() {
        let Some(src) = f.arrows().iter().find(|x| x.over == a).map(|x| f.over(x.source)) else {
            continue;
        };
        let fib = &basis.fiber_order[src];
        let mapped: Vec<usize> = fib.iter().copied().filter(|&b| f.successor_along(b, a).is_some()).collect();
        if mapped.is_empty() {
            continue;
        }
        for &killed in fib.iter().filter(|&&b| f.successor_along(b, a).is_none()) {
            for &m in &mapped {
                if basis.position[killed] < basis.position[m] {
                    report.sa1.push((a, killed, m));
                }
            }
        }
        for x in 0..mapped.len() {
            for y in x + 1..mapped.len() {
                let (tx, ty) = (f.successor_along(mapped[x], a).unwrap(), f.successor_along(mapped[y], a).unwrap());
                if basis.position[tx] > basis.position[ty] {
                    report.sa2.push((a, mapped[x], mapped[y]));
                }
            }
        }
    }
    report
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gamma.iter().map(|x| x.to_string()).collect();
        let n: Vec<String> = self.nu.iter().map(|x| x.to_string()).collect();
        write!(f, "gamma=({}) nu=({})", g.join(","), n.join(","))
    }
}
