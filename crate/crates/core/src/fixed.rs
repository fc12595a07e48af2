//! Torus fixed points (successor-closed subquivers), initial parameters and cells.

use std::fmt;

use thiserror::Error;

use crate::forest::CoefficientForest;
use crate::grading::AlignedBasis;
use crate::instance::Instance;
use crate::quiver::DimensionVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedError {
    #[error("basis subset is not closed under successors: `{from}` -> `{to}` leaves it")]
    NotSuccessorClosed { from: String, to: String },
    #[error("instance does not have the full flag shape: {0}")]
    NotFlagShape(String),
}

/// An `e`-dimensional successor-closed set of basis vectors, stored as sorted basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    pub selected: Vec<usize>,
}

impl FixedPoint {
    pub fn new(mut selected: Vec<usize>) -> Self {
        selected.sort_unstable();
        selected.dedup();
        FixedPoint { selected }
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &b in &self.selected {
            m[b] = true;
        }
        m
    }

    pub fn contains(&self, b: usize) -> bool {
        self.selected.binary_search(&b).is_ok()
    }

    pub fn ids<'a>(&self, f: &'a CoefficientForest) -> Vec<&'a str> {
        self.selected.iter().map(|&b| f.id(b)).collect()
    }

    pub fn dimension_vector(&self, f: &CoefficientForest) -> DimensionVector {
        let mut d = vec![0; f.quiver_vertex_count()];
        for &b in &self.selected {
            d[f.over(b)] += 1;
        }
        DimensionVector(d)
    }

    /// `K_i`: the fiber positions (1-based) of the selected vectors over each vertex.
    pub fn fibers(&self, basis: &AlignedBasis) -> Vec<Vec<usize>> {
        basis
            .fiber_order
            .iter()
            .map(|fib| fib.iter().enumerate().filter(|(_, b)| self.contains(**b)).map(|(p, _)| p + 1).collect())
            .collect()
    }
}

/// Up-sets of one component with their per-vertex counts.
fn component_up_sets(f: &CoefficientForest, members: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    // Successors come before predecessors in `order`.
    let mut order = Vec::with_capacity(members.len());
    let mut placed = vec![false; f.len()];
    while order.len() < members.len() {
        for &b in members {
            if !placed[b] && f.outgoing(b).all(|a| placed[a.target]) {
                placed[b] = true;
                order.push(b);
            }
        }
    }
    let n = f.quiver_vertex_count();
    let mut out = Vec::new();
    let mut chosen = vec![false; f.len()];
    let mut stack = Vec::new();
    let mut counts = vec![0; n];
    fn rec(
        f: &CoefficientForest,
        order: &[usize],
        k: usize,
        chosen: &mut Vec<bool>,
        stack: &mut Vec<usize>,
        counts: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if k == order.len() {
            out.push((stack.clone(), counts.clone()));
            return;
        }
        let b = order[k];
        rec(f, order, k + 1, chosen, stack, counts, out);
        if f.outgoing(b).all(|a| chosen[a.target]) {
            chosen[b] = true;
            stack.push(b);
            counts[f.over(b)] += 1;
            rec(f, order, k + 1, chosen, stack, counts, out);
            counts[f.over(b)] -= 1;
            stack.pop();
            chosen[b] = false;
        }
    }
    rec(f, &order, 0, &mut chosen, &mut stack, &mut counts, &mut out);
    out
}

/// All `e`-dimensional successor-closed subsets, sorted by their basis index lists.
pub fn enumerate_fixed_points(f: &CoefficientForest, e: &DimensionVector) -> Vec<FixedPoint> {
    let n = f.quiver_vertex_count();
    let comps: Vec<Vec<(Vec<usize>, Vec<usize>)>> =
        f.components().iter().map(|members| component_up_sets(f, members)).collect();
    // Capacity of the components from index c onwards.
    let mut capacity = vec![vec![0usize; n]; comps.len() + 1];
    for c in (0..comps.len()).rev() {
        capacity[c] = capacity[c + 1].clone();
        for &b in &f.components()[c] {
            capacity[c][f.over(b)] += 1;
        }
    }
    let mut out = Vec::new();
    let mut need = e.entries().to_vec();
    let mut picked: Vec<usize> = Vec::new();
    fn rec(
        comps: &[Vec<(Vec<usize>, Vec<usize>)>],
        capacity: &[Vec<usize>],
        c: usize,
        need: &mut Vec<usize>,
        picked: &mut Vec<usize>,
        out: &mut Vec<FixedPoint>,
    ) {
        if need.iter().zip(&capacity[c]).any(|(n, cap)| n > cap) {
            return;
        }
        if c == comps.len() {
            if need.iter().all(|&x| x == 0) {
                out.push(FixedPoint::new(picked.clone()));
            }
            return;
        }
        for (set, counts) in &comps[c] {
            if counts.iter().zip(need.iter()).any(|(k, n)| k > n) {
                continue;
            }
            for (x, k) in need.iter_mut().zip(counts) {
                *x -= k;
            }
            let len = picked.len();
            picked.extend_from_slice(set);
            rec(comps, capacity, c + 1, need, picked, out);
            picked.truncate(len);
            for (x, k) in need.iter_mut().zip(counts) {
                *x += k;
            }
        }
    }
    if e.len() == n {
        rec(&comps, &capacity, 0, &mut need, &mut picked, &mut out);
    }
    out.sort();
    out
}

pub fn euler_characteristic(f: &CoefficientForest, e: &DimensionVector) -> usize {
    enumerate_fixed_points(f, e).len()
}

fn check_closed(f: &CoefficientForest, u: &FixedPoint) -> Result<Vec<bool>, FixedError> {
    let mask = u.mask(f.len());
    for a in f.arrows() {
        if mask[a.source] && !mask[a.target] {
            return Err(FixedError::NotSuccessorClosed {
                from: f.id(a.source).to_string(),
                to: f.id(a.target).to_string(),
            });
        }
    }
    Ok(mask)
}

/// The coefficient forest of the subrepresentation `U`.
pub fn restriction_forest(f: &CoefficientForest, u: &FixedPoint) -> Result<CoefficientForest, FixedError> {
    let mask = check_closed(f, u)?;
    Ok(f.induced(&mask))
}

/// The coefficient forest of `M/U`: basis vectors outside `u` with the arrows among them.
pub fn quotient_forest(f: &CoefficientForest, u: &FixedPoint) -> Result<CoefficientForest, FixedError> {
    let mask = check_closed(f, u)?;
    let keep: Vec<bool> = mask.iter().map(|x| !x).collect();
    Ok(f.induced(&keep))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellData {
    pub point: FixedPoint,
    /// Pairs `(j, k)` of basis indices over one vertex, `j` outside and `k` inside the point.
    pub initial_params: Vec<(usize, usize)>,
    pub dimension: usize,
}

/// Initial parameters of the cell of `u`.
///
/// A pair `(j, k)` over vertex `i`, with `b_k` selected, `b_j` not selected and `j` above `k`
/// in the fiber order, is initial if no predecessor of `b_k` is selected and every
/// unselected successor of `b_j` lies over a vertex that also carries a successor of `b_k`.
pub fn initial_parameters(f: &CoefficientForest, basis: &AlignedBasis, u: &FixedPoint) -> CellData {
    let mask = u.mask(f.len());
    let mut params = Vec::new();
    for fib in &basis.fiber_order {
        for (pk, &k) in fib.iter().enumerate() {
            if !mask[k] || f.incoming(k).any(|a| mask[a.source]) {
                continue;
            }
            let k_reach: Vec<usize> = f.descendants(k).iter().map(|&s| f.over(s)).collect();
            for &j in &fib[pk + 1..] {
                if mask[j] {
                    continue;
                }
                let covered = f.descendants(j).iter().filter(|&&s| !mask[s]).all(|&s| k_reach.contains(&f.over(s)));
                if covered {
                    params.push((j, k));
                }
            }
        }
    }
    params.sort_unstable();
    let dimension = params.len();
    CellData { point: u.clone(), initial_params: params, dimension }
}

/// `c_k` = number of fixed points whose cell has dimension `k`.
pub fn poincare_polynomial(f: &CoefficientForest, basis: &AlignedBasis, e: &DimensionVector) -> Vec<u64> {
    poincare_from_dimensions(enumerate_fixed_points(f, e).iter().map(|u| initial_parameters(f, basis, u).dimension))
}

pub fn poincare_from_dimensions(dims: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut coeffs: Vec<u64> = Vec::new();
    for d in dims {
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        coeffs[d] += 1;
    }
    coeffs
}

/// Value of an integer polynomial at `q`.
pub fn evaluate(coeffs: &[u64], q: u64) -> u128 {
    coeffs.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
}

/// Whether the instance is `n` full strings over `1 -> ... -> n-1` with `e = (1, ..., n-1)`.
pub fn flag_shape(inst: &Instance) -> Result<usize, FixedError> {
    let f = &inst.forest;
    let q = &inst.quiver;
    let n = f.component_count();
    let bad = |why: &str| Err(FixedError::NotFlagShape(why.to_string()));
    if n < 2 || q.vertex_count() != n - 1 {
        return bad("expected n strings over a quiver with n-1 vertices");
    }
    for (v, a) in q.arrows().iter().enumerate() {
        if a.source != v || a.target != v + 1 {
            return bad("quiver is not equioriented type A in declaration order");
        }
    }
    if q.arrow_count() != n.saturating_sub(2) {
        return bad("quiver is not equioriented type A in declaration order");
    }
    for c in 0..n {
        let members = &f.components()[c];
        if members.len() != n - 1 || !f.is_straight_component(c) || f.over(f.component_start(c)) != 0 {
            return bad("every component must be a full string");
        }
    }
    if inst.dims.entries() != (1..n).collect::<Vec<_>>().as_slice() {
        return bad("dimension vector must be (1, ..., n-1)");
    }
    Ok(n)
}

/// One-line permutation: letter `i` is the height of the segment of `u` starting over vertex `i`.
/// Heights count components from the last declared one (height 1) upwards.
pub fn permutation_of_fixed_point(inst: &Instance, u: &FixedPoint) -> Result<Vec<usize>, FixedError> {
    let n = flag_shape(inst)?;
    let f = &inst.forest;
    let mask = u.mask(f.len());
    let mut perm = vec![0; n];
    let mut used = vec![false; n];
    for c in 0..n {
        let members = &f.components()[c];
        let height = n - c;
        let first = members.iter().copied().filter(|&b| mask[b]).map(|b| f.over(b)).min();
        let slot = first.unwrap_or(n - 1);
        if used[slot] {
            return Err(FixedError::NotFlagShape("segments do not start over distinct vertices".into()));
        }
        used[slot] = true;
        perm[slot] = height;
    }
    Ok(perm)
}

pub fn render_permutation(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    if p.iter().all(|&x| x < 10) {
        format!("({})", parts.concat())
    } else {
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.selected.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
