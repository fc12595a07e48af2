//! GKM sections and Knutson–Tao classes on a moment graph.
//!
//! Variables are `eps_1..eps_d` followed by `delta_1..delta_c`, matching the
//! coefficient order of [`Character::coefficients`](crate::grading::Character::coefficients).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::moment::MomentGraph;
use crate::poly::Poly;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("no class based at point {base}: congruences at point {point} are inconsistent")]
    InfeasibleSystem { base: usize, point: usize },
    #[error("class based at point {base} fails check: {reason}")]
    CheckFailed { base: usize, reason: String },
}

/// Number of polynomial variables for a graph: components plus supported arrows.
pub fn variable_count(g: &MomentGraph) -> usize {
    g.chi.gamma.len() + g.chi.nu.len()
}

pub fn variable_names(g: &MomentGraph, q: &Quiver) -> Vec<String> {
    (1..=g.chi.gamma.len())
        .map(|j| format!("e{j}"))
        .chain(g.basis.supported.iter().map(|&a| format!("d[{}]", q.arrow(a).id)))
        .collect()
}

/// The edge label as a linear form.
pub fn edge_form(g: &MomentGraph, edge: usize) -> Poly {
    Poly::linear(&g.edges[edge].character.coefficients())
}

/// Edges whose congruence `f_x = f_y mod alpha` fails.
pub fn verify_gkm_section(g: &MomentGraph, section: &[Poly]) -> Vec<usize> {
    (0..g.edges.len())
        .filter(|&k| {
            let e = &g.edges[k];
            let diff = &section[e.source] - &section[e.target];
            !matches!(diff.exact_divide_linear(&edge_form(g, k)), Ok(Some(_)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KtClass {
    pub base: usize,
    pub degree: usize,
    /// Nonzero components only.
    pub components: BTreeMap<usize, Poly>,
    /// Whether every congruence system met along the way had a single solution.
    pub unique: bool,
}

impl KtClass {
    pub fn section(&self, n: usize, nvars: usize) -> Vec<Poly> {
        (0..n).map(|y| self.components.get(&y).cloned().unwrap_or_else(|| Poly::zero(nvars))).collect()
    }
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    matches!(a.exact_divide_linear(b), Ok(Some(q)) if q.degree() == Some(0))
}

/// Solves `p = targets[i] mod alphas[i]` for homogeneous `p` of degree `d`, choosing the
/// particular solution built from the first congruence. Returns the solution and whether
/// it is the only one.
fn solve_congruences(constraints: &[(Poly, Poly)], d: usize, nvars: usize) -> Option<(Poly, bool)> {
    let mut p = Poly::zero(nvars);
    let mut modulus = Poly::one(nvars);
    let mut factors: Vec<Poly> = Vec::new();
    for (alpha, target) in constraints {
        let r = target - &p;
        if factors.iter().any(|f| proportional(f, alpha)) || factors.len() > d {
            if !r.exact_divide_linear(alpha).ok()?.is_some() {
                return None;
            }
            continue;
        }
        // Need modulus * h = r mod alpha, with deg h = d - deg modulus.
        let mut h = r.reduce_mod_linear(alpha).ok()?;
        for f in &factors {
            let fr = f.reduce_mod_linear(alpha).ok()?;
            h = h.exact_divide_linear(&fr).ok()??;
        }
        p = &p + &(&modulus * &h);
        modulus = &modulus * alpha;
        factors.push(alpha.clone());
    }
    Some((p, factors.len() > d))
}

/// Knutson–Tao class based at `x`, built along a reverse linear extension of the order.
pub fn kt_class(g: &MomentGraph, reach: &[Vec<bool>], x: usize) -> Result<KtClass, CohomologyError> {
    let nvars = variable_count(g);
    let d = g.out_degree(x);
    let mut values: Vec<Poly> = vec![Poly::zero(nvars); g.len()];
    let mut top = Poly::one(nvars);
    for e in g.out_edges(x) {
        top = &top * &Poly::linear(&e.character.coefficients());
    }
    values[x] = top;
    let mut unique = true;
    for &y in g.topological_order.iter().rev() {
        if y == x || !reach[y][x] {
            continue;
        }
        let constraints: Vec<(Poly, Poly)> = g
            .out_edges(y)
            .map(|e| (Poly::linear(&e.character.coefficients()), values[e.target].clone()))
            .collect();
        let (p, u) =
            solve_congruences(&constraints, d, nvars).ok_or(CohomologyError::InfeasibleSystem { base: x, point: y })?;
        unique &= u;
        values[y] = p;
    }
    let components = values.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
    let class = KtClass { base: x, degree: d, components, unique };
    verify_kt_class(g, reach, &class)?;
    Ok(class)
}

/// Literal check of the top term, degrees, support and all edge congruences.
pub fn verify_kt_class(g: &MomentGraph, reach: &[Vec<bool>], class: &KtClass) -> Result<(), CohomologyError> {
    let nvars = variable_count(g);
    let x = class.base;
    let fail = |reason: String| Err(CohomologyError::CheckFailed { base: x, reason });
    let mut top = Poly::one(nvars);
    for e in g.out_edges(x) {
        top = &top * &Poly::linear(&e.character.coefficients());
    }
    if class.components.get(&x) != Some(&top) {
        return fail("component at the base is not the product of outgoing labels".into());
    }
    if class.degree != g.out_degree(x) {
        return fail("degree differs from the out-degree of the base".into());
    }
    for (&y, p) in &class.components {
        if y >= g.len() {
            return fail(format!("component at unknown point {y}"));
        }
        if !p.is_homogeneous() || p.degree() != Some(class.degree as u32) {
            return fail(format!("component at point {y} is not homogeneous of degree {}", class.degree));
        }
        if !reach[y][x] {
            return fail(format!("component at point {y} lies outside the up-set"));
        }
    }
    let bad = verify_gkm_section(g, &class.section(g.len(), nvars));
    if let Some(&k) = bad.first() {
        return fail(format!("congruence fails on edge {} -> {}", g.edges[k].source, g.edges[k].target));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct KtBasis {
    pub classes: Vec<KtClass>,
    pub unique: bool,
}

/// One class per point; checks upper-triangularity against the order.
pub fn kt_basis(g: &MomentGraph) -> Result<KtBasis, CohomologyError> {
    let reach = g.partial_order();
    let classes = (0..g.len()).map(|x| kt_class(g, &reach, x)).collect::<Result<Vec<_>, _>>()?;
    for c in &classes {
        if !c.components.contains_key(&c.base) {
            return Err(CohomologyError::CheckFailed { base: c.base, reason: "vanishes at its base".into() });
        }
    }
    let unique = classes.iter().all(|c| c.unique);
    Ok(KtBasis { classes, unique })
}
