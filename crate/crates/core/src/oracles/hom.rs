//! Dimension of `Hom(U, M/U)` by counting triples `(S', mu, T')`.
//!
//! `S'` is a nonempty connected piece of a component of `U` closed under
//! predecessors, `T'` a connected piece of a component of `M/U` closed under
//! successors, and `mu: S' -> T'` an isomorphism respecting the quiver labels.

use crate::fixed::{quotient_forest, restriction_forest, FixedPoint};
use crate::forest::CoefficientForest;
use crate::oracles::OracleError;

pub const COMPONENT_LIMIT: usize = 20;

/// Connected subsets of one component (as masks over the forest's basis) satisfying `closed`.
fn connected_subsets(f: &CoefficientForest, members: &[usize], closed: impl Fn(&[bool]) -> bool) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for bits in 1u32..(1u32 << members.len()) {
        let mut mask = vec![false; f.len()];
        for (k, &b) in members.iter().enumerate() {
            mask[b] = bits >> k & 1 == 1;
        }
        if closed(&mask) && f.induced(&mask).component_count() == 1 {
            out.push(mask);
        }
    }
    out
}

/// The image of `set` under the label-preserving map sending `root` to `image_root`, if it
/// is an injective graph map into `target`.
fn transport(
    src: &CoefficientForest,
    set: &[bool],
    root: usize,
    dst: &CoefficientForest,
    image_root: usize,
) -> Option<Vec<bool>> {
    let mut image = vec![usize::MAX; src.len()];
    let mut used = vec![false; dst.len()];
    image[root] = image_root;
    used[image_root] = true;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        let steps: Vec<(usize, Option<usize>)> = src
            .outgoing(x)
            .filter(|a| set[a.target])
            .map(|a| (a.target, dst.successor_along(image[x], a.over)))
            .chain(src.incoming(x).filter(|a| set[a.source]).map(|a| (a.source, dst.predecessor_along(image[x], a.over))))
            .collect();
        for (y, img) in steps {
            if image[y] != usize::MAX {
                continue;
            }
            let img = img?;
            if used[img] {
                return None;
            }
            used[img] = true;
            image[y] = img;
            stack.push(y);
        }
    }
    Some(used)
}

/// Number of valid triples, which equals `dim Hom(U, M/U)`.
pub fn hom_dim_triples(f: &CoefficientForest, u: &FixedPoint) -> Result<usize, OracleError> {
    let sub = restriction_forest(f, u).expect("fixed points are successor closed");
    let quot = quotient_forest(f, u).expect("fixed points are successor closed");
    let too_big = sub.components().iter().chain(quot.components()).map(|c| c.len()).max().unwrap_or(0);
    if too_big > COMPONENT_LIMIT {
        return Err(OracleError::TooLarge { size: too_big, limit: COMPONENT_LIMIT });
    }
    let mut count = 0;
    let succ_closed = |m: &[bool]| quot.arrows().iter().all(|a| !m[a.source] || m[a.target]);
    let pred_closed = |m: &[bool]| sub.arrows().iter().all(|a| !m[a.target] || m[a.source]);
    let targets: Vec<Vec<bool>> =
        quot.components().iter().flat_map(|c| connected_subsets(&quot, c, succ_closed)).collect();
    for c in sub.components() {
        for s in connected_subsets(&sub, c, pred_closed) {
            let root = (0..sub.len()).find(|&b| s[b]).expect("nonempty");
            let size = s.iter().filter(|&&x| x).count();
            for t in &targets {
                if t.iter().filter(|&&x| x).count() != size {
                    continue;
                }
                for image_root in (0..quot.len()).filter(|&b| t[b] && quot.over(b) == sub.over(root)) {
                    if transport(&sub, &s, root, &quot, image_root).as_deref() == Some(t.as_slice()) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}
