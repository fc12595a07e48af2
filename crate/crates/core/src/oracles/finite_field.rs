//! Point counts of the quiver Grassmannian over a prime field.
//!
//! Every subspace tuple is enumerated in reduced row-echelon form and kept when
//! each arrow maps the subspace at its source into the subspace at its target.
//! The arrow matrices come from the coefficient forest with all entries 1.

use crate::forest::CoefficientForest;
use crate::oracles::OracleError;
use crate::quiver::DimensionVector;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FqCountResult {
    pub p: u64,
    pub count: u128,
    /// Complete subspace tuples that were checked.
    pub enumerated: u128,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Number of `k`-dimensional subspaces of `F_p^m`, saturating.
pub fn gaussian_binomial(m: usize, k: usize, p: u64) -> u128 {
    if k > m {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((m - i) as u32).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

/// Subspaces as lists of reduced row-echelon basis rows.
fn subspaces(m: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn choose_pivots(m: usize, k: usize, start: usize, pivots: &mut Vec<usize>, p: u64, out: &mut Vec<Vec<Vec<u64>>>) {
        if pivots.len() == k {
            fill(m, pivots, p, out);
            return;
        }
        for c in start..m {
            pivots.push(c);
            choose_pivots(m, k, c + 1, pivots, p, out);
            pivots.pop();
        }
    }
    fn fill(m: usize, pivots: &[usize], p: u64, out: &mut Vec<Vec<Vec<u64>>>) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| (c + 1..m).filter(|x| !pivots.contains(x)).map(move |x| (r, x)))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; m]; pivots.len()];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut rest = code;
            for &(r, x) in &free {
                rows[r][x] = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            out.push(rows);
        }
    }
    choose_pivots(m, k, 0, &mut pivots, p, &mut out);
    out
}

/// Whether `v` lies in the span of reduced row-echelon `rows`.
fn in_span(v: &[u64], rows: &[Vec<u64>], p: u64) -> bool {
    let mut v = v.to_vec();
    for row in rows {
        let pivot = row.iter().position(|&x| x != 0).expect("echelon rows are nonzero");
        let c = v[pivot];
        if c != 0 {
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + p - c * r % p) % p;
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

pub fn count_points_fq(f: &CoefficientForest, e: &DimensionVector, p: u64, budget: u128) -> Result<FqCountResult, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    let n = f.quiver_vertex_count();
    if e.len() != n {
        return Err(OracleError::DimensionMismatch { got: e.len(), expected: n });
    }
    let fibers: Vec<Vec<usize>> = (0..n).map(|i| f.fiber(i)).collect();
    let mut position = vec![0; f.len()];
    for fib in &fibers {
        for (k, &b) in fib.iter().enumerate() {
            position[b] = k;
        }
    }
    let needed = (0..n).fold(1u128, |acc, i| acc.saturating_mul(gaussian_binomial(fibers[i].len(), e[i], p)));
    if needed > budget {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    if needed == 0 {
        return Ok(FqCountResult { p, count: 0, enumerated: 0 });
    }
    let choices: Vec<Vec<Vec<Vec<u64>>>> = (0..n).map(|i| subspaces(fibers[i].len(), e[i], p)).collect();
    // Arrow maps as (source vertex, target vertex, source position -> target position).
    let mut maps: Vec<(usize, usize, Vec<Option<usize>>)> = Vec::new();
    for a in 0..f.quiver_arrow_count() {
        let arrows: Vec<_> = f.arrows().iter().filter(|x| x.over == a).collect();
        let Some(first) = arrows.first() else { continue };
        let (s, t) = (f.over(first.source), f.over(first.target));
        let mut m = vec![None; fibers[s].len()];
        for x in arrows {
            m[position[x.source]] = Some(position[x.target]);
        }
        maps.push((s, t, m));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut result = FqCountResult { p, count: 0, enumerated: 0 };
    fn compatible(
        maps: &[(usize, usize, Vec<Option<usize>>)],
        choices: &[Vec<Vec<Vec<u64>>>],
        chosen: &[usize],
        fibers: &[Vec<usize>],
        p: u64,
    ) -> bool {
        let i = chosen.len() - 1;
        maps.iter().filter(|(s, t, _)| (*s == i && *t <= i) || (*t == i && *s <= i)).all(|(s, t, m)| {
            let src = &choices[*s][chosen[*s]];
            let tgt = &choices[*t][chosen[*t]];
            src.iter().all(|row| {
                let mut image = vec![0u64; fibers[*t].len()];
                for (k, &x) in row.iter().enumerate() {
                    if let Some(j) = m[k] {
                        image[j] = (image[j] + x) % p;
                    }
                }
                in_span(&image, tgt, p)
            })
        })
    }
    fn rec(
        maps: &[(usize, usize, Vec<Option<usize>>)],
        choices: &[Vec<Vec<Vec<u64>>>],
        chosen: &mut Vec<usize>,
        fibers: &[Vec<usize>],
        p: u64,
        result: &mut FqCountResult,
    ) {
        if chosen.len() == choices.len() {
            result.enumerated += 1;
            result.count += 1;
            return;
        }
        let i = chosen.len();
        for c in 0..choices[i].len() {
            chosen.push(c);
            if compatible(maps, choices, chosen, fibers, p) {
                rec(maps, choices, chosen, fibers, p, result);
            } else if chosen.len() == choices.len() {
                result.enumerated += 1;
            }
            chosen.pop();
        }
    }
    rec(&maps, &choices, &mut chosen, &fibers, p, &mut result);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 1, 3), 40);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
        for (m, k, p) in [(4, 2, 2), (3, 1, 3), (5, 2, 2)] {
            assert_eq!(subspaces(m, k, p).len() as u128, gaussian_binomial(m, k, p));
        }
    }

    #[test]
    fn span_membership() {
        let rows = vec![vec![1, 0, 2], vec![0, 1, 1]];
        assert!(in_span(&[1, 1, 0], &rows, 3));
        assert!(!in_span(&[0, 0, 1], &rows, 3));
    }
}
