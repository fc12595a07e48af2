use crate::fixed::FixedPoint;
use crate::forest::CoefficientForest;
use crate::oracles::OracleError;
use crate::quiver::DimensionVector;

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Filters all subsets of the basis by successor closure and dimension vector.
pub fn brute_force_fixed_points(f: &CoefficientForest, e: &DimensionVector) -> Result<Vec<FixedPoint>, OracleError> {
    let n = f.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(OracleError::TooLarge { size: n, limit: BRUTE_FORCE_LIMIT });
    }
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << n) {
        let mut counts = vec![0usize; f.quiver_vertex_count()];
        let mask: Vec<bool> = (0..n).map(|b| bits >> b & 1 == 1).collect();
        for b in 0..n {
            if mask[b] {
                counts[f.over(b)] += 1;
            }
        }
        if counts.as_slice() != e.entries() {
            continue;
        }
        if f.arrows().iter().any(|a| mask[a.source] && !mask[a.target]) {
            continue;
        }
        out.push(FixedPoint::new((0..n).filter(|&b| mask[b]).collect()));
    }
    out.sort();
    Ok(out)
}
