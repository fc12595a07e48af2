//! Bruhat order on permutations in one-line notation (values `1..=n`).

/// Rank-matrix dominance: `v <= w` iff `#{a <= i : v(a) >= j} <= #{a <= i : w(a) >= j}` for all `i, j`.
pub fn bruhat_leq(v: &[usize], w: &[usize]) -> bool {
    assert_eq!(v.len(), w.len(), "permutations of equal length");
    let n = v.len();
    (1..=n).all(|j| {
        let mut rv = 0;
        let mut rw = 0;
        (0..n).all(|i| {
            rv += usize::from(v[i] >= j);
            rw += usize::from(w[i] >= j);
            rv <= rw
        })
    })
}

pub fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Whether `v = w * t` for a transposition `t` (swap two positions).
pub fn differ_by_transposition(v: &[usize], w: &[usize]) -> bool {
    v.len() == w.len() && v.iter().zip(w).filter(|(a, b)| a != b).count() == 2
}
