//! The isomorphism `J: Δᵒᵖ → Δ_Int`, the functor `H: Δ_Int → Δ_par` that drops
//! endpoints, and the edge arrows `i_j: [n] → [1]`.

use crate::simplex::{Arrow, IntervalMap, OpArrow, PartialMap, SimplexError, TotalMap};

/// `J([n]) = n + 2`.
pub fn j_ob(level: usize) -> usize {
    level + 2
}

/// `J(a)` for `a: [m] → [n]` with underlying `f: n+1 → m+1`.
///
/// The result `m+2 → n+2` keeps both endpoints and sends an inner point `j`
/// to the least `i` with `f(i) ≥ j`, or to the top `n+1` when there is none.
pub fn j_map(a: &OpArrow) -> IntervalMap {
    let f = a.underlying();
    let (m, n) = (a.dom(), a.cod());
    let mut images = Vec::with_capacity(m + 2);
    images.push(0);
    for j in 1..=m {
        let least = f.images().iter().position(|&v| v >= j).unwrap_or(n + 1);
        images.push(least);
    }
    images.push(n + 1);
    IntervalMap::new(n + 2, images).expect("J produces interval maps")
}

/// Inverse of [`j_map`]: `g: m+2 → n+2` comes from the Δ-map
/// `i ↦ #{ j ∈ 1..=m : g(j) ≤ i }`.
pub fn j_inverse(g: &IntervalMap) -> OpArrow {
    let m = g.source() - 2;
    let n = g.target() - 2;
    let images = (0..=n)
        .map(|i| (1..=m).filter(|&j| g.apply(j) <= i).count())
        .collect();
    let f = TotalMap::new(m + 1, images).expect("counting preserves order");
    OpArrow::from_underlying(f).expect("nonempty ordinals")
}

/// `H(n) = n - 2`.
pub fn h_ob(n: usize) -> usize {
    n - 2
}

/// `H(f)` for `f: n → m`: position `i` goes to `f(i+1) - 1` unless `f(i+1)`
/// is an endpoint of `m`.
pub fn h_map(f: &IntervalMap) -> PartialMap {
    let (n, m) = (f.source(), f.target());
    let images = (0..n - 2)
        .map(|i| {
            let v = f.apply(i + 1);
            (v != 0 && v != m - 1).then(|| v - 1)
        })
        .collect();
    PartialMap::new(m - 2, images).expect("H produces partial maps")
}

/// `H(J(a))`, sending `[n]` to the ordinal `n`.
pub fn hj_map(a: &OpArrow) -> PartialMap {
    h_map(&j_map(a))
}

/// The arrow `i_j: [n] → [1]` whose underlying map is `2 → n+1: [j-1, j]`.
///
/// For `n = 1` the only edge is the identity.
pub fn edge_arrow(n: usize, j: usize) -> Result<OpArrow, SimplexError> {
    if n == 0 || j == 0 || j > n {
        return Err(SimplexError::EdgeIndex { n, j });
    }
    let f = TotalMap::new(n + 1, vec![j - 1, j])?;
    OpArrow::from_underlying(f)
}
