use std::fmt;
use std::str::FromStr;

use super::{AnyMap, IntervalMap, OpArrow, PartialMap, SimplexError, TotalMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    Total,
    Partial,
    Interval,
    /// Arrows `[n] → [m]` of Δᵒᵖ.
    Op,
}

impl FromStr for HomKind {
    type Err = SimplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "total" => Ok(HomKind::Total),
            "partial" => Ok(HomKind::Partial),
            "interval" => Ok(HomKind::Interval),
            "op" => Ok(HomKind::Op),
            _ => Err(SimplexError::Parse {
                input: s.to_string(),
                reason: "expected total, partial, interval or op".into(),
            }),
        }
    }
}

impl fmt::Display for HomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomKind::Total => "total",
            HomKind::Partial => "partial",
            HomKind::Interval => "interval",
            HomKind::Op => "op",
        })
    }
}

/// All order-preserving maps `n → m`, lexicographic in their images.
pub fn enumerate_total(n: usize, m: usize) -> Vec<TotalMap> {
    fn go(n: usize, lo: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<TotalMap>) {
        if cur.len() == n {
            out.push(TotalMap::new_unchecked(m, cur.clone()));
            return;
        }
        for v in lo..m {
            cur.push(v);
            go(n, v, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, m, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All order-preserving partial maps `n ⇀ m`, lexicographic with undefined
/// sorting before `0`.
pub fn enumerate_partial(n: usize, m: usize) -> Vec<PartialMap> {
    fn go(n: usize, lo: usize, m: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<PartialMap>) {
        if cur.len() == n {
            out.push(PartialMap::new_unchecked(m, cur.clone()));
            return;
        }
        cur.push(None);
        go(n, lo, m, cur, out);
        cur.pop();
        for v in lo..m {
            cur.push(Some(v));
            go(n, v, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, m, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All interval maps `n → m`; empty unless both sizes are at least 2.
pub fn enumerate_interval(n: usize, m: usize) -> Vec<IntervalMap> {
    if n < 2 || m < 2 {
        return Vec::new();
    }
    enumerate_total(n - 2, m)
        .into_iter()
        .map(|inner| {
            let mut images = Vec::with_capacity(n);
            images.push(0);
            images.extend_from_slice(inner.images());
            images.push(m - 1);
            IntervalMap::new_unchecked(m, images)
        })
        .collect()
}

/// All arrows `[m] → [n]` of Δᵒᵖ.
pub fn enumerate_op(m: usize, n: usize) -> Vec<OpArrow> {
    enumerate_total(n + 1, m + 1)
        .into_iter()
        .map(|f| OpArrow::from_underlying(f).expect("nonempty ordinals"))
        .collect()
}

pub fn enumerate_hom(kind: HomKind, n: usize, m: usize) -> Vec<AnyMap> {
    match kind {
        HomKind::Total => enumerate_total(n, m).into_iter().map(AnyMap::Total).collect(),
        HomKind::Partial => enumerate_partial(n, m)
            .into_iter()
            .map(AnyMap::Partial)
            .collect(),
        HomKind::Interval => enumerate_interval(n, m)
            .into_iter()
            .map(AnyMap::Interval)
            .collect(),
        HomKind::Op => enumerate_op(n, m).into_iter().map(AnyMap::Op).collect(),
    }
}

/// `C(n, k)` with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
