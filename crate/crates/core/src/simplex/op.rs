use std::fmt;

use super::{Arrow, SimplexError, TotalMap};

/// An arrow `[dom] → [cod]` of Δᵒᵖ, stored as its underlying Δ-map
/// `cod+1 → dom+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpArrow {
    underlying: TotalMap,
}

impl OpArrow {
    pub fn from_underlying(underlying: TotalMap) -> Result<Self, SimplexError> {
        if underlying.source() == 0 || underlying.target() == 0 {
            return Err(SimplexError::EmptyOrdinal {
                source_size: underlying.source(),
                target: underlying.target(),
            });
        }
        Ok(Self { underlying })
    }

    pub fn underlying(&self) -> &TotalMap {
        &self.underlying
    }

    /// The level `n` of the source object `[n]`.
    pub fn dom(&self) -> usize {
        self.underlying.target() - 1
    }

    /// The level of the target object.
    pub fn cod(&self) -> usize {
        self.underlying.source() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.underlying == TotalMap::identity(self.underlying.source())
    }
}

impl Arrow for OpArrow {
    fn source(&self) -> usize {
        self.dom()
    }

    fn target(&self) -> usize {
        self.cod()
    }

    fn identity(n: usize) -> Self {
        Self {
            underlying: TotalMap::identity(n + 1),
        }
    }

    fn compose(&self, first: &Self) -> Result<Self, SimplexError> {
        if first.cod() != self.dom() {
            return Err(SimplexError::ShapeMismatch {
                first_target: first.cod(),
                second_source: self.dom(),
            });
        }
        Ok(Self {
            underlying: first.underlying.compose(&self.underlying)?,
        })
    }
}

impl fmt::Display for OpArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op({})", self.underlying)
    }
}

/// A generating arrow of Δᵒᵖ, named by its action on a simplicial object.
///
/// `Face { level: n, index: i }` is `dᵢ: [n] → [n-1]` with underlying coface
/// `n → n+1` missing `i`. `Degeneracy { level: n, index: i }` is
/// `sᵢ: [n] → [n+1]` with underlying codegeneracy `n+2 → n+1` hitting `i` twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Face { level: usize, index: usize },
    Degeneracy { level: usize, index: usize },
}

impl Generator {
    pub fn source_level(self) -> usize {
        match self {
            Generator::Face { level, .. } | Generator::Degeneracy { level, .. } => level,
        }
    }

    pub fn target_level(self) -> usize {
        match self {
            Generator::Face { level, .. } => level - 1,
            Generator::Degeneracy { level, .. } => level + 1,
        }
    }

    pub fn underlying(self) -> TotalMap {
        match self {
            Generator::Face { level, index } => {
                debug_assert!(level >= 1 && index <= level);
                let images = (0..level).map(|k| if k < index { k } else { k + 1 }).collect();
                TotalMap::new_unchecked(level + 1, images)
            }
            Generator::Degeneracy { level, index } => {
                debug_assert!(index <= level);
                let images = (0..level + 2)
                    .map(|k| if k <= index { k } else { k - 1 })
                    .collect();
                TotalMap::new_unchecked(level + 1, images)
            }
        }
    }

    pub fn op_arrow(self) -> OpArrow {
        OpArrow {
            underlying: self.underlying(),
        }
    }

    /// Every face and degeneracy whose source and target levels are at most `max_level`.
    pub fn all_within(max_level: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for level in 0..=max_level {
            if level >= 1 {
                out.extend((0..=level).map(|index| Generator::Face { level, index }));
            }
            if level < max_level {
                out.extend((0..=level).map(|index| Generator::Degeneracy { level, index }));
            }
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face { level, index } => write!(f, "d{index}^{level}"),
            Generator::Degeneracy { level, index } => write!(f, "s{index}^{level}"),
        }
    }
}

/// Canonical factorization of `a.underlying()` into codegeneracies followed by
/// cofaces.
///
/// The list is in the order the factors are applied to the underlying
/// Δ-map: degeneracies for each collapse `f(j) = f(j+1)` in decreasing `j`,
/// then faces for each point missing from the image in increasing order.
/// A simplicial object acts by these factors in reverse.
pub fn factorize(a: &OpArrow) -> Vec<Generator> {
    let f = a.underlying();
    let mut out = Vec::new();
    let mut size = f.source();
    for j in f.collapses().into_iter().rev() {
        out.push(Generator::Degeneracy {
            level: size - 2,
            index: j,
        });
        size -= 1;
    }
    for i in f.gaps() {
        out.push(Generator::Face {
            level: size,
            index: i,
        });
        size += 1;
    }
    out
}

/// Composes generator factors listed in application order on underlying maps.
///
/// Returns `None` for the empty list (the level is unknown) or when consecutive
/// factors do not compose.
pub fn recompose(factors: &[Generator]) -> Option<TotalMap> {
    let (first, rest) = factors.split_first()?;
    rest.iter().try_fold(first.underlying(), |acc, g| {
        g.underlying().compose(&acc).ok()
    })
}
