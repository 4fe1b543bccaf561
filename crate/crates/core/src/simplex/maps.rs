use std::fmt;

use super::{Arrow, SimplexError, Tensor};

/// An order-preserving function `source → target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalMap {
    target: usize,
    images: Vec<usize>,
}

impl TotalMap {
    /// The source is `images.len()`.
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self, SimplexError> {
        if target == 0 && !images.is_empty() {
            return Err(SimplexError::EmptyTarget {
                source_size: images.len(),
            });
        }
        for (position, &value) in images.iter().enumerate() {
            if value >= target {
                return Err(SimplexError::OutOfRange {
                    position,
                    value,
                    target,
                });
            }
            if position > 0 && images[position - 1] > value {
                return Err(SimplexError::NotMonotone { position });
            }
        }
        Ok(Self { target, images })
    }

    pub(crate) fn new_unchecked(target: usize, images: Vec<usize>) -> Self {
        debug_assert!(Self::new(target, images.clone()).is_ok());
        Self { target, images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Positions `j` with `f(j) = f(j+1)`, ascending.
    pub fn collapses(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(j, _)| j)
            .collect()
    }

    /// Target points outside the image, ascending.
    pub fn gaps(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target];
        for &v in &self.images {
            hit[v] = true;
        }
        (0..self.target).filter(|&i| !hit[i]).collect()
    }
}

impl Arrow for TotalMap {
    fn source(&self) -> usize {
        self.images.len()
    }

    fn target(&self) -> usize {
        self.target
    }

    fn identity(n: usize) -> Self {
        Self {
            target: n,
            images: (0..n).collect(),
        }
    }

    fn compose(&self, first: &Self) -> Result<Self, SimplexError> {
        if first.target != self.source() {
            return Err(SimplexError::ShapeMismatch {
                first_target: first.target,
                second_source: self.source(),
            });
        }
        Ok(Self {
            target: self.target,
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }
}

impl Tensor for TotalMap {
    fn tensor(&self, other: &Self) -> Self {
        let shift = self.target;
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&v| shift + v))
            .collect();
        Self {
            target: self.target + other.target,
            images,
        }
    }
}

impl fmt::Display for TotalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}:[", self.source(), self.target)?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// An order-preserving partial function. `None` marks an undefined position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    target: usize,
    images: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(target: usize, images: Vec<Option<usize>>) -> Result<Self, SimplexError> {
        let mut last: Option<usize> = None;
        for (position, value) in images.iter().enumerate() {
            let Some(value) = *value else { continue };
            if value >= target {
                return Err(SimplexError::OutOfRange {
                    position,
                    value,
                    target,
                });
            }
            if last.is_some_and(|l| l > value) {
                return Err(SimplexError::NotMonotone { position });
            }
            last = Some(value);
        }
        Ok(Self { target, images })
    }

    pub(crate) fn new_unchecked(target: usize, images: Vec<Option<usize>>) -> Self {
        debug_assert!(Self::new(target, images.clone()).is_ok());
        Self { target, images }
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.images[i]
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }
}

impl From<TotalMap> for PartialMap {
    fn from(f: TotalMap) -> Self {
        Self {
            target: f.target,
            images: f.images.into_iter().map(Some).collect(),
        }
    }
}

impl Arrow for PartialMap {
    fn source(&self) -> usize {
        self.images.len()
    }

    fn target(&self) -> usize {
        self.target
    }

    fn identity(n: usize) -> Self {
        TotalMap::identity(n).into()
    }

    fn compose(&self, first: &Self) -> Result<Self, SimplexError> {
        if first.target != self.source() {
            return Err(SimplexError::ShapeMismatch {
                first_target: first.target,
                second_source: self.source(),
            });
        }
        Ok(Self {
            target: self.target,
            images: first
                .images
                .iter()
                .map(|v| v.and_then(|i| self.images[i]))
                .collect(),
        })
    }
}

impl Tensor for PartialMap {
    fn tensor(&self, other: &Self) -> Self {
        let shift = self.target;
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|v| v.map(|v| shift + v)))
            .collect();
        Self {
            target: self.target + other.target,
            images,
        }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⇀{}:[", self.source(), self.target)?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match v {
                Some(v) => write!(f, "{v}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

/// A total map between ordinals of size at least 2 that keeps both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalMap(TotalMap);

impl IntervalMap {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self, SimplexError> {
        TotalMap::new(target, images)?.try_into()
    }

    pub(crate) fn new_unchecked(target: usize, images: Vec<usize>) -> Self {
        let map = TotalMap::new_unchecked(target, images);
        debug_assert!(IntervalMap::try_from(map.clone()).is_ok());
        Self(map)
    }

    pub fn underlying(&self) -> &TotalMap {
        &self.0
    }

    pub fn into_underlying(self) -> TotalMap {
        self.0
    }

    pub fn images(&self) -> &[usize] {
        self.0.images()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0.apply(i)
    }
}

impl TryFrom<TotalMap> for IntervalMap {
    type Error = SimplexError;

    fn try_from(map: TotalMap) -> Result<Self, SimplexError> {
        let (source_size, target) = (map.source(), map.target());
        let fail = |reason| SimplexError::NotInterval {
            source_size,
            target,
            reason,
        };
        if source_size < 2 || target < 2 {
            return Err(fail("both ordinals must have at least two elements"));
        }
        if map.images[0] != 0 {
            return Err(fail("first element is not preserved"));
        }
        if map.images[source_size - 1] != target - 1 {
            return Err(fail("last element is not preserved"));
        }
        Ok(Self(map))
    }
}

impl Arrow for IntervalMap {
    fn source(&self) -> usize {
        self.0.source()
    }

    fn target(&self) -> usize {
        self.0.target()
    }

    fn identity(n: usize) -> Self {
        assert!(n >= 2, "Δ_Int has no object {n}");
        Self(TotalMap::identity(n))
    }

    fn compose(&self, first: &Self) -> Result<Self, SimplexError> {
        self.0.compose(&first.0).map(Self)
    }
}

impl fmt::Display for IntervalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The multiplication `2 → 1` of the monoid `(1, μ₁, η₁)`.
pub fn mu1() -> TotalMap {
    TotalMap::new_unchecked(1, vec![0, 0])
}

/// The unit `0 → 1`.
pub fn eta1() -> TotalMap {
    TotalMap::new_unchecked(1, vec![])
}

/// The empty partial function `1 ⇀ 0`.
pub fn pi1() -> PartialMap {
    PartialMap::new_unchecked(0, vec![None])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{compose, tensor};

    fn t(target: usize, images: &[usize]) -> TotalMap {
        TotalMap::new(target, images.to_vec()).unwrap()
    }

    fn p(target: usize, images: &[Option<usize>]) -> PartialMap {
        PartialMap::new(target, images.to_vec()).unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(TotalMap::identity(0).to_string(), "0→0:[]");
        assert_eq!(TotalMap::identity(2).to_string(), "2→2:[0,1]");
        assert_eq!(compose(&TotalMap::identity(1), &mu1()).unwrap(), mu1());
    }

    #[test]
    fn construction_rejects_bad_maps() {
        assert_eq!(
            TotalMap::new(0, vec![0]),
            Err(SimplexError::EmptyTarget { source_size: 1 })
        );
        assert!(matches!(
            TotalMap::new(2, vec![1, 0]),
            Err(SimplexError::NotMonotone { position: 1 })
        ));
        assert!(matches!(
            TotalMap::new(2, vec![0, 2]),
            Err(SimplexError::OutOfRange { value: 2, .. })
        ));
        // all-undefined maps into the empty ordinal are fine
        assert!(PartialMap::new(0, vec![None, None]).is_ok());
        assert!(PartialMap::new(3, vec![Some(2), None, Some(1)]).is_err());
        assert!(IntervalMap::new(3, vec![0, 1]).is_err());
        assert!(IntervalMap::new(3, vec![1, 2]).is_err());
        assert!(IntervalMap::new(1, vec![0, 0]).is_err());
        assert!(IntervalMap::new(3, vec![0, 0, 2]).is_ok());
    }

    #[test]
    fn monoid_unit_law_in_delta() {
        let lhs = compose(&mu1(), &tensor(&eta1(), &TotalMap::identity(1))).unwrap();
        assert_eq!(lhs.to_string(), "1→1:[0]");
    }

    #[test]
    fn partial_composition() {
        let empty: PartialMap = eta1().into();
        assert_eq!(compose(&pi1(), &empty).unwrap().to_string(), "0⇀0:[]");
        let g = p(1, &[None, Some(0)]);
        let f: PartialMap = t(2, &[0, 0]).into();
        assert_eq!(compose(&g, &f).unwrap().to_string(), "2⇀1:[_,_]");
    }

    #[test]
    fn composition_checks_shapes() {
        assert_eq!(
            compose(&mu1(), &mu1()),
            Err(SimplexError::ShapeMismatch {
                first_target: 1,
                second_source: 2
            })
        );
    }

    #[test]
    fn side_by_side_tensor() {
        assert_eq!(tensor(&mu1(), &eta1()).to_string(), "2→2:[0,0]");
        let f = t(3, &[1, 2]);
        assert_eq!(tensor(&TotalMap::identity(0), &f), f);
        assert_eq!(tensor(&t(2, &[1]), &t(1, &[0, 0])).to_string(), "3→3:[1,2,2]");
        let q = tensor(&pi1(), &PartialMap::from(mu1()));
        assert_eq!(q.to_string(), "3⇀1:[_,0,0]");
    }

    #[test]
    fn generators() {
        assert_eq!(mu1().to_string(), "2→1:[0,0]");
        assert_eq!(eta1().to_string(), "0→1:[]");
        assert_eq!(pi1().to_string(), "1⇀0:[_]");
    }

    #[test]
    fn gaps_and_collapses() {
        let f = t(5, &[0, 0, 2, 2, 2, 3]);
        assert_eq!(f.collapses(), vec![0, 2, 3]);
        assert_eq!(f.gaps(), vec![1, 4]);
    }
}
