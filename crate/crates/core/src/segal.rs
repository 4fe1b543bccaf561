//! The reduced bar construction of a finite monoid, the Segal maps `pₙ`, the
//! strict and bijective Segal checks, and reconstruction of the monoid.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::finset::{f_eval, validate_monoid, FinFn, FinMonoid, MonoidError, TupleSet};
use crate::functors::{edge_arrow, hj_map};
use crate::label::{concat_flat, parse_flat, render_flat};
use crate::simplex::{enumerate_op, Generator, OpArrow};
use crate::sset::{SSetError, TruncSSet};

/// The default truncation level for constructions and checks.
pub const DEFAULT_TRUNCATION: usize = 4;

/// The reduced bar construction `F∘H∘J` of `m`, truncated at `truncation`.
///
/// Level `n` lists the flat `n`-tuples over `m` in lexicographic order.
pub fn nerve(m: &FinMonoid, truncation: usize) -> TruncSSet {
    let levels = (0..=truncation)
        .map(|n| {
            TupleSet::new(m.order(), n)
                .iter()
                .map(|t| render_flat(&t.iter().map(|&x| m.label(x)).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let image = |g: Generator| f_eval(&hj_map(&g.op_arrow()), m);
    let faces = (0..=truncation)
        .map(|level| {
            if level == 0 {
                Vec::new()
            } else {
                (0..=level).map(|index| image(Generator::Face { level, index })).collect()
            }
        })
        .collect();
    let degeneracies = (0..truncation)
        .map(|level| {
            (0..=level)
                .map(|index| image(Generator::Degeneracy { level, index }))
                .collect()
        })
        .collect();
    TruncSSet::new(levels, faces, degeneracies).expect("nerve has the right shape")
}

/// `pₙ: Xₙ → (X₁)ⁿ`; each element maps to a tuple of indices into `X₁`.
pub fn p_map(x: &TruncSSet, n: usize) -> Result<Vec<Vec<usize>>, SSetError> {
    if n > x.truncation() {
        return Err(SSetError::LevelTooHigh {
            level: n,
            truncation: x.truncation(),
        });
    }
    let edges = (1..=n)
        .map(|j| x.eval_arrow(&edge_arrow(n, j).expect("1 ≤ j ≤ n")))
        .collect::<Result<Vec<FinFn>, _>>()?;
    Ok((0..x.size(n))
        .map(|e| edges.iter().map(|f| f.apply(e)).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegalMode {
    /// `pₙ` is the identity of flat tuples.
    Strict,
    /// `pₙ` is a bijection.
    Bijective,
}

impl std::str::FromStr for SegalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(SegalMode::Strict),
            "bijective" => Ok(SegalMode::Bijective),
            _ => Err(format!("unknown mode `{s}`, expected strict or bijective")),
        }
    }
}

impl fmt::Display for SegalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegalMode::Strict => "strict",
            SegalMode::Bijective => "bijective",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegalWitness {
    /// `X₀` has other than one element.
    BaseNotSingleton { size: usize },
    /// Two simplices share a `pₙ` image.
    Collision {
        first: String,
        second: String,
        image: String,
    },
    /// A tuple of edges is not the image of any simplex.
    Missing { tuple: String },
    /// `pₙ` is bijective but the label is not the concatenation of its edges.
    LabelMismatch { label: String, expected: String },
}

impl fmt::Display for SegalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegalWitness::BaseNotSingleton { size } => {
                write!(f, "X0 has {size} elements, expected 1")
            }
            SegalWitness::Collision {
                first,
                second,
                image,
            } => write!(f, "{first} and {second} both map to {image}"),
            SegalWitness::Missing { tuple } => write!(f, "no simplex maps to {tuple}"),
            SegalWitness::LabelMismatch { label, expected } => {
                write!(f, "{label} has edges {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelVerdict {
    StrictPass,
    BijectivePass,
    Fail(SegalWitness),
}

impl LevelVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, LevelVerdict::Fail(_))
    }
}

impl fmt::Display for LevelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelVerdict::StrictPass => f.write_str("strict pass"),
            LevelVerdict::BijectivePass => f.write_str("bijective pass"),
            LevelVerdict::Fail(w) => write!(f, "FAIL: {w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalReport {
    pub mode: SegalMode,
    pub levels: Vec<LevelVerdict>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelVerdict::passed)
    }

    pub fn first_failure(&self) -> Option<(usize, &SegalWitness)> {
        self.levels.iter().enumerate().find_map(|(n, v)| match v {
            LevelVerdict::Fail(w) => Some((n, w)),
            _ => None,
        })
    }

    pub fn failing_levels(&self) -> Vec<usize> {
        (0..self.levels.len()).filter(|&n| !self.levels[n].passed()).collect()
    }
}

impl fmt::Display for SegalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "segal check ({})", self.mode)?;
        for (n, v) in self.levels.iter().enumerate() {
            writeln!(f, "  level {n}: {v}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Runs the Segal check at every level of the truncation. Witnesses are the
/// first failure in lexicographic label order.
pub fn segal_check(x: &TruncSSet, mode: SegalMode) -> SegalReport {
    let levels = (0..=x.truncation()).map(|n| check_level(x, n, mode)).collect();
    SegalReport { mode, levels }
}

fn check_level(x: &TruncSSet, n: usize, mode: SegalMode) -> LevelVerdict {
    let pass = match mode {
        SegalMode::Strict => LevelVerdict::StrictPass,
        SegalMode::Bijective => LevelVerdict::BijectivePass,
    };
    if n == 0 {
        if x.size(0) != 1 {
            return LevelVerdict::Fail(SegalWitness::BaseNotSingleton { size: x.size(0) });
        }
        if mode == SegalMode::Strict && !parse_flat(&x.level(0)[0]).is_empty() {
            return LevelVerdict::Fail(SegalWitness::LabelMismatch {
                label: x.level(0)[0].clone(),
                expected: "()".into(),
            });
        }
        return pass;
    }
    let p = p_map(x, n).expect("level within truncation");
    let edges = x.level(1);
    let show = |t: &[usize]| format!("[{}]", t.iter().map(|&e| edges[e].as_str()).collect::<Vec<_>>().join(", "));

    let mut by_label: Vec<usize> = (0..x.size(n)).collect();
    by_label.sort_by(|&a, &b| x.level(n)[a].cmp(&x.level(n)[b]));
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for &e in &by_label {
        if let Some(&other) = seen.get(p[e].as_slice()) {
            return LevelVerdict::Fail(SegalWitness::Collision {
                first: x.level(n)[other].clone(),
                second: x.level(n)[e].clone(),
                image: show(&p[e]),
            });
        }
        seen.insert(&p[e], e);
    }
    let expected = TupleSet::new(edges.len(), n).size();
    if seen.len() != expected {
        let mut sorted_edges: Vec<usize> = (0..edges.len()).collect();
        sorted_edges.sort_by(|&a, &b| edges[a].cmp(&edges[b]));
        let missing = TupleSet::new(edges.len(), n)
            .iter()
            .map(|t| t.iter().map(|&k| sorted_edges[k]).collect::<Vec<_>>())
            .find(|t| !seen.contains_key(t.as_slice()))
            .expect("fewer images than tuples");
        return LevelVerdict::Fail(SegalWitness::Missing {
            tuple: show(&missing),
        });
    }
    if mode == SegalMode::Strict {
        for &e in &by_label {
            let parts: Vec<&str> = p[e].iter().map(|&k| edges[k].as_str()).collect();
            let expected = concat_flat(&parts);
            if parse_flat(&x.level(n)[e]) != parse_flat(&expected) {
                return LevelVerdict::Fail(SegalWitness::LabelMismatch {
                    label: x.level(n)[e].clone(),
                    expected,
                });
            }
        }
    }
    pass
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("truncation {truncation} is too shallow, need at least {needed}")]
    TooShallow { truncation: usize, needed: usize },
    #[error("not Segal at level {level}: {witness}")]
    NotSegal { level: usize, witness: SegalWitness },
    #[error("reconstructed product is not a monoid: {0}")]
    NotMonoid(#[from] MonoidError),
}

/// Recovers the monoid `(X₁, d₁ ∘ p₂⁻¹, s₀)` from a Segal object with
/// truncation at least 3.
pub fn reconstruct_monoid(x: &TruncSSet) -> Result<FinMonoid, ReconstructError> {
    reconstruct_at_depth(x, 3)
}

/// Reconstruction with an explicit minimum truncation. Level 2 already
/// determines the product; associativity is then checked by brute force.
pub(crate) fn reconstruct_at_depth(x: &TruncSSet, needed: usize) -> Result<FinMonoid, ReconstructError> {
    if x.truncation() < needed.max(2) {
        return Err(ReconstructError::TooShallow {
            truncation: x.truncation(),
            needed: needed.max(2),
        });
    }
    let report = segal_check(x, SegalMode::Bijective);
    if let Some((level, witness)) = report.first_failure() {
        return Err(ReconstructError::NotSegal {
            level,
            witness: witness.clone(),
        });
    }
    let carrier = x.level(1).to_vec();
    let k = carrier.len();
    let unit = x.generator(Generator::Degeneracy { level: 0, index: 0 }).apply(0);
    let inner = x.generator(Generator::Face { level: 2, index: 1 });
    let p2 = p_map(x, 2).expect("truncation ≥ 2");
    let mut table = vec![vec![0; k]; k];
    for (e, edges) in p2.iter().enumerate() {
        table[edges[0]][edges[1]] = inner.apply(e);
    }
    Ok(validate_monoid(carrier, unit, table)?)
}

/// The first arrow on which `x` and the nerve of `m` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarDifference {
    pub arrow: OpArrow,
    pub element: String,
    pub found: String,
    pub expected: String,
}

impl fmt::Display for BarDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} sends {} to {}, the bar construction sends it to {}",
            self.arrow, self.element, self.found, self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarShapeError {
    #[error("level {level} of the object differs from the bar construction as a labeled set")]
    LevelMismatch { level: usize },
}

/// Compares `x` with `nerve(m, N)` on every arrow of Δᵒᵖ within the truncation,
/// matching elements by label.
pub fn verify_bar_equality(x: &TruncSSet, m: &FinMonoid) -> Result<Result<(), BarDifference>, BarShapeError> {
    let n = x.truncation();
    let y = nerve(m, n);
    let mut to_y: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for level in 0..=n {
        let index: HashMap<&str, usize> =
            y.level(level).iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        if x.size(level) != y.size(level) {
            return Err(BarShapeError::LevelMismatch { level });
        }
        let map = x
            .level(level)
            .iter()
            .map(|l| index.get(l.as_str()).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or(BarShapeError::LevelMismatch { level })?;
        to_y.push(map);
    }
    for dom in 0..=n {
        for cod in 0..=n {
            for a in enumerate_op(dom, cod) {
                let fx = x.eval_arrow(&a).expect("within truncation");
                let fy = y.eval_arrow(&a).expect("within truncation");
                for e in 0..x.size(dom) {
                    let via_x = to_y[cod][fx.apply(e)];
                    let via_y = fy.apply(to_y[dom][e]);
                    if via_x != via_y {
                        return Ok(Err(BarDifference {
                            arrow: a,
                            element: x.level(dom)[e].clone(),
                            found: x.level(cod)[fx.apply(e)].clone(),
                            expected: y.level(cod)[via_y].clone(),
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{cyclic, enumerate_monoids, left_absorbing};
    use crate::sset::simplicial_identities_check;

    fn z2() -> FinMonoid {
        cyclic(2)
    }

    fn apply(x: &TruncSSet, g: Generator, label: &str) -> String {
        let level = g.source_level();
        let e = x.index_of(level, label).unwrap();
        x.level(g.target_level())[x.generator(g).apply(e)].clone()
    }

    #[test]
    fn nerve_examples() {
        let x = nerve(&z2(), 3);
        assert_eq!(apply(&x, Generator::Face { level: 2, index: 1 }, "(1,1)"), "0");
        assert_eq!(apply(&x, Generator::Face { level: 2, index: 0 }, "(1,0)"), "0");
        assert_eq!(apply(&x, Generator::Face { level: 2, index: 2 }, "(1,0)"), "1");
        assert_eq!(apply(&x, Generator::Degeneracy { level: 0, index: 0 }, "()"), "0");
        let l = nerve(&left_absorbing(), 3);
        assert_eq!(apply(&l, Generator::Degeneracy { level: 0, index: 0 }, "()"), "e");
        assert_eq!(
            (0..=3).map(|n| x.size(n)).collect::<Vec<_>>(),
            vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn nerve_is_simplicial() {
        for m in [z2(), left_absorbing(), cyclic(3)] {
            assert!(simplicial_identities_check(&nerve(&m, 4)).is_empty());
        }
    }

    #[test]
    fn edges_of_the_nerve_are_projections() {
        let m = left_absorbing();
        let x = nerve(&m, 4);
        let i2 = edge_arrow(3, 2).unwrap();
        let f = x.eval_arrow(&i2).unwrap();
        for (e, l) in x.level(3).iter().enumerate() {
            assert_eq!(x.level(1)[f.apply(e)], parse_flat(l)[1]);
        }
    }

    #[test]
    fn p_maps() {
        let x = nerve(&cyclic(3), 4);
        let p2 = p_map(&x, 2).unwrap();
        for (e, edges) in p2.iter().enumerate() {
            assert_eq!(TupleSet::new(3, 2).index_of(edges), e);
        }
        assert!(p_map(&x, 0).unwrap().iter().all(Vec::is_empty));
        let c = TruncSSet::constant(vec!["p".into(), "q".into()], 3);
        assert_eq!(p_map(&c, 2).unwrap(), vec![vec![0, 0], vec![1, 1]]);
        assert!(p_map(&c, 4).is_err());
    }

    #[test]
    fn nerves_are_strictly_segal() {
        for order in 1..=3 {
            for m in enumerate_monoids(order).unwrap() {
                let report = segal_check(&nerve(&m, 4), SegalMode::Strict);
                assert!(report.passed(), "{report}");
                assert!(report.levels.iter().all(|v| *v == LevelVerdict::StrictPass));
                assert!(segal_check(&nerve(&m, 4), SegalMode::Bijective).passed());
            }
        }
    }

    #[test]
    fn constant_two_point_fails() {
        let c = TruncSSet::constant(vec!["p".into(), "q".into()], 3);
        let report = segal_check(&c, SegalMode::Bijective);
        assert_eq!(
            report.levels[0],
            LevelVerdict::Fail(SegalWitness::BaseNotSingleton { size: 2 })
        );
        assert_eq!(report.levels[1], LevelVerdict::BijectivePass);
        assert_eq!(
            report.levels[2],
            LevelVerdict::Fail(SegalWitness::Missing {
                tuple: "[p, q]".into()
            })
        );
        assert_eq!(report.failing_levels(), vec![0, 2, 3]);
        assert!(matches!(
            reconstruct_monoid(&c),
            Err(ReconstructError::NotSegal { level: 0, .. })
        ));
    }

    #[test]
    fn one_point_object_is_bijective_but_not_strict() {
        let c = TruncSSet::constant(vec!["*".into()], 3);
        assert!(segal_check(&c, SegalMode::Bijective).passed());
        let strict = segal_check(&c, SegalMode::Strict);
        assert!(matches!(strict.levels[0], LevelVerdict::Fail(SegalWitness::LabelMismatch { .. })));
        assert_eq!(strict.levels[1], LevelVerdict::StrictPass);
    }

    #[test]
    fn collision_witness() {
        // add a fifth 2-simplex "x" to the Z2 nerve whose edges are (0, 0)
        let x = nerve(&z2(), 2);
        let mut levels = x.levels().to_vec();
        levels[2].push("x".into());
        let extend = |g: Generator| {
            let mut images = x.generator(g).images().to_vec();
            images.push(0);
            FinFn::new(2, images).unwrap()
        };
        let faces = vec![
            vec![],
            (0..=1).map(|i| x.generator(Generator::Face { level: 1, index: i }).clone()).collect(),
            (0..=2).map(|i| extend(Generator::Face { level: 2, index: i })).collect(),
        ];
        let degeneracies = vec![
            vec![FinFn::constant(1, 2, 0)],
            (0..=1)
                .map(|i| {
                    let f = x.generator(Generator::Degeneracy { level: 1, index: i });
                    FinFn::new(5, f.images().to_vec()).unwrap()
                })
                .collect(),
        ];
        let y = TruncSSet::new(levels, faces, degeneracies).unwrap();
        let report = segal_check(&y, SegalMode::Bijective);
        assert_eq!(
            report.levels[2],
            LevelVerdict::Fail(SegalWitness::Collision {
                first: "(0,0)".into(),
                second: "x".into(),
                image: "[0, 0]".into(),
            })
        );
    }

    #[test]
    fn reconstruction_round_trips() {
        let z3 = cyclic(3);
        assert_eq!(reconstruct_monoid(&nerve(&z3, 3)).unwrap(), z3);
        for order in 1..=3 {
            for m in enumerate_monoids(order).unwrap() {
                assert_eq!(reconstruct_monoid(&nerve(&m, 3)).unwrap(), m);
            }
        }
        assert!(matches!(
            reconstruct_monoid(&nerve(&z3, 2)),
            Err(ReconstructError::TooShallow { .. })
        ));
    }

    #[test]
    fn bar_equality() {
        let m = left_absorbing();
        assert_eq!(verify_bar_equality(&nerve(&m, 3), &m), Ok(Ok(())));
        assert!(verify_bar_equality(&nerve(&m, 3), &z2()).is_err());
        // mutate d1 on level 2: (1,1) now goes to 1 instead of 0
        let x = nerve(&z2(), 3);
        let g = Generator::Face { level: 2, index: 1 };
        let mut f = x.generator(g).clone();
        f.set(3, 1);
        let y = x.with_generator(g, f).unwrap();
        let diff = verify_bar_equality(&y, &z2()).unwrap().unwrap_err();
        assert_eq!(diff.element, "(1,1)");
        assert!(!simplicial_identities_check(&y).is_empty());
    }

    #[test]
    fn swapped_faces_are_caught() {
        let x = nerve(&z2(), 3);
        let d0 = Generator::Face { level: 2, index: 0 };
        let d1 = Generator::Face { level: 2, index: 1 };
        let (f0, f1) = (x.generator(d0).clone(), x.generator(d1).clone());
        let y = x.with_generator(d0, f1).unwrap().with_generator(d1, f0).unwrap();
        assert!(!simplicial_identities_check(&y).is_empty());
        // on level 1 both faces land in the single point, so swapping them is invisible
        let x = nerve(&z2(), 3);
        let (a, b) = (Generator::Face { level: 1, index: 0 }, Generator::Face { level: 1, index: 1 });
        let (fa, fb) = (x.generator(a).clone(), x.generator(b).clone());
        let y = x.clone().with_generator(a, fb).unwrap().with_generator(b, fa).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn relabelled_order_still_reconstructs() {
        // a Segal object with the same labels in a different order is still the bar construction
        let m = cyclic(3);
        let x = nerve(&m, 3);
        let doc = x.to_doc();
        let mut shuffled = doc.clone();
        for level in shuffled.levels.iter_mut() {
            level.reverse();
        }
        for images in shuffled.faces.values_mut().chain(shuffled.degeneracies.values_mut()) {
            images.reverse();
        }
        let y = TruncSSet::from_doc(&shuffled).unwrap();
        assert!(segal_check(&y, SegalMode::Strict).passed());
        let r = reconstruct_monoid(&y).unwrap();
        assert_eq!(verify_bar_equality(&y, &r), Ok(Ok(())));
        assert_eq!(r.order(), 3);
    }
}
