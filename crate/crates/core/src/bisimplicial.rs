//! Truncated bisimplicial objects in finite sets, products of simplicial
//! objects, and the finite checks on them: double Segal conditions, the
//! naturality square of `pₙ`, and Eckmann–Hilton.
//!
//! `X_{n,m}` has a horizontal index `n` and a vertical index `m`. Row `m` is
//! the simplicial object `n ↦ X_{n,m}`; column `n` is `m ↦ X_{n,m}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::{f_apply, FinFn, FinMonoid, TupleSet};
use crate::functors::hj_map;
use crate::label::{pair_label, render_flat};
use crate::segal::{p_map, reconstruct_at_depth, segal_check, ReconstructError, SegalMode, SegalReport};
use crate::simplex::Generator;
use crate::sset::{simplicial_identities_check, IdentityViolation, SSetError, TruncSSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiError {
    #[error("expected a {n}×{m} grid of level sets")]
    Grid { n: usize, m: usize },
    #[error("cell ({n},{m}) repeats the label `{label}`")]
    DuplicateLabel { n: usize, m: usize, label: String },
    #[error("missing {direction} generator {generator} at {fixed}")]
    MissingGenerator {
        direction: Direction,
        generator: Generator,
        fixed: usize,
    },
    #[error("{direction} generator {generator} at {fixed} has the wrong shape")]
    BadGenerator {
        direction: Direction,
        generator: Generator,
        fixed: usize,
    },
    #[error("unexpected generator key `{0}`")]
    UnexpectedGenerator(String),
    #[error("`{label}` is not an element of cell ({n},{m})")]
    UnknownLabel { n: usize, m: usize, label: String },
    #[error("{} invariant violations, first: {}", .0.len(), .0[0])]
    Invalid(Vec<BiViolation>),
    #[error("index {index} is outside the truncation {truncation}")]
    OutOfRange { index: usize, truncation: usize },
    #[error("not commutative: {a}·{b} ≠ {b}·{a}")]
    NotCommutative { a: String, b: String },
    #[error("malformed file: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiViolation {
    Row { m: usize, violation: IdentityViolation },
    Column { n: usize, violation: IdentityViolation },
    /// `horizontal` and `vertical` do not commute on `element` of cell `(n, m)`.
    NotBifunctorial {
        horizontal: Generator,
        vertical: Generator,
        n: usize,
        m: usize,
        element: String,
        horizontal_first: String,
        vertical_first: String,
    },
}

impl fmt::Display for BiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiViolation::Row { m, violation } => write!(f, "row {m}: {violation}"),
            BiViolation::Column { n, violation } => write!(f, "column {n}: {violation}"),
            BiViolation::NotBifunctorial {
                horizontal,
                vertical,
                n,
                m,
                element,
                horizontal_first,
                vertical_first,
            } => write!(
                f,
                "at ({n},{m}) on {element}: {horizontal} then {vertical} gives {horizontal_first}, \
                 {vertical} then {horizontal} gives {vertical_first}"
            ),
        }
    }
}

/// Horizontal generators keyed by `(row m, generator in n)`.
pub type HorizontalGenerators = BTreeMap<(usize, Generator), FinFn>;
/// Vertical generators keyed by `(column n, generator in m)`.
pub type VerticalGenerators = BTreeMap<(usize, Generator), FinFn>;

/// A bisimplicial object restricted to `n ≤ N`, `m ≤ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncBiSSet {
    levels: Vec<Vec<Vec<String>>>,
    horizontal: HorizontalGenerators,
    vertical: VerticalGenerators,
}

impl TruncBiSSet {
    /// Shape checks only; [`Self::validated`] also checks every invariant.
    pub fn from_parts(
        levels: Vec<Vec<Vec<String>>>,
        horizontal: HorizontalGenerators,
        vertical: VerticalGenerators,
    ) -> Result<Self, BiError> {
        let rows = levels.len();
        let cols = levels.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || levels.iter().any(|r| r.len() != cols) {
            return Err(BiError::Grid {
                n: rows,
                m: cols,
            });
        }
        for (n, row) in levels.iter().enumerate() {
            for (m, cell) in row.iter().enumerate() {
                let mut seen = HashSet::new();
                if let Some(dup) = cell.iter().find(|l| !seen.insert(*l)) {
                    return Err(BiError::DuplicateLabel {
                        n,
                        m,
                        label: dup.clone(),
                    });
                }
            }
        }
        let x = Self {
            levels,
            horizontal,
            vertical,
        };
        let (tn, tm) = (x.n_truncation(), x.m_truncation());
        let mut expected = 0;
        for m in 0..=tm {
            for g in Generator::all_within(tn) {
                x.check_shape(Direction::Horizontal, m, g)?;
                expected += 1;
            }
        }
        if expected != x.horizontal.len() {
            return Err(BiError::UnexpectedGenerator("horizontal".into()));
        }
        let mut expected = 0;
        for n in 0..=tn {
            for g in Generator::all_within(tm) {
                x.check_shape(Direction::Vertical, n, g)?;
                expected += 1;
            }
        }
        if expected != x.vertical.len() {
            return Err(BiError::UnexpectedGenerator("vertical".into()));
        }
        Ok(x)
    }

    fn check_shape(&self, direction: Direction, fixed: usize, g: Generator) -> Result<(), BiError> {
        let map = match direction {
            Direction::Horizontal => &self.horizontal,
            Direction::Vertical => &self.vertical,
        };
        let f = map.get(&(fixed, g)).ok_or(BiError::MissingGenerator {
            direction,
            generator: g,
            fixed,
        })?;
        let (s, t) = match direction {
            Direction::Horizontal => (
                self.size(g.source_level(), fixed),
                self.size(g.target_level(), fixed),
            ),
            Direction::Vertical => (
                self.size(fixed, g.source_level()),
                self.size(fixed, g.target_level()),
            ),
        };
        if f.source() != s || f.target() != t {
            return Err(BiError::BadGenerator {
                direction,
                generator: g,
                fixed,
            });
        }
        Ok(())
    }

    pub fn validated(
        levels: Vec<Vec<Vec<String>>>,
        horizontal: HorizontalGenerators,
        vertical: VerticalGenerators,
    ) -> Result<Self, BiError> {
        let x = Self::from_parts(levels, horizontal, vertical)?;
        let v = x.violations();
        if v.is_empty() {
            Ok(x)
        } else {
            Err(BiError::Invalid(v))
        }
    }

    pub fn into_parts(self) -> (Vec<Vec<Vec<String>>>, HorizontalGenerators, VerticalGenerators) {
        (self.levels, self.horizontal, self.vertical)
    }

    /// `N`, the horizontal truncation.
    pub fn n_truncation(&self) -> usize {
        self.levels.len() - 1
    }

    /// `M`, the vertical truncation.
    pub fn m_truncation(&self) -> usize {
        self.levels[0].len() - 1
    }

    pub fn cell(&self, n: usize, m: usize) -> &[String] {
        &self.levels[n][m]
    }

    pub fn size(&self, n: usize, m: usize) -> usize {
        self.levels[n][m].len()
    }

    pub fn horizontal(&self, m: usize, g: Generator) -> &FinFn {
        &self.horizontal[&(m, g)]
    }

    pub fn vertical(&self, n: usize, g: Generator) -> &FinFn {
        &self.vertical[&(n, g)]
    }

    pub fn with_horizontal(mut self, m: usize, g: Generator, f: FinFn) -> Result<Self, BiError> {
        self.horizontal.insert((m, g), f);
        self.check_shape(Direction::Horizontal, m, g)?;
        Ok(self)
    }

    pub fn with_vertical(mut self, n: usize, g: Generator, f: FinFn) -> Result<Self, BiError> {
        self.vertical.insert((n, g), f);
        self.check_shape(Direction::Vertical, n, g)?;
        Ok(self)
    }

    /// The simplicial object `n ↦ X_{n,m}`.
    pub fn row(&self, m: usize) -> Result<TruncSSet, BiError> {
        if m > self.m_truncation() {
            return Err(BiError::OutOfRange {
                index: m,
                truncation: self.m_truncation(),
            });
        }
        let tn = self.n_truncation();
        let levels = (0..=tn).map(|n| self.levels[n][m].clone()).collect();
        let (faces, degeneracies) = generator_tables(tn, |g| self.horizontal(m, g).clone());
        Ok(TruncSSet::new(levels, faces, degeneracies).expect("shapes checked"))
    }

    /// The simplicial object `m ↦ X_{n,m}`.
    pub fn column(&self, n: usize) -> Result<TruncSSet, BiError> {
        if n > self.n_truncation() {
            return Err(BiError::OutOfRange {
                index: n,
                truncation: self.n_truncation(),
            });
        }
        let tm = self.m_truncation();
        let levels = self.levels[n].clone();
        let (faces, degeneracies) = generator_tables(tm, |g| self.vertical(n, g).clone());
        Ok(TruncSSet::new(levels, faces, degeneracies).expect("shapes checked"))
    }

    /// Every row and column identity failure and every non-commuting pair
    /// of horizontal and vertical generators.
    pub fn violations(&self) -> Vec<BiViolation> {
        let mut out = Vec::new();
        for m in 0..=self.m_truncation() {
            let row = self.row(m).expect("in range");
            out.extend(
                simplicial_identities_check(&row)
                    .into_iter()
                    .map(|violation| BiViolation::Row { m, violation }),
            );
        }
        for n in 0..=self.n_truncation() {
            let col = self.column(n).expect("in range");
            out.extend(
                simplicial_identities_check(&col)
                    .into_iter()
                    .map(|violation| BiViolation::Column { n, violation }),
            );
        }
        out.extend(self.bifunctoriality_violations());
        out
    }

    pub fn bifunctoriality_violations(&self) -> Vec<BiViolation> {
        let hgens = Generator::all_within(self.n_truncation());
        let vgens = Generator::all_within(self.m_truncation());
        let mut out = Vec::new();
        for &h in &hgens {
            for &v in &vgens {
                let (n, n2) = (h.source_level(), h.target_level());
                let (m, m2) = (v.source_level(), v.target_level());
                let h_first = self.vertical(n2, v).after(self.horizontal(m, h)).expect("shapes");
                let v_first = self.horizontal(m2, h).after(self.vertical(n, v)).expect("shapes");
                if let Some(e) = (0..h_first.source()).find(|&e| h_first.apply(e) != v_first.apply(e)) {
                    let target = &self.levels[n2][m2];
                    out.push(BiViolation::NotBifunctorial {
                        horizontal: h,
                        vertical: v,
                        n,
                        m,
                        element: self.levels[n][m][e].clone(),
                        horizontal_first: target[h_first.apply(e)].clone(),
                        vertical_first: target[v_first.apply(e)].clone(),
                    });
                }
            }
        }
        out
    }

    pub fn to_doc(&self) -> BiSSetDoc {
        let mut doc = BiSSetDoc {
            n_truncation: self.n_truncation(),
            m_truncation: self.m_truncation(),
            levels: self.levels.clone(),
            hfaces: BTreeMap::new(),
            hdegens: BTreeMap::new(),
            vfaces: BTreeMap::new(),
            vdegens: BTreeMap::new(),
        };
        for (&(m, g), f) in &self.horizontal {
            let n = g.source_level();
            let target = &self.levels[g.target_level()][m];
            let images = f.images().iter().map(|&y| target[y].clone()).collect();
            let (table, index) = match g {
                Generator::Face { index, .. } => (&mut doc.hfaces, index),
                Generator::Degeneracy { index, .. } => (&mut doc.hdegens, index),
            };
            table.insert(format!("{n},{m},{index}"), images);
        }
        for (&(n, g), f) in &self.vertical {
            let m = g.source_level();
            let target = &self.levels[n][g.target_level()];
            let images = f.images().iter().map(|&y| target[y].clone()).collect();
            let (table, index) = match g {
                Generator::Face { index, .. } => (&mut doc.vfaces, index),
                Generator::Degeneracy { index, .. } => (&mut doc.vdegens, index),
            };
            table.insert(format!("{n},{m},{index}"), images);
        }
        doc
    }

    /// Loads and enforces every invariant.
    pub fn from_doc(doc: &BiSSetDoc) -> Result<Self, BiError> {
        let (tn, tm) = (doc.n_truncation, doc.m_truncation);
        if doc.levels.len() != tn + 1 || doc.levels.iter().any(|r| r.len() != tm + 1) {
            return Err(BiError::Grid { n: tn + 1, m: tm + 1 });
        }
        let index: Vec<Vec<HashMap<&str, usize>>> = doc
            .levels
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect())
                    .collect()
            })
            .collect();
        let convert = |images: &Vec<String>, (sn, sm): (usize, usize), (n, m): (usize, usize)| {
            if images.len() != doc.levels[sn][sm].len() {
                return Err(BiError::Format(format!(
                    "generator from ({sn},{sm}) lists {} images for {} elements",
                    images.len(),
                    doc.levels[sn][sm].len()
                )));
            }
            let ys = images
                .iter()
                .map(|l| {
                    index[n][m].get(l.as_str()).copied().ok_or_else(|| BiError::UnknownLabel {
                        n,
                        m,
                        label: l.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FinFn::new(doc.levels[n][m].len(), ys).expect("indices in range"))
        };
        let mut horizontal = BTreeMap::new();
        for (key, images) in doc.hfaces.iter().map(|e| (e, true)).chain(doc.hdegens.iter().map(|e| (e, false))) {
            let (k, list) = key;
            let (n, m, i) = parse_key(k).ok_or_else(|| BiError::UnexpectedGenerator(k.clone()))?;
            let g = make_generator(images, n, i, tn).ok_or_else(|| BiError::UnexpectedGenerator(k.clone()))?;
            if m > tm {
                return Err(BiError::UnexpectedGenerator(k.clone()));
            }
            horizontal.insert((m, g), convert(list, (n, m), (g.target_level(), m))?);
        }
        let mut vertical = BTreeMap::new();
        for (key, images) in doc.vfaces.iter().map(|e| (e, true)).chain(doc.vdegens.iter().map(|e| (e, false))) {
            let (k, list) = key;
            let (n, m, i) = parse_key(k).ok_or_else(|| BiError::UnexpectedGenerator(k.clone()))?;
            let g = make_generator(images, m, i, tm).ok_or_else(|| BiError::UnexpectedGenerator(k.clone()))?;
            if n > tn {
                return Err(BiError::UnexpectedGenerator(k.clone()));
            }
            vertical.insert((n, g), convert(list, (n, m), (n, g.target_level()))?);
        }
        Self::validated(doc.levels.clone(), horizontal, vertical)
    }

    pub fn from_json(text: &str) -> Result<Self, BiError> {
        let doc: BiSSetDoc = serde_json::from_str(text).map_err(|e| BiError::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        crate::jsonfmt::to_json(&self.to_doc())
    }
}

fn parse_key(key: &str) -> Option<(usize, usize, usize)> {
    let mut parts = key.split(',').map(|p| p.trim().parse::<usize>().ok());
    let out = (parts.next()??, parts.next()??, parts.next()??);
    parts.next().is_none().then_some(out)
}

fn make_generator(face: bool, level: usize, index: usize, truncation: usize) -> Option<Generator> {
    let g = if face {
        Generator::Face { level, index }
    } else {
        Generator::Degeneracy { level, index }
    };
    let ok = index <= level
        && level <= truncation
        && if face { level >= 1 } else { level < truncation };
    ok.then_some(g)
}

fn generator_tables(
    truncation: usize,
    mut get: impl FnMut(Generator) -> FinFn,
) -> (Vec<Vec<FinFn>>, Vec<Vec<FinFn>>) {
    let faces = (0..=truncation)
        .map(|level| {
            if level == 0 {
                Vec::new()
            } else {
                (0..=level).map(|index| get(Generator::Face { level, index })).collect()
            }
        })
        .collect();
    let degeneracies = (0..truncation)
        .map(|level| (0..=level).map(|index| get(Generator::Degeneracy { level, index })).collect())
        .collect();
    (faces, degeneracies)
}

/// On-disk form. Generator keys are `"n,m,i"`: the source cell and the index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiSSetDoc {
    #[serde(rename = "N")]
    pub n_truncation: usize,
    #[serde(rename = "M")]
    pub m_truncation: usize,
    pub levels: Vec<Vec<Vec<String>>>,
    pub hfaces: BTreeMap<String, Vec<String>>,
    pub hdegens: BTreeMap<String, Vec<String>>,
    pub vfaces: BTreeMap<String, Vec<String>>,
    pub vdegens: BTreeMap<String, Vec<String>>,
}

/// `X × Y` with its two projections.
#[derive(Clone, Debug)]
pub struct SimplicialProduct {
    pub product: TruncSSet,
    pub proj1: Vec<FinFn>,
    pub proj2: Vec<FinFn>,
}

/// Levelwise product `(X × Y)ₙ = Xₙ × Yₙ` with componentwise generators.
/// Pairs are ordered with the `X` component most significant.
pub fn product(x: &TruncSSet, y: &TruncSSet) -> Result<SimplicialProduct, SSetError> {
    if x.truncation() != y.truncation() {
        return Err(SSetError::TruncationMismatch {
            left: x.truncation(),
            right: y.truncation(),
        });
    }
    let t = x.truncation();
    let levels = (0..=t)
        .map(|n| {
            x.level(n)
                .iter()
                .flat_map(|a| y.level(n).iter().map(move |b| pair_label(a, b)))
                .collect()
        })
        .collect();
    let pair = |f: &FinFn, g: &FinFn| {
        let images = (0..f.source())
            .flat_map(|a| (0..g.source()).map(move |b| f.apply(a) * g.target() + g.apply(b)))
            .collect();
        FinFn::new(f.target() * g.target(), images).expect("in range")
    };
    let (faces, degeneracies) = generator_tables(t, |g| pair(x.generator(g), y.generator(g)));
    let product = TruncSSet::new(levels, faces, degeneracies).expect("componentwise shapes");
    let proj1 = (0..=t)
        .map(|n| {
            let (a, b) = (x.size(n), y.size(n));
            FinFn::new(a, (0..a * b).map(|p| p / b).collect()).expect("in range")
        })
        .collect();
    let proj2 = (0..=t)
        .map(|n| {
            let b = y.size(n);
            FinFn::new(b, (0..x.size(n) * b).map(|p| p % b).collect()).expect("in range")
        })
        .collect();
    Ok(SimplicialProduct {
        product,
        proj1,
        proj2,
    })
}

/// Whether the level-indexed family `f: X → Y` commutes with every generator.
pub fn is_simplicial_map(x: &TruncSSet, y: &TruncSSet, f: &[FinFn]) -> bool {
    x.truncation() == y.truncation()
        && f.len() == x.truncation() + 1
        && Generator::all_within(x.truncation()).into_iter().all(|g| {
            let (s, t) = (g.source_level(), g.target_level());
            y.generator(g).after(&f[s]) == f[t].after(x.generator(g))
        })
}

/// The external product `(X ⊠ Y)_{n,m} = Xₙ × Yₘ`.
pub fn external_product(x: &TruncSSet, y: &TruncSSet) -> TruncBiSSet {
    let (tn, tm) = (x.truncation(), y.truncation());
    let levels = (0..=tn)
        .map(|n| {
            (0..=tm)
                .map(|m| {
                    x.level(n)
                        .iter()
                        .flat_map(|a| y.level(m).iter().map(move |b| pair_label(a, b)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut horizontal = BTreeMap::new();
    for m in 0..=tm {
        let k = y.size(m);
        for g in Generator::all_within(tn) {
            let f = x.generator(g);
            let images = (0..f.source() * k).map(|p| f.apply(p / k) * k + p % k).collect();
            horizontal.insert((m, g), FinFn::new(f.target() * k, images).expect("in range"));
        }
    }
    let mut vertical = BTreeMap::new();
    for n in 0..=tn {
        for g in Generator::all_within(tm) {
            let f = y.generator(g);
            let (ks, kt) = (f.source(), f.target());
            let images = (0..x.size(n) * ks).map(|p| (p / ks) * kt + f.apply(p % ks)).collect();
            vertical.insert((n, g), FinFn::new(x.size(n) * kt, images).expect("in range"));
        }
    }
    TruncBiSSet::from_parts(levels, horizontal, vertical).expect("componentwise shapes")
}

/// The double bar construction of a commutative monoid: `X_{n,m}` is the set
/// of `n·m`-tuples, stored as `n` blocks of `m` entries, so that position
/// `j·m + k` holds the entry at horizontal place `j` and vertical place `k`.
pub fn double_nerve(m: &FinMonoid, n_truncation: usize, m_truncation: usize) -> Result<TruncBiSSet, BiError> {
    if let Some((a, b)) = m.commutativity_witness() {
        return Err(BiError::NotCommutative {
            a: m.label(a).to_string(),
            b: m.label(b).to_string(),
        });
    }
    Ok(double_nerve_unchecked(m, n_truncation, m_truncation))
}

/// [`double_nerve`] without the commutativity check. For a noncommutative
/// monoid the two bar structures do not commute and the result is not a
/// bisimplicial object.
pub fn double_nerve_unchecked(mon: &FinMonoid, n_truncation: usize, m_truncation: usize) -> TruncBiSSet {
    let k = mon.order();
    let levels: Vec<Vec<Vec<String>>> = (0..=n_truncation)
        .map(|n| {
            (0..=m_truncation)
                .map(|m| {
                    TupleSet::new(k, n * m)
                        .iter()
                        .map(|t| render_flat(&t.iter().map(|&x| mon.label(x)).collect::<Vec<_>>()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut horizontal = BTreeMap::new();
    for m in 0..=m_truncation {
        for g in Generator::all_within(n_truncation) {
            let p = hj_map(&g.op_arrow());
            let (n, n2) = (g.source_level(), g.target_level());
            let (src, tgt) = (TupleSet::new(k, n * m), TupleSet::new(k, n2 * m));
            let images = src
                .iter()
                .map(|a| {
                    let mut b = vec![mon.unit(); n2 * m];
                    for col in 0..m {
                        let v: Vec<usize> = (0..n).map(|j| a[j * m + col]).collect();
                        for (j2, y) in f_apply(&p, mon, &v).into_iter().enumerate() {
                            b[j2 * m + col] = y;
                        }
                    }
                    tgt.index_of(&b)
                })
                .collect();
            horizontal.insert((m, g), FinFn::new(tgt.size(), images).expect("in range"));
        }
    }
    let mut vertical = BTreeMap::new();
    for n in 0..=n_truncation {
        for g in Generator::all_within(m_truncation) {
            let q = hj_map(&g.op_arrow());
            let (m, m2) = (g.source_level(), g.target_level());
            let (src, tgt) = (TupleSet::new(k, n * m), TupleSet::new(k, n * m2));
            let images = src
                .iter()
                .map(|a| {
                    let mut b = Vec::with_capacity(n * m2);
                    for j in 0..n {
                        b.extend(f_apply(&q, mon, &a[j * m..(j + 1) * m]));
                    }
                    tgt.index_of(&b)
                })
                .collect();
            vertical.insert((n, g), FinFn::new(tgt.size(), images).expect("in range"));
        }
    }
    TruncBiSSet::from_parts(levels, horizontal, vertical).expect("bar shapes")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSegalReport {
    pub rows: Vec<SegalReport>,
    /// The column `m ↦ X_{1,m}`; absent when `N = 0`.
    pub column: Option<SegalReport>,
}

impl DoubleSegalReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(SegalReport::passed) && self.column.as_ref().is_none_or(SegalReport::passed)
    }

    pub fn failing_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&m| !self.rows[m].passed()).collect()
    }
}

impl fmt::Display for DoubleSegalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, r) in self.rows.iter().enumerate() {
            writeln!(f, "row {m}:")?;
            for (n, v) in r.levels.iter().enumerate() {
                writeln!(f, "  level {n}: {v}")?;
            }
        }
        if let Some(c) = &self.column {
            writeln!(f, "column 1:")?;
            for (m, v) in c.levels.iter().enumerate() {
                writeln!(f, "  level {m}: {v}")?;
            }
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Segal checks on every row and on the column `X_{1,·}`.
pub fn double_segal_check(x: &TruncBiSSet, mode: SegalMode) -> DoubleSegalReport {
    let rows = (0..=x.m_truncation())
        .map(|m| segal_check(&x.row(m).expect("in range"), mode))
        .collect();
    let column = (x.n_truncation() >= 1).then(|| segal_check(&x.column(1).expect("in range"), mode));
    DoubleSegalReport { rows, column }
}

/// A failing naturality square: `element` of `X_{n,m}` under the vertical
/// generator `generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityWitness {
    pub n: usize,
    pub generator: Generator,
    pub element: String,
}

impl fmt::Display for NaturalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p_{} does not commute with vertical {} on {}",
            self.n, self.generator, self.element
        )
    }
}

/// Checks `p_{n,m'} ∘ v = vⁿ ∘ p_{n,m}` for every vertical generator
/// `v: m → m'` and every `n`.
pub fn p_naturality_check(x: &TruncBiSSet) -> Result<(), NaturalityWitness> {
    let rows: Vec<TruncSSet> = (0..=x.m_truncation()).map(|m| x.row(m).expect("in range")).collect();
    for n in 0..=x.n_truncation() {
        let p: Vec<Vec<Vec<usize>>> = rows.iter().map(|r| p_map(r, n).expect("in range")).collect();
        for g in Generator::all_within(x.m_truncation()) {
            let (m, m2) = (g.source_level(), g.target_level());
            let across = x.vertical(n, g);
            let edge = x.vertical(1.min(x.n_truncation()), g);
            for e in 0..x.size(n, m) {
                let left = &p[m2][across.apply(e)];
                let right: Vec<usize> = p[m][e].iter().map(|&y| edge.apply(y)).collect();
                if *left != right {
                    return Err(NaturalityWitness {
                        n,
                        generator: g,
                        element: x.cell(n, m)[e].clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EckmannHiltonError {
    #[error("truncation ({n},{m}) is too shallow, both must be at least 2")]
    TooShallow { n: usize, m: usize },
    #[error("not Segal: {0}")]
    NotSegal(String),
    #[error("{direction} product: {source}")]
    Reconstruct {
        direction: Direction,
        source: ReconstructError,
    },
    #[error("interchange fails on the block [[{a}, {b}], [{c}, {d}]]: (a∘b)·(c∘d) = {left}, (a·c)∘(b·d) = {right}")]
    InterchangeFails {
        a: String,
        b: String,
        c: String,
        d: String,
        left: String,
        right: String,
    },
}

/// The two products on `X_{1,1}` and the checked consequences of interchange.
/// `·` is horizontal and `∘` vertical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckmannHilton {
    pub horizontal: FinMonoid,
    pub vertical: FinMonoid,
    pub units_coincide: bool,
    pub products_equal: bool,
    pub commutative: bool,
    /// Whether the common product has inverses; reported, not required.
    pub grouplike: bool,
}

impl EckmannHilton {
    pub fn verdict(&self) -> bool {
        self.units_coincide && self.products_equal && self.commutative
    }
}

impl fmt::Display for EckmannHilton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "horizontal product:")?;
        write!(f, "{}", self.horizontal)?;
        writeln!(f, "vertical product:")?;
        write!(f, "{}", self.vertical)?;
        writeln!(f, "units coincide: {}", self.units_coincide)?;
        writeln!(f, "products equal: {}", self.products_equal)?;
        writeln!(f, "commutative: {}", self.commutative)?;
        writeln!(f, "grouplike: {}", self.grouplike)?;
        write!(f, "verdict: {}", if self.verdict() { "equal and commutative" } else { "FAIL" })
    }
}

/// Extracts the horizontal product from row 1 and the vertical product from
/// column 1, both on `X_{1,1}`, and checks interchange over every 2×2 block.
pub fn eckmann_hilton(x: &TruncBiSSet) -> Result<EckmannHilton, EckmannHiltonError> {
    let (tn, tm) = (x.n_truncation(), x.m_truncation());
    if tn < 2 || tm < 2 {
        return Err(EckmannHiltonError::TooShallow { n: tn, m: tm });
    }
    let report = double_segal_check(x, SegalMode::Bijective);
    if !report.passed() {
        let what = if let Some(m) = report.failing_rows().first() {
            let (level, w) = report.rows[*m].first_failure().expect("failing row");
            format!("row {m}, level {level}: {w}")
        } else {
            let c = report.column.as_ref().expect("column failed");
            let (level, w) = c.first_failure().expect("failing column");
            format!("column 1, level {level}: {w}")
        };
        return Err(EckmannHiltonError::NotSegal(what));
    }
    let horizontal = reconstruct_at_depth(&x.row(1).expect("in range"), 2).map_err(|source| {
        EckmannHiltonError::Reconstruct {
            direction: Direction::Horizontal,
            source,
        }
    })?;
    let vertical = reconstruct_at_depth(&x.column(1).expect("in range"), 2).map_err(|source| {
        EckmannHiltonError::Reconstruct {
            direction: Direction::Vertical,
            source,
        }
    })?;
    let k = horizontal.order();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let left = horizontal.mul(vertical.mul(a, b), vertical.mul(c, d));
                    let right = vertical.mul(horizontal.mul(a, c), horizontal.mul(b, d));
                    if left != right {
                        let l = |i: usize| horizontal.label(i).to_string();
                        return Err(EckmannHiltonError::InterchangeFails {
                            a: l(a),
                            b: l(b),
                            c: l(c),
                            d: l(d),
                            left: l(left),
                            right: l(right),
                        });
                    }
                }
            }
        }
    }
    let units_coincide = horizontal.unit() == vertical.unit();
    let products_equal = horizontal.table() == vertical.table();
    let commutative = horizontal.is_commutative() && vertical.is_commutative();
    let grouplike = horizontal.is_group();
    Ok(EckmannHilton {
        horizontal,
        vertical,
        units_coincide,
        products_equal,
        commutative,
        grouplike,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{cyclic, enumerate_monoids, left_absorbing};
    use crate::segal::nerve;

    #[test]
    fn double_nerve_sizes_and_checks() {
        let z2 = cyclic(2);
        let x = double_nerve(&z2, 2, 2).unwrap();
        assert_eq!(x.size(2, 2), 16);
        assert!(x.violations().is_empty());
        let z3 = double_nerve(&cyclic(3), 2, 2).unwrap();
        assert!(z3.violations().is_empty());
    }

    #[test]
    fn noncommutative_monoid_fails_fast() {
        let err = double_nerve(&left_absorbing(), 2, 2).unwrap_err();
        assert_eq!(
            err,
            BiError::NotCommutative {
                a: "a".into(),
                b: "b".into()
            }
        );
        let broken = double_nerve_unchecked(&left_absorbing(), 2, 2);
        assert!(!broken.bifunctoriality_violations().is_empty());
    }

    #[test]
    fn rows_and_columns() {
        let m = cyclic(3);
        let x = double_nerve(&m, 3, 3).unwrap();
        let col = x.column(1).unwrap();
        assert_eq!(col, nerve(&m, 3));
        assert_eq!(x.row(1).unwrap(), nerve(&m, 3));
        let row0 = x.row(0).unwrap();
        assert!((0..=3).all(|n| row0.size(n) == 1));
        assert!(x.row(4).is_err());
        assert!(x.column(4).is_err());
    }

    #[test]
    fn products_of_nerves() {
        let z2 = nerve(&cyclic(2), 3);
        let prod = product(&z2, &z2).unwrap();
        assert_eq!(prod.product.size(2), 16);
        assert!(is_simplicial_map(&prod.product, &z2, &prod.proj1));
        assert!(is_simplicial_map(&prod.product, &z2, &prod.proj2));
        assert!(simplicial_identities_check(&prod.product).is_empty());
        assert!(product(&z2, &nerve(&cyclic(2), 2)).is_err());

        let point = TruncSSet::constant(vec!["()".into()], 3);
        let with_point = product(&z2, &point).unwrap();
        for n in 0..=3 {
            assert_eq!(with_point.product.size(n), z2.size(n));
            assert_eq!(with_point.proj1[n], FinFn::identity(z2.size(n)));
        }
    }

    #[test]
    fn external_product_rows_and_columns() {
        let x = nerve(&cyclic(2), 2);
        let y = nerve(&left_absorbing(), 2);
        let b = external_product(&x, &y);
        assert!(b.violations().is_empty());
        for m in 0..=2 {
            let constant = TruncSSet::constant(y.level(m).to_vec(), 2);
            assert_eq!(b.row(m).unwrap(), product(&x, &constant).unwrap().product);
        }
        for n in 0..=2 {
            let constant = TruncSSet::constant(x.level(n).to_vec(), 2);
            assert_eq!(b.column(n).unwrap(), product(&constant, &y).unwrap().product);
        }
    }

    #[test]
    fn double_segal_and_naturality() {
        let x = double_nerve(&cyclic(2), 3, 3).unwrap();
        let strict = double_segal_check(&x, SegalMode::Strict);
        assert!(strict.passed(), "{strict}");
        assert!(double_segal_check(&x, SegalMode::Bijective).passed());
        assert_eq!(p_naturality_check(&x), Ok(()));
    }

    #[test]
    fn mutated_vertical_generator_breaks_naturality() {
        let x = double_nerve(&cyclic(2), 3, 3).unwrap();
        let g = Generator::Face { level: 2, index: 1 };
        let mut f = x.vertical(2, g).clone();
        let y = f.apply(5);
        f.set(5, (y + 1) % f.target());
        let x = x.with_vertical(2, g, f).unwrap();
        let w = p_naturality_check(&x).unwrap_err();
        assert_eq!((w.n, w.generator), (2, g));
    }

    #[test]
    fn eckmann_hilton_on_commutative_monoids() {
        for order in 1..=3 {
            for m in enumerate_monoids(order).unwrap().into_iter().filter(FinMonoid::is_commutative) {
                let x = double_nerve(&m, 3, 3).unwrap();
                let eh = eckmann_hilton(&x).unwrap();
                assert_eq!(eh.horizontal, m);
                assert_eq!(eh.vertical, m);
                assert!(eh.verdict());
            }
        }
    }

    #[test]
    fn broken_interchange_is_reported() {
        let x = double_nerve_unchecked(&left_absorbing(), 3, 3);
        assert!(double_segal_check(&x, SegalMode::Strict).passed());
        let err = eckmann_hilton(&x).unwrap_err();
        let EckmannHiltonError::InterchangeFails { a, b, c, d, left, right } = err else {
            panic!("expected an interchange failure, got {err}");
        };
        let m = left_absorbing();
        let ix = |s: &str| m.index_of(s).unwrap();
        let (a, b, c, d) = (ix(&a), ix(&b), ix(&c), ix(&d));
        assert_eq!(m.label(m.mul(m.mul(a, b), m.mul(c, d))), left);
        assert_eq!(m.label(m.mul(m.mul(a, c), m.mul(b, d))), right);
        assert_ne!(left, right);
    }

    #[test]
    fn shallow_objects_are_rejected() {
        let x = double_nerve(&cyclic(2), 1, 3).unwrap();
        assert!(matches!(eckmann_hilton(&x), Err(EckmannHiltonError::TooShallow { .. })));
    }

    #[test]
    fn json_round_trip() {
        let x = double_nerve(&cyclic(2), 2, 2).unwrap();
        let back = TruncBiSSet::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
        let mut doc = x.to_doc();
        let key = doc.vfaces.keys().find(|k| k.as_str() == "2,2,1").unwrap().clone();
        doc.vfaces.get_mut(&key).unwrap().rotate_left(1);
        assert!(matches!(TruncBiSSet::from_doc(&doc), Err(BiError::Invalid(_))));
        let mut doc = x.to_doc();
        doc.hfaces.insert("9,0,0".into(), vec![]);
        assert!(matches!(TruncBiSSet::from_doc(&doc), Err(BiError::UnexpectedGenerator(_))));
    }
}
