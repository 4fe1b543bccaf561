//! Truncated simplicial objects in finite sets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::FinFn;
use crate::simplex::{factorize, Arrow, Generator, OpArrow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SSetError {
    #[error("level {level} exceeds the truncation {truncation}")]
    LevelTooHigh { level: usize, truncation: usize },
    #[error("expected {expected} level sets, found {found}")]
    LevelCount { expected: usize, found: usize },
    #[error("level {level} repeats the label `{label}`")]
    DuplicateLabel { level: usize, label: String },
    #[error("{generator}: expected a function {source_size} → {target}, got {found_source} → {found_target}")]
    BadGenerator {
        generator: Generator,
        source_size: usize,
        target: usize,
        found_source: usize,
        found_target: usize,
    },
    #[error("missing generator {0}")]
    MissingGenerator(Generator),
    #[error("unexpected generator key `{0}`")]
    UnexpectedGenerator(String),
    #[error("`{label}` is not an element of level {level}")]
    UnknownLabel { level: usize, label: String },
    #[error("simplicial identities fail: {}", summarize(.0))]
    Identities(Vec<IdentityViolation>),
    #[error("truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("malformed file: {0}")]
    Format(String),
}

fn summarize(v: &[IdentityViolation]) -> String {
    match v.first() {
        Some(first) if v.len() == 1 => first.to_string(),
        Some(first) => format!("{first} (and {} more)", v.len() - 1),
        None => "none".into(),
    }
}

/// A failed simplicial identity: applying `first` then `second` to `element`
/// disagrees with the canonical evaluation of the composite arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub first: Generator,
    pub second: Generator,
    pub composite: OpArrow,
    pub element: String,
    pub via_pair: String,
    pub via_canonical: String,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} after {} sends {} to {}, but {} sends it to {}",
            self.second, self.first, self.element, self.via_pair, self.composite, self.via_canonical
        )
    }
}

/// A simplicial object restricted to levels `0..=N`.
///
/// `faces[n][i]` is `dᵢ: Xₙ → Xₙ₋₁` (empty for `n = 0`) and
/// `degeneracies[n][i]` is `sᵢ: Xₙ → Xₙ₊₁` for `n < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    levels: Vec<Vec<String>>,
    faces: Vec<Vec<FinFn>>,
    degeneracies: Vec<Vec<FinFn>>,
}

impl TruncSSet {
    /// Builds the object after checking shapes and label uniqueness. The
    /// simplicial identities are not checked; see [`Self::validated`].
    pub fn new(
        levels: Vec<Vec<String>>,
        faces: Vec<Vec<FinFn>>,
        degeneracies: Vec<Vec<FinFn>>,
    ) -> Result<Self, SSetError> {
        if levels.is_empty() {
            return Err(SSetError::LevelCount {
                expected: 1,
                found: 0,
            });
        }
        let top = levels.len() - 1;
        for (level, labels) in levels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in labels {
                if !seen.insert(l) {
                    return Err(SSetError::DuplicateLabel {
                        level,
                        label: l.clone(),
                    });
                }
            }
        }
        if faces.len() != top + 1 {
            return Err(SSetError::LevelCount {
                expected: top + 1,
                found: faces.len(),
            });
        }
        if degeneracies.len() != top {
            return Err(SSetError::LevelCount {
                expected: top,
                found: degeneracies.len(),
            });
        }
        let x = Self {
            levels,
            faces,
            degeneracies,
        };
        for level in 0..=top {
            let expected_faces = if level == 0 { 0 } else { level + 1 };
            if x.faces[level].len() != expected_faces {
                return Err(SSetError::MissingGenerator(Generator::Face {
                    level,
                    index: x.faces[level].len().min(level),
                }));
            }
            if level < top && x.degeneracies[level].len() != level + 1 {
                return Err(SSetError::MissingGenerator(Generator::Degeneracy {
                    level,
                    index: x.degeneracies[level].len().min(level),
                }));
            }
        }
        for g in Generator::all_within(top) {
            let f = x.generator(g);
            let (s, t) = (x.size(g.source_level()), x.size(g.target_level()));
            if f.source() != s || f.target() != t {
                return Err(SSetError::BadGenerator {
                    generator: g,
                    source_size: s,
                    target: t,
                    found_source: f.source(),
                    found_target: f.target(),
                });
            }
        }
        Ok(x)
    }

    /// [`Self::new`] followed by the simplicial identities check.
    pub fn validated(
        levels: Vec<Vec<String>>,
        faces: Vec<Vec<FinFn>>,
        degeneracies: Vec<Vec<FinFn>>,
    ) -> Result<Self, SSetError> {
        let x = Self::new(levels, faces, degeneracies)?;
        let violations = simplicial_identities_check(&x);
        if violations.is_empty() {
            Ok(x)
        } else {
            Err(SSetError::Identities(violations))
        }
    }

    /// The constant simplicial object on `labels`: every generator is the identity.
    pub fn constant(labels: Vec<String>, truncation: usize) -> Self {
        let n = labels.len();
        Self {
            levels: vec![labels; truncation + 1],
            faces: (0..=truncation)
                .map(|l| if l == 0 { vec![] } else { vec![FinFn::identity(n); l + 1] })
                .collect(),
            degeneracies: (0..truncation).map(|l| vec![FinFn::identity(n); l + 1]).collect(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[String] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<String>] {
        &self.levels
    }

    pub fn size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn generator(&self, g: Generator) -> &FinFn {
        match g {
            Generator::Face { level, index } => &self.faces[level][index],
            Generator::Degeneracy { level, index } => &self.degeneracies[level][index],
        }
    }

    pub(crate) fn generator_mut(&mut self, g: Generator) -> &mut FinFn {
        match g {
            Generator::Face { level, index } => &mut self.faces[level][index],
            Generator::Degeneracy { level, index } => &mut self.degeneracies[level][index],
        }
    }

    /// Replaces one generator, checking only its shape.
    pub fn with_generator(mut self, g: Generator, f: FinFn) -> Result<Self, SSetError> {
        let (s, t) = (self.size(g.source_level()), self.size(g.target_level()));
        if g.source_level() > self.truncation() || g.target_level() > self.truncation() {
            return Err(SSetError::LevelTooHigh {
                level: g.source_level().max(g.target_level()),
                truncation: self.truncation(),
            });
        }
        if f.source() != s || f.target() != t {
            return Err(SSetError::BadGenerator {
                generator: g,
                source_size: s,
                target: t,
                found_source: f.source(),
                found_target: f.target(),
            });
        }
        *self.generator_mut(g) = f;
        Ok(self)
    }

    pub fn index_of(&self, level: usize, label: &str) -> Option<usize> {
        self.levels[level].iter().position(|l| l == label)
    }

    /// `X(a): X_{a.dom()} → X_{a.cod()}`, composed along [`factorize`].
    pub fn eval_arrow(&self, a: &OpArrow) -> Result<FinFn, SSetError> {
        self.eval_factors(a.dom(), &factorize(a))
    }

    /// Evaluates factors listed in Δ application order, starting at level `from`.
    pub fn eval_factors(&self, from: usize, factors: &[Generator]) -> Result<FinFn, SSetError> {
        let n = self.truncation();
        if from > n {
            return Err(SSetError::LevelTooHigh {
                level: from,
                truncation: n,
            });
        }
        let mut acc = FinFn::identity(self.size(from));
        for &g in factors.iter().rev() {
            let top = g.source_level().max(g.target_level());
            if top > n {
                return Err(SSetError::LevelTooHigh {
                    level: top,
                    truncation: n,
                });
            }
            acc = self
                .generator(g)
                .after(&acc)
                .expect("factors chain through consecutive levels");
        }
        Ok(acc)
    }

    pub fn to_doc(&self) -> SSetDoc {
        let mut faces = BTreeMap::new();
        let mut degeneracies = BTreeMap::new();
        for g in Generator::all_within(self.truncation()) {
            let f = self.generator(g);
            let target = &self.levels[g.target_level()];
            let images = f.images().iter().map(|&y| target[y].clone()).collect();
            match g {
                Generator::Face { level, index } => faces.insert(format!("{level},{index}"), images),
                Generator::Degeneracy { level, index } => {
                    degeneracies.insert(format!("{level},{index}"), images)
                }
            };
        }
        SSetDoc {
            truncation: self.truncation(),
            levels: self.levels.clone(),
            faces,
            degeneracies,
        }
    }

    /// Loads and validates, including the simplicial identities.
    pub fn from_doc(doc: &SSetDoc) -> Result<Self, SSetError> {
        let n = doc.truncation;
        if doc.levels.len() != n + 1 {
            return Err(SSetError::LevelCount {
                expected: n + 1,
                found: doc.levels.len(),
            });
        }
        let indices: Vec<HashMap<&str, usize>> = doc
            .levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect())
            .collect();
        let lookup = |g: Generator, key: &str, table: &BTreeMap<String, Vec<String>>| {
            let images = table.get(key).ok_or(SSetError::MissingGenerator(g))?;
            let (src, tgt) = (g.source_level(), g.target_level());
            if images.len() != doc.levels[src].len() {
                return Err(SSetError::BadGenerator {
                    generator: g,
                    source_size: doc.levels[src].len(),
                    target: doc.levels[tgt].len(),
                    found_source: images.len(),
                    found_target: doc.levels[tgt].len(),
                });
            }
            let images = images
                .iter()
                .map(|l| {
                    indices[tgt].get(l.as_str()).copied().ok_or_else(|| SSetError::UnknownLabel {
                        level: tgt,
                        label: l.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FinFn::new(doc.levels[tgt].len(), images).expect("indices in range"))
        };
        let mut faces = vec![Vec::new(); n + 1];
        let mut degeneracies = vec![Vec::new(); n];
        let mut used = 0;
        for g in Generator::all_within(n) {
            match g {
                Generator::Face { level, index } => {
                    faces[level].push(lookup(g, &format!("{level},{index}"), &doc.faces)?)
                }
                Generator::Degeneracy { level, index } => degeneracies[level]
                    .push(lookup(g, &format!("{level},{index}"), &doc.degeneracies)?),
            }
            used += 1;
        }
        if used != doc.faces.len() + doc.degeneracies.len() {
            let extra = doc
                .faces
                .keys()
                .chain(doc.degeneracies.keys())
                .find(|k| !valid_key(k, n))
                .cloned()
                .unwrap_or_default();
            return Err(SSetError::UnexpectedGenerator(extra));
        }
        Self::validated(doc.levels.clone(), faces, degeneracies)
    }

    pub fn from_json(text: &str) -> Result<Self, SSetError> {
        let doc: SSetDoc =
            serde_json::from_str(text).map_err(|e| SSetError::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        crate::jsonfmt::to_json(&self.to_doc())
    }
}

fn valid_key(key: &str, n: usize) -> bool {
    let Some((l, i)) = key.split_once(',') else { return false };
    match (l.parse::<usize>(), i.parse::<usize>()) {
        (Ok(l), Ok(i)) => l <= n && i <= l,
        _ => false,
    }
}

/// On-disk form: generator images are listed as target labels in source order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetDoc {
    #[serde(rename = "N")]
    pub truncation: usize,
    pub levels: Vec<Vec<String>>,
    pub faces: BTreeMap<String, Vec<String>>,
    pub degeneracies: BTreeMap<String, Vec<String>>,
}

/// Every composable pair of generators within the truncation is compared with
/// the canonical evaluation of its composite arrow of Δᵒᵖ.
///
/// All relations between generators have length at most two, so an empty
/// result means the generator data extends to a functor on the truncation.
pub fn simplicial_identities_check(x: &TruncSSet) -> Vec<IdentityViolation> {
    let gens = Generator::all_within(x.truncation());
    let mut out = Vec::new();
    for &first in &gens {
        for &second in &gens {
            if second.source_level() != first.target_level() {
                continue;
            }
            let composite = second
                .op_arrow()
                .compose(&first.op_arrow())
                .expect("levels match");
            let pair = x.generator(second).after(x.generator(first)).expect("shapes checked");
            let canonical = x.eval_arrow(&composite).expect("within truncation");
            let target = &x.levels[composite.cod()];
            if let Some(e) = (0..pair.source()).find(|&e| pair.apply(e) != canonical.apply(e)) {
                out.push(IdentityViolation {
                    first,
                    second,
                    composite,
                    element: x.levels[first.source_level()][e].clone(),
                    via_pair: target[pair.apply(e)].clone(),
                    via_canonical: target[canonical.apply(e)].clone(),
                });
            }
        }
    }
    out
}
