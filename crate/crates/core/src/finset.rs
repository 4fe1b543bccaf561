//! Finite sets with flat-tuple products, finite monoids, and the strict
//! monoidal functor `F: Δ_par → FinSet` determined by a monoid.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label;
use crate::simplex::{Arrow, PartialMap};

/// A function between finite sets `{0..source}` and `{0..target}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinFn {
    target: usize,
    images: Vec<usize>,
}

impl FinFn {
    pub fn new(target: usize, images: Vec<usize>) -> Option<Self> {
        images.iter().all(|&v| v < target).then_some(Self { target, images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            images: (0..n).collect(),
        }
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Self {
        assert!(value < target);
        Self {
            target,
            images: vec![value; source],
        }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ first`, or `None` when the sets do not match.
    pub fn after(&self, first: &FinFn) -> Option<FinFn> {
        (first.target == self.source()).then(|| FinFn {
            target: self.target,
            images: first.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn set(&mut self, x: usize, value: usize) {
        assert!(value < self.target);
        self.images[x] = value;
    }
}

/// The set `Mᵃ` of `arity`-tuples over a base of `base` elements, indexed
/// lexicographically with the first coordinate most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSet {
    pub base: usize,
    pub arity: usize,
}

impl TupleSet {
    pub fn new(base: usize, arity: usize) -> Self {
        Self { base, arity }
    }

    pub fn size(&self) -> usize {
        self.base.pow(self.arity as u32)
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.base + x)
    }

    pub fn tuple_at(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|k| self.tuple_at(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("a monoid needs at least one element")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("`{0}` is not a valid element label")]
    BadLabel(String),
    #[error("`{0}` is not an element")]
    UnknownElement(String),
    #[error("table must be {size}×{size}, row {row} has {len} entries")]
    Ragged { size: usize, row: usize, len: usize },
    #[error("table has {rows} rows for {size} elements")]
    WrongRowCount { size: usize, rows: usize },
    #[error("table entry {value} is not an element index")]
    NotClosed { value: usize },
    #[error("unit {unit} is not an element index")]
    BadUnit { unit: usize },
    #[error("not a unit: {unit}·{a} or {a}·{unit} differs from {a}")]
    NotUnit { unit: String, a: String },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("exhaustive search is limited to order {max}, asked for {order}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("malformed monoid file: {0}")]
    Format(String),
}

/// A finite monoid as a labeled multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    elements: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl FinMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    /// Ordered product of `xs`; the empty product is the unit.
    pub fn product(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.unit, |acc, x| self.table[acc][x])
    }

    /// First pair `(a, b)` with `a·b ≠ b·a`, by index.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.table[a][b] != self.table[b][a])
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// Every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        (0..self.order()).all(|a| {
            (0..self.order()).any(|b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
        })
    }

    pub fn to_doc(&self) -> MonoidDoc {
        MonoidDoc {
            elements: self.elements.clone(),
            unit: self.elements[self.unit].clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|&x| self.elements[x].clone()).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &MonoidDoc) -> Result<Self, MonoidError> {
        let index = |l: &String| {
            doc.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| MonoidError::UnknownElement(l.clone()))
        };
        let unit = index(&doc.unit)?;
        let size = doc.elements.len();
        if doc.table.len() != size {
            return Err(MonoidError::WrongRowCount {
                size,
                rows: doc.table.len(),
            });
        }
        let mut table = Vec::with_capacity(size);
        for (row, cells) in doc.table.iter().enumerate() {
            if cells.len() != size {
                return Err(MonoidError::Ragged {
                    size,
                    row,
                    len: cells.len(),
                });
            }
            table.push(cells.iter().map(index).collect::<Result<Vec<_>, _>>()?);
        }
        validate_monoid(doc.elements.clone(), unit, table)
    }

    pub fn from_json(text: &str) -> Result<Self, MonoidError> {
        let doc: MonoidDoc =
            serde_json::from_str(text).map_err(|e| MonoidError::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        crate::jsonfmt::to_json(&self.to_doc())
    }
}

impl fmt::Display for FinMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.elements.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:>width$} |", "·")?;
        for e in &self.elements {
            write!(f, " {e:>width$}")?;
        }
        writeln!(f)?;
        for (a, row) in self.table.iter().enumerate() {
            write!(f, "{:>width$} |", self.elements[a])?;
            for &x in row {
                write!(f, " {:>width$}", self.elements[x])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// On-disk form of a monoid: labels everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<Vec<String>>,
}

/// Checks closure, the unit laws and associativity, reporting the first
/// violated law with a witness.
pub fn validate_monoid(
    elements: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
) -> Result<FinMonoid, MonoidError> {
    let n = elements.len();
    if n == 0 {
        return Err(MonoidError::Empty);
    }
    let mut seen = HashSet::new();
    for e in &elements {
        if !label::is_atom(e) {
            return Err(MonoidError::BadLabel(e.clone()));
        }
        if !seen.insert(e.as_str()) {
            return Err(MonoidError::DuplicateLabel(e.clone()));
        }
    }
    if table.len() != n {
        return Err(MonoidError::WrongRowCount {
            size: n,
            rows: table.len(),
        });
    }
    for (row, cells) in table.iter().enumerate() {
        if cells.len() != n {
            return Err(MonoidError::Ragged {
                size: n,
                row,
                len: cells.len(),
            });
        }
        if let Some(&value) = cells.iter().find(|&&v| v >= n) {
            return Err(MonoidError::NotClosed { value });
        }
    }
    if unit >= n {
        return Err(MonoidError::BadUnit { unit });
    }
    let label = |x: usize| elements[x].clone();
    if let Some(a) = (0..n).find(|&a| table[unit][a] != a || table[a][unit] != a) {
        return Err(MonoidError::NotUnit {
            unit: label(unit),
            a: label(a),
        });
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(MonoidError::NotAssociative {
                        a: label(a),
                        b: label(b),
                        c: label(c),
                    });
                }
            }
        }
    }
    Ok(FinMonoid {
        elements,
        unit,
        table,
    })
}

pub const MAX_ENUMERATION_ORDER: usize = 4;

const STANDARD_LABELS: [&str; MAX_ENUMERATION_ORDER] = ["e", "a", "b", "c"];

/// Every monoid table on `{e, a, b, c}[..order]` with unit `e`, in
/// lexicographic order of the non-unit block of the table.
pub fn enumerate_monoids(order: usize) -> Result<Vec<FinMonoid>, MonoidError> {
    if order == 0 || order > MAX_ENUMERATION_ORDER {
        return Err(MonoidError::OrderTooLarge {
            order,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    let elements: Vec<String> = STANDARD_LABELS[..order].iter().map(|s| s.to_string()).collect();
    let free = TupleSet::new(order, (order - 1) * (order - 1));
    let mut out = Vec::new();
    for cells in free.iter() {
        let mut table: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect())
            .collect();
        for (k, &v) in cells.iter().enumerate() {
            table[1 + k / (order - 1)][1 + k % (order - 1)] = v;
        }
        if let Ok(m) = validate_monoid(elements.clone(), 0, table) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Addition modulo `n` on labels `0..n`.
pub fn cyclic(n: usize) -> FinMonoid {
    let elements = (0..n).map(|k| k.to_string()).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    validate_monoid(elements, 0, table).expect("cyclic group")
}

/// `{e, a, b}` with `x·y = x` for `x, y ∈ {a, b}`.
pub fn left_absorbing() -> FinMonoid {
    let elements = ["e", "a", "b"].iter().map(|s| s.to_string()).collect();
    let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
    validate_monoid(elements, 0, table).expect("left-absorbing monoid")
}

/// `F(g)` evaluated on `M`: the tuple `x` goes to the tuple whose `j`-th
/// entry is the ordered product of the `xᵢ` with `g(i) = j`.
pub fn f_apply(g: &PartialMap, m: &FinMonoid, x: &[usize]) -> Vec<usize> {
    let mut out = vec![m.unit(); g.target()];
    for (i, &xi) in x.iter().enumerate() {
        if let Some(j) = g.apply(i) {
            out[j] = m.mul(out[j], xi);
        }
    }
    out
}

/// `F(g)` as a function `M^{source} → M^{target}` on tuple indices.
pub fn f_eval(g: &PartialMap, m: &FinMonoid) -> FinFn {
    let src = TupleSet::new(m.order(), g.source());
    let tgt = TupleSet::new(m.order(), g.target());
    let images = src.iter().map(|x| tgt.index_of(&f_apply(g, m, &x))).collect();
    FinFn {
        target: tgt.size(),
        images,
    }
}
