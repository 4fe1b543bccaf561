//! Text pictures of maps between ordinals and summary tables.
//!
//! ASCII pictures put the source on the top row and the target on the
//! bottom row, with points four columns apart and each row centred. `*` is a
//! point, `o` a source point where the map is undefined. Arrows of `Δᵒᵖ` are
//! drawn through their image under `J`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::bisimplicial::{DoubleSegalReport, TruncBiSSet};
use crate::functors::j_map;
use crate::segal::SegalReport;
use crate::simplex::{AnyMap, Arrow};
use crate::sset::TruncSSet;

const SPACING: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            _ => Err(format!("unknown format `{s}`, expected ascii or dot")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Ascii => "ascii",
            Format::Dot => "dot",
        })
    }
}

/// Title, source size, target size and the (possibly undefined) images.
struct Picture {
    title: String,
    source: usize,
    target: usize,
    images: Vec<Option<usize>>,
}

fn picture(map: &AnyMap) -> Picture {
    match map {
        AnyMap::Total(f) => Picture {
            title: f.to_string(),
            source: f.source(),
            target: f.target(),
            images: f.images().iter().map(|&y| Some(y)).collect(),
        },
        AnyMap::Partial(f) => Picture {
            title: f.to_string(),
            source: f.source(),
            target: f.target(),
            images: f.images().to_vec(),
        },
        AnyMap::Interval(f) => Picture {
            title: f.to_string(),
            source: f.source(),
            target: f.target(),
            images: f.images().iter().map(|&y| Some(y)).collect(),
        },
        AnyMap::Op(a) => {
            let g = j_map(a);
            Picture {
                title: format!("{a} via J: {g}"),
                source: g.source(),
                target: g.target(),
                images: g.images().iter().map(|&y| Some(y)).collect(),
            }
        }
    }
}

pub fn render_arrow(map: &AnyMap, format: Format) -> String {
    let p = picture(map);
    match format {
        Format::Ascii => ascii(&p),
        Format::Dot => dot(&p),
    }
}

fn ascii(p: &Picture) -> String {
    let widest = p.source.max(p.target).max(1);
    let x_of = |count: usize, i: usize| (widest - count.max(1)) * SPACING / 2 + i * SPACING;
    let width = (widest - 1) * SPACING + 1;
    let edges: Vec<(i64, i64)> = p
        .images
        .iter()
        .enumerate()
        .filter_map(|(i, y)| y.map(|y| (x_of(p.source, i) as i64, x_of(p.target, y) as i64)))
        .collect();
    let height = edges.iter().map(|(a, b)| (b - a).unsigned_abs() as usize).max().unwrap_or(0).max(2) - 1;

    let mut grid: Vec<Vec<char>> = vec![vec![' '; width]; height];
    for &(x0, x1) in &edges {
        let dx = x1 - x0;
        let c = match dx.signum() {
            0 => '|',
            1 => '\\',
            _ => '/',
        };
        for (r, row) in grid.iter_mut().enumerate() {
            let x = x0 + dx.signum() * step(dx.unsigned_abs() as usize * (r + 1), height + 1) as i64;
            let cell = &mut row[x as usize];
            *cell = if *cell == ' ' || *cell == c { c } else { 'X' };
        }
    }

    let points = |count: usize, mark: &dyn Fn(usize) -> char| {
        let mut row = vec![' '; width];
        for i in 0..count {
            row[x_of(count, i)] = mark(i);
        }
        row
    };
    let numbers = |count: usize| {
        let mut row = vec![' '; width + 2];
        for i in 0..count {
            for (k, d) in i.to_string().chars().enumerate() {
                row[x_of(count, i) + k] = d;
            }
        }
        row
    };

    let mut out = String::new();
    let mut line = |chars: &[char]| {
        out.push_str(chars.iter().collect::<String>().trim_end());
        out.push('\n');
    };
    line(&p.title.chars().collect::<Vec<_>>());
    line(&numbers(p.source));
    line(&points(p.source, &|i| if p.images[i].is_some() { '*' } else { 'o' }));
    for row in &grid {
        line(row);
    }
    line(&points(p.target, &|_| '*'));
    line(&numbers(p.target));
    out
}

/// `num / den` rounded to nearest, ties toward zero, so mirrored edges
/// stay mirrored.
fn step(num: usize, den: usize) -> usize {
    let (q, r) = (num / den, num % den);
    if 2 * r > den {
        q + 1
    } else {
        q
    }
}

fn dot(p: &Picture) -> String {
    let mut out = String::new();
    let title = p.title.replace('"', "\\\"");
    writeln!(out, "digraph map {{").unwrap();
    writeln!(out, "  label=\"{title}\";").unwrap();
    writeln!(out, "  labelloc=t;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    writeln!(out, "  subgraph source {{").unwrap();
    writeln!(out, "    rank=same;").unwrap();
    for i in 0..p.source {
        let style = if p.images[i].is_some() { "" } else { ", style=dashed" };
        writeln!(out, "    s{i} [label=\"{i}\"{style}];").unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "  subgraph target {{").unwrap();
    writeln!(out, "    rank=same;").unwrap();
    for j in 0..p.target {
        writeln!(out, "    t{j} [label=\"{j}\"];").unwrap();
    }
    writeln!(out, "  }}").unwrap();
    for (i, y) in p.images.iter().enumerate() {
        if let Some(j) = y {
            writeln!(out, "  s{i} -> t{j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// One line per level: size, number of generators and the Segal verdict.
pub fn render_summary(x: &TruncSSet, report: Option<&SegalReport>) -> String {
    let mut out = String::new();
    writeln!(out, "truncated simplicial set, N = {}", x.truncation()).unwrap();
    writeln!(out, "{:<7}{:>8}{:>7}{:>7}  segal", "level", "size", "faces", "degens").unwrap();
    for n in 0..=x.truncation() {
        let faces = if n == 0 { 0 } else { n + 1 };
        let degens = if n < x.truncation() { n + 1 } else { 0 };
        let verdict = report.map_or("-".to_string(), |r| r.levels[n].to_string());
        writeln!(out, "{n:<7}{:>8}{faces:>7}{degens:>7}  {verdict}", x.size(n)).unwrap();
    }
    out
}

/// The grid of sizes `|X_{n,m}|`, rows indexed by `m`, with row verdicts.
pub fn render_bi_summary(x: &TruncBiSSet, report: Option<&DoubleSegalReport>) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "truncated bisimplicial set, N = {}, M = {}",
        x.n_truncation(),
        x.m_truncation()
    )
    .unwrap();
    let cell = (0..=x.n_truncation())
        .flat_map(|n| (0..=x.m_truncation()).map(move |m| (n, m)))
        .map(|(n, m)| x.size(n, m).to_string().len())
        .max()
        .unwrap_or(1)
        .max(3)
        + 2;
    write!(out, "{:<7}", "m\\n").unwrap();
    for n in 0..=x.n_truncation() {
        write!(out, "{n:>cell$}").unwrap();
    }
    if report.is_some() {
        out.push_str("  row segal");
    }
    out.push('\n');
    for m in 0..=x.m_truncation() {
        write!(out, "{m:<7}").unwrap();
        for n in 0..=x.n_truncation() {
            write!(out, "{:>cell$}", x.size(n, m)).unwrap();
        }
        if let Some(r) = report {
            let v = if r.rows[m].passed() { "pass" } else { "FAIL" };
            write!(out, "  {v}").unwrap();
        }
        out.push('\n');
    }
    if let Some(c) = report.and_then(|r| r.column.as_ref()) {
        let v = if c.passed() { "pass" } else { "FAIL" };
        writeln!(out, "column 1 segal: {v}").unwrap();
    }
    out
}
