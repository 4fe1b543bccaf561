//! The canonical text notation: `n→m:[i0,…]` for total maps, `n⇀m:[…,_,…]`
//! for partial maps and `op(n→m:[…])` for arrows of Δᵒᵖ. ASCII spellings
//! `->` and `~>` are accepted on input.

use std::fmt;
use std::str::FromStr;

use super::{eta1, mu1, pi1, Arrow, IntervalMap, OpArrow, PartialMap, SimplexError, TotalMap};

/// A map of any of the supported kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyMap {
    Total(TotalMap),
    Partial(PartialMap),
    Interval(IntervalMap),
    Op(OpArrow),
}

impl AnyMap {
    pub fn source(&self) -> usize {
        match self {
            AnyMap::Total(f) => f.source(),
            AnyMap::Partial(f) => f.source(),
            AnyMap::Interval(f) => f.source(),
            AnyMap::Op(f) => f.source(),
        }
    }

    pub fn target(&self) -> usize {
        match self {
            AnyMap::Total(f) => f.target(),
            AnyMap::Partial(f) => f.target(),
            AnyMap::Interval(f) => f.target(),
            AnyMap::Op(f) => f.target(),
        }
    }
}

impl fmt::Display for AnyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMap::Total(m) => m.fmt(f),
            AnyMap::Partial(m) => m.fmt(f),
            AnyMap::Interval(m) => m.fmt(f),
            AnyMap::Op(m) => m.fmt(f),
        }
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> SimplexError {
    SimplexError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for AnyMap {
    type Err = SimplexError;

    /// Total-looking input parses as [`AnyMap::Total`]; use
    /// [`IntervalMap::try_from`] to reinterpret.
    fn from_str(input: &str) -> Result<Self, SimplexError> {
        let s = input.trim();
        if let Some(inner) = s.strip_prefix("op(").and_then(|r| r.strip_suffix(')')) {
            return match inner.parse::<AnyMap>()? {
                AnyMap::Total(f) => Ok(AnyMap::Op(OpArrow::from_underlying(f)?)),
                _ => Err(parse_error(input, "op(…) wraps a total map")),
            };
        }
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| parse_error(input, "missing `:`"))?;
        let (arrow, partial) = [("→", false), ("->", false), ("⇀", true), ("~>", true)]
            .into_iter()
            .find(|(a, _)| head.contains(a))
            .ok_or_else(|| parse_error(input, "missing arrow"))?;
        let (src, tgt) = head.split_once(arrow).expect("arrow found above");
        let number = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| parse_error(input, format!("`{}` is not a size", t.trim())))
        };
        let (source, target) = (number(src)?, number(tgt)?);
        let body = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| parse_error(input, "images must be bracketed"))?;
        let entries: Vec<&str> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(str::trim).collect()
        };
        if entries.len() != source {
            return Err(parse_error(
                input,
                format!("expected {source} images, found {}", entries.len()),
            ));
        }
        let mut images = Vec::with_capacity(source);
        for e in entries {
            if e == "_" {
                if !partial {
                    return Err(parse_error(input, "`_` only appears in partial maps"));
                }
                images.push(None);
            } else {
                images.push(Some(number(e)?));
            }
        }
        if partial {
            Ok(AnyMap::Partial(PartialMap::new(target, images)?))
        } else {
            let images = images.into_iter().map(|v| v.expect("total")).collect();
            Ok(AnyMap::Total(TotalMap::new(target, images)?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorTag {
    Mu1,
    Eta1,
    Pi1,
}

impl FromStr for GeneratorTag {
    type Err = SimplexError;

    fn from_str(s: &str) -> Result<Self, SimplexError> {
        match s {
            "mu1" => Ok(GeneratorTag::Mu1),
            "eta1" => Ok(GeneratorTag::Eta1),
            "pi1" => Ok(GeneratorTag::Pi1),
            _ => Err(SimplexError::UnknownGenerator(s.to_string())),
        }
    }
}

pub fn generator(tag: GeneratorTag) -> AnyMap {
    match tag {
        GeneratorTag::Mu1 => AnyMap::Total(mu1()),
        GeneratorTag::Eta1 => AnyMap::Total(eta1()),
        GeneratorTag::Pi1 => AnyMap::Partial(pi1()),
    }
}
