//! The `segalbar` command line.
//!
//! Exit codes: 0 on success, 1 when a check fails (the witness is printed),
//! 2 on malformed input or arguments.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bisimplicial::{
    double_nerve, double_segal_check, eckmann_hilton, p_naturality_check, BiError, EckmannHiltonError,
    TruncBiSSet,
};
use crate::finset::FinMonoid;
use crate::functors::{h_map, hj_map, j_map};
use crate::render::{render_arrow, render_bi_summary, render_summary, Format};
use crate::segal::{nerve, reconstruct_monoid, segal_check, verify_bar_equality, ReconstructError, SegalMode};
use crate::simplex::{enumerate_hom, AnyMap, Arrow, HomKind, IntervalMap, PartialMap, Tensor};
use crate::sset::TruncSSet;
use crate::verify::{run_suites, MAX_SWEEP};

pub const MAX_ORDINAL: usize = 6;
pub const MAX_MONOID_ORDER: usize = 4;
pub const MAX_TRUNCATION: usize = 5;
/// Largest level set a bisimplicial construction may produce.
pub const MAX_CELL: usize = 100_000;
pub const SIZE_ENV: &str = "SEGALBAR_MAX_SIZE";

#[derive(Parser, Debug)]
#[command(name = "segalbar", version, about = "Simplex categories, bar constructions and Segal checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the arrows n → m of a category (total, partial, interval or op)
    Hom {
        kind: HomKind,
        n: usize,
        m: usize,
        /// Print only the number of arrows
        #[arg(long)]
        count: bool,
    },
    /// Composite SECOND ∘ FIRST
    Compose {
        second: String,
        first: String,
        /// Read total-looking maps as interval maps
        #[arg(long)]
        interval: bool,
    },
    /// Side-by-side tensor LEFT ⊗ RIGHT
    Tensor { left: String, right: String },
    /// Apply J to an arrow op(…) of Δᵒᵖ
    Jmap { arrow: String },
    /// Apply H to an interval map
    Hmap { map: String },
    /// Apply H∘J to an arrow op(…) of Δᵒᵖ
    Hjmap { arrow: String },
    /// Emit the bar construction of a monoid as a simplicial-set file
    Nerve {
        monoid: PathBuf,
        #[arg(long = "N", default_value_t = crate::segal::DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    /// Check the Segal condition at every level
    SegalCheck {
        sset: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: SegalMode,
    },
    /// Recover the monoid of a Segal simplicial set
    Reconstruct { sset: PathBuf },
    /// Compare a simplicial set with the bar construction of a monoid
    BarEqual { sset: PathBuf, monoid: PathBuf },
    /// Emit the double bar construction of a commutative monoid
    DoubleNerve {
        monoid: PathBuf,
        #[arg(long = "N", default_value_t = 3)]
        n_truncation: usize,
        #[arg(long = "M", default_value_t = 3)]
        m_truncation: usize,
    },
    /// Double Segal check and naturality of p on a bisimplicial file
    BisegalCheck {
        bisset: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: SegalMode,
    },
    /// Extract both products on X₁,₁ and compare them
    EckmannHilton { bisset: PathBuf },
    /// Draw a map as ASCII or DOT
    Render {
        map: String,
        #[arg(long, default_value = "ascii")]
        format: Format,
        /// Read a total-looking map as an interval map
        #[arg(long)]
        interval: bool,
    },
    /// Level sizes and Segal verdicts of a simplicial or bisimplicial file
    Summary { file: PathBuf },
    /// Run every property suite
    Verify {
        #[arg(long, default_value_t = MAX_SWEEP)]
        max_size: usize,
    },
}

/// Everything a run produces; `main` only prints it.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn failed(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 1,
        }
    }

    fn malformed(message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: 2,
        }
    }
}

/// Parses `args` (program name first) and runs the command. `env_cap` is the
/// value of `SEGALBAR_MAX_SIZE`, if set.
pub fn run<I, T>(args: I, env_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command, env_cap).unwrap_or_else(Outcome::malformed),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn bound(what: &str, value: usize, max: usize) -> Result<(), String> {
    if value > max {
        Err(format!("{what} {value} exceeds the limit {max}"))
    } else {
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_monoid(path: &Path) -> Result<FinMonoid, String> {
    let m = FinMonoid::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    bound("monoid order", m.order(), MAX_MONOID_ORDER)?;
    Ok(m)
}

fn load_sset(path: &Path) -> Result<TruncSSet, String> {
    TruncSSet::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_bisset(path: &Path) -> Result<TruncBiSSet, String> {
    TruncBiSSet::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_map(text: &str) -> Result<AnyMap, String> {
    let map: AnyMap = text.parse().map_err(|e| format!("{e}"))?;
    bound("ordinal", map.source().max(map.target()), MAX_ORDINAL)?;
    Ok(map)
}

fn as_interval(map: AnyMap) -> Result<IntervalMap, String> {
    match map {
        AnyMap::Total(f) => IntervalMap::try_from(f).map_err(|e| e.to_string()),
        AnyMap::Interval(f) => Ok(f),
        other => Err(format!("{other} is not an interval map")),
    }
}

fn as_partial(map: AnyMap) -> Result<PartialMap, String> {
    match map {
        AnyMap::Total(f) => Ok(f.into()),
        AnyMap::Partial(f) => Ok(f),
        other => Err(format!("{other} is not a map of Δ_par")),
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn execute(command: Command, env_cap: Option<&str>) -> Result<Outcome, String> {
    match command {
        Command::Hom { kind, n, m, count } => {
            bound("ordinal", n.max(m), MAX_ORDINAL)?;
            let maps = enumerate_hom(kind, n, m);
            let mut out = String::new();
            if !count {
                for f in &maps {
                    writeln!(out, "{f}").unwrap();
                }
            }
            let noun = if maps.len() == 1 { "arrow" } else { "arrows" };
            writeln!(out, "{} {noun}", maps.len()).unwrap();
            Ok(Outcome::ok(out))
        }
        Command::Compose {
            second,
            first,
            interval,
        } => {
            let (g, f) = (parse_map(&second)?, parse_map(&first)?);
            let composite = match (g, f) {
                (AnyMap::Op(g), AnyMap::Op(f)) => g.compose(&f).map(AnyMap::Op),
                (g @ AnyMap::Op(_), _) | (_, g @ AnyMap::Op(_)) => {
                    return Err(format!("{g} can only be composed with arrows of Δᵒᵖ"))
                }
                (g, f) if interval => as_interval(g)?.compose(&as_interval(f)?).map(AnyMap::Interval),
                (AnyMap::Total(g), AnyMap::Total(f)) => g.compose(&f).map(AnyMap::Total),
                (g, f) => as_partial(g)?.compose(&as_partial(f)?).map(AnyMap::Partial),
            }
            .map_err(|e| e.to_string())?;
            Ok(Outcome::ok(line(composite)))
        }
        Command::Tensor { left, right } => {
            let (a, b) = (parse_map(&left)?, parse_map(&right)?);
            let t = match (a, b) {
                (AnyMap::Total(a), AnyMap::Total(b)) => AnyMap::Total(a.tensor(&b)),
                (a, b) => AnyMap::Partial(as_partial(a)?.tensor(&as_partial(b)?)),
            };
            Ok(Outcome::ok(line(t)))
        }
        Command::Jmap { arrow } => match parse_map(&arrow)? {
            AnyMap::Op(a) => Ok(Outcome::ok(line(j_map(&a)))),
            other => Err(format!("{other} is not an arrow op(…) of Δᵒᵖ")),
        },
        Command::Hmap { map } => {
            let f = as_interval(parse_map(&map)?)?;
            Ok(Outcome::ok(line(h_map(&f))))
        }
        Command::Hjmap { arrow } => match parse_map(&arrow)? {
            AnyMap::Op(a) => Ok(Outcome::ok(line(hj_map(&a)))),
            other => Err(format!("{other} is not an arrow op(…) of Δᵒᵖ")),
        },
        Command::Nerve { monoid, truncation } => {
            bound("truncation", truncation, MAX_TRUNCATION)?;
            let m = load_monoid(&monoid)?;
            Ok(Outcome::ok(line(nerve(&m, truncation).to_json())))
        }
        Command::SegalCheck { sset, mode } => {
            let x = load_sset(&sset)?;
            let report = segal_check(&x, mode);
            let out = line(&report);
            Ok(if report.passed() {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            })
        }
        Command::Reconstruct { sset } => {
            let x = load_sset(&sset)?;
            match reconstruct_monoid(&x) {
                Ok(m) => Ok(Outcome::ok(line(m.to_json()))),
                Err(ReconstructError::TooShallow { truncation, needed }) => {
                    Err(format!("truncation {truncation} is too shallow, need at least {needed}"))
                }
                Err(e) => Ok(Outcome::failed(line(e))),
            }
        }
        Command::BarEqual { sset, monoid } => {
            let x = load_sset(&sset)?;
            let m = load_monoid(&monoid)?;
            Ok(match verify_bar_equality(&x, &m) {
                Ok(Ok(())) => Outcome::ok(line(format!(
                    "equal to the bar construction on every arrow up to level {}",
                    x.truncation()
                ))),
                Ok(Err(d)) => Outcome::failed(line(d)),
                Err(e) => Outcome::failed(line(e)),
            })
        }
        Command::DoubleNerve {
            monoid,
            n_truncation,
            m_truncation,
        } => {
            bound("truncation", n_truncation.max(m_truncation), MAX_TRUNCATION)?;
            let m = load_monoid(&monoid)?;
            let cell = (m.order() as f64).powi((n_truncation * m_truncation) as i32);
            if cell > MAX_CELL as f64 {
                return Err(format!(
                    "X_{{{n_truncation},{m_truncation}}} would have {cell} elements, the limit is {MAX_CELL}"
                ));
            }
            Ok(match double_nerve(&m, n_truncation, m_truncation) {
                Ok(x) => Outcome::ok(line(x.to_json())),
                Err(e @ BiError::NotCommutative { .. }) => Outcome::failed(line(e)),
                Err(e) => return Err(e.to_string()),
            })
        }
        Command::BisegalCheck { bisset, mode } => {
            let x = load_bisset(&bisset)?;
            let report = double_segal_check(&x, mode);
            let mut out = line(&report);
            let natural = p_naturality_check(&x);
            match &natural {
                Ok(()) => out.push_str("p naturality: pass\n"),
                Err(w) => writeln!(out, "p naturality: FAIL: {w}").unwrap(),
            }
            Ok(if report.passed() && natural.is_ok() {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            })
        }
        Command::EckmannHilton { bisset } => {
            let x = load_bisset(&bisset)?;
            match eckmann_hilton(&x) {
                Ok(eh) if eh.verdict() => Ok(Outcome::ok(line(eh))),
                Ok(eh) => Ok(Outcome::failed(line(eh))),
                Err(e @ EckmannHiltonError::TooShallow { .. }) => Err(e.to_string()),
                Err(e) => Ok(Outcome::failed(line(e))),
            }
        }
        Command::Render { map, format, interval } => {
            let mut f = parse_map(&map)?;
            if interval {
                f = AnyMap::Interval(as_interval(f)?);
            }
            Ok(Outcome::ok(render_arrow(&f, format)))
        }
        Command::Summary { file } => {
            let text = read(&file)?;
            let doc: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            if doc.get("M").is_some() {
                let x = load_bisset(&file)?;
                let report = double_segal_check(&x, SegalMode::Strict);
                Ok(Outcome::ok(render_bi_summary(&x, Some(&report))))
            } else {
                let x = load_sset(&file)?;
                let report = segal_check(&x, SegalMode::Strict);
                Ok(Outcome::ok(render_summary(&x, Some(&report))))
            }
        }
        Command::Verify { max_size } => {
            bound("max size", max_size, MAX_SWEEP)?;
            let cap = match env_cap {
                Some(v) => v
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("{SIZE_ENV} must be a number, got `{v}`"))?,
                None => usize::MAX,
            };
            let size = max_size.min(cap);
            let results = run_suites(size);
            let mut out = format!("verify, max size {size}\n");
            for r in &results {
                writeln!(out, "{r}").unwrap();
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} suites, {failed} failed", results.len()).unwrap();
            Ok(if failed == 0 {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            })
        }
    }
}
