//! Exhaustive property suites over everything small enough to enumerate.
//!
//! `max_size` bounds ordinal sizes; derived bounds (interval maps for `H`,
//! truncations, monoid orders) scale with it and reach the documented sweep
//! sizes at `max_size = 4`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::bisimplicial::{
    double_nerve, double_segal_check, eckmann_hilton, external_product, is_simplicial_map,
    p_naturality_check, product, BiError,
};
use crate::finset::{enumerate_monoids, f_apply, f_eval, left_absorbing, FinFn, FinMonoid, TupleSet};
use crate::functors::{edge_arrow, h_map, hj_map, j_inverse, j_map};
use crate::label::parse_flat;
use crate::render::{render_arrow, Format};
use crate::segal::{nerve, p_map, reconstruct_monoid, segal_check, verify_bar_equality, SegalMode};
use crate::simplex::{
    binomial, enumerate_hom, enumerate_interval, enumerate_op, enumerate_partial, enumerate_total, eta1,
    factorize, mu1, pi1, recompose, AnyMap, Arrow, Generator, HomKind, IntervalMap, OpArrow, PartialMap,
    Tensor,
};
use crate::sset::{simplicial_identities_check, TruncSSet};

/// Largest accepted `max_size`.
pub const MAX_SWEEP: usize = 4;

const KEPT_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    pub failures: Vec<String>,
    /// Total failures, including those not kept in `failures`.
    pub failed: u64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:<28} {:>10} checks", self.name, self.checked)?;
        if !self.passed() {
            write!(f, ", {} failures", self.failed)?;
            for w in &self.failures {
                write!(f, "\n    {w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn finish(self, name: &'static str) -> SuiteResult {
        SuiteResult {
            name,
            checked: self.checked,
            failures: self.failures,
            failed: self.failed,
        }
    }
}

type Suite = fn(usize) -> SuiteResult;

const SUITES: &[(&str, Suite)] = &[
    ("compose laws", compose_laws),
    ("tensor laws", tensor_laws),
    ("monoid (1, μ₁, η₁)", monoid_in_delta),
    ("hom-set counts", hom_counts),
    ("factorization", factorization),
    ("J functor", j_functor),
    ("H functor", h_functor),
    ("HJ generators and edges", hj_generators),
    ("F functor", f_functor),
    ("bar formulas", bar_formulas),
    ("Segal and reconstruction", segal_round_trip),
    ("evaluation independence", evaluation_independence),
    ("negative controls", negative_controls),
    ("products", products),
    ("bisimplicial", bisimplicial),
    ("rendering", rendering),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs every suite, in parallel, reporting in a fixed order.
pub fn run_suites(max_size: usize) -> Vec<SuiteResult> {
    let s = max_size.min(MAX_SWEEP);
    std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|&(_, suite)| scope.spawn(move || suite(s)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    })
}

pub fn run_suite(name: &str, max_size: usize) -> Option<SuiteResult> {
    SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, suite)| suite(max_size.min(MAX_SWEEP)))
}

/// Unit and associativity laws over the given objects, through composition
/// tables indexed by position in each hom-set.
fn category_laws<A: Arrow + Hash>(
    tally: &mut Tally,
    kind: &str,
    objects: &[usize],
    hom: impl Fn(usize, usize) -> Vec<A>,
) {
    let k = objects.len();
    let homs: Vec<Vec<Vec<A>>> = objects
        .iter()
        .map(|&a| objects.iter().map(|&b| hom(a, b)).collect())
        .collect();
    let index: Vec<Vec<HashMap<&A, usize>>> = homs
        .iter()
        .map(|row| row.iter().map(|h| h.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect())
        .collect();
    // table[a][b][c][i * |H(b,c)| + j] = position of hom[b][c][j] ∘ hom[a][b][i]
    let mut table = vec![vec![vec![Vec::new(); k]; k]; k];
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let mut t = Vec::with_capacity(homs[a][b].len() * homs[b][c].len());
                for f in &homs[a][b] {
                    for g in &homs[b][c] {
                        let pos = g.compose(f).ok().and_then(|h| index[a][c].get(&h).copied());
                        tally.check(pos.is_some(), || format!("{kind}: {g} ∘ {f} is not in its hom-set"));
                        t.push(pos.unwrap_or(usize::MAX));
                    }
                }
                table[a][b][c] = t;
            }
        }
    }
    for (a, &na) in objects.iter().enumerate() {
        for (b, &nb) in objects.iter().enumerate() {
            let ida = index[a][a][&A::identity(na)];
            let idb = index[b][b][&A::identity(nb)];
            let lb = homs[b][b].len();
            for (i, f) in homs[a][b].iter().enumerate() {
                tally.check(table[a][b][b][i * lb + idb] == i, || format!("{kind}: id ∘ {f} ≠ {f}"));
                tally.check(table[a][a][b][ida * homs[a][b].len() + i] == i, || {
                    format!("{kind}: {f} ∘ id ≠ {f}")
                });
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let (hbc, hcd) = (homs[b][c].len(), homs[c][d].len());
                    for i in 0..homs[a][b].len() {
                        for j in 0..hbc {
                            let gf = table[a][b][c][i * hbc + j];
                            for l in 0..hcd {
                                let hg = table[b][c][d][j * hcd + l];
                                let left = (gf != usize::MAX).then(|| table[a][c][d][gf * hcd + l]);
                                let right = (hg != usize::MAX).then(|| table[a][b][d][i * homs[b][d].len() + hg]);
                                tally.check(left.is_some() && left == right, || {
                                    format!(
                                        "{kind}: ({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                        homs[c][d][l], homs[b][c][j], homs[a][b][i],
                                        homs[c][d][l], homs[b][c][j], homs[a][b][i]
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

fn compose_laws(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let sizes: Vec<usize> = (0..=s).collect();
    category_laws(&mut t, "Δ", &sizes, enumerate_total);
    category_laws(&mut t, "Δ_par", &sizes, enumerate_partial);
    let interval_sizes: Vec<usize> = (2..=s.max(2)).collect();
    category_laws(&mut t, "Δ_Int", &interval_sizes, enumerate_interval);
    let levels: Vec<usize> = (0..s).collect();
    category_laws(&mut t, "Δᵒᵖ", &levels, enumerate_op);
    t.finish("compose laws")
}

fn all_upto<A>(s: usize, hom: impl Fn(usize, usize) -> Vec<A>) -> Vec<A> {
    (0..=s).flat_map(|a| (0..=s).map(move |b| (a, b))).flat_map(|(a, b)| hom(a, b)).collect()
}

fn tensor_laws_for<A: Tensor>(t: &mut Tally, kind: &str, s: usize, hom: impl Fn(usize, usize) -> Vec<A>) {
    let maps = all_upto(s, &hom);
    let unit = A::identity(0);
    for f in &maps {
        t.check(unit.tensor(f) == *f && f.tensor(&unit) == *f, || format!("{kind}: unit fails on {f}"));
    }
    for f in &maps {
        for g in &maps {
            let fg = f.tensor(g);
            for h in &maps {
                t.check(fg.tensor(h) == f.tensor(&g.tensor(h)), || {
                    format!("{kind}: ({f} ⊗ {g}) ⊗ {h} ≠ {f} ⊗ ({g} ⊗ {h})")
                });
            }
        }
    }
    // (g ∘ f) ⊗ (g' ∘ f') = (g ⊗ g') ∘ (f ⊗ f')
    for f in &maps {
        for f2 in &maps {
            let ff = f.tensor(f2);
            for g in hom_from(f.target(), s, &hom) {
                for g2 in hom_from(f2.target(), s, &hom) {
                    let lhs = g.compose(f).unwrap().tensor(&g2.compose(f2).unwrap());
                    let rhs = g.tensor(&g2).compose(&ff);
                    t.check(rhs.as_ref() == Ok(&lhs), || format!("{kind}: interchange fails for {g}, {g2}, {f}, {f2}"));
                }
            }
        }
    }
}

fn hom_from<A>(a: usize, s: usize, hom: &impl Fn(usize, usize) -> Vec<A>) -> Vec<A> {
    (0..=s).flat_map(|b| hom(a, b)).collect()
}

fn tensor_laws(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let s = s.min(3);
    tensor_laws_for(&mut t, "Δ", s, enumerate_total);
    tensor_laws_for(&mut t, "Δ_par", s, enumerate_partial);
    t.finish("tensor laws")
}

fn monoid_equations<A: Tensor>(t: &mut Tally, kind: &str, mu: A, eta: A) {
    let one = A::identity(1);
    let assoc = (mu.compose(&mu.tensor(&one)), mu.compose(&one.tensor(&mu)));
    t.check(assoc.0.is_ok() && assoc.0 == assoc.1, || format!("{kind}: μ∘(μ⊗1) ≠ μ∘(1⊗μ)"));
    t.check(mu.compose(&one.tensor(&eta)) == Ok(one.clone()), || format!("{kind}: μ∘(1⊗η) ≠ 1"));
    t.check(mu.compose(&eta.tensor(&one)) == Ok(one.clone()), || format!("{kind}: μ∘(η⊗1) ≠ 1"));
}

fn monoid_in_delta(_: usize) -> SuiteResult {
    let mut t = Tally::default();
    monoid_equations(&mut t, "Δ", mu1(), eta1());
    monoid_equations(&mut t, "Δ_par", PartialMap::from(mu1()), PartialMap::from(eta1()));
    // π₁ is the unique arrow 1 ⇀ 0 and is compatible with μ₁ and η₁
    let pi = pi1();
    let pi2 = pi.tensor(&pi);
    t.check(pi.compose(&PartialMap::from(mu1())) == Ok(pi2), || "Δ_par: π∘μ ≠ π⊗π".into());
    t.check(pi.compose(&PartialMap::from(eta1())) == Ok(PartialMap::identity(0)), || "Δ_par: π∘η ≠ 1₀".into());
    t.finish("monoid (1, μ₁, η₁)")
}

/// Monotone maps `n → m` counted by choosing the image of the last point.
fn count_monotone(n: usize, m: usize, cap: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (0..m.min(cap)).map(|top| count_monotone(n - 1, m, top + 1)).sum()
}

fn hom_counts(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let bound = 2 * s + 1;
    for n in 0..=bound {
        for m in 0..=bound - n {
            let listed = enumerate_total(n, m).len() as u64;
            let recursive = count_monotone(n, m, m);
            let formula = if n == 0 { 1 } else if m == 0 { 0 } else { binomial((n + m - 1) as u64, n as u64) };
            t.check(listed == recursive && listed == formula, || {
                format!("Hom({n},{m}): listed {listed}, recursive {recursive}, binomial {formula}")
            });
        }
    }
    for kind in [HomKind::Total, HomKind::Partial, HomKind::Interval, HomKind::Op] {
        for n in 0..=s {
            for m in 0..=s {
                let maps = enumerate_hom(kind, n, m);
                let ok = maps.windows(2).all(|w| w[0].to_string() != w[1].to_string())
                    && maps.iter().all(|f| f.to_string().parse::<AnyMap>().map(|g| g.to_string()) == Ok(f.to_string()));
                t.check(ok, || format!("{kind} {n} {m}: listing is not a set of parseable arrows"));
            }
        }
    }
    t.finish("hom-set counts")
}

fn factorization(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    for m in 0..=s {
        for n in 0..=s {
            for a in enumerate_op(m, n) {
                let back = recompose(&factorize(&a));
                let ok = match back {
                    Some(f) => &f == a.underlying(),
                    None => a.is_identity(),
                };
                t.check(ok, || format!("{a} does not recompose"));
            }
        }
    }
    t.finish("factorization")
}

fn j_functor(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let top = s.saturating_sub(1);
    for a in 0..=top {
        for b in 0..=top {
            let first = enumerate_op(a, b);
            for f in &first {
                for c in 0..=top {
                    for g in enumerate_op(b, c) {
                        let lhs = j_map(&g.compose(f).unwrap());
                        let rhs = j_map(&g).compose(&j_map(f));
                        t.check(rhs.as_ref() == Ok(&lhs), || format!("J({g} ∘ {f}) ≠ J({g}) ∘ J({f})"));
                    }
                }
            }
            let mut images: Vec<IntervalMap> = first.iter().map(j_map).collect();
            images.sort();
            images.dedup();
            let mut interval = enumerate_interval(a + 2, b + 2);
            interval.sort();
            t.check(images.len() == first.len() && images == interval, || {
                format!("J is not a bijection Hom([{a}],[{b}]) → Hom_Int({}, {})", a + 2, b + 2)
            });
            t.check(first.iter().all(|f| j_inverse(&j_map(f)) == *f), || format!("J⁻¹ ∘ J ≠ 1 at ([{a}],[{b}])"));
        }
        t.check(j_map(&OpArrow::identity(a)) == IntervalMap::identity(a + 2), || format!("J(1_[{a}]) ≠ 1"));
    }
    t.finish("J functor")
}

fn h_functor(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let top = s + 2;
    for a in 2..=top {
        t.check(h_map(&IntervalMap::identity(a)) == PartialMap::identity(a - 2), || format!("H(1_{a}) ≠ 1"));
        for b in 2..=top {
            for f in enumerate_interval(a, b) {
                let hf = h_map(&f);
                for c in 2..=top {
                    for g in enumerate_interval(b, c) {
                        let lhs = h_map(&g.compose(&f).unwrap());
                        let rhs = h_map(&g).compose(&hf);
                        t.check(rhs.as_ref() == Ok(&lhs), || format!("H({g} ∘ {f}) ≠ H({g}) ∘ H({f})"));
                    }
                }
            }
        }
    }
    t.finish("H functor")
}

fn hj_generators(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let inner = Generator::Face { level: 2, index: 1 }.op_arrow();
    t.check(hj_map(&inner) == PartialMap::from(mu1()), || format!("HJ({inner}) ≠ μ₁"));
    let unit = Generator::Degeneracy { level: 0, index: 0 }.op_arrow();
    t.check(hj_map(&unit) == PartialMap::from(eta1()), || format!("HJ({unit}) ≠ η₁"));
    for index in 0..=1 {
        let outer = Generator::Face { level: 1, index }.op_arrow();
        t.check(hj_map(&outer) == pi1(), || format!("HJ({outer}) ≠ π₁"));
    }
    for n in 2..=s + 1 {
        for j in 1..=n {
            let mut images = vec![None; n];
            images[j - 1] = Some(0);
            let expected = PartialMap::new(1, images).expect("valid");
            let got = edge_arrow(n, j).map(|a| hj_map(&a));
            t.check(got.as_ref() == Ok(&expected), || format!("HJ(i_{j}) at level {n} is not projection {j}"));
        }
    }
    t.finish("HJ generators and edges")
}

fn sample_monoids() -> Vec<FinMonoid> {
    let mut out = enumerate_monoids(2).expect("order 2");
    out.push(left_absorbing());
    out
}

fn f_functor(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let s = s.min(3);
    for m in &sample_monoids() {
        for a in 0..=s {
            t.check(f_eval(&PartialMap::identity(a), m) == FinFn::identity(m.order().pow(a as u32)), || {
                format!("F(1_{a}) ≠ 1")
            });
            for b in 0..=s {
                for f in enumerate_partial(a, b) {
                    let ff = f_eval(&f, m);
                    for c in 0..=s {
                        for g in enumerate_partial(b, c) {
                            let lhs = f_eval(&g.compose(&f).unwrap(), m);
                            t.check(f_eval(&g, m).after(&ff) == Some(lhs), || format!("F({g} ∘ {f}) ≠ F({g}) ∘ F({f})"));
                        }
                    }
                    for a2 in 0..=s - a.min(s) {
                        for f2 in enumerate_partial(a2, b) {
                            let both = f.tensor(&f2);
                            for x in TupleSet::new(m.order(), a + a2).iter() {
                                let mut expected = f_apply(&f, m, &x[..a]);
                                expected.extend(f_apply(&f2, m, &x[a..]));
                                t.check(f_apply(&both, m, &x) == expected, || format!("F({f} ⊗ {f2}) is not blockwise"));
                            }
                        }
                    }
                }
            }
        }
        let k = m.order();
        let mu = f_eval(&PartialMap::from(mu1()), m);
        for x in 0..k {
            for y in 0..k {
                t.check(mu.apply(x * k + y) == m.mul(x, y), || format!("F(μ₁)({x},{y}) ≠ {x}·{y}"));
            }
        }
        t.check(f_eval(&PartialMap::from(eta1()), m).images() == [m.unit()], || "F(η₁) ≠ unit".into());
        t.check(f_eval(&pi1(), m) == FinFn::constant(k, 1, 0), || "F(π₁) is not the terminal map".into());
    }
    t.finish("F functor")
}

/// The classical bar formulas on index tuples.
fn bar_face(m: &FinMonoid, n: usize, i: usize, x: &[usize]) -> Vec<usize> {
    let mut y = x.to_vec();
    if i == 0 {
        y.remove(0);
    } else if i == n {
        y.pop();
    } else {
        let p = m.mul(x[i - 1], x[i]);
        y.splice(i - 1..=i, [p]);
    }
    y
}

fn bar_degeneracy(m: &FinMonoid, i: usize, x: &[usize]) -> Vec<usize> {
    let mut y = x.to_vec();
    y.insert(i, m.unit());
    y
}

fn bar_formulas(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    for order in 1..=s.min(3) {
        for m in enumerate_monoids(order).expect("small order") {
            let x = nerve(&m, s);
            for g in Generator::all_within(s) {
                let (src, tgt) = (TupleSet::new(order, g.source_level()), TupleSet::new(order, g.target_level()));
                let f = x.generator(g);
                for (e, tuple) in src.iter().enumerate() {
                    let expected = match g {
                        Generator::Face { level, index } => bar_face(&m, level, index, &tuple),
                        Generator::Degeneracy { index, .. } => bar_degeneracy(&m, index, &tuple),
                    };
                    t.check(f.apply(e) == tgt.index_of(&expected), || {
                        format!("{g} on {} disagrees with the bar formula", x.level(g.source_level())[e])
                    });
                }
            }
        }
    }
    t.finish("bar formulas")
}

fn segal_round_trip(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let depth = s.max(3);
    for order in 1..=s.min(3) {
        for m in enumerate_monoids(order).expect("small order") {
            let x = nerve(&m, depth);
            let strict = segal_check(&x, SegalMode::Strict);
            t.check(strict.passed(), || format!("nerve of {m:?} is not strictly Segal"));
            t.check(simplicial_identities_check(&x).is_empty(), || "nerve violates identities".into());
            let back = reconstruct_monoid(&x);
            t.check(back.as_ref() == Ok(&m), || format!("reconstruction gives {back:?}"));
            t.check(verify_bar_equality(&x, &m) == Ok(Ok(())), || "nerve differs from bar construction".into());
            for n in 0..=depth {
                let p = p_map(&x, n).expect("in range");
                for (e, label) in x.level(n).iter().enumerate() {
                    let edges: Vec<&str> = p[e].iter().map(|&y| x.level(1)[y].as_str()).collect();
                    t.check(edges == parse_flat(label), || format!("p_{n}({label}) = {edges:?}"));
                }
            }
        }
    }
    t.finish("Segal and reconstruction")
}

fn evaluation_independence(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let x = nerve(&left_absorbing(), s);
    let gens = Generator::all_within(s);
    let identity_pairs: Vec<(Generator, Generator)> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| {
            b.target_level() == a.source_level()
                && a.op_arrow().compose(&b.op_arrow()).is_ok_and(|c| c.is_identity())
        })
        .collect();
    for dom in 0..=s {
        for cod in 0..=s {
            for a in enumerate_op(dom, cod) {
                let factors = factorize(&a);
                let reference = x.eval_arrow(&a).expect("in range");
                // level reached after evaluating factors[p..]
                let mut levels = vec![dom; factors.len() + 1];
                for p in (0..factors.len()).rev() {
                    levels[p] = factors[p].target_level();
                }
                for p in 0..=factors.len() {
                    for &(outer, inner) in identity_pairs.iter().filter(|(_, b)| b.source_level() == levels[p]) {
                        let mut longer = factors.clone();
                        longer.splice(p..p, [outer, inner]);
                        let got = x.eval_factors(dom, &longer).expect("in range");
                        t.check(got == reference, || format!("{a} changes when {outer}{inner} is inserted"));
                    }
                }
            }
        }
    }
    t.finish("evaluation independence")
}

/// Every single-entry change to a generator table of `x`.
pub fn single_entry_mutations(x: &TruncSSet) -> Vec<(Generator, usize, usize, TruncSSet)> {
    let mut out = Vec::new();
    for g in Generator::all_within(x.truncation()) {
        let f = x.generator(g);
        for e in 0..f.source() {
            for v in (0..f.target()).filter(|&v| v != f.apply(e)) {
                let mut h = f.clone();
                h.set(e, v);
                out.push((g, e, v, x.clone().with_generator(g, h).expect("same shape")));
            }
        }
    }
    out
}

fn negative_controls(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let constant = TruncSSet::constant(vec!["p".into(), "q".into()], s.max(2));
    let report = segal_check(&constant, SegalMode::Bijective);
    let failing = report.failing_levels();
    t.check(failing.contains(&0) && failing.contains(&2), || format!("constant 2-point set fails at {failing:?}"));
    for m in [crate::finset::cyclic(2), left_absorbing()] {
        let x = nerve(&m, s.min(3));
        for (g, e, v, y) in single_entry_mutations(&x) {
            let caught = !simplicial_identities_check(&y).is_empty() || verify_bar_equality(&y, &m) != Ok(Ok(()));
            t.check(caught, || format!("{g}: {e} ↦ {v} passes unnoticed"));
        }
    }
    t.finish("negative controls")
}

fn products(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let n = s.min(3);
    let monoids = sample_monoids();
    for a in &monoids {
        for b in &monoids {
            let (x, y) = (nerve(a, n), nerve(b, n));
            let p = product(&x, &y).expect("same truncation");
            for level in 0..=n {
                let expected = (a.order() * b.order()).pow(level as u32);
                t.check(p.product.size(level) == expected, || format!("level {level} has size {}", p.product.size(level)));
            }
            t.check(simplicial_identities_check(&p.product).is_empty(), || "product violates identities".into());
            t.check(is_simplicial_map(&p.product, &x, &p.proj1), || "first projection is not simplicial".into());
            t.check(is_simplicial_map(&p.product, &y, &p.proj2), || "second projection is not simplicial".into());
        }
    }
    t.finish("products")
}

fn bisimplicial(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    let d = s.clamp(2, 3);
    for order in 1..=s.min(3) {
        for m in enumerate_monoids(order).expect("small order") {
            match double_nerve(&m, d, d) {
                Ok(x) => {
                    t.check(m.is_commutative(), || "noncommutative monoid accepted".into());
                    t.check(x.violations().is_empty(), || "double nerve violates invariants".into());
                    t.check(double_segal_check(&x, SegalMode::Strict).passed(), || "double nerve is not Segal".into());
                    t.check(p_naturality_check(&x).is_ok(), || "p is not natural".into());
                    let eh = eckmann_hilton(&x);
                    t.check(
                        eh.as_ref().is_ok_and(|e| e.verdict() && e.horizontal == m && e.vertical == m),
                        || format!("Eckmann–Hilton: {eh:?}"),
                    );
                }
                Err(BiError::NotCommutative { a, b }) => {
                    let (ia, ib) = (m.index_of(&a), m.index_of(&b));
                    let genuine = ia.zip(ib).is_some_and(|(x, y)| m.mul(x, y) != m.mul(y, x));
                    t.check(genuine, || format!("bogus commutativity witness ({a},{b})"));
                }
                Err(e) => t.check(false, || format!("double nerve failed: {e}")),
            }
        }
    }
    let samples = sample_monoids();
    for a in &samples {
        for b in &samples {
            let x = external_product(&nerve(a, d), &nerve(b, d));
            t.check(x.violations().is_empty(), || "external product violates invariants".into());
            t.check(p_naturality_check(&x).is_ok(), || "p is not natural on an external product".into());
        }
    }
    t.finish("bisimplicial")
}

fn dot_is_well_formed(dot: &str) -> bool {
    let opens = dot.matches('{').count();
    let balanced = opens == dot.matches('}').count() && opens > 0;
    let mut declared = std::collections::HashSet::new();
    let mut edges_ok = true;
    for line in dot.lines().map(str::trim) {
        if let Some((from, to)) = line.strip_suffix(';').and_then(|l| l.split_once(" -> ")) {
            edges_ok &= declared.contains(from) && declared.contains(to);
        } else if let Some((name, _)) = line.split_once(" [label=") {
            declared.insert(name.to_string());
        }
    }
    balanced && edges_ok
}

fn rendering(s: usize) -> SuiteResult {
    let mut t = Tally::default();
    for kind in [HomKind::Total, HomKind::Partial, HomKind::Interval, HomKind::Op] {
        for n in 0..=s {
            for m in 0..=s {
                let maps = enumerate_hom(kind, n, m);
                let mut pictures: Vec<String> = maps
                    .iter()
                    .map(|f| {
                        let pic = render_arrow(f, Format::Ascii);
                        pic.split_once('\n').map(|(_, body)| body.to_string()).unwrap_or(pic)
                    })
                    .collect();
                pictures.sort();
                pictures.dedup();
                t.check(pictures.len() == maps.len(), || format!("{kind} {n} {m}: two maps share a picture"));
                for f in &maps {
                    t.check(dot_is_well_formed(&render_arrow(f, Format::Dot)), || format!("malformed DOT for {f}"));
                }
            }
        }
    }
    t.finish("rendering")
}
