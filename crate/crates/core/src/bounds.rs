//! Interval propagation over knot and spatial-graph invariants.
//!
//! Every attribute carries a closed interval of non-negative rationals with
//! an optional upper end. Rules only ever narrow intervals; each bound keeps
//! the chain of rules (and seeds) that produced it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attr {
    R,
    B,
    Bs,
    Waist,
    Beta1,
    Components,
}

impl Attr {
    pub const ALL: [Attr; 6] = [Attr::R, Attr::B, Attr::Bs, Attr::Waist, Attr::Beta1, Attr::Components];

    pub fn name(self) -> &'static str {
        match self {
            Attr::R => "r",
            Attr::B => "b",
            Attr::Bs => "bs",
            Attr::Waist => "waist",
            Attr::Beta1 => "beta1",
            Attr::Components => "components",
        }
    }
}

impl fmt::Display for Attr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Attr::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidFacts(format!("unknown attribute {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::R0,
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
        Rule::R13,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Rule::R0 => "all attributes are integers",
            Rule::R1 => "r <= bs/2",
            Rule::R2 => "knots: 2 <= r <= b",
            Rule::R3 => "knots: bs = 2b",
            Rule::R4 => "torus knot (p,q): r = b = min(p,q)",
            Rule::R5 => "two-bridge: r = b = 2",
            Rule::R6 => "algebraic: r <= 3",
            Rule::R7 => "pretzel: r = 3 exactly for +-(-2,3,3) and +-(-2,3,5)",
            Rule::R8 => "composite: r = 2",
            Rule::R9 => "Conway sphere: r <= 4",
            Rule::R10 => "theta curve: bs <= 2b + 1",
            Rule::R11 => "primitive: r <= beta1",
            Rule::R12 => "waist <= bs/3",
            Rule::R13 => "non-trivial: r >= 1",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// What is known about the subject, beyond numeric seeds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SubjectTags {
    pub nontrivial_knot: bool,
    pub torus_knot: Option<(u64, u64)>,
    pub two_bridge: bool,
    pub algebraic: bool,
    pub pretzel: Option<(i64, i64, i64)>,
    pub composite: bool,
    pub has_conway_sphere: bool,
    pub theta_curve: bool,
    pub primitive: bool,
    pub spatial_graph: bool,
}

fn parse_ints<T: FromStr>(s: &str, n: usize, tag: &str) -> Result<Vec<T>> {
    let out: Vec<T> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidFacts(format!("cannot parse parameters of {tag}: {s:?}")))?;
    if out.len() != n {
        return Err(Error::InvalidFacts(format!("{tag} takes {n} parameters")));
    }
    Ok(out)
}

impl SubjectTags {
    /// Parses `name` or `name=params` items and checks they fit together.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let mut t = SubjectTags::default();
        for item in items {
            let item = item.as_ref().trim();
            let (name, params) = match item.split_once('=') {
                Some((n, p)) => (n.trim(), Some(p)),
                None => (item, None),
            };
            let flag = |params: Option<&str>| match params {
                None => Ok(true),
                Some(_) => Err(Error::InvalidFacts(format!("tag {name} takes no parameters"))),
            };
            let need = || Error::InvalidFacts(format!("tag {name} needs parameters"));
            match name {
                "nontrivial_knot" => t.nontrivial_knot = flag(params)?,
                "two_bridge" => t.two_bridge = flag(params)?,
                "algebraic" => t.algebraic = flag(params)?,
                "composite" => t.composite = flag(params)?,
                "has_conway_sphere" => t.has_conway_sphere = flag(params)?,
                "theta_curve" => t.theta_curve = flag(params)?,
                "primitive" => t.primitive = flag(params)?,
                "spatial_graph" => t.spatial_graph = flag(params)?,
                "torus_knot" => {
                    let v = parse_ints::<u64>(params.ok_or_else(need)?, 2, name)?;
                    t.torus_knot = Some((v[0], v[1]));
                }
                "pretzel" => {
                    let v = parse_ints::<i64>(params.ok_or_else(need)?, 3, name)?;
                    t.pretzel = Some((v[0], v[1], v[2]));
                }
                _ => return Err(Error::InvalidFacts(format!("unknown tag {name:?}"))),
            }
        }
        t.normalize()?;
        Ok(t)
    }

    /// Adds implied tags and rejects inconsistent or trivial subjects.
    pub fn normalize(&mut self) -> Result<()> {
        if let Some((p, q)) = self.torus_knot {
            if p.min(q) < 2 || p.gcd(&q) != 1 {
                return Err(Error::InvalidFacts(format!(
                    "torus_knot={p},{q} is not a non-trivial knot (need coprime p, q >= 2)"
                )));
            }
        }
        let knot_kind = self.torus_knot.is_some()
            || self.two_bridge
            || self.algebraic
            || self.pretzel.is_some()
            || self.composite
            || self.has_conway_sphere;
        self.nontrivial_knot |= knot_kind;
        self.spatial_graph |= self.theta_curve || self.primitive;
        if self.nontrivial_knot && self.theta_curve {
            return Err(Error::InvalidFacts("a knot is not a theta curve".into()));
        }
        if self.composite && (self.torus_knot.is_some() || self.two_bridge) {
            return Err(Error::InvalidFacts(
                "torus knots and two-bridge knots are prime, not composite".into(),
            ));
        }
        if !self.nontrivial_knot && !self.spatial_graph {
            return Err(Error::InvalidFacts(
                "subject must be tagged as a non-trivial knot or spatial graph".into(),
            ));
        }
        Ok(())
    }

    fn pretzel_listed(&self) -> Option<bool> {
        self.pretzel.map(|(p, q, r)| {
            let mut s = [p, q, r];
            if s.iter().filter(|&&x| x < 0).count() >= 2 {
                s.iter_mut().for_each(|x| *x = -*x);
            }
            s.sort_unstable();
            s == [-2, 3, 3] || s == [-2, 3, 5]
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Q,
    /// Rules and seeds this bound was derived from, in first-use order.
    pub from: Vec<String>,
}

fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct V<'a>(&'a Q);
        impl Serialize for V<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                ser_q(self.0, s)
            }
        }
        let mut st = s.serialize_struct("Bound", 2)?;
        st.serialize_field("value", &V(&self.value))?;
        st.serialize_field("from", &self.from)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub lo: Bound,
    pub hi: Option<Bound>,
}

impl Fact {
    pub fn interval(&self) -> (Q, Option<Q>) {
        (self.lo.value, self.hi.as_ref().map(|h| h.value))
    }

    pub fn point(&self) -> Option<Q> {
        match self.interval() {
            (lo, Some(hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(h) => write!(f, "[{}, {}]", self.lo.value, h.value),
            None => write!(f, "[{}, inf)", self.lo.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactSet {
    facts: BTreeMap<Attr, Fact>,
}

/// A numeric seed: `attr=v`, `attr=lo..hi` or `attr=lo..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub attr: Attr,
    pub lo: Option<Q>,
    pub hi: Option<Q>,
}

fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidFacts(format!("not a rational number: {s:?}"));
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Q::new(n.trim().parse().map_err(|_| bad())?, d)
        }
        None => Q::from_integer(s.parse().map_err(|_| bad())?),
    };
    if q < Q::from_integer(0) {
        return Err(Error::InvalidFacts(format!("attributes are non-negative, got {s}")));
    }
    Ok(q)
}

impl FromStr for Seed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (attr, val) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidFacts(format!("seed {s:?} is not attr=value")))?;
        let attr: Attr = attr.trim().parse()?;
        let (lo, hi) = match val.split_once("..") {
            Some((lo, hi)) => (
                (!lo.trim().is_empty()).then(|| parse_q(lo)).transpose()?,
                (!hi.trim().is_empty()).then(|| parse_q(hi)).transpose()?,
            ),
            None => {
                let v = parse_q(val)?;
                (Some(v), Some(v))
            }
        };
        Ok(Seed { attr, lo, hi })
    }
}

fn chain(deps: &[&[String]], step: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for d in deps.iter().flat_map(|d| d.iter()).map(String::as_str).chain([step]) {
        if !out.iter().any(|x| x == d) {
            out.push(d.to_string());
        }
    }
    out
}

/// Shorter chains first, then lexicographic.
fn shorter(a: &[String], b: &[String]) -> bool {
    (a.len(), a) < (b.len(), b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum End {
    Lo,
    Hi,
}

/// One inference of a rule: a constant end, or an end of `target` obtained
/// from the same end of `source` as `factor * source + offset`.
#[derive(Debug, Clone, Copy)]
enum Step {
    Const(Attr, End, i64),
    Link {
        target: Attr,
        source: Attr,
        end: End,
        factor: Q,
        offset: Q,
    },
}

fn link(target: Attr, source: Attr, end: End, factor: Q, offset: Q) -> Step {
    Step::Link {
        target,
        source,
        end,
        factor,
        offset,
    }
}

impl Rule {
    fn steps(self, tags: &SubjectTags) -> Vec<Step> {
        use Attr::*;
        use End::*;
        let one = Q::from_integer(1);
        let zero = Q::from_integer(0);
        let half = Q::new(1, 2);
        let two = Q::from_integer(2);
        match self {
            Rule::R1 => vec![link(R, Bs, Hi, half, zero), link(Bs, R, Lo, two, zero)],
            Rule::R2 if tags.nontrivial_knot => {
                vec![Step::Const(R, Lo, 2), link(R, B, Hi, one, zero), link(B, R, Lo, one, zero)]
            }
            Rule::R3 if tags.nontrivial_knot => vec![
                link(Bs, B, Lo, two, zero),
                link(Bs, B, Hi, two, zero),
                link(B, Bs, Lo, half, zero),
                link(B, Bs, Hi, half, zero),
            ],
            Rule::R4 => match tags.torus_knot {
                Some((p, q)) => {
                    let m = p.min(q) as i64;
                    vec![Step::Const(R, Lo, m), Step::Const(R, Hi, m), Step::Const(B, Lo, m), Step::Const(B, Hi, m)]
                }
                None => vec![],
            },
            Rule::R5 if tags.two_bridge => {
                vec![Step::Const(R, Lo, 2), Step::Const(R, Hi, 2), Step::Const(B, Lo, 2), Step::Const(B, Hi, 2)]
            }
            Rule::R6 if tags.algebraic => vec![Step::Const(R, Hi, 3)],
            Rule::R7 if tags.pretzel_listed() == Some(true) => vec![Step::Const(R, Lo, 3), Step::Const(R, Hi, 3)],
            Rule::R8 if tags.composite => vec![Step::Const(R, Lo, 2), Step::Const(R, Hi, 2)],
            Rule::R9 if tags.has_conway_sphere => vec![Step::Const(R, Hi, 4)],
            Rule::R10 if tags.theta_curve => vec![link(Bs, B, Hi, two, one), link(B, Bs, Lo, half, -half)],
            Rule::R11 if tags.primitive => vec![link(R, Beta1, Hi, one, zero), link(Beta1, R, Lo, one, zero)],
            Rule::R12 => vec![link(Waist, Bs, Hi, Q::new(1, 3), zero), link(Bs, Waist, Lo, Q::from_integer(3), zero)],
            Rule::R13 => vec![Step::Const(R, Lo, 1)],
            _ => vec![],
        }
    }

    /// Rules that move a single end in place: R0 rounds to integers, R7
    /// steps an end off the excluded value 3.
    fn adjust(self, tags: &SubjectTags, attr: Attr, end: End, v: Q) -> Option<Q> {
        match (self, end) {
            (Rule::R0, End::Lo) if !v.is_integer() => Some(v.ceil()),
            (Rule::R0, End::Hi) if !v.is_integer() => Some(v.floor()),
            (Rule::R7, _) if attr != Attr::R || tags.pretzel_listed() != Some(false) => None,
            (Rule::R7, End::Lo) if v == Q::from_integer(3) => Some(Q::from_integer(4)),
            (Rule::R7, End::Hi) if v == Q::from_integer(3) => Some(Q::from_integer(2)),
            _ => None,
        }
    }
}

impl FactSet {
    fn unconstrained() -> Self {
        let facts = Attr::ALL
            .into_iter()
            .map(|a| {
                let lo = Bound {
                    value: Q::from_integer(0),
                    from: vec![],
                };
                (a, Fact { lo, hi: None })
            })
            .collect();
        FactSet { facts }
    }

    pub fn get(&self, a: Attr) -> &Fact {
        &self.facts[&a]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Attr, &Fact)> {
        self.facts.iter().map(|(a, f)| (*a, f))
    }

    /// Intervals only, for comparing fixed points.
    pub fn intervals(&self) -> Vec<(Attr, Q, Option<Q>)> {
        self.iter().map(|(a, f)| (a, f.lo.value, f.hi.as_ref().map(|h| h.value))).collect()
    }

    fn end(&self, a: Attr, end: End) -> Option<&Bound> {
        let f = self.get(a);
        match end {
            End::Lo => Some(&f.lo),
            End::Hi => f.hi.as_ref(),
        }
    }

    fn check(&self, a: Attr) -> Result<()> {
        let f = self.get(a);
        match &f.hi {
            Some(h) if h.value < f.lo.value => Err(Error::Contradiction {
                attr: a.name().to_string(),
                detail: format!("lower bound {} exceeds upper bound {}", f.lo.value, h.value),
                chain: chain(&[&f.lo.from, &h.from], "empty"),
            }),
            _ => Ok(()),
        }
    }

    /// Moves an end inward; anything else is a no-op.
    fn tighten(&mut self, a: Attr, end: End, v: Q, from: Vec<String>) -> Result<bool> {
        let f = self.facts.get_mut(&a).expect("all attributes present");
        let slot = match end {
            End::Lo if v > f.lo.value => &mut f.lo,
            End::Hi if f.hi.as_ref().is_none_or(|h| v < h.value) => f.hi.insert(f.lo.clone()),
            _ => return Ok(false),
        };
        *slot = Bound { value: v, from };
        self.check(a)?;
        Ok(true)
    }

    fn seed(&mut self, s: &Seed) -> Result<()> {
        let tag = format!("seed {}", s.attr);
        if let Some(lo) = s.lo {
            self.tighten(s.attr, End::Lo, lo, vec![tag.clone()])?;
        }
        if let Some(hi) = s.hi {
            self.tighten(s.attr, End::Hi, hi, vec![tag])?;
        }
        Ok(())
    }

    fn apply(&mut self, rule: Rule, tags: &SubjectTags) -> Result<bool> {
        let name = rule.to_string();
        let mut changed = false;
        for a in Attr::ALL {
            for end in [End::Lo, End::Hi] {
                let Some(b) = self.end(a, end) else { continue };
                if let Some(w) = rule.adjust(tags, a, end, b.value) {
                    let from = chain(&[&b.from], &name);
                    changed |= self.tighten(a, end, w, from)?;
                }
            }
        }
        for step in rule.steps(tags) {
            changed |= match step {
                Step::Const(a, end, v) => self.tighten(a, end, Q::from_integer(v), vec![name.clone()])?,
                Step::Link {
                    target,
                    source,
                    end,
                    factor,
                    offset,
                } => match self.end(source, end) {
                    Some(b) => {
                        let (v, from) = (b.value * factor + offset, chain(&[&b.from], &name));
                        self.tighten(target, end, v, from)?
                    }
                    None => false,
                },
            };
        }
        Ok(changed)
    }

    /// Replaces every chain by the shortest derivation of the same value.
    ///
    /// Chains recorded while propagating depend on which rule fired first;
    /// this closes the seeds under all rules, keeping every value reached
    /// (not just the tightest), so the result depends on the facts alone.
    fn canonical_chains(&mut self, tags: &SubjectTags, seeds: &[Seed]) {
        type Key = (Attr, End);
        #[derive(Default)]
        struct Closure {
            found: BTreeMap<Key, BTreeMap<Q, Vec<String>>>,
            queue: std::collections::VecDeque<(Key, Q)>,
        }
        impl Closure {
            fn offer(&mut self, key: Key, v: Q, from: Vec<String>) {
                if key.1 == End::Lo && v < Q::from_integer(0) {
                    return;
                }
                let slot = self.found.entry(key).or_default();
                if slot.get(&v).is_none_or(|old| shorter(&from, old)) {
                    slot.insert(v, from);
                    self.queue.push_back((key, v));
                }
            }
        }
        let mut cl = Closure::default();
        for a in Attr::ALL {
            cl.offer((a, End::Lo), Q::from_integer(0), vec![]);
        }
        for s in seeds {
            let tag = format!("seed {}", s.attr);
            for (end, v) in [(End::Lo, s.lo), (End::Hi, s.hi)] {
                if let Some(v) = v {
                    cl.offer((s.attr, end), v, vec![tag.clone()]);
                }
            }
        }
        let steps: Vec<(Rule, Vec<Step>)> = Rule::ALL.iter().map(|&r| (r, r.steps(tags))).collect();
        for (rule, ss) in &steps {
            for s in ss {
                if let Step::Const(a, end, v) = *s {
                    cl.offer((a, end), Q::from_integer(v), vec![rule.to_string()]);
                }
            }
        }
        let mut budget = MAX_DERIVATIONS;
        while let Some(((a, end), v)) = cl.queue.pop_front() {
            budget -= 1;
            if budget == 0 {
                // keep the chains recorded during propagation
                return;
            }
            let from = cl.found[&(a, end)][&v].clone();
            for (rule, ss) in &steps {
                let name = rule.to_string();
                if let Some(w) = rule.adjust(tags, a, end, v) {
                    cl.offer((a, end), w, chain(&[&from], &name));
                }
                for s in ss {
                    if let Step::Link {
                        target,
                        source,
                        end: e,
                        factor,
                        offset,
                    } = *s
                    {
                        if source == a && e == end {
                            cl.offer((target, end), v * factor + offset, chain(&[&from], &name));
                        }
                    }
                }
            }
        }
        for (a, f) in self.facts.iter_mut() {
            let ends = [(End::Lo, Some(&mut f.lo)), (End::Hi, f.hi.as_mut())];
            for (end, b) in ends {
                if let Some(b) = b {
                    if let Some(from) = cl.found.get(&(*a, end)).and_then(|m| m.get(&b.value)) {
                        b.from = from.clone();
                    }
                }
            }
        }
    }
}

/// Upper limit on full passes over the rules.
pub const MAX_PASSES: usize = 10_000;

/// Upper limit on derivations explored when choosing provenance chains.
pub const MAX_DERIVATIONS: usize = 1_000_000;

pub fn propagate(tags: &SubjectTags, seeds: &[Seed]) -> Result<FactSet> {
    propagate_in_order(tags, seeds, &Rule::ALL)
}

/// Runs the rules in the given order, pass after pass, until nothing changes.
/// Each bound reports its shortest derivation, so the result does not depend
/// on `order`; contradiction chains do.
pub fn propagate_in_order(tags: &SubjectTags, seeds: &[Seed], order: &[Rule]) -> Result<FactSet> {
    let mut tags = tags.clone();
    tags.normalize()?;
    let mut fs = FactSet::unconstrained();
    for s in seeds {
        fs.seed(s)?;
    }
    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for &rule in order {
            changed |= fs.apply(rule, &tags)?;
        }
        if !changed {
            fs.canonical_chains(&tags, seeds);
            return Ok(fs);
        }
    }
    Err(Error::InvalidFacts(format!("no fixed point after {MAX_PASSES} passes")))
}

/// First Betti number `E - V + C` of a graph.
pub fn betti1(vertices: u64, edges: u64, components: u64) -> Result<u64> {
    if vertices == 0 || components == 0 || components > vertices {
        return Err(Error::InvalidFacts(format!(
            "need V >= 1 and 1 <= C <= V, got V={vertices}, C={components}"
        )));
    }
    (edges + components).checked_sub(vertices).ok_or_else(|| {
        Error::InvalidFacts(format!(
            "{edges} edges cannot connect {vertices} vertices into {components} components"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn run(tags: &[&str], seeds: &[&str]) -> Result<FactSet> {
        let t = SubjectTags::parse(tags)?;
        let s: Vec<Seed> = seeds.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        propagate(&t, &s)
    }

    #[test]
    fn torus_three_five() {
        let f = run(&["torus_knot=3,5"], &[]).unwrap();
        assert_eq!(f.get(Attr::R).point(), Some(q(3)));
        assert_eq!(f.get(Attr::B).point(), Some(q(3)));
        assert_eq!(f.get(Attr::Bs).point(), Some(q(6)));
        assert_eq!(f.get(Attr::Waist).interval(), (q(0), Some(q(2))));
    }

    #[test]
    fn two_bridge_and_composite() {
        let f = run(&["two_bridge"], &[]).unwrap();
        assert_eq!(f.get(Attr::R).point(), Some(q(2)));
        assert_eq!(f.get(Attr::Bs).point(), Some(q(4)));
        let f = run(&["composite"], &["b=4"]).unwrap();
        assert_eq!(f.get(Attr::R).point(), Some(q(2)));
        assert_eq!(f.get(Attr::Bs).point(), Some(q(8)));
    }

    #[test]
    fn odd_bridge_string_contradicts() {
        for (seed, rule) in [("bs=3", "R1"), ("bs=5", "R3")] {
            match run(&["nontrivial_knot"], &[seed]) {
                Err(Error::Contradiction { chain, .. }) => {
                    assert!(chain.iter().any(|c| c == rule), "{seed}: {chain:?}");
                    assert!(chain.iter().any(|c| c == "seed bs"), "{seed}: {chain:?}");
                }
                other => panic!("expected contradiction, got {other:?}"),
            }
        }
    }

    #[test]
    fn pretzel_rules() {
        let f = run(&["pretzel=-2,3,7", "algebraic"], &[]).unwrap();
        assert_eq!(f.get(Attr::R).point(), Some(q(2)));
        let f = run(&["pretzel=2,-3,-5"], &[]).unwrap();
        assert_eq!(f.get(Attr::R).point(), Some(q(3)));
        let f = run(&["pretzel=-2,3,7"], &[]).unwrap();
        assert_eq!(f.get(Attr::R).interval(), (q(2), None));
    }

    #[test]
    fn theta_and_primitive() {
        let f = run(&["theta_curve", "primitive"], &["b=2", "beta1=2"]).unwrap();
        assert_eq!(f.get(Attr::Bs).interval(), (q(2), Some(q(5))));
        assert_eq!(f.get(Attr::R).interval(), (q(1), Some(q(2))));
    }

    #[test]
    fn provenance_chain() {
        let f = run(&["torus_knot=3,5"], &[]).unwrap();
        assert_eq!(f.get(Attr::Bs).lo.from, vec!["R4", "R1"]);
        assert_eq!(f.get(Attr::Bs).hi.as_ref().unwrap().from, vec!["R4", "R3"]);
    }

    #[test]
    fn tag_validation() {
        assert!(SubjectTags::parse::<&str>(&[]).is_err());
        assert!(SubjectTags::parse(&["torus_knot=2,4"]).is_err());
        assert!(SubjectTags::parse(&["torus_knot=1,4"]).is_err());
        assert!(SubjectTags::parse(&["composite", "two_bridge"]).is_err());
        assert!(SubjectTags::parse(&["nontrivial_knot", "theta_curve"]).is_err());
        assert!(SubjectTags::parse(&["wild"]).is_err());
        assert!(SubjectTags::parse(&["two_bridge=3"]).is_err());
    }

    #[test]
    fn seeds() {
        let s: Seed = "r=3/2..4".parse().unwrap();
        assert_eq!((s.lo, s.hi), (Some(Q::new(3, 2)), Some(q(4))));
        let s: Seed = "b=3..".parse().unwrap();
        assert_eq!((s.lo, s.hi), (Some(q(3)), None));
        assert!("x=1".parse::<Seed>().is_err());
        assert!("r=-1".parse::<Seed>().is_err());
        assert!("r=1/0".parse::<Seed>().is_err());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti1(2, 3, 1).unwrap(), 2);
        assert_eq!(betti1(5, 4, 1).unwrap(), 0);
        assert!(betti1(5, 3, 1).is_err());
        assert!(betti1(0, 0, 0).is_err());
        assert!(betti1(2, 1, 3).is_err());
    }

    #[test]
    fn json_shape() {
        let f = run(&["two_bridge"], &[]).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["facts"]["r"]["lo"]["value"], "2");
        assert_eq!(v["facts"]["r"]["hi"]["from"][0], "R5");
        assert_eq!(v["facts"]["waist"]["hi"]["value"], "1");
        assert!(v["facts"]["components"]["hi"].is_null());
    }
}
