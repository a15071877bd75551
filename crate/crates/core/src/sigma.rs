//! Partitions of the primes and the subgroup embeddings defined relative to them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formations;
use crate::group::{Elem, Group};
use crate::lattice::{permutes, Lattice};
use crate::subgroup::Subgroup;
use crate::util;

/// What happens to primes not listed in an explicit class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rest {
    /// Each unlisted prime forms its own class.
    Singletons,
    /// All unlisted primes form one class.
    OneClass,
}

/// One class of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaClass {
    Explicit(usize),
    Prime(u64),
    Rest,
}

pub type ClassSet = BTreeSet<SigmaClass>;

/// A partition of all primes: finitely many explicit classes plus a policy
/// for everything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaPartition {
    classes: Vec<Vec<u64>>,
    rest: Rest,
}

/// Cached reachability data for the chain-defined embeddings.
pub type Reach = Vec<FixedBitSet>;

impl SigmaPartition {
    pub fn new(classes: Vec<Vec<u64>>, rest: Rest) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut norm: Vec<Vec<u64>> = Vec::new();
        for mut c in classes {
            if c.is_empty() {
                return Err(Error::InvalidSigma("empty class".into()));
            }
            c.sort_unstable();
            c.dedup();
            for &p in &c {
                if !util::is_prime(p) {
                    return Err(Error::InvalidSigma(format!("{p} is not a prime")));
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidSigma(format!("prime {p} listed twice")));
                }
            }
            norm.push(c);
        }
        if rest == Rest::Singletons {
            norm.retain(|c| c.len() > 1);
        }
        norm.sort();
        Ok(SigmaPartition {
            classes: norm,
            rest,
        })
    }

    /// The partition into single primes.
    pub fn sigma1() -> Self {
        SigmaPartition {
            classes: Vec::new(),
            rest: Rest::Singletons,
        }
    }

    /// `{π, π′}`.
    pub fn pi(primes: &[u64]) -> Result<Self> {
        Self::new(vec![primes.to_vec()], Rest::OneClass)
    }

    /// Parses `sigma1`, `pi:[2,3]` or `classes=[[2,3],[5]];rest=singletons|one-class`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "sigma1" {
            return Ok(Self::sigma1());
        }
        if let Some(list) = t.strip_prefix("pi:") {
            return Self::pi(&parse_list(list)?);
        }
        let mut classes = None;
        let mut rest = None;
        for part in t.split(';') {
            if let Some(v) = part.strip_prefix("classes=") {
                let inner = v
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| Error::InvalidSigma(format!("bad class list `{v}`")))?;
                let mut out = Vec::new();
                let mut rem = inner;
                while !rem.is_empty() {
                    let end = rem
                        .find(']')
                        .ok_or_else(|| Error::InvalidSigma("unclosed class".into()))?;
                    out.push(parse_list(&rem[..=end])?);
                    rem = rem[end + 1..].trim_start_matches(',');
                }
                classes = Some(out);
            } else if let Some(v) = part.strip_prefix("rest=") {
                rest = Some(match v {
                    "singletons" => Rest::Singletons,
                    "one-class" => Rest::OneClass,
                    _ => return Err(Error::InvalidSigma(format!("unknown rest policy `{v}`"))),
                });
            } else if !part.is_empty() {
                return Err(Error::InvalidSigma(format!("unexpected `{part}`")));
            }
        }
        Self::new(
            classes.unwrap_or_default(),
            rest.unwrap_or(Rest::Singletons),
        )
    }

    pub fn explicit_classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn rest(&self) -> Rest {
        self.rest
    }

    pub fn class_of(&self, p: u64) -> SigmaClass {
        for (i, c) in self.classes.iter().enumerate() {
            if c.contains(&p) {
                return SigmaClass::Explicit(i);
            }
        }
        match self.rest {
            Rest::Singletons => SigmaClass::Prime(p),
            Rest::OneClass => SigmaClass::Rest,
        }
    }

    /// `σ(n)`.
    pub fn classes_of(&self, n: u64) -> ClassSet {
        util::prime_divisors(n)
            .into_iter()
            .map(|p| self.class_of(p))
            .collect()
    }

    pub fn classes_of_group(&self, g: &Group) -> ClassSet {
        self.classes_of(g.order() as u64)
    }

    /// `|σ(n)| ≤ 1`.
    pub fn is_primary_number(&self, n: u64) -> bool {
        self.classes_of(n).len() <= 1
    }

    /// `σ(n) ⊆ set`.
    pub fn is_number_in(&self, n: u64, set: &ClassSet) -> bool {
        self.classes_of(n).is_subset(set)
    }

    /// The `c`-part of `n`.
    pub fn part(&self, n: u64, c: SigmaClass) -> u64 {
        util::part(n, |p| self.class_of(p) == c)
    }

    pub fn label(&self, c: SigmaClass) -> String {
        match c {
            SigmaClass::Explicit(i) => format!("{:?}", self.classes[i]),
            SigmaClass::Prime(p) => format!("[{p}]"),
            SigmaClass::Rest => "rest".to_string(),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidSigma(format!("bad prime list `{s}`")))?;
    inner
        .split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidSigma(format!("bad prime `{t}`")))
        })
        .collect()
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |c: &Vec<u64>| {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            format!("[{}]", parts.join(","))
        };
        match (self.classes.len(), self.rest) {
            (0, Rest::Singletons) => write!(f, "sigma1"),
            (1, Rest::OneClass) => write!(f, "pi:{}", list(&self.classes[0])),
            _ => {
                let cs: Vec<String> = self.classes.iter().map(list).collect();
                let rest = match self.rest {
                    Rest::Singletons => "singletons",
                    Rest::OneClass => "one-class",
                };
                write!(f, "classes=[{}];rest={rest}", cs.join(","))
            }
        }
    }
}

impl std::str::FromStr for SigmaPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub fn is_sigma_primary(s: &SigmaPartition, g: &Group) -> bool {
    s.is_primary_number(g.order() as u64)
}

/// Every Hall `σ_i`-subgroup is normal: the `σ_i`-elements form exactly one
/// subgroup of the right size, for each class.
pub fn is_sigma_nilpotent(s: &SigmaPartition, g: &Group) -> bool {
    let n = g.order() as u64;
    s.classes_of(n).into_iter().all(|c| {
        let want = s.part(n, c) as usize;
        let count = (0..n as Elem)
            .filter(|&x| {
                s.classes_of(g.element_order(x) as u64)
                    .is_subset(&[c].into())
            })
            .count();
        count == want
    })
}

pub fn is_sigma_soluble(s: &SigmaPartition, g: &Group) -> Result<bool> {
    let series = formations::chief_series(g)?;
    Ok(series
        .factors()
        .iter()
        .all(|f| s.is_primary_number(f.order as u64)))
}

/// Hall `c`-subgroups of the lattice member `k`; the trivial subgroup if
/// `c ∉ σ(K)`.
pub fn hall_subgroups_in(s: &SigmaPartition, l: &Lattice, k: usize, c: SigmaClass) -> Vec<usize> {
    let n = l.sub(k).order() as u64;
    let want = s.part(n, c) as usize;
    l.below(k)
        .ones()
        .filter(|&i| l.sub(i).order() == want)
        .collect()
}

pub fn hall_subgroups(s: &SigmaPartition, g: &Group, c: SigmaClass) -> Result<Vec<usize>> {
    let l = g.lattice()?;
    Ok(hall_subgroups_in(s, &l, l.top(), c))
}

pub fn is_sigma_full_in(s: &SigmaPartition, l: &Lattice, k: usize) -> bool {
    let n = l.sub(k).order() as u64;
    s.classes_of(n)
        .into_iter()
        .all(|c| !hall_subgroups_in(s, l, k, c).is_empty())
}

pub fn is_sigma_full(s: &SigmaPartition, g: &Group) -> Result<bool> {
    let l = g.lattice()?;
    Ok(is_sigma_full_in(s, &l, l.top()))
}

/// Largest normal subgroup whose order involves only primes satisfying `keep`.
pub fn o_pi(g: &Group, keep: impl Fn(u64) -> bool) -> Subgroup {
    g.largest_normal_with(|n| {
        util::prime_divisors(n.order() as u64)
            .into_iter()
            .all(&keep)
    })
}

/// The subgroup generated by all elements whose order avoids `keep`.
pub fn o_upper_pi(g: &Group, keep: impl Fn(u64) -> bool) -> Subgroup {
    let elems =
        g.elements_with_order_in(|o| util::prime_divisors(o as u64).into_iter().all(|p| !keep(p)));
    let h = g.closure(&elems);
    g.canonical(&h)
}

/// `O_Π(G)` for a set of classes.
pub fn o_sigma(s: &SigmaPartition, g: &Group, classes: &ClassSet) -> Subgroup {
    o_pi(g, |p| classes.contains(&s.class_of(p)))
}

/// One step of a σ-subnormal chain: `K ⊴ H` or `H/K_H` is σ-primary.
pub fn sigma_step(s: &SigmaPartition, g: &Group, l: &Lattice, k: usize, h: usize) -> bool {
    let (ko, ho) = (l.sub(k).order() as u64, l.sub(h).order() as u64);
    if l.is_normal_in(g, k, h) {
        return true;
    }
    // |H : K_H| is a multiple of |H : K|
    if !s.is_primary_number(ho / ko) {
        return false;
    }
    let core = l.core_in(g, k, h);
    s.is_primary_number(ho / l.sub(core).order() as u64)
}

/// `reach[i]` = every `j` such that subgroup `i` is joined to `j` by a chain
/// whose steps all satisfy `step`.
pub fn chain_reach(l: &Lattice, mut step: impl FnMut(usize, usize) -> bool) -> Reach {
    let n = l.len();
    let mut reach: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for i in (0..n).rev() {
        let mut r = FixedBitSet::with_capacity(n);
        r.insert(i);
        for h in l.above(i).ones() {
            if h == i || r.contains(h) {
                continue;
            }
            if step(i, h) {
                r.union_with(&reach[h]);
            }
        }
        reach[i] = r;
    }
    reach
}

/// Shortest chain from `from` to `to` under `step`, ties broken by canonical order.
pub fn shortest_chain(
    l: &Lattice,
    from: usize,
    to: usize,
    mut step: impl FnMut(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n = l.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::from([from]);
    seen.insert(from);
    while let Some(k) = queue.pop_front() {
        if k == to {
            let mut chain = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                chain.push(cur);
            }
            chain.reverse();
            return Some(chain);
        }
        for h in l.above(k).ones() {
            if h == k || seen.contains(h) || !l.le(h, to) {
                continue;
            }
            if step(k, h) {
                seen.insert(h);
                prev[h] = k;
                queue.push_back(h);
            }
        }
    }
    None
}

pub(crate) fn cached_reach(
    g: &Group,
    key: String,
    build: impl FnOnce() -> Result<Reach>,
) -> Result<Arc<Reach>> {
    if let Some(r) = g.caches.reach.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let r = Arc::new(build()?);
    g.caches.reach.lock().unwrap().insert(key, r.clone());
    Ok(r)
}

/// σ-subnormality between all pairs of subgroups.
pub fn sigma_subnormal_reach(s: &SigmaPartition, g: &Group) -> Result<Arc<Reach>> {
    cached_reach(g, format!("sn:{s}"), || {
        let l = g.lattice()?;
        Ok(chain_reach(&l, |k, h| sigma_step(s, g, &l, k, h)))
    })
}

/// Classical subnormality (chains of normal steps) between all pairs.
pub fn subnormal_reach(g: &Group) -> Result<Arc<Reach>> {
    cached_reach(g, "subnormal".into(), || {
        let l = g.lattice()?;
        Ok(chain_reach(&l, |k, h| l.is_normal_in(g, k, h)))
    })
}

/// `A` σ-subnormal in `K`, both lattice indices.
pub fn is_sigma_subnormal_in(s: &SigmaPartition, g: &Group, a: usize, k: usize) -> Result<bool> {
    Ok(sigma_subnormal_reach(s, g)?[a].contains(k))
}

/// σ-subnormality of `a` in the whole group, with a shortest witness chain.
pub fn is_sigma_subnormal(
    s: &SigmaPartition,
    g: &Group,
    a: &Subgroup,
) -> Result<(bool, Option<Vec<Subgroup>>)> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    if !is_sigma_subnormal_in(s, g, i, l.top())? {
        return Ok((false, None));
    }
    let chain =
        shortest_chain(&l, i, l.top(), |k, h| sigma_step(s, g, &l, k, h)).expect("reachable");
    Ok((
        true,
        Some(chain.into_iter().map(|j| l.sub(j).clone()).collect()),
    ))
}

/// `A` σ-permutable in `K`: normal in `K`, or `K` σ-full and `A` permutes
/// with every Hall `σ_i`-subgroup of `K`.
pub fn is_sigma_permutable_in(
    s: &SigmaPartition,
    g: &Group,
    l: &Lattice,
    a: usize,
    k: usize,
) -> bool {
    if l.is_normal_in(g, a, k) {
        return true;
    }
    let n = l.sub(k).order() as u64;
    let mut halls = Vec::new();
    for c in s.classes_of(n) {
        let hs = hall_subgroups_in(s, l, k, c);
        if hs.is_empty() {
            return false;
        }
        halls.extend(hs);
    }
    halls.into_iter().all(|h| permutes(l, a, h))
}

pub fn is_sigma_permutable(s: &SigmaPartition, g: &Group, a: &Subgroup) -> Result<bool> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    Ok(is_sigma_permutable_in(s, g, &l, i, l.top()))
}

/// `x ∈ N_G(A)` for every `x` with `σ(|x|) ∩ σ(A) = ∅`.
pub fn is_sigma_seminormal(s: &SigmaPartition, g: &Group, a: &Subgroup) -> bool {
    let sa = s.classes_of(a.order() as u64);
    (0..g.order() as Elem)
        .filter(|&x| s.classes_of(g.element_order(x) as u64).is_disjoint(&sa))
        .all(|x| g.normalizes(&[x], a))
}
