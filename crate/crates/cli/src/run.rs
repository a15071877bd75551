//! Verdict evaluation for single groups and the parallel corpus runner.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use sigmalat_core::classify::{classify, NOT_SIGMA_FULL};
use sigmalat_core::{
    builtin_corpus, Checker, Error, Group, Limits, Property, SigmaPartition, Strategies, Subgroup,
};

use crate::cache::{cache_key, Cache, CachedVerdict};
use crate::error::{CliError, Result};
use crate::report::{sort_records, Record};

/// The σ-grid used when no `--sigma` is given.
pub const DEFAULT_GRID: [&str; 4] = [
    "sigma1",
    "pi:[2,3]",
    "pi:[2,3,5]",
    "classes=[[3],[7]];rest=one-class",
];

pub fn default_grid() -> Vec<SigmaPartition> {
    DEFAULT_GRID
        .iter()
        .map(|s| s.parse().expect("default grid parses"))
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Force the DIRECT / FULL / TRANSITIVE definitional strategies.
    pub oracle: bool,
    /// Add each matching characterization's verdict to `details`.
    pub with_checkers: bool,
    /// Record wall-clock time; otherwise `elapsed_ms` is 0.
    pub timings: bool,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
}

impl Options {
    pub fn strategies(&self) -> Strategies {
        if self.oracle {
            Strategies::oracle()
        } else {
            Strategies::default()
        }
    }

    fn label(&self) -> String {
        let base = if self.oracle { "oracle" } else { "default" };
        if self.with_checkers {
            format!("{base}+checkers")
        } else {
            base.to_string()
        }
    }
}

/// A named group under evaluation.
#[derive(Clone)]
pub struct Subject {
    pub name: String,
    pub order: usize,
    pub group: std::result::Result<Arc<Group>, Error>,
}

impl Subject {
    pub fn new(name: impl Into<String>, group: Group) -> Self {
        Subject {
            name: name.into(),
            order: group.order(),
            group: Ok(Arc::new(group)),
        }
    }
}

/// Cycle-notation generators of `w`, chosen greedily from the element order.
pub fn witness_strings(g: &Group, w: &Subgroup) -> Vec<String> {
    g.greedy_gens(w.bits())
        .into_iter()
        .map(|x| g.element(x).to_cycle_string())
        .collect()
}

fn elapsed(start: Instant, opts: &Options) -> u64 {
    if opts.timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    }
}

fn compute(g: &Group, s: &SigmaPartition, p: Property, opts: &Options) -> Result<CachedVerdict> {
    let v = classify(g, s, p, &opts.strategies())?;
    let mut details = BTreeMap::new();
    if v.flags.iter().any(|f| f == NOT_SIGMA_FULL) {
        details.insert("sigma_full".to_string(), false);
    }
    if opts.with_checkers {
        for c in Checker::ALL.into_iter().filter(|c| c.property() == p) {
            match c.check(s, g) {
                Ok(check) => {
                    if let Some(x) = check.verdict() {
                        details.insert(c.name().to_string(), x);
                    }
                }
                Err(Error::NotSigmaSoluble | Error::NotSoluble) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(CachedVerdict {
        verdict: v.value,
        witness: v.witness.as_ref().map(|w| witness_strings(g, w)),
        details,
    })
}

fn cap_record(subject: &Subject, sigma: String, property: String) -> Record {
    Record {
        group: subject.name.clone(),
        order: subject.order,
        sigma,
        property,
        verdict: None,
        witness: None,
        details: BTreeMap::from([("cap_exceeded".to_string(), true)]),
        elapsed_ms: 0,
    }
}

/// Evaluate one property. With `tolerate_caps`, a cap turns into a record
/// with `details.cap_exceeded` instead of an error.
pub fn classify_record(
    subject: &Subject,
    s: &SigmaPartition,
    p: Property,
    opts: &Options,
    cache: &Cache,
    tolerate_caps: bool,
) -> Result<Record> {
    let sigma = s.to_string();
    let g = match &subject.group {
        Ok(g) => g,
        Err(e) if tolerate_caps && e.is_cap() => {
            return Ok(cap_record(subject, sigma, p.name().to_string()))
        }
        Err(e) => return Err(e.clone().into()),
    };
    let start = Instant::now();
    let key = cache_key(g, &sigma, p.name(), &opts.label());
    let value = match cache.get(&key) {
        Some(v) => v,
        None => match compute(g, s, p, opts) {
            Ok(v) => {
                cache.put(&key, &v)?;
                v
            }
            Err(CliError::Engine(e)) if tolerate_caps && e.is_cap() => {
                return Ok(cap_record(subject, sigma, p.name().to_string()))
            }
            Err(e) => return Err(e),
        },
    };
    Ok(Record {
        group: subject.name.clone(),
        order: subject.order,
        sigma,
        property: p.name().to_string(),
        verdict: value.verdict,
        witness: value.witness,
        details: value.details,
        elapsed_ms: elapsed(start, opts),
    })
}

/// Run a characterization. `details` carries every condition, the
/// hypothesis, and the direct verdict for comparison.
pub fn check_record(
    subject: &Subject,
    s: &SigmaPartition,
    checker: Checker,
    opts: &Options,
) -> Result<Record> {
    let g = subject
        .group
        .as_ref()
        .map_err(|e| CliError::Engine(e.clone()))?;
    let start = Instant::now();
    let mut details = BTreeMap::new();
    let verdict = match checker.check(s, g) {
        Ok(check) => {
            details.extend(check.conditions.clone());
            details.insert("hypothesis".to_string(), check.hypothesis);
            check.verdict()
        }
        Err(Error::NotSigmaSoluble) => {
            details.insert("sigma_soluble".to_string(), false);
            None
        }
        Err(Error::NotSoluble) => {
            details.insert("soluble".to_string(), false);
            None
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(direct) = classify(g, s, checker.property(), &opts.strategies())?.value {
        details.insert("direct".to_string(), direct);
    }
    Ok(Record {
        group: subject.name.clone(),
        order: subject.order,
        sigma: s.to_string(),
        property: checker.name().to_string(),
        verdict,
        witness: None,
        details,
        elapsed_ms: elapsed(start, opts),
    })
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {workers} workers: {e}")))
}

/// Build every built-in group up to `max_order` under `limits`.
pub fn corpus_subjects(max_order: usize, limits: Limits, workers: usize) -> Result<Vec<Subject>> {
    let entries = builtin_corpus(max_order);
    Ok(pool(workers)?.install(|| {
        entries
            .par_iter()
            .map(|e| Subject {
                name: e.name.clone(),
                order: e.order,
                group: e.build(limits).map(Arc::new),
            })
            .collect()
    }))
}

/// Every `(subject, σ, property)` verdict, sorted by `(group, σ, property)`.
pub fn run_grid(
    subjects: &[Subject],
    sigmas: &[SigmaPartition],
    properties: &[Property],
    opts: &Options,
    cache: &Cache,
) -> Result<Vec<Record>> {
    let tasks: Vec<(&Subject, &SigmaPartition, Property)> = subjects
        .iter()
        .flat_map(|g| {
            sigmas
                .iter()
                .flat_map(move |s| properties.iter().map(move |&p| (g, s, p)))
        })
        .collect();
    let mut records = pool(opts.workers)?.install(|| {
        tasks
            .par_iter()
            .map(|&(g, s, p)| classify_record(g, s, p, opts, cache, true))
            .collect::<Result<Vec<Record>>>()
    })?;
    sort_records(&mut records);
    Ok(records)
}
