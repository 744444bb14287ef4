//! Theorem verifiers over exhaustive corpora.
//!
//! A verifier inspects one graph at a time and records findings; the sweep
//! folds findings into a [`VerdictReport`]. Every list in a report is kept
//! sorted, and extremal witnesses merge by value, so reports computed on
//! different shards combine with [`VerdictReport::merge`] into the report of
//! the whole corpus regardless of shard count or thread scheduling.

mod config;
mod theorems;

use std::cmp::Ordering;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{free_trees_with, shard, small_graphs_with, Limits};
use crate::error::EnumerationError;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::ratio::ExactRatio;

pub use config::{exit_code, parse_alpha, parse_range, render, run, Format, RunConfig, EXIT_IO, EXIT_PASS, EXIT_UNDECIDED, EXIT_USAGE, EXIT_VIOLATION};
pub use theorems::*;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub label: String,
    pub graph6: String,
    pub value: ExactRatio,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Observation {
    #[serde(skip_serializing_if = "String::is_empty")]
    pub graph6: String,
    pub detail: String,
}

/// Outcome of one verifier run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub theorem_id: String,
    pub corpus: String,
    pub corpus_size: usize,
    pub violations: Vec<Violation>,
    /// Comparisons that could not be certified at the configured precision.
    pub undecided: Vec<Violation>,
    pub extremal_witnesses: Vec<Witness>,
    pub observations: Vec<Observation>,
    pub runtime_ms: u64,
}

impl VerdictReport {
    pub fn new(theorem_id: &str, corpus: String) -> VerdictReport {
        VerdictReport {
            theorem_id: theorem_id.to_string(),
            corpus,
            corpus_size: 0,
            violations: Vec::new(),
            undecided: Vec::new(),
            extremal_witnesses: Vec::new(),
            observations: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }

    pub fn violation(&mut self, graph6: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { graph6: graph6.into(), detail: detail.into() });
    }

    pub fn observe(&mut self, graph6: impl Into<String>, detail: impl Into<String>) {
        self.observations.push(Observation { graph6: graph6.into(), detail: detail.into() });
    }

    /// Witnesses carrying `label`.
    pub fn witnesses(&self, label: &str) -> Vec<&Witness> {
        self.extremal_witnesses.iter().filter(|w| w.label == label).collect()
    }

    fn normalize(&mut self) {
        self.violations.sort();
        self.violations.dedup();
        self.undecided.sort();
        self.undecided.dedup();
        self.observations.sort();
        self.observations.dedup();
        self.extremal_witnesses.sort();
        self.extremal_witnesses.dedup();
    }

    /// Combines reports of the same theorem over disjoint corpora. For each
    /// witness label only the best value survives, with all its ties; the
    /// direction is read from the label prefix (`max` or `min`).
    pub fn merge(mut self, other: VerdictReport) -> VerdictReport {
        self.corpus_size += other.corpus_size;
        self.violations.extend(other.violations);
        self.undecided.extend(other.undecided);
        self.observations.extend(other.observations);
        self.runtime_ms = self.runtime_ms.max(other.runtime_ms);
        let mut all = std::mem::take(&mut self.extremal_witnesses);
        all.extend(other.extremal_witnesses);
        let mut labels: Vec<String> = all.iter().map(|w| w.label.clone()).collect();
        labels.sort();
        labels.dedup();
        for label in labels {
            let group: Vec<&Witness> = all.iter().filter(|w| w.label == label).collect();
            let pick = if label.starts_with("min") { Ordering::Less } else { Ordering::Greater };
            let best = group.iter().map(|w| &w.value).fold(None::<&ExactRatio>, |acc, v| match acc {
                Some(b) if v.cmp(b) != pick => Some(b),
                _ => Some(v),
            });
            if let Some(best) = best {
                self.extremal_witnesses.extend(group.iter().filter(|w| &w.value == best).map(|w| (*w).clone()));
            }
        }
        self.normalize();
        self
    }
}

/// What a verifier learns from one graph.
#[derive(Debug, Default, Clone)]
pub struct Findings {
    violations: Vec<String>,
    undecided: Vec<String>,
    observations: Vec<String>,
    values: Vec<(String, BigRational)>,
}

impl Findings {
    pub fn violation(&mut self, detail: impl Into<String>) {
        self.violations.push(detail.into());
    }

    pub fn undecided(&mut self, detail: impl Into<String>) {
        self.undecided.push(detail.into());
    }

    pub fn observe(&mut self, detail: impl Into<String>) {
        self.observations.push(detail.into());
    }

    /// Offers `value` as a candidate for the extremum named `label`, which
    /// must start with `max` or `min`.
    pub fn extremum(&mut self, label: impl Into<String>, value: BigRational) {
        self.values.push((label.into(), value));
    }
}

/// Kinds of corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Graphs,
    Connected,
    Trees,
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Graphs => "graphs",
            CorpusKind::Connected => "connected",
            CorpusKind::Trees => "trees",
        }
    }

    pub fn parse(s: &str) -> Option<CorpusKind> {
        match s {
            "graphs" => Some(CorpusKind::Graphs),
            "connected" => Some(CorpusKind::Connected),
            "trees" => Some(CorpusKind::Trees),
            _ => None,
        }
    }
}

/// Which part of a corpus this process handles and with how many threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition {
    pub workers: usize,
    /// When set, only the round-robin shard `worker_id` of `workers` is
    /// processed; otherwise the whole corpus is split over `workers` threads.
    pub worker_id: Option<usize>,
}

impl Default for Partition {
    fn default() -> Self {
        Partition { workers: 1, worker_id: None }
    }
}

pub fn corpus_stream(
    kind: CorpusKind,
    n: usize,
    limits: &Limits,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>, EnumerationError> {
    Ok(match kind {
        CorpusKind::Trees => Box::new(free_trees_with(n, limits)?),
        CorpusKind::Graphs => Box::new(small_graphs_with(n, false, limits)?),
        CorpusKind::Connected => Box::new(small_graphs_with(n, true, limits)?),
    })
}

pub fn graph6_of(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("<n={}>", g.n()))
}

const CHUNK: usize = 2048;

/// Runs `check` over a stream and folds the findings into `report`.
pub fn sweep<I, F>(stream: I, partition: &Partition, report: &mut VerdictReport, check: F) -> Result<(), EnumerationError>
where
    I: Iterator<Item = Graph> + Send,
    F: Fn(&Graph, &mut Findings) + Sync,
{
    let start = Instant::now();
    let stream: Box<dyn Iterator<Item = Graph> + Send> = match partition.worker_id {
        Some(id) => Box::new(shard(stream, partition.workers, id)?),
        None => Box::new(stream),
    };
    let threads = if partition.worker_id.is_some() { 0 } else { partition.workers };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    let mut best: Vec<(String, BigRational, Vec<String>)> = Vec::new();
    let mut stream = stream.peekable();
    while stream.peek().is_some() {
        let chunk: Vec<Graph> = stream.by_ref().take(CHUNK).collect();
        let results: Vec<(String, Findings)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|g| {
                    let mut f = Findings::default();
                    check(g, &mut f);
                    (graph6_of(g), f)
                })
                .collect()
        });
        report.corpus_size += results.len();
        for (g6, f) in results {
            for d in f.violations {
                report.violations.push(Violation { graph6: g6.clone(), detail: d });
            }
            for d in f.undecided {
                report.undecided.push(Violation { graph6: g6.clone(), detail: d });
            }
            for d in f.observations {
                report.observations.push(Observation { graph6: g6.clone(), detail: d });
            }
            for (label, value) in f.values {
                offer(&mut best, label, value, &g6);
            }
        }
    }
    for (label, value, graphs) in best {
        for g6 in graphs {
            report.extremal_witnesses.push(Witness { label: label.clone(), graph6: g6, value: ExactRatio::from(value.clone()) });
        }
    }
    report.runtime_ms += start.elapsed().as_millis() as u64;
    report.normalize();
    Ok(())
}

fn offer(best: &mut Vec<(String, BigRational, Vec<String>)>, label: String, value: BigRational, g6: &str) {
    let want = if label.starts_with("min") { Ordering::Less } else { Ordering::Greater };
    match best.iter_mut().find(|(l, _, _)| *l == label) {
        None => best.push((label, value, vec![g6.to_string()])),
        Some((_, v, graphs)) => match value.cmp(v) {
            Ordering::Equal => graphs.push(g6.to_string()),
            o if o == want => {
                *v = value;
                *graphs = vec![g6.to_string()];
            }
            _ => {}
        },
    }
}
