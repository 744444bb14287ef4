use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::theorems::{precision_ladder, verify, Corpora, Settings, Theorem};
use super::{CorpusKind, Partition, VerdictReport};
use crate::enumerate::Limits;
use crate::error::EnumerationError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

/// A validated verification run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub theorems: Vec<Theorem>,
    pub n_range: Option<RangeInclusive<usize>>,
    pub corpus: Option<CorpusKind>,
    pub alphas: Option<Vec<BigRational>>,
    pub tolerance: Option<f64>,
    pub workers: usize,
    pub worker_id: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Largest number of decimal digits used by certified comparisons.
    pub precision: u32,
    pub limits: Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            theorems: Theorem::ALL.to_vec(),
            n_range: None,
            corpus: None,
            alphas: None,
            tolerance: None,
            workers: 1,
            worker_id: None,
            output_path: None,
            format: Format::Json,
            precision: 64,
            limits: Limits::default(),
        }
    }
}

/// `"7"`, `"2..10"` or `"2..=10"`; both ends inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("invalid range `{s}`");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// A positive rational such as `2`, `1/4` or `0.5`.
pub fn parse_alpha(s: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid alpha `{s}`");
    let s = s.trim();
    let value = if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        BigRational::new(p, q)
    } else if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        BigRational::new(p, BigInt::from(10u32).pow(frac.len() as u32))
    } else {
        BigRational::from_integer(s.parse().map_err(|_| bad())?)
    };
    if !value.is_positive() {
        return Err(format!("alpha must be positive, got `{s}`"));
    }
    Ok(value)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.theorems.is_empty() {
            return Err("no theorem selected".into());
        }
        if self.workers == 0 {
            return Err("workers must be at least 1".into());
        }
        if let Some(id) = self.worker_id {
            if id >= self.workers {
                return Err(format!("worker id {id} out of range for {} workers", self.workers));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(format!("tolerance must be positive, got {t}"));
            }
        }
        if !(1..=4096).contains(&self.precision) {
            return Err(format!("precision must be between 1 and 4096 digits, got {}", self.precision));
        }
        if let Some(alphas) = &self.alphas {
            if alphas.is_empty() || alphas.iter().any(|a| !a.is_positive()) {
                return Err("alpha list must be nonempty and positive".into());
            }
        }
        for &t in &self.theorems {
            if let Some(kind) = self.corpus {
                if !t.corpus_kinds().is_empty() && !t.corpus_kinds().contains(&kind) {
                    return Err(format!("theorem {t} does not accept corpus {}", kind.name()));
                }
            }
            if let Some(range) = &self.n_range {
                for (kind, ns) in self.corpora(t, range) {
                    let max = self.cap(kind);
                    if *ns.start() < 1 || *ns.end() > max {
                        return Err(format!("order range {}..{} outside 1..{max} for {}", ns.start(), ns.end(), kind.name()));
                    }
                }
                if t == Theorem::PathClosedForm && *range.end() > 200 {
                    return Err("path-closed-form supports n up to 200".into());
                }
                if t == Theorem::CompleteIdentities && *range.end() > 200 {
                    return Err("complete-identities supports n up to 200".into());
                }
            }
        }
        Ok(())
    }

    fn cap(&self, kind: CorpusKind) -> usize {
        match kind {
            CorpusKind::Trees => self.limits.max_tree_order,
            _ => self.limits.max_graph_order,
        }
    }

    fn corpora(&self, t: Theorem, range: &RangeInclusive<usize>) -> Corpora {
        match self.corpus {
            Some(kind) => vec![(kind, range.clone())],
            None => t.default_corpora().into_iter().map(|(kind, _)| (kind, range.clone())).collect(),
        }
    }

    pub fn settings(&self) -> Settings {
        let mut s = Settings {
            partition: Partition { workers: self.workers, worker_id: self.worker_id },
            limits: self.limits,
            ladder: precision_ladder(self.precision),
            ..Settings::default()
        };
        if let Some(a) = &self.alphas {
            s.alphas = a.clone();
        }
        if let Some(t) = self.tolerance {
            s.identity_tol = t;
            s.inequality_tol = t;
        }
        s
    }

    /// Runs every selected theorem.
    pub fn execute(&self) -> Result<Vec<VerdictReport>, EnumerationError> {
        let settings = self.settings();
        self.theorems
            .iter()
            .map(|&t| {
                let corpora = match (&self.n_range, self.corpus) {
                    (Some(r), _) => Some(self.corpora(t, r)),
                    (None, Some(kind)) => {
                        let defaults = t.default_corpora();
                        let found = defaults.iter().find(|(k, _)| *k == kind).or(defaults.first());
                        found.map(|(_, r)| vec![(kind, *r.start()..=(*r.end()).min(self.cap(kind)))])
                    }
                    (None, None) => None,
                };
                verify(t, corpora.as_ref(), self.n_range.clone(), &settings)
            })
            .collect()
    }
}

pub fn exit_code(reports: &[VerdictReport]) -> i32 {
    if reports.iter().any(|r| !r.violations.is_empty()) {
        EXIT_VIOLATION
    } else if reports.iter().any(|r| !r.undecided.is_empty()) {
        EXIT_UNDECIDED
    } else {
        EXIT_PASS
    }
}

pub fn render(reports: &[VerdictReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("serializable report") + "\n",
        Format::Csv => {
            let mut out = String::from("theorem_id,corpus,corpus_size,violations,undecided,witnesses,observations,runtime_ms,verdict\n");
            for r in reports {
                out.push_str(&format!(
                    "{},\"{}\",{},{},{},{},{},{},{}\n",
                    r.theorem_id,
                    r.corpus.replace('"', "\"\""),
                    r.corpus_size,
                    r.violations.len(),
                    r.undecided.len(),
                    r.extremal_witnesses.len(),
                    r.observations.len(),
                    r.runtime_ms,
                    if r.passed() { "pass" } else { "fail" }
                ));
            }
            out
        }
    }
}

/// Validates, runs, writes the reports and returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    if let Err(msg) = config.validate() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let reports = match config.execute() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = render(&reports, config.format);
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_IO;
    }
    for r in &reports {
        eprintln!(
            "{} {}: {} graphs, {} violations, {} undecided",
            if r.passed() { "PASS" } else { "FAIL" },
            r.theorem_id,
            r.corpus_size,
            r.violations.len(),
            r.undecided.len()
        );
    }
    exit_code(&reports)
}
