//! Extremal scans: walk a stream of graphs, keep the cycle-constraint-free
//! ones, and compare the μ-maximizers against a named target construction.
//!
//! Reports are byte-deterministic: merging follows the input order regardless
//! of worker count, maximizers are sorted by their graph6 string, and no
//! thread-dependent value enters the report.

use crate::cycles::{circumference_budgeted, cycle_at_least_witness, cycle_in_window_witness, CycleWitness};
use crate::error::{Error, Result};
use crate::graph::{construct_snk, construct_snk_plus, Graph};
use crate::spectral::{mu_snk_closed_form, spectral_radius};
use crate::verify::graph6::{emit_graph6, parse_graph6};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Comparison slack for μ ties throughout scans and verdicts.
pub const MU_TIE_TOL: f64 = 1e-9;

/// The family of forbidden cycle lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleConstraint {
    /// Forbid every cycle of length ≥ l.
    AtLeast(usize),
    /// Forbid cycles of exactly length l.
    Exactly(usize),
    /// Forbid cycle lengths in lo..=hi.
    Window(usize, usize),
}

impl CycleConstraint {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CycleConstraint::AtLeast(l) | CycleConstraint::Exactly(l) if l >= 3 => Ok(()),
            CycleConstraint::Window(lo, hi) if lo >= 3 && lo <= hi => Ok(()),
            other => Err(Error::domain(format!("degenerate constraint {other}"))),
        }
    }

    /// A forbidden cycle of `g`, if any (early-exit search).
    pub fn violating_cycle(&self, g: &Graph, budget: u64) -> Result<Option<CycleWitness>> {
        match *self {
            CycleConstraint::AtLeast(l) => cycle_at_least_witness(g, l, budget),
            CycleConstraint::Exactly(l) => cycle_in_window_witness(g, l, l, budget),
            CycleConstraint::Window(lo, hi) => cycle_in_window_witness(g, lo, hi, budget),
        }
    }

    /// Does `g` avoid every forbidden cycle length?
    pub fn is_free(&self, g: &Graph, budget: u64) -> Result<bool> {
        Ok(self.violating_cycle(g, budget)?.is_none())
    }

    /// Same decision through a differently-shaped search, for auditing scan
    /// results: a full longest-cycle computation for `AtLeast`, a sweep of
    /// single-length searches for the bounded forms.
    pub fn is_free_second_route(&self, g: &Graph, budget: u64) -> Result<bool> {
        match *self {
            CycleConstraint::AtLeast(l) => {
                let c = circumference_budgeted(g, budget)?.map_or(0, |w| w.length());
                Ok(c < l)
            }
            CycleConstraint::Exactly(l) => {
                Ok(cycle_in_window_witness(g, l, l, budget)?.is_none())
            }
            CycleConstraint::Window(lo, hi) => {
                for l in lo..=hi.min(g.n()) {
                    if cycle_in_window_witness(g, l, l, budget)?.is_some() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

impl fmt::Display for CycleConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CycleConstraint::AtLeast(l) => write!(f, "atleast:{l}"),
            CycleConstraint::Exactly(l) => write!(f, "exactly:{l}"),
            CycleConstraint::Window(lo, hi) => write!(f, "window:{lo}:{hi}"),
        }
    }
}

impl FromStr for CycleConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("bad constraint '{s}' (atleast:L, exactly:L, or window:LO:HI)"));
        let mut parts = s.split(':');
        let head = parts.next().ok_or_else(bad)?;
        let mut num = || -> Result<usize> {
            parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let parsed = match head {
            "atleast" => CycleConstraint::AtLeast(num()?),
            "exactly" => CycleConstraint::Exactly(num()?),
            "window" => CycleConstraint::Window(num()?, num()?),
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        parsed.validate()?;
        Ok(parsed)
    }
}

impl Serialize for CycleConstraint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycleConstraint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Which construction the scan measures everything against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Snk,
    SnkPlus,
}

impl Target {
    pub fn construct(&self, n: usize, k: usize) -> Result<Graph> {
        match self {
            Target::Snk => construct_snk(n, k),
            Target::SnkPlus => construct_snk_plus(n, k),
        }
    }

    pub fn matches(&self, g: &Graph, k: usize) -> bool {
        match self {
            Target::Snk => g.is_snk(k),
            Target::SnkPlus => g.is_snk_plus(k),
        }
    }

    /// μ of the target construction: closed form where one exists, converged
    /// power iteration otherwise.
    pub fn mu(&self, n: usize, k: usize) -> Result<f64> {
        match self {
            Target::Snk => mu_snk_closed_form(n, k),
            Target::SnkPlus => Ok(spectral_radius(&self.construct(n, k)?)?.mu),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Snk => "snk",
            Target::SnkPlus => "snkp",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "snk" => Ok(Target::Snk),
            "snkp" => Ok(Target::SnkPlus),
            _ => Err(Error::domain(format!("bad target '{s}' (snk or snkp)"))),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One scanned constraint-free graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub constraint: CycleConstraint,
    pub mu: f64,
    pub is_free: bool,
    pub is_target: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVerdict {
    /// Every μ-maximizer among free graphs is a labeling of the target.
    /// Also the fallback when the scan saw no free graph beating the target
    /// (e.g. a corpus that does not contain it).
    TargetIsUniqueMax,
    /// Some non-target free graph ties the target's μ within 1e−9.
    TargetTied,
    /// Some free graph exceeds the target's μ by more than 1e−9.
    TargetBeaten,
    /// The target itself violates the constraint; comparisons are moot.
    TargetNotFree,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanParams {
    pub n: usize,
    pub k: usize,
    pub constraint: CycleConstraint,
    pub target: Target,
    /// Node budget for each per-graph cycle search.
    pub budget: u64,
    /// Worker threads; None uses the process-global pool.
    pub jobs: Option<usize>,
}

/// Scan outcome. Byte-identical for identical inputs, whatever `jobs` was.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub k: usize,
    pub constraint: CycleConstraint,
    pub target: Target,
    pub count_scanned: u64,
    pub count_free: u64,
    /// Graphs whose cycle search ran out of budget; they are counted but not
    /// classified, and any nonzero value clears `complete`.
    pub budget_errors: u64,
    pub complete: bool,
    pub max_mu: Option<f64>,
    /// Free graphs within 1e−9 of `max_mu`, sorted by graph6 string.
    pub maximizers: Vec<ScanRecord>,
    pub mu_target: f64,
    pub verdict: ScanVerdict,
}

enum Eval {
    Free(ScanRecord),
    Constrained,
    OutOfBudget,
}

fn eval_one(g: &Graph, params: &ScanParams) -> Result<Eval> {
    match params.constraint.is_free(g, params.budget) {
        Err(e) if e.is_budget() => Ok(Eval::OutOfBudget),
        Err(e) => Err(e),
        Ok(false) => Ok(Eval::Constrained),
        Ok(true) => {
            let mu = spectral_radius(g)?.mu;
            Ok(Eval::Free(ScanRecord {
                graph: emit_graph6(g)?,
                n: g.n(),
                k: params.k,
                constraint: params.constraint,
                mu,
                is_free: true,
                is_target: params.target.matches(g, params.k),
            }))
        }
    }
}

const BATCH: usize = 8192;

/// Run the scan over any graph stream. `on_free` sees every constraint-free
/// graph's record, in input order (the JSONL hook).
pub fn scan_extremal<I, F>(graphs: I, params: &ScanParams, mut on_free: F) -> Result<ScanReport>
where
    I: Iterator<Item = Graph>,
    F: FnMut(&ScanRecord) -> Result<()>,
{
    params.constraint.validate()?;
    let target_graph = params.target.construct(params.n, params.k)?;
    let mu_target = params.target.mu(params.n, params.k)?;
    let target_free = params.constraint.is_free(&target_graph, params.budget)?;

    let pool = params
        .jobs
        .map(|j| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::domain(format!("thread pool: {e}")))
        })
        .transpose()?;

    let mut count_scanned = 0u64;
    let mut count_free = 0u64;
    let mut budget_errors = 0u64;
    let mut max_mu: Option<f64> = None;
    let mut maximizers: Vec<ScanRecord> = Vec::new();

    let mut graphs = graphs.fuse();
    loop {
        let batch: Vec<Graph> = graphs.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        // indexed parallel map keeps input order in the collected Vec
        let run = || -> Result<Vec<Eval>> {
            use rayon::prelude::*;
            batch.par_iter().map(|g| eval_one(g, params)).collect()
        };
        let evals = match &pool {
            Some(p) => p.install(run)?,
            None => run()?,
        };
        for ev in evals {
            count_scanned += 1;
            match ev {
                Eval::Constrained => {}
                Eval::OutOfBudget => budget_errors += 1,
                Eval::Free(rec) => {
                    count_free += 1;
                    on_free(&rec)?;
                    let new_max = max_mu.is_none_or(|m| rec.mu > m);
                    if new_max {
                        max_mu = Some(rec.mu);
                        let floor = rec.mu - MU_TIE_TOL;
                        maximizers.retain(|r| r.mu >= floor);
                        maximizers.push(rec);
                    } else if rec.mu >= max_mu.unwrap() - MU_TIE_TOL {
                        maximizers.push(rec);
                    }
                }
            }
        }
    }

    maximizers.sort_by(|a, b| a.graph.cmp(&b.graph));

    // audit every maximizer through the second search route before reporting
    for rec in &maximizers {
        let g = parse_graph6(&rec.graph)?;
        if !params.constraint.is_free_second_route(&g, params.budget)? {
            return Err(Error::domain(format!(
                "audit failed: maximizer {} is not constraint-free on recheck",
                rec.graph
            )));
        }
        if params.target.matches(&g, params.k) != rec.is_target {
            return Err(Error::domain(format!(
                "audit failed: maximizer {} target flag is inconsistent",
                rec.graph
            )));
        }
    }

    let verdict = if !target_free {
        ScanVerdict::TargetNotFree
    } else {
        match max_mu {
            Some(m) if m > mu_target + MU_TIE_TOL => ScanVerdict::TargetBeaten,
            Some(m)
                if (m - mu_target).abs() <= MU_TIE_TOL
                    && maximizers.iter().any(|r| !r.is_target) =>
            {
                ScanVerdict::TargetTied
            }
            _ => ScanVerdict::TargetIsUniqueMax,
        }
    };

    Ok(ScanReport {
        n: params.n,
        k: params.k,
        constraint: params.constraint,
        target: params.target,
        count_scanned,
        count_free,
        budget_errors,
        complete: budget_errors == 0,
        max_mu,
        maximizers,
        mu_target,
        verdict,
    })
}

/// Serialize one value as a JSON line.
pub fn write_jsonl_line<W: std::io::Write, T: Serialize>(w: &mut W, item: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, item).map_err(|e| Error::domain(format!("jsonl: {e}")))?;
    w.write_all(b"\n")?;
    Ok(())
}
