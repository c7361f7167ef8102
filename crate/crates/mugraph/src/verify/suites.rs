//! Batch drivers behind `verify-fact`: exhaustive small-order sweeps and
//! seeded randomized batteries, each summarized as a pass/fail report with
//! counted cases and capped example lists.

use crate::cycles::{check_fact, path_with_ends_in, FactKind, FactOutcome, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{construct_snk, construct_snk_plus, full_set, Graph, VertexSet};
use crate::spectral::lemma8_compare;
use crate::transforms::{claim_checks, perron_monotonicity_check, reduce_to_fixpoint};
use crate::verify::enumerate::{enumerate_labeled, EnumerateOpts};
use crate::verify::graph6::emit_graph6;
use crate::verify::randgen::connected_gnp;
use crate::verify::scan::CycleConstraint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXAMPLE_CAP: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub verified: u64,
    pub vacuous: u64,
    pub violation_count: u64,
    /// Up to five offending instances (graph6 plus a short note).
    pub examples: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            cases: 0,
            verified: 0,
            vacuous: 0,
            violation_count: 0,
            examples: Vec::new(),
            passed: false,
        }
    }

    fn violation(&mut self, note: String) {
        self.violation_count += 1;
        if self.examples.len() < EXAMPLE_CAP {
            self.examples.push(note);
        }
    }

    fn tally(&mut self, outcome: &FactOutcome, note: impl FnOnce() -> String) {
        self.cases += 1;
        match outcome {
            FactOutcome::Vacuous => self.vacuous += 1,
            FactOutcome::Verified => self.verified += 1,
            FactOutcome::Counterexample(_) => self.violation(note()),
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.violation_count == 0;
        self
    }
}

/// Edge bound forcing a path of each order 3..=n, over every labeled graph
/// of every order up to `max_n` (≤ 7).
pub fn suite_eg(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("eg");
    for n in 1..=max_n {
        for g in enumerate_labeled(n, EnumerateOpts::default(), false)? {
            for l in 3..=n {
                let out = check_fact(&g, FactKind::Eg { l })?;
                r.tally(&out, || format!("{} l={l}", emit_graph6(&g).unwrap_or_default()));
            }
        }
    }
    Ok(r.finish())
}

/// The kn − (k²+k)/2 edge bound forcing P_{2k+2}, over every labeled graph
/// of order exactly `n`.
pub fn suite_f1(n: usize, k: usize, allow_n8: bool) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("f1");
    for g in enumerate_labeled(n, EnumerateOpts::default(), allow_n8)? {
        let out = check_fact(&g, FactKind::F1 { k })?;
        r.tally(&out, || emit_graph6(&g).unwrap_or_default());
    }
    Ok(r.finish())
}

/// The one-more-edge bound forcing P_{2k+3}.
pub fn suite_f2(n: usize, k: usize, allow_n8: bool) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("f2");
    for g in enumerate_labeled(n, EnumerateOpts::default(), allow_n8)? {
        let out = check_fact(&g, FactKind::F2 { k })?;
        r.tally(&out, || emit_graph6(&g).unwrap_or_default());
    }
    Ok(r.finish())
}

/// Clique-anchored long paths inside both join constructions for every
/// order 2k..=max_n.
pub fn suite_f4(k: usize, max_n: usize) -> Result<SuiteReport> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let mut r = SuiteReport::new("f4");
    for n in (2 * k)..=max_n {
        for plus in [false, true] {
            let built = if plus {
                construct_snk_plus(n, k)
            } else {
                construct_snk(n, k)
            };
            let Ok(g) = built else { continue };
            let out = check_fact(&g, FactKind::F4 { k })?;
            r.tally(&out, || {
                format!("{} n={n} k={k} plus={plus}", emit_graph6(&g).unwrap_or_default())
            });
        }
    }
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// clique-against-the-rest path instances

/// Which hypothesis set the generated instance satisfies: the two-part form
/// (e(A,B) ≥ k|B| plus one B vertex with more than k clique neighbors) or
/// the single strict form (e(A,B) > k|B|).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma5Mode {
    TwoPart,
    RemarkStrict,
}

#[derive(Clone, Debug)]
pub struct Lemma5Instance {
    pub graph: Graph,
    /// The clique side, vertices 0..t.
    pub a: VertexSet,
    /// Everything else.
    pub b: VertexSet,
    pub k: usize,
    pub t: usize,
}

/// Random instance satisfying the chosen hypothesis set: A = K_t on the
/// first t vertices, |B| > kt, cross edges topped up to the required count,
/// arbitrary edges inside B.
pub fn gen_lemma5_instance<R: Rng>(
    rng: &mut R,
    k: usize,
    t: usize,
    b_size: usize,
    mode: Lemma5Mode,
) -> Result<Lemma5Instance> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if t <= k {
        return Err(Error::domain("need t > k for a vertex with more than k clique neighbors"));
    }
    if b_size <= k * t {
        return Err(Error::domain("need |B| > k·t"));
    }
    let n = t + b_size;
    let mut a_of_b = vec![0u64; b_size];
    for row in a_of_b.iter_mut() {
        for a in 0..t {
            if rng.random_bool(0.3) {
                *row |= 1 << a;
            }
        }
    }
    if mode == Lemma5Mode::TwoPart {
        // plant the witness vertex: more than k clique neighbors
        let want = rng.random_range(k + 1..=t);
        let mut order: Vec<usize> = (0..t).collect();
        for i in 0..want {
            let j = rng.random_range(i..t);
            order.swap(i, j);
        }
        a_of_b[0] = order[..want].iter().fold(0u64, |m, &a| m | 1 << a);
    }
    let quota = match mode {
        Lemma5Mode::TwoPart => k * b_size,
        Lemma5Mode::RemarkStrict => k * b_size + 1,
    };
    let mut cross: usize = a_of_b.iter().map(|m| m.count_ones() as usize).sum();
    while cross < quota {
        let i = rng.random_range(0..b_size);
        let a = rng.random_range(0..t);
        if a_of_b[i] >> a & 1 == 0 {
            a_of_b[i] |= 1 << a;
            cross += 1;
        }
    }

    let mut edges = Vec::new();
    for u in 0..t {
        for v in u + 1..t {
            edges.push((u, v));
        }
    }
    for (i, row) in a_of_b.iter().enumerate() {
        for a in crate::graph::set_bits(*row) {
            edges.push((a, t + i));
        }
    }
    for i in 0..b_size {
        for j in i + 1..b_size {
            if rng.random_bool(0.25) {
                edges.push((t + i, t + j));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let a = full_set(t);
    let b = full_set(n) & !a;

    // generator postconditions = the hypotheses the caller relies on
    assert_eq!(graph.edges_within(a), t * (t - 1) / 2);
    let e_ab = graph.cross_edges(a, b)?;
    match mode {
        Lemma5Mode::TwoPart => {
            assert!(e_ab >= k * b_size);
            assert!((graph.neighborhood(t) & a).count_ones() as usize > k);
        }
        Lemma5Mode::RemarkStrict => assert!(e_ab > k * b_size),
    }

    Ok(Lemma5Instance { graph, a, b, k, t })
}

/// Randomized battery: every generated instance must contain a path on
/// ≥ 2k+1 vertices with both ends in the clique and ≥ k vertices of B.
pub fn suite_lemma5(count: u64, seed: u64, mode: Lemma5Mode) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new(match mode {
        Lemma5Mode::TwoPart => "lemma5",
        Lemma5Mode::RemarkStrict => "lemma5-remark",
    });
    for _ in 0..count {
        let k = rng.random_range(1..=3usize);
        let t = rng.random_range(k + 1..=6);
        let b_size = rng.random_range(k * t + 1..=25);
        let inst = gen_lemma5_instance(&mut rng, k, t, b_size, mode)?;
        r.cases += 1;
        match path_with_ends_in(&inst.graph, inst.a, inst.b, 2 * k + 1, k)? {
            Some(_) => r.verified += 1,
            None => r.violation(format!(
                "{} k={k} t={t} b={b_size}",
                emit_graph6(&inst.graph).unwrap_or_default()
            )),
        }
    }
    Ok(r.finish())
}

/// Exhaustive strictness check of the merged-vs-split cone comparison for
/// both base graphs and every 3 ≤ t1 ≤ t2 with t1 + t2 ≤ t_max.
pub fn suite_lemma8(t_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lemma8");
    let k3 = Graph::complete(3)?;
    for h in [None, Some(&k3)] {
        for t1 in 3..=t_max {
            for t2 in t1..=t_max.saturating_sub(t1) {
                r.cases += 1;
                let out = lemma8_compare(h, t1, t2)?;
                if out.strict {
                    r.verified += 1;
                } else {
                    r.violation(format!(
                        "h={} t1={t1} t2={t2} merged={} split={}",
                        h.map_or("none", |_| "K3"),
                        out.mu_merged,
                        out.mu_split
                    ));
                }
            }
        }
    }
    Ok(r.finish())
}

/// Seeded graphs reduced to their shift fixpoints, then checked for the
/// fixpoint structure properties (and the size bounds wherever the fixpoint
/// has no long cycle for that k).
pub fn suite_claims(count: u64, seed: u64, max_n: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("claims");
    for i in 0..count {
        let n = rng.random_range(4..=max_n.max(4));
        let p = [0.2, 0.35, 0.5, 0.7][i as usize % 4];
        let g = connected_gnp(&mut rng, n, p)?;
        let (fixed, _) = reduce_to_fixpoint(&g)?;
        r.cases += 1;
        let mut failure: Option<String> = None;
        let base = claim_checks(&fixed, 1)?;
        if !(base.clique_su && base.dominated_tu && base.no_tu_yu_edges) {
            failure = Some(format!("{} structure", emit_graph6(&fixed)?));
        }
        for k in 1..=3usize {
            if failure.is_some() {
                break;
            }
            if CycleConstraint::AtLeast(2 * k + 2).is_free(&fixed, DEFAULT_NODE_BUDGET)?
                && !claim_checks(&fixed, k)?.all_hold()
            {
                failure = Some(format!("{} size bounds at k={k}", emit_graph6(&fixed)?));
            }
        }
        match failure {
            None => r.verified += 1,
            Some(note) => r.violation(note),
        }
    }
    Ok(r.finish())
}

/// Seeded connected graphs; the Perron entries must order consistently with
/// closed-neighborhood containment across every edge.
pub fn suite_perron(count: u64, seed: u64, max_n: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("perron");
    for i in 0..count {
        let n = rng.random_range(3..=max_n.max(3));
        let p = [0.25, 0.4, 0.55, 0.7][i as usize % 4];
        let g = connected_gnp(&mut rng, n, p)?;
        r.cases += 1;
        let violations = perron_monotonicity_check(&g)?;
        if violations.is_empty() {
            r.verified += 1;
        } else {
            let v = violations[0];
            r.violation(format!(
                "{} edge {}-{} x=({:.12}, {:.12})",
                emit_graph6(&g)?,
                v.low,
                v.high,
                v.x_low,
                v.x_high
            ));
        }
    }
    Ok(r.finish())
}
