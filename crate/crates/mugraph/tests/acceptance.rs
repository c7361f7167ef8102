//! Acceptance gate. Each criterion prints exactly one line:
//!
//!   [criterion NN] PASS — detail
//!
//! and the process exits nonzero if any criterion fails. Runs under
//! `cargo test` as a non-libtest target so the lines always appear.

mod common;

use mugraph::cycles::{circumference, DEFAULT_NODE_BUDGET};
use mugraph::spectral::{
    column_sum_combinatorial, column_sum_combinatorial_g, lemma8_compare, mu_snk_closed_form,
    quotient_certificate, spectral_radius, ColumnSums, Verdict,
};
use mugraph::transforms::{perron_monotonicity_check, reduce_to_fixpoint};
use mugraph::verify::{
    emit_graph6, enumerate_labeled, parse_graph6, scan_extremal, suite_eg, suite_f1, suite_f2,
    suite_lemma5, EnumerateOpts, Lemma5Mode, ScanParams, ScanReport, ScanVerdict,
};
use mugraph::graph::{construct_snk, construct_snk_plus};
use mugraph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = (bool, String);

fn fail(detail: String) -> Outcome {
    (false, detail)
}

// --------------------------------------------------------------------------
// 1–2: column-sum identities against the dense matrix route

fn criterion_01() -> Outcome {
    let t0 = Instant::now();
    let corpus = common::corpus_gnp(101, 1000, 20);
    let mut comparisons = 0u64;
    for g in &corpus {
        let n = g.n() as i64;
        for k in 1..=3usize {
            let oracle =
                common::matrix_colsums_quadratic(g, k as i64 - 1, k as i64 * (n - k as i64));
            for (u, &want) in oracle.iter().enumerate() {
                let lib = column_sum_combinatorial(g, u, k).unwrap();
                if lib != want {
                    return fail(format!(
                        "{} u={u} k={k}: combinatorial {lib} != matrix {want}",
                        emit_graph6(g).unwrap()
                    ));
                }
                comparisons += 1;
            }
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    (
        dt < 30.0,
        format!(
            "{} graphs, {comparisons} exact identities vs dense A² − (k−1)A − k(n−k)I, {dt:.1}s",
            corpus.len()
        ),
    )
}

fn criterion_02() -> Outcome {
    let corpus = common::corpus_gnp(101, 1000, 20);
    let mut worst: f64 = 0.0;
    for g in &corpus {
        let a = common::adjacency_matrix(g);
        let a2 = common::matmul(&a, &a);
        for k in 1..=3usize {
            for u in 0..g.n() {
                let colsum_a2: i64 = a2.iter().map(|row| row[u]).sum();
                let matrix = colsum_a2 as f64
                    - (k * g.degree(u)) as f64
                    - (k as f64 - 0.5) * (g.n() - k) as f64;
                let lib = column_sum_combinatorial_g(g, u, k).unwrap();
                worst = worst.max((lib - matrix).abs());
            }
        }
    }
    (
        worst <= 1e-12,
        format!("worst |Δ| = {worst:.1e} vs dense A² − kA − (k−1/2)(n−k)I over 1000 graphs"),
    )
}

// --------------------------------------------------------------------------
// 3–4: certificate soundness and the equality case

fn criterion_03() -> Outcome {
    let corpus = common::corpus_connected(202, 500, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut conclusive = 0;
    for g in &corpus {
        let a = rng.random_range(1..=20) as f64;
        let b = rng.random_range(1..=20) as f64;
        let cert = quotient_certificate(g, a, b, 0.0, None).unwrap();
        if matches!(cert.verdict, Verdict::BoundHolds | Verdict::EqualityCandidate) {
            conclusive += 1;
            let mu = spectral_radius(g).unwrap().mu;
            if mu > cert.mu_prime + 1e-9 {
                return fail(format!(
                    "{} a={a} b={b}: μ = {mu} exceeds certified root {}",
                    emit_graph6(g).unwrap(),
                    cert.mu_prime
                ));
            }
        }
    }
    (
        true,
        format!("{conclusive}/500 certificates conclusive, zero bound violations"),
    )
}

fn criterion_04() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for k in 2..=4usize {
        for n in 2 * k + 1..=40 {
            let g = construct_snk(n, k).unwrap();
            let cert =
                quotient_certificate(&g, (k - 1) as f64, (k * (n - k)) as f64, 0.0, None).unwrap();
            if cert.verdict != Verdict::EqualityCandidate {
                return fail(format!("S_{{{n},{k}}}: verdict {:?}", cert.verdict));
            }
            match &cert.column_sums {
                ColumnSums::Exact(sums) => {
                    if sums.iter().any(|&s| s != 0) {
                        return fail(format!("S_{{{n},{k}}}: nonzero column sum"));
                    }
                }
                ColumnSums::Real(_) => {
                    return fail(format!("S_{{{n},{k}}}: expected exact integer sums"))
                }
            }
            let mu = spectral_radius(&g).unwrap().mu;
            let gap = (mu - mu_snk_closed_form(n, k).unwrap()).abs();
            worst = worst.max(gap);
            if gap > 1e-9 {
                return fail(format!("S_{{{n},{k}}}: |μ − closed form| = {gap:.2e}"));
            }
            cases += 1;
        }
    }
    (
        true,
        format!("{cases} constructions all EqualityCandidate with zero sums, worst μ gap {worst:.1e}"),
    )
}

// --------------------------------------------------------------------------
// 5: move-neighbor monotonicity and fixpoint termination

fn criterion_05() -> Outcome {
    let t0 = Instant::now();
    let corpus = common::corpus_connected(303, 500, 12);
    let mut steps_total = 0u64;
    for g in &corpus {
        let (fixed, trace) = reduce_to_fixpoint(g).unwrap();
        for st in &trace.steps {
            if st.mu_after < st.mu_before - 1e-9 {
                return fail(format!("μ dropped {} → {}", st.mu_before, st.mu_after));
            }
            let (Some(cb), Some(ca)) = (st.c_before, st.c_after) else {
                return fail("circumference untracked at n ≤ 12".into());
            };
            if ca > cb {
                return fail(format!("circumference rose {cb} → {ca}"));
            }
            if st.f_after >= st.f_before {
                return fail(format!("f not strictly reduced: {} → {}", st.f_before, st.f_after));
            }
            steps_total += 1;
        }
        for (u, v) in fixed.edges() {
            let pu = fixed.private_neighbors(u, v).unwrap();
            let pv = fixed.private_neighbors(v, u).unwrap();
            if pu != 0 && pv != 0 {
                return fail(format!(
                    "edge {u}-{v} of {} still eligible",
                    emit_graph6(&fixed).unwrap()
                ));
            }
        }
        // second route for the tracked circumference endpoints
        if g.n() <= 9 && !trace.steps.is_empty() {
            let first = trace.steps.first().unwrap();
            let last = trace.steps.last().unwrap();
            if first.c_before != Some(common::brute_circumference(g)) {
                return fail("initial circumference disagrees with unpruned enumeration".into());
            }
            if last.c_after != Some(common::brute_circumference(&fixed)) {
                return fail("final circumference disagrees with unpruned enumeration".into());
            }
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    (
        dt < 300.0,
        format!("500 reductions, {steps_total} steps all monotone (μ↑, c↓, f↓ strict), {dt:.1}s"),
    )
}

// --------------------------------------------------------------------------
// 6: Perron entry ordering

fn criterion_06() -> Outcome {
    let corpus = common::corpus_connected(404, 500, 12);
    for g in &corpus {
        let violations = perron_monotonicity_check(g).unwrap();
        if let Some(v) = violations.first() {
            return fail(format!(
                "{}: x[{}] vs x[{}] breaks {:?}",
                emit_graph6(g).unwrap(),
                v.low,
                v.high,
                v.expected
            ));
        }
    }
    (true, "500 connected graphs, zero Perron-order violations at margin 1e-9".into())
}

// --------------------------------------------------------------------------
// 7: merged block beats split blocks

fn criterion_07() -> Outcome {
    let k3 = Graph::complete(3).unwrap();
    let mut cases = 0;
    let mut min_margin = f64::INFINITY;
    for h in [None, Some(&k3)] {
        for t1 in 3..=6usize {
            for t2 in t1..=12 - t1 {
                let out = lemma8_compare(h, t1, t2).unwrap();
                if out.indeterminate || !out.strict {
                    return fail(format!(
                        "H={} t1={t1} t2={t2}: merged {} vs split {}",
                        h.map_or("∅", |_| "K3"),
                        out.mu_merged,
                        out.mu_split
                    ));
                }
                min_margin = min_margin.min(out.mu_merged - out.mu_split);
                cases += 1;
            }
        }
    }
    (
        true,
        format!("{cases} (H, t1, t2) cases strict, minimum margin {min_margin:.3}"),
    )
}

// --------------------------------------------------------------------------
// 8–9: exhaustive small-order fact checks

fn criterion_08() -> Outcome {
    let t0 = Instant::now();
    let r = suite_eg(7).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    let ok = r.passed && r.violation_count == 0 && r.cases == 10_620_040 && dt < 600.0;
    (
        ok,
        format!(
            "{} (graph, ℓ) cases: {} verified, {} vacuous, 0 counterexamples, {dt:.0}s",
            r.cases, r.verified, r.vacuous
        ),
    )
}

/// Union-find over the 21 pair-bits of a 7-vertex edge mask; deliberately
/// avoids the library's Graph type.
fn mask_is_connected_n7(mask: u32) -> bool {
    let mut parent: [usize; 7] = [0, 1, 2, 3, 4, 5, 6];
    fn find(p: &mut [usize; 7], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut bit = 0;
    for v in 1..7 {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
            bit += 1;
        }
    }
    let root = find(&mut parent, 0);
    (1..7).all(|v| find(&mut parent, v) == root)
}

fn criterion_09() -> Outcome {
    // independent tally of the hypothesis classes
    let (mut conn_e11, mut conn_e12) = (0u64, 0u64);
    for mask in 0u32..1 << 21 {
        let e = mask.count_ones();
        if e >= 11 && mask_is_connected_n7(mask) {
            conn_e11 += 1;
            if e >= 12 {
                conn_e12 += 1;
            }
        }
    }
    if (conn_e11, conn_e12) != (1_034_968, 691_828) {
        return fail(format!("independent tally moved: {conn_e11}, {conn_e12}"));
    }
    let f1 = suite_f1(7, 2, false).unwrap();
    let f2 = suite_f2(7, 2, false).unwrap();
    let ok = f1.passed
        && f2.passed
        && f1.violation_count == 0
        && f2.violation_count == 0
        && f1.verified == conn_e11
        && f2.verified == conn_e12;
    (
        ok,
        format!(
            "n=7 k=2: F1 verified {} of {} ({} counterexamples), F2 verified {} of {} ({} counterexamples)",
            f1.verified,
            conn_e11,
            f1.violation_count,
            f2.verified,
            conn_e12,
            f2.violation_count
        ),
    )
}

// --------------------------------------------------------------------------
// 10: randomized two-set path witnesses

fn criterion_10() -> Outcome {
    let two = suite_lemma5(200, 0, Lemma5Mode::TwoPart).unwrap();
    let strict = suite_lemma5(200, 0, Lemma5Mode::RemarkStrict).unwrap();
    let ok = two.passed && strict.passed && two.cases == 200 && strict.cases == 200;
    (
        ok,
        format!(
            "200 two-part + 200 strict instances, {} witnessed, {} violations",
            two.verified + strict.verified,
            two.violation_count + strict.violation_count
        ),
    )
}

// --------------------------------------------------------------------------
// 11: construction circumferences and edge counts

fn criterion_11() -> Outcome {
    let mut cases = 0;
    for k in 2..=4usize {
        for n in 2 * k + 2..=14 {
            let s = construct_snk(n, k).unwrap();
            let sp = construct_snk_plus(n, k).unwrap();
            let cs = circumference(&s).unwrap().map_or(0, |w| w.length());
            let csp = circumference(&sp).unwrap().map_or(0, |w| w.length());
            if cs != 2 * k {
                return fail(format!("c(S_{{{n},{k}}}) = {cs}, wanted {}", 2 * k));
            }
            if csp != 2 * k + 1 {
                return fail(format!("c(S⁺_{{{n},{k}}}) = {csp}, wanted {}", 2 * k + 1));
            }
            if n <= 10
                && (common::brute_circumference(&s) != cs
                    || common::brute_circumference(&sp) != csp)
            {
                return fail(format!("unpruned enumeration disagrees at (n,k)=({n},{k})"));
            }
            let e = k * n - (k * k + k) / 2;
            if s.edge_count() != e || sp.edge_count() != e + 1 {
                return fail(format!(
                    "edge counts at (n,k)=({n},{k}): {} and {}, wanted {e} and {}",
                    s.edge_count(),
                    sp.edge_count(),
                    e + 1
                ));
            }
            cases += 1;
        }
    }
    (
        true,
        format!("{cases} (n,k) pairs: c = 2k and 2k+1, edge formulas exact"),
    )
}

// --------------------------------------------------------------------------
// 12: graph6 byte pins and corpus round-trip

fn criterion_12() -> Outcome {
    let k1 = parse_graph6("@").unwrap();
    let k2 = parse_graph6("A_").unwrap();
    let e2 = parse_graph6("A?").unwrap();
    if k1.n() != 1 || k1.edge_count() != 0 {
        return fail("\"@\" is not K1".into());
    }
    if k2.n() != 2 || !k2.has_edge(0, 1) {
        return fail("\"A_\" is not K2".into());
    }
    if e2.n() != 2 || e2.edge_count() != 0 {
        return fail("\"A?\" is not the empty pair".into());
    }
    for (g, s) in [(&k1, "@"), (&k2, "A_"), (&e2, "A?")] {
        if emit_graph6(g).unwrap() != s {
            return fail(format!("emit broke the byte pin for {s:?}"));
        }
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/reference.g6");
    let text = std::fs::read_to_string(path).unwrap();
    let mut count = 0;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let g = parse_graph6(line).unwrap();
        let back = emit_graph6(&g).unwrap();
        if back != line {
            return fail(format!("round-trip moved {line:?} to {back:?}"));
        }
        count += 1;
    }
    (
        count == 43,
        format!("3 byte pins exact, {count}-graph corpus round-trips identically"),
    )
}

// --------------------------------------------------------------------------
// 13: scan goldens, bit-stable across runs and worker counts

fn run_scan_n6(constraint: &str, target: &str, jobs: Option<usize>) -> (String, ScanReport) {
    let params = ScanParams {
        n: 6,
        k: 2,
        constraint: constraint.parse().unwrap(),
        target: target.parse().unwrap(),
        budget: DEFAULT_NODE_BUDGET,
        jobs,
    };
    let report = scan_extremal(
        enumerate_labeled(6, EnumerateOpts::default(), false).unwrap(),
        &params,
        |_| Ok(()),
    )
    .unwrap();
    (serde_json::to_string(&report).unwrap(), report)
}

fn criterion_13() -> Outcome {
    let goldens = [
        ("atleast:5", "snk", 3.372_281_323_269_014_3, 13_582u64, 15, ScanVerdict::TargetIsUniqueMax),
        ("atleast:6", "snkp", 4.051_374_241_731_037, 22_690u64, 30, ScanVerdict::TargetBeaten),
    ];
    for (constraint, target, mu, free, maxers, verdict) in goldens {
        let (bytes, report) = run_scan_n6(constraint, target, None);
        for jobs in [None, Some(1), Some(4), None] {
            let (again, _) = run_scan_n6(constraint, target, jobs);
            if again != bytes {
                return fail(format!("{constraint}: report bytes vary with jobs={jobs:?}"));
            }
        }
        let ok = report.count_free == free
            && report.maximizers.len() == maxers
            && (report.max_mu.unwrap() - mu).abs() <= 1e-12
            && report.verdict == verdict;
        if !ok {
            return fail(format!(
                "{constraint}: free={} maximizers={} max_mu={:?} verdict={:?}",
                report.count_free,
                report.maximizers.len(),
                report.max_mu,
                report.verdict
            ));
        }
    }
    (
        true,
        "both n=6 scans byte-stable over 5 runs × worker counts, μ-maximizers pinned".into(),
    )
}

// --------------------------------------------------------------------------

fn main() {
    let criteria: [(u32, fn() -> Outcome); 13] = [
        (1, criterion_01),
        (2, criterion_02),
        (3, criterion_03),
        (4, criterion_04),
        (5, criterion_05),
        (6, criterion_06),
        (7, criterion_07),
        (8, criterion_08),
        (9, criterion_09),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    let mut failures = 0;
    for (num, criterion) in criteria {
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(criterion)) {
            Ok(outcome) => outcome,
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panicked");
                (false, format!("panicked: {msg}"))
            }
        };
        println!(
            "[criterion {num:02}] {} — {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
