//! Neighbor-moving reductions: shift one endpoint's private neighbors across
//! an edge, directed by the Perron vector so the spectral radius never drops,
//! iterate to a fixpoint, and check the structural properties fixpoints have.

use crate::cycles::circumference;
use crate::error::{Error, Result};
use crate::graph::{set_bits, Graph, VertexSet};
use crate::spectral::spectral_radius;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Serialize, Serializer};

/// Above this order the per-step circumference audit is skipped (exact cycle
/// search cost grows too fast to run twice per step).
pub const CIRCUMFERENCE_TRACKING_MAX_N: usize = 18;

const PERRON_TIE_TOL: f64 = 1e-9;

fn ser_vertex_set<S: Serializer>(set: &VertexSet, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(set_bits(*set))
}

fn ser_biguint<S: Serializer>(x: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&x.to_string())
}

/// Which way the private neighbors moved, relative to the (u, v) fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepDirection {
    UToV,
    VToU,
}

/// One applied shift with its audited quantities. Postconditions:
/// `mu_after ≥ mu_before − 1e−9`, `c_after ≤ c_before` whenever both were
/// computed (`c_verified` records that comparison), and the degree product
/// drops strictly (for graphs without isolated vertices).
#[derive(Clone, Debug, Serialize)]
pub struct TransformStep {
    pub u: usize,
    pub v: usize,
    pub direction: StepDirection,
    #[serde(serialize_with = "ser_vertex_set")]
    pub moved: VertexSet,
    pub mu_before: f64,
    pub mu_after: f64,
    pub c_before: Option<usize>,
    pub c_after: Option<usize>,
    pub c_verified: bool,
    #[serde(serialize_with = "ser_biguint")]
    pub f_before: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub f_after: BigUint,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TransformTrace {
    pub steps: Vec<TransformStep>,
}

/// Move every neighbor of `from` outside N[to] over to `to`. The `from`–`to`
/// edge itself, if present, stays. Does not require adjacency.
pub fn kelmans(g: &Graph, from: usize, to: usize) -> Result<Graph> {
    let n = g.n();
    if from >= n {
        return Err(Error::VertexOutOfRange { v: from, n });
    }
    if to >= n {
        return Err(Error::VertexOutOfRange { v: to, n });
    }
    if from == to {
        return Err(Error::domain("shift needs two distinct vertices"));
    }
    let moved = g.neighborhood(from) & !g.closed_neighborhood(to);
    let mut h = g.clone();
    for w in set_bits(moved) {
        h = h.toggled(from, w)?; // delete
        h = h.toggled(to, w)?; // add
    }
    Ok(h)
}

fn circumference_len(g: &Graph) -> Result<usize> {
    Ok(circumference(g)?.map_or(0, |w| w.length()))
}

/// Apply one Perron-directed shift across the edge uv. Both private
/// neighborhoods must be nonempty; the endpoint with the smaller Perron
/// entry is the source (ties: smaller index), which is the direction that
/// cannot lower μ.
pub fn lemma6_step(g: &Graph, u: usize, v: usize) -> Result<(Graph, TransformStep)> {
    let pu = g.private_neighbors(u, v)?;
    let pv = g.private_neighbors(v, u)?;
    if pu == 0 || pv == 0 {
        return Err(Error::EmptyPrivateSet { u, v });
    }
    let before = spectral_radius(g)?;
    let (xu, xv) = (before.perron[u], before.perron[v]);
    let (source, target, moved) = if (xu - xv).abs() <= PERRON_TIE_TOL {
        if u < v {
            (u, v, pu)
        } else {
            (v, u, pv)
        }
    } else if xu < xv {
        (u, v, pu)
    } else {
        (v, u, pv)
    };
    let direction = if source == u {
        StepDirection::UToV
    } else {
        StepDirection::VToU
    };
    let h = kelmans(g, source, target)?;
    let mu_after = spectral_radius(&h)?.mu;
    let (c_before, c_after) = if g.n() <= CIRCUMFERENCE_TRACKING_MAX_N {
        (Some(circumference_len(g)?), Some(circumference_len(&h)?))
    } else {
        (None, None)
    };
    let c_verified = matches!((c_before, c_after), (Some(b), Some(a)) if a <= b);
    let step = TransformStep {
        u,
        v,
        direction,
        moved,
        mu_before: before.mu,
        mu_after,
        c_before,
        c_after,
        c_verified,
        f_before: g.degree_product(),
        f_after: h.degree_product(),
    };
    debug_assert!(step.mu_after >= step.mu_before - 1e-9);
    debug_assert!(step.f_before.is_zero() || step.f_after < step.f_before);
    Ok((h, step))
}

/// True when no edge admits a shift: every edge has an endpoint whose
/// private neighborhood is empty.
pub fn is_fixpoint(g: &Graph) -> bool {
    g.edges().all(|(u, v)| {
        let pu = g.private_neighbors(u, v).expect("iterating edges");
        let pv = g.private_neighbors(v, u).expect("iterating edges");
        pu == 0 || pv == 0
    })
}

/// Shift until no edge is eligible. Each sweep picks the first eligible edge
/// in (u, v) lexicographic order and rescans from the start. Terminates
/// because the degree product strictly decreases.
pub fn reduce_to_fixpoint(g: &Graph) -> Result<(Graph, TransformTrace)> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        let eligible = cur.edges().find(|&(u, v)| {
            let pu = cur.private_neighbors(u, v).expect("iterating edges");
            let pv = cur.private_neighbors(v, u).expect("iterating edges");
            pu != 0 && pv != 0
        });
        match eligible {
            Some((u, v)) => {
                let (next, step) = lemma6_step(&cur, u, v)?;
                cur = next;
                steps.push(step);
            }
            None => break,
        }
    }
    debug_assert!(is_fixpoint(&cur));
    Ok((cur, TransformTrace { steps }))
}

// ---------------------------------------------------------------------------
// fixpoint structure checks

/// Per-graph summary of the structural properties a shift fixpoint has to
/// satisfy, each quantified over every vertex u with its S/T/Y split:
/// - `clique_su`: the neighbors with a neighbor in Y_u form a clique,
/// - `dominated_tu`: every S_u vertex is adjacent to every T_u vertex,
/// - `no_tu_yu_edges`: no edges between T_u and Y_u,
///
/// and three that are meaningful when the graph also has no cycle of length
/// ≥ 2k+2:
/// - `su_le_2k`: |S_u| ≤ 2k,
/// - `min_le_k`: min(|S_u|, |T_u|) ≤ k,
/// - `deg_bound`: |S_u| ≥ |T_u| implies d(u) ≤ 2k+1.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClaimReport {
    pub clique_su: bool,
    pub dominated_tu: bool,
    pub no_tu_yu_edges: bool,
    pub su_le_2k: bool,
    pub min_le_k: bool,
    pub deg_bound: bool,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.clique_su
            && self.dominated_tu
            && self.no_tu_yu_edges
            && self.su_le_2k
            && self.min_le_k
            && self.deg_bound
    }
}

pub fn claim_checks(g: &Graph, k: usize) -> Result<ClaimReport> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let mut r = ClaimReport {
        clique_su: true,
        dominated_tu: true,
        no_tu_yu_edges: true,
        su_le_2k: true,
        min_le_k: true,
        deg_bound: true,
    };
    for u in 0..g.n() {
        let p = g.partition_at(u)?;
        let (s, t) = (p.s_count(), p.t_count());
        if g.edges_within(p.s) != s * (s - s.min(1)) / 2 {
            r.clique_su = false;
        }
        if set_bits(p.t).any(|w| g.neighborhood(w) & p.s != p.s) {
            r.dominated_tu = false;
        }
        if g.cross_edges(p.t, p.y)? != 0 {
            r.no_tu_yu_edges = false;
        }
        if s > 2 * k {
            r.su_le_2k = false;
        }
        if s.min(t) > k {
            r.min_le_k = false;
        }
        if s >= t && g.degree(u) > 2 * k + 1 {
            r.deg_bound = false;
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Perron entry ordering across edges

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerronRelation {
    /// N[low] ⊊ N[high]: the dominated entry must be strictly smaller.
    StrictlyGreater,
    /// N[low] = N[high]: the entries must coincide.
    Equal,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PerronViolation {
    pub low: usize,
    pub high: usize,
    pub x_low: f64,
    pub x_high: f64,
    pub expected: PerronRelation,
}

/// Check, over every edge of a connected graph, that Perron entries order
/// the way closed-neighborhood containment says they must: an endpoint whose
/// private set is empty has the (weakly) smaller entry, strictly when the
/// other endpoint's private set is nonempty, equal when both are empty.
/// Returns all violations at margin 1e−9.
pub fn perron_monotonicity_check(g: &Graph) -> Result<Vec<PerronViolation>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let x = spectral_radius(g)?.perron;
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let pu = g.private_neighbors(u, v)?;
        let pv = g.private_neighbors(v, u)?;
        match (pu == 0, pv == 0) {
            (true, true) => {
                if (x[u] - x[v]).abs() > PERRON_TIE_TOL {
                    out.push(PerronViolation {
                        low: u,
                        high: v,
                        x_low: x[u],
                        x_high: x[v],
                        expected: PerronRelation::Equal,
                    });
                }
            }
            (true, false) => {
                // N[u] ⊊ N[v]
                if x[v] - x[u] <= PERRON_TIE_TOL {
                    out.push(PerronViolation {
                        low: u,
                        high: v,
                        x_low: x[u],
                        x_high: x[v],
                        expected: PerronRelation::StrictlyGreater,
                    });
                }
            }
            (false, true) => {
                if x[u] - x[v] <= PERRON_TIE_TOL {
                    out.push(PerronViolation {
                        low: v,
                        high: u,
                        x_low: x[v],
                        x_high: x[u],
                        expected: PerronRelation::StrictlyGreater,
                    });
                }
            }
            (false, false) => {}
        }
    }
    Ok(out)
}
