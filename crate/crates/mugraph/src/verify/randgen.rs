//! Seeded random graph draws used by the randomized suites and the
//! hill-climbing search.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::Rng;

/// G(n, p): each pair independently an edge, pairs visited in row-major
/// (u, v) order so a seeded generator yields a reproducible graph.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// G(n, p) conditioned on connectivity by rejection.
pub fn connected_gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Result<Graph> {
    for _ in 0..10_000 {
        let g = gnp(rng, n, p)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::domain(format!(
        "no connected G({n}, {p}) after 10000 draws; raise p"
    )))
}
