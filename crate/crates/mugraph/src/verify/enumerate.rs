//! Exhaustive labeled-graph enumeration for small orders.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Filters applied during enumeration.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOpts {
    pub connected_only: bool,
    pub min_edges: usize,
}

const DEFAULT_CAP: usize = 7;
const OVERRIDE_CAP: usize = 8;

/// Every labeled graph on `n` vertices, in ascending edge-mask order (the
/// mask's bit i is pair i in the (0,1), (0,2), (1,2), (0,3), ... order).
/// Capped at n ≤ 7 — 2,097,152 graphs — unless `allow_n8` grants n = 8's
/// 268 million.
pub fn enumerate_labeled(
    n: usize,
    opts: EnumerateOpts,
    allow_n8: bool,
) -> Result<impl Iterator<Item = Graph>> {
    let cap = if allow_n8 { OVERRIDE_CAP } else { DEFAULT_CAP };
    if n == 0 || n > cap {
        return Err(Error::EnumerationCap { n });
    }
    let npairs = n * (n - 1) / 2;
    Ok((0u64..1 << npairs).filter_map(move |mask| {
        let g = Graph::from_edge_mask(n, mask).expect("mask is in range");
        if opts.connected_only && !g.is_connected() {
            return None;
        }
        if g.edge_count() < opts.min_edges {
            return None;
        }
        Some(g)
    }))
}
