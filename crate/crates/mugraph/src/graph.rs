//! Immutable simple graphs on at most 64 vertices, with adjacency rows stored
//! as single machine words. Vertex sets are `u64` bitmasks throughout, which
//! keeps neighborhood algebra (unions, intersections, private neighbors,
//! partition classes) down to a handful of word ops.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A set of vertices, one bit per vertex.
pub type VertexSet = u64;

/// All vertices of an order-`n` graph as a mask. Valid for 1 <= n <= 64.
#[inline(always)]
pub fn full_set(n: usize) -> VertexSet {
    debug_assert!((1..=64).contains(&n));
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the members of a vertex set in ascending order.
#[inline]
pub fn set_bits(mut s: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

#[inline(always)]
pub fn set_contains(s: VertexSet, v: usize) -> bool {
    s >> v & 1 == 1
}

/// Immutable simple undirected graph of order 1..=64.
///
/// Invariants (enforced by every constructor):
/// - adjacency is symmetric,
/// - no loops,
/// - vertices are labeled `0..n`.
///
/// Equality and hashing are label-sensitive; isomorphism is deliberately out
/// of scope except for the shape recognizers [`Graph::is_snk`] /
/// [`Graph::is_snk_plus`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, e={}, edges=[", self.n, self.edge_count())?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::OrderOutOfRange { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Build from an edge list. Duplicate edges are idempotent; loops are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = full_set(n);
        for u in 0..n {
            g.adj[u] = all & !(1 << u);
        }
        Ok(g)
    }

    /// Decode an edge bitmask in canonical pair order: (0,1), (0,2), (1,2),
    /// (0,3), (1,3), (2,3), ... — pairs (i,j) with i<j ordered by j then i.
    /// This is also the bit order of the graph6 encoding. Needs
    /// n(n−1)/2 ≤ 64, i.e. n ≤ 11.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        let npairs = n.saturating_mul(n.saturating_sub(1)) / 2;
        if npairs > 64 {
            return Err(Error::domain(format!(
                "edge mask form needs n <= 11, got n={n}"
            )));
        }
        if npairs < 64 && mask >> npairs != 0 {
            return Err(Error::domain("edge mask has bits beyond the last vertex pair"));
        }
        let mut g = Graph::empty(n)?;
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// N(u) as a bitmask.
    #[inline(always)]
    pub fn neighborhood(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    /// N[u] = N(u) ∪ {u}.
    #[inline(always)]
    pub fn closed_neighborhood(&self, u: usize) -> VertexSet {
        self.adj[u] | 1 << u
    }

    /// All neighborhood rows, indexed by vertex.
    #[inline(always)]
    pub fn adjacency_rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline(always)]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        set_contains(self.adj[u], v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            set_bits(self.adj[u]).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Degree product f(G) = ∏ d(u), in arbitrary precision ((n−1)^n does not
    /// fit a machine word once n is around 20). Zero iff some vertex is
    /// isolated.
    pub fn degree_product(&self) -> BigUint {
        let mut f = BigUint::from(1u32);
        for u in 0..self.n {
            f *= BigUint::from(self.degree(u));
        }
        f
    }

    /// Bundled exact counts.
    pub fn metrics(&self) -> Metrics {
        Metrics {
            edge_count: self.edge_count(),
            degrees: self.degree_sequence(),
            degree_product: self.degree_product(),
        }
    }

    /// Edges between two disjoint vertex sets.
    pub fn cross_edges(&self, x: VertexSet, y: VertexSet) -> Result<usize> {
        if x & y != 0 {
            return Err(Error::SetsOverlap);
        }
        Ok(set_bits(x).map(|u| (self.adj[u] & y).count_ones() as usize).sum())
    }

    /// Edge count inside an induced set.
    pub fn edges_within(&self, x: VertexSet) -> usize {
        set_bits(x).map(|u| (self.adj[u] & x).count_ones() as usize).sum::<usize>() / 2
    }

    /// Induced subgraph on `s`, relabeled to 0..|s| in ascending vertex order.
    /// `induced(full_set(n))` reproduces the graph itself.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        let s = s & full_set(self.n);
        let verts: Vec<usize> = set_bits(s).collect();
        if verts.is_empty() {
            return Err(Error::OrderOutOfRange { n: 0 });
        }
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// P_v(u): neighbors of `u` other than `v` that are not neighbors of `v`.
    /// Requires `uv` to be an edge.
    pub fn private_neighbors(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        Ok(self.adj[u] & !(1 << v) & !self.adj[v])
    }

    /// Split the rest of the graph around `u`: Y_u = V ∖ N[u], S_u = the
    /// neighbors of `u` that also have a neighbor in Y_u, T_u = the remaining
    /// neighbors.
    pub fn partition_at(&self, u: usize) -> Result<VertexPartition> {
        self.check_vertex(u)?;
        let y = full_set(self.n) & !self.closed_neighborhood(u);
        let n_of_y = set_bits(y).fold(0u64, |acc, w| acc | self.adj[w]);
        let s = self.adj[u] & n_of_y;
        let t = self.adj[u] & !s;
        debug_assert_eq!(s | t, self.adj[u]);
        debug_assert_eq!(s & t, 0);
        debug_assert_eq!(1 << u | self.adj[u] | y, full_set(self.n));
        Ok(VertexPartition { u, s, t, y })
    }

    /// Connected components as vertex masks, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = full_set(self.n);
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            loop {
                let grown = set_bits(comp).fold(comp, |acc, v| acc | self.adj[v]) & full_set(self.n);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The graph with edge `uv` added if absent, removed if present.
    pub fn toggled(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::domain(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.adj[u] ^= 1 << v;
        g.adj[v] ^= 1 << u;
        Ok(g)
    }

    /// Recognize any labeling of S_{n,k}: a k-clique joined to an independent
    /// set. Degree-based, sound for this shape: the clique vertices are
    /// exactly the universal ones unless the graph is complete.
    pub fn is_snk(&self, k: usize) -> bool {
        let n = self.n;
        if k == 0 || k >= n {
            return false;
        }
        if k == n - 1 {
            return self.edge_count() == n * (n - 1) / 2;
        }
        let universal: VertexSet = (0..n)
            .filter(|&u| self.degree(u) == n - 1)
            .fold(0, |acc, u| acc | 1 << u);
        if universal.count_ones() as usize != k {
            return false;
        }
        let rest = full_set(n) & !universal;
        set_bits(rest).all(|u| self.adj[u] & rest == 0)
    }

    /// Recognize any labeling of S⁺_{n,k}: S_{n,k} plus exactly one edge
    /// inside the independent set. Needs n − k ≥ 2.
    pub fn is_snk_plus(&self, k: usize) -> bool {
        let n = self.n;
        if k == 0 || n < k + 2 {
            return false;
        }
        if n == k + 2 {
            // the one added edge makes the whole graph complete
            return self.edge_count() == n * (n - 1) / 2;
        }
        let universal: VertexSet = (0..n)
            .filter(|&u| self.degree(u) == n - 1)
            .fold(0, |acc, u| acc | 1 << u);
        if universal.count_ones() as usize != k {
            return false;
        }
        let rest = full_set(n) & !universal;
        self.edges_within(rest) == 1
    }

    /// Vertices ordered by (degree descending, label ascending); the first k
    /// entries of a recognized S_{n,k}/S⁺_{n,k} are its clique.
    pub fn top_degree_vertices(&self, k: usize) -> VertexSet {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&u| (std::cmp::Reverse(self.degree(u)), u));
        order.into_iter().take(k).fold(0, |acc, u| acc | 1 << u)
    }
}

/// Exact counts bundled for reporting.
#[derive(Clone, Debug)]
pub struct Metrics {
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub degree_product: BigUint,
}

/// The S/T/Y split around a vertex.
///
/// Invariants: S ∪ T = N(u) with S ∩ T = ∅; Y = V ∖ N[u]; every vertex of S
/// has a neighbor in Y and no vertex of T does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub u: usize,
    pub s: VertexSet,
    pub t: VertexSet,
    pub y: VertexSet,
}

impl VertexPartition {
    #[inline]
    pub fn s_count(&self) -> usize {
        self.s.count_ones() as usize
    }

    #[inline]
    pub fn t_count(&self) -> usize {
        self.t.count_ones() as usize
    }

    #[inline]
    pub fn y_count(&self) -> usize {
        self.y.count_ones() as usize
    }
}

/// S_{n,k}: the join of K_k (vertices 0..k) with an independent set of n−k
/// vertices. Requires 1 ≤ k < n ≤ 64. Edge count is kn − (k² + k)/2.
pub fn construct_snk(n: usize, k: usize) -> Result<Graph> {
    if n == 0 || n > 64 {
        return Err(Error::OrderOutOfRange { n });
    }
    if k == 0 || k >= n {
        return Err(Error::domain(format!("S_{{n,k}} needs 1 <= k < n, got n={n} k={k}")));
    }
    let mut g = Graph::empty(n)?;
    let all = full_set(n);
    for u in 0..k {
        g.adj[u] = all & !(1 << u);
    }
    let clique = full_set(k);
    for u in k..n {
        g.adj[u] = clique;
    }
    debug_assert_eq!(g.edge_count(), k * n - (k * k + k) / 2);
    Ok(g)
}

/// S⁺_{n,k}: S_{n,k} plus the single edge {k, k+1} inside the independent
/// set. Requires n − k ≥ 2.
pub fn construct_snk_plus(n: usize, k: usize) -> Result<Graph> {
    if n == 0 || n > 64 {
        return Err(Error::OrderOutOfRange { n });
    }
    if k == 0 || n < k + 2 {
        return Err(Error::domain(format!(
            "S+_{{n,k}} needs 1 <= k <= n-2, got n={n} k={k}"
        )));
    }
    let mut g = construct_snk(n, k)?;
    g.adj[k] |= 1 << (k + 1);
    g.adj[k + 1] |= 1 << k;
    debug_assert_eq!(g.edge_count(), k * n - (k * k + k) / 2 + 1);
    Ok(g)
}

/// Join G ∨ H: disjoint copies plus all cross edges. G keeps its labels, H is
/// shifted by |V(G)|.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.n, h.n);
    let total = ng + nh;
    if total > 64 {
        return Err(Error::SizeOverflow { total });
    }
    let mut out = Graph::empty(total)?;
    let g_mask = full_set(ng);
    let h_mask = full_set(total) & !g_mask;
    for u in 0..ng {
        out.adj[u] = g.adj[u] | h_mask;
    }
    for v in 0..nh {
        out.adj[ng + v] = (h.adj[v] << ng) | g_mask;
    }
    Ok(out)
}

/// Disjoint union G + H, H shifted by |V(G)|.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.n, h.n);
    let total = ng + nh;
    if total > 64 {
        return Err(Error::SizeOverflow { total });
    }
    let mut out = Graph::empty(total)?;
    for u in 0..ng {
        out.adj[u] = g.adj[u];
    }
    for v in 0..nh {
        out.adj[ng + v] = h.adj[v] << ng;
    }
    Ok(out)
}
