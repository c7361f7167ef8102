//! Shared by the integration suites: oracle implementations that take a
//! deliberately different route than the library (dense i64 matrices, plain
//! unpruned enumeration) plus seeded input corpora.

#![allow(dead_code)]

use mugraph::verify::randgen::{connected_gnp, gnp};
use mugraph::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// dense matrix route

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut a = vec![vec![0i64; n]; n];
    for (u, row) in a.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            if u != v && g.has_edge(u, v) {
                *cell = 1;
            }
        }
    }
    a
}

pub fn matmul(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    let mut z = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                z[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    z
}

/// Column sum at `u` of A², straight from the squared matrix.
pub fn matrix_colsum_a2(g: &Graph, u: usize) -> i64 {
    let a = adjacency_matrix(g);
    let a2 = matmul(&a, &a);
    (0..g.n()).map(|w| a2[w][u]).sum()
}

/// Column sums at every vertex of A² − aA − bI with integer coefficients.
pub fn matrix_colsums_quadratic(g: &Graph, a_coef: i64, b_coef: i64) -> Vec<i64> {
    let a = adjacency_matrix(g);
    let a2 = matmul(&a, &a);
    (0..g.n())
        .map(|u| {
            let col: i64 = (0..g.n()).map(|w| a2[w][u] - a_coef * a[w][u]).sum();
            col - b_coef
        })
        .collect()
}

// ---------------------------------------------------------------------------
// unpruned path and cycle enumeration

fn all_paths_from(
    g: &Graph,
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Vec<usize>,
) {
    let head = *path.last().unwrap();
    if path.len() > best.len() || (path.len() == best.len() && path[..] < best[..]) {
        *best = path.clone();
    }
    for w in 0..g.n() {
        if !used[w] && g.has_edge(head, w) {
            used[w] = true;
            path.push(w);
            all_paths_from(g, path, used, best);
            path.pop();
            used[w] = false;
        }
    }
}

/// Longest path by exhaustive enumeration; lexicographically smallest vertex
/// sequence among the longest. Empty only when the graph has no vertices.
pub fn brute_longest_path(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for s in 0..g.n() {
        let mut used = vec![false; g.n()];
        used[s] = true;
        let mut path = vec![s];
        all_paths_from(g, &mut path, &mut used, &mut best);
    }
    best
}

fn all_cycles_from(
    g: &Graph,
    root: usize,
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut usize,
) {
    let head = *path.last().unwrap();
    if path.len() >= 3 && g.has_edge(head, root) {
        *best = (*best).max(path.len());
    }
    for w in root + 1..g.n() {
        if !used[w] && g.has_edge(head, w) {
            used[w] = true;
            path.push(w);
            all_cycles_from(g, root, path, used, best);
            path.pop();
            used[w] = false;
        }
    }
}

/// Circumference by exhaustive enumeration; 0 when the graph is acyclic.
pub fn brute_circumference(g: &Graph) -> usize {
    let mut best = 0;
    for root in 0..g.n() {
        let mut used = vec![false; g.n()];
        used[root] = true;
        let mut path = vec![root];
        all_cycles_from(g, root, &mut path, &mut used, &mut best);
    }
    best
}

/// Does some cycle length land in `lo..=hi`? Unpruned enumeration.
pub fn brute_has_cycle_in_window(g: &Graph, lo: usize, hi: usize) -> bool {
    fn walk(
        g: &Graph,
        root: usize,
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        lo: usize,
        hi: usize,
    ) -> bool {
        let head = *path.last().unwrap();
        if path.len() >= 3 && path.len() >= lo && path.len() <= hi && g.has_edge(head, root) {
            return true;
        }
        for w in root + 1..g.n() {
            if !used[w] && g.has_edge(head, w) {
                used[w] = true;
                path.push(w);
                let hit = walk(g, root, path, used, lo, hi);
                path.pop();
                used[w] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    for root in 0..g.n() {
        let mut used = vec![false; g.n()];
        if walk(g, root, &mut vec![root], &mut used, lo, hi) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// seeded corpora

const P_GRID: [f64; 5] = [0.15, 0.3, 0.5, 0.7, 0.85];

/// `count` seeded graphs with orders cycling 4..=max_n and densities cycling
/// a fixed grid. Deterministic for a given (seed, count, max_n).
pub fn corpus_gnp(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = 4 + i % (max_n - 3);
            gnp(&mut rng, n, P_GRID[i % P_GRID.len()]).unwrap()
        })
        .collect()
}

/// Same shape, connected graphs only.
pub fn corpus_connected(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = 4 + i % (max_n - 3);
            connected_gnp(&mut rng, n, P_GRID[i % P_GRID.len()].max(0.3)).unwrap()
        })
        .collect()
}
