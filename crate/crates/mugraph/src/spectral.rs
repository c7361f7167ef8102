//! Spectral radius via power iteration, the closed form for joined
//! clique-plus-independent-set graphs, combinatorial column sums, and
//! quotient-polynomial certificates that bound μ by the larger root of
//! x² − ax − b.

use crate::error::{Error, Result};
use crate::graph::{set_bits, Graph, VertexSet};
use num_traits::Float;

/// Stopping rules for the power iteration.
///
/// Convergence requires both: the Rayleigh quotient moved by at most
/// `rayleigh_tol` for `stable_window` consecutive iterations, and the
/// residual ‖Ax − μx‖∞ (on the L1-normalized iterate) is at most
/// `residual_tol`.
#[derive(Clone, Copy, Debug)]
pub struct PowerOpts<R> {
    pub rayleigh_tol: R,
    pub residual_tol: R,
    pub max_iterations: u64,
    pub stable_window: u32,
}

impl Default for PowerOpts<f64> {
    fn default() -> Self {
        PowerOpts {
            rayleigh_tol: 1e-13,
            residual_tol: 1e-10,
            max_iterations: 200_000,
            stable_window: 3,
        }
    }
}

/// Converged spectral data. For a disconnected graph, `mu` is the maximum
/// over components and `perron` is supported on the maximizing component
/// (lowest smallest-vertex on ties), zero elsewhere; ‖perron‖₁ = 1.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpectralResult<R = crate::Scalar> {
    pub mu: R,
    pub perron: Vec<R>,
    pub iterations: u64,
    pub residual: R,
}

#[inline]
fn matvec<R: Float>(rows: &[VertexSet], x: &[R], out: &mut [R]) {
    for (v, &row) in rows.iter().enumerate() {
        let mut acc = R::zero();
        for w in set_bits(row) {
            acc = acc + x[w];
        }
        out[v] = acc;
    }
}

/// Power iteration on A + I for one connected graph.
/// Returns (mu, L1-normalized positive eigenvector, iterations, residual).
fn power_connected<R: Float>(g: &Graph, opts: &PowerOpts<R>) -> Result<(R, Vec<R>, u64, R)> {
    let n = g.n();
    if n == 1 {
        return Ok((R::zero(), vec![R::one()], 0, R::zero()));
    }
    let rows = g.adjacency_rows();
    let inv_n = R::one() / R::from(n).expect("order fits in the scalar");
    let mut x = vec![inv_n; n];
    let mut ax = vec![R::zero(); n];
    let mut prev: Option<R> = None;
    let mut stable = 0u32;
    let mut residual = R::infinity();
    for it in 1..=opts.max_iterations {
        matvec(rows, &x, &mut ax);
        let mut num = R::zero();
        let mut den = R::zero();
        for i in 0..n {
            num = num + x[i] * ax[i];
            den = den + x[i] * x[i];
        }
        let ray = num / den;
        residual = R::zero();
        for i in 0..n {
            let r = (ax[i] - ray * x[i]).abs();
            if r > residual {
                residual = r;
            }
        }
        stable = match prev {
            Some(p) if (ray - p).abs() <= opts.rayleigh_tol => stable + 1,
            _ => 0,
        };
        prev = Some(ray);
        if stable >= opts.stable_window && residual <= opts.residual_tol {
            return Ok((ray, x, it, residual));
        }
        // x ← (A + I)x, renormalized to ‖x‖₁ = 1
        let mut sum = R::zero();
        for i in 0..n {
            x[i] = x[i] + ax[i];
            sum = sum + x[i];
        }
        for xi in x.iter_mut() {
            *xi = *xi / sum;
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iterations,
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

/// Spectral radius and Perron vector with default (f64) stopping rules.
pub fn spectral_radius(g: &Graph) -> Result<SpectralResult> {
    spectral_radius_in(g, &PowerOpts::default())
}

/// Scalar-generic spectral radius.
pub fn spectral_radius_in<R: Float>(g: &Graph, opts: &PowerOpts<R>) -> Result<SpectralResult<R>> {
    let mut best: Option<(R, Vec<R>, u64, R, VertexSet)> = None;
    for comp in g.components() {
        let sub = g.induced(comp)?;
        let (mu, local, iters, resid) = power_connected(&sub, opts)?;
        let better = match &best {
            None => true,
            Some((b, ..)) => mu > *b,
        };
        if better {
            best = Some((mu, local, iters, resid, comp));
        }
    }
    let (mu, local, iterations, residual, comp) = best.expect("graphs have at least one vertex");
    let mut perron = vec![R::zero(); g.n()];
    for (i, v) in set_bits(comp).enumerate() {
        perron[v] = local[i];
    }
    Ok(SpectralResult {
        mu,
        perron,
        iterations,
        residual,
    })
}

/// μ of the k-clique-join-independent-set graph on n vertices: the larger
/// root of x² − (k−1)x − k(n−k).
pub fn mu_snk_closed_form(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("need 1 <= k < n, got n={n} k={k}")));
    }
    let (n, k) = (n as f64, k as f64);
    Ok((k - 1.0) / 2.0 + (k * (n - k) + (k - 1.0) * (k - 1.0) / 4.0).sqrt())
}

// ---------------------------------------------------------------------------
// column sums

/// Exact column sum at `u` of A² − (k−1)A − k(n−k)I, computed from edge
/// counts: e(N(u), Y_u) + 2e(N(u)) − (k−2)d(u) − k(n−k).
pub fn column_sum_combinatorial(g: &Graph, u: usize, k: usize) -> Result<i64> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let p = g.partition_at(u)?;
    let nu = g.neighborhood(u);
    let e_ny = g.cross_edges(nu, p.y)? as i64;
    let e_nn = g.edges_within(nu) as i64;
    let d = g.degree(u) as i64;
    let (n, k) = (g.n() as i64, k as i64);
    Ok(e_ny + 2 * e_nn - (k - 2) * d - k * (n - k))
}

/// Column sum at `u` of A² − kA − (k − 1/2)(n−k)I. Half-integral: computed
/// doubled in integers, so the returned f64 is exact.
pub fn column_sum_combinatorial_g(g: &Graph, u: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let p = g.partition_at(u)?;
    let nu = g.neighborhood(u);
    let e_ny = g.cross_edges(nu, p.y)? as i64;
    let e_nn = g.edges_within(nu) as i64;
    let d = g.degree(u) as i64;
    let (n, k) = (g.n() as i64, k as i64);
    let doubled = 2 * e_ny + 4 * e_nn - 2 * (k - 1) * d - (2 * k - 1) * (n - k);
    Ok(doubled as f64 / 2.0)
}

// ---------------------------------------------------------------------------
// certificates

/// Column sums of the certificate matrix, exact when they can be.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnSums {
    Exact(Vec<i64>),
    Real(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    /// Every column sum is zero: μ equals the quotient root exactly.
    EqualityCandidate,
    /// Every column sum is ≤ 0 (within tolerance on the real path): μ is at
    /// most the larger root of x² − (a+c)x − (b − c·μ_ref).
    BoundHolds,
    /// Some column sum is positive; the certificate proves nothing.
    Inconclusive,
}

/// A checked instance of the column-sum bound: for connected G and
/// B = A² − aA − bI − c(A − μ_ref·I), nonpositive column sums of B force
/// μ(G) ≤ `mu_prime`, with equality exactly when every column sum is zero.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Certificate {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu_ref: Option<f64>,
    pub column_sums: ColumnSums,
    pub verdict: Verdict,
    pub mu_prime: f64,
}

const REAL_SUM_TOL: f64 = 1e-9;

fn is_integral(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() < 2f64.powi(53)
}

/// Evaluate the certificate on `g`. Requires connected `g` (irreducibility)
/// and effective coefficients a+c > 0, b − c·μ_ref > 0; `mu_ref` is required
/// iff c ≠ 0.
pub fn quotient_certificate(
    g: &Graph,
    a: f64,
    b: f64,
    c: f64,
    mu_ref: Option<f64>,
) -> Result<Certificate> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if c != 0.0 && mu_ref.is_none() {
        return Err(Error::domain("c != 0 requires a reference eigenvalue"));
    }
    let shift = if c == 0.0 { 0.0 } else { c * mu_ref.unwrap() };
    let (ae, be) = (a + c, b - shift);
    // NaN must fail this check, hence no plain <=
    if ae.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || be.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
    {
        return Err(Error::domain(format!(
            "effective coefficients must be positive, got a+c={ae}, b-c*mu_ref={be}"
        )));
    }
    let mu_prime = ae / 2.0 + (be + ae * ae / 4.0).sqrt();

    // column j of A² sums to Σ_{w ∈ N(j)} d(w)
    let weighted: Vec<i64> = (0..g.n())
        .map(|j| set_bits(g.neighborhood(j)).map(|w| g.degree(w) as i64).sum())
        .collect();

    let (column_sums, verdict) = if c == 0.0 && is_integral(a) && is_integral(b) {
        let (ai, bi) = (a as i64, b as i64);
        let sums: Vec<i64> = (0..g.n())
            .map(|j| weighted[j] - ai * g.degree(j) as i64 - bi)
            .collect();
        let verdict = if sums.iter().all(|&s| s == 0) {
            Verdict::EqualityCandidate
        } else if sums.iter().all(|&s| s <= 0) {
            Verdict::BoundHolds
        } else {
            Verdict::Inconclusive
        };
        (ColumnSums::Exact(sums), verdict)
    } else {
        let sums: Vec<f64> = (0..g.n())
            .map(|j| weighted[j] as f64 - ae * g.degree(j) as f64 - be)
            .collect();
        let verdict = if sums.iter().all(|&s| s.abs() <= REAL_SUM_TOL) {
            Verdict::EqualityCandidate
        } else if sums.iter().all(|&s| s <= REAL_SUM_TOL) {
            Verdict::BoundHolds
        } else {
            Verdict::Inconclusive
        };
        (ColumnSums::Real(sums), verdict)
    };

    Ok(Certificate {
        a,
        b,
        c,
        mu_ref,
        column_sums,
        verdict,
        mu_prime,
    })
}

// ---------------------------------------------------------------------------
// join-family comparison

/// μ comparison of the two cone families built from an optional base `h`:
/// merged = (H + S⁺_{t,1}) ∨ K₁ against split = (H + S⁺_{t1,1} + S⁺_{t2,1}) ∨ K₁
/// with t = t1 + t2. Merging the two small blocks strictly raises μ.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Lemma8Outcome {
    pub mu_merged: f64,
    pub mu_split: f64,
    /// mu_merged > mu_split by more than the comparison gap.
    pub strict: bool,
    /// |mu_merged − mu_split| within the gap: numerically undecidable.
    pub indeterminate: bool,
}

const LEMMA8_GAP: f64 = 1e-9;

pub fn lemma8_compare(h: Option<&Graph>, t1: usize, t2: usize) -> Result<Lemma8Outcome> {
    if t1 < 3 || t2 < 3 {
        return Err(Error::domain("both block sizes must be at least 3"));
    }
    let t = t1 + t2;
    let apex = Graph::empty(1)?;
    let with_h = |blocks: Graph| -> Result<Graph> {
        match h {
            Some(h) => crate::graph::disjoint_union(h, &blocks),
            None => Ok(blocks),
        }
    };
    let merged = crate::graph::join(&with_h(crate::graph::construct_snk_plus(t, 1)?)?, &apex)?;
    let split_blocks = crate::graph::disjoint_union(
        &crate::graph::construct_snk_plus(t1, 1)?,
        &crate::graph::construct_snk_plus(t2, 1)?,
    )?;
    let split = crate::graph::join(&with_h(split_blocks)?, &apex)?;
    let mu_merged = spectral_radius(&merged)?.mu;
    let mu_split = spectral_radius(&split)?.mu;
    let diff = mu_merged - mu_split;
    Ok(Lemma8Outcome {
        mu_merged,
        mu_split,
        strict: diff > LEMMA8_GAP,
        indeterminate: diff.abs() <= LEMMA8_GAP,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_snk, construct_snk_plus, disjoint_union, full_set};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn small_spectra() {
        let k2 = Graph::complete(2).unwrap();
        let r = spectral_radius(&k2).unwrap();
        assert!(close(r.mu, 1.0, 1e-12));
        assert!(close(r.perron[0], 0.5, 1e-12));
        assert!(r.residual <= 1e-10);

        assert!(close(spectral_radius(&Graph::complete(5).unwrap()).unwrap().mu, 4.0, 1e-12));

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(close(spectral_radius(&p4).unwrap().mu, 1.618033988749895, 1e-12));

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(close(spectral_radius(&star).unwrap().mu, 3f64.sqrt(), 1e-12));

        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        assert!(close(spectral_radius(&paw).unwrap().mu, 2.170086486626033, 1e-12));
    }

    #[test]
    fn snk_spectra_match_closed_form() {
        assert!(close(mu_snk_closed_form(5, 2).unwrap(), 3.0, 1e-15));
        for (n, k) in [(5, 2), (7, 2), (10, 2), (9, 3), (13, 4), (40, 2)] {
            let g = construct_snk(n, k).unwrap();
            let mu = spectral_radius(&g).unwrap().mu;
            assert!(close(mu, mu_snk_closed_form(n, k).unwrap(), 1e-9), "n={n} k={k}");
        }
        assert!(close(spectral_radius(&construct_snk(10, 2).unwrap()).unwrap().mu,
                      4.531128874149275, 1e-12));
        assert!(mu_snk_closed_form(5, 5).is_err());
        assert!(mu_snk_closed_form(5, 0).is_err());
    }

    #[test]
    fn disconnected_takes_max_component() {
        // K3 + K2: mu = 2 from the first component
        let g = disjoint_union(&Graph::complete(3).unwrap(), &Graph::complete(2).unwrap()).unwrap();
        let r = spectral_radius(&g).unwrap();
        assert!(close(r.mu, 2.0, 1e-12));
        assert!(r.perron[3] == 0.0 && r.perron[4] == 0.0);
        let support: f64 = r.perron.iter().sum();
        assert!(close(support, 1.0, 1e-12));

        // ties go to the lowest component: K2 + K2
        let g = disjoint_union(&Graph::complete(2).unwrap(), &Graph::complete(2).unwrap()).unwrap();
        let r = spectral_radius(&g).unwrap();
        assert!(r.perron[0] > 0.0 && r.perron[2] == 0.0);

        let e4 = Graph::empty(4).unwrap();
        let r = spectral_radius(&e4).unwrap();
        assert_eq!(r.mu, 0.0);
        assert_eq!(r.perron, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn f32_instantiation() {
        let opts = PowerOpts {
            rayleigh_tol: 1e-6f32,
            residual_tol: 1e-4f32,
            max_iterations: 50_000,
            stable_window: 3,
        };
        let g = construct_snk(10, 2).unwrap();
        let r = spectral_radius_in(&g, &opts).unwrap();
        assert!((r.mu - 4.531_129_f32).abs() <= 1e-3);
    }

    #[test]
    fn column_sums_vanish_on_snk() {
        for (n, k) in [(5, 2), (8, 2), (9, 3), (12, 4)] {
            let g = construct_snk(n, k).unwrap();
            for u in 0..n {
                assert_eq!(column_sum_combinatorial(&g, u, k).unwrap(), 0, "n={n} k={k} u={u}");
            }
        }
        // and they agree with the certificate's exact sums by construction
        let g = construct_snk(7, 2).unwrap();
        let cert = quotient_certificate(&g, 1.0, 10.0, 0.0, None).unwrap();
        match cert.column_sums {
            ColumnSums::Exact(ref sums) => {
                for (u, &s) in sums.iter().enumerate() {
                    assert_eq!(s, column_sum_combinatorial(&g, u, 2).unwrap());
                }
            }
            _ => panic!("integral coefficients must take the exact path"),
        }
        assert_eq!(cert.verdict, Verdict::EqualityCandidate);
        assert!(close(cert.mu_prime, mu_snk_closed_form(7, 2).unwrap(), 1e-15));
    }

    #[test]
    fn half_integral_column_sums() {
        let g = construct_snk_plus(7, 2).unwrap();
        // doubled arithmetic keeps halves exact
        for u in 0..7 {
            let s = column_sum_combinatorial_g(&g, u, 2).unwrap();
            assert_eq!(s * 2.0, (s * 2.0).round());
        }
    }

    #[test]
    fn certificates() {
        // C5 with a=1, b=2: every column sums to zero, root is 2 = mu(C5)
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cert = quotient_certificate(&c5, 1.0, 2.0, 0.0, None).unwrap();
        assert_eq!(cert.verdict, Verdict::EqualityCandidate);
        assert!(close(cert.mu_prime, 2.0, 1e-15));

        // P3 with the same polynomial: strict slack
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cert = quotient_certificate(&p3, 1.0, 2.0, 0.0, None).unwrap();
        assert_eq!(cert.verdict, Verdict::BoundHolds);
        assert!(spectral_radius(&p3).unwrap().mu <= cert.mu_prime);

        // undersized polynomial on K4: positive sums prove nothing
        let cert = quotient_certificate(&Graph::complete(4).unwrap(), 1.0, 1.0, 0.0, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);

        // non-integral coefficients take the real-valued path
        let cert = quotient_certificate(&p3, 0.5, 2.5, 0.0, None).unwrap();
        assert!(matches!(cert.column_sums, ColumnSums::Real(_)));

        // c != 0 demands mu_ref, and the shift folds into the bound
        assert!(quotient_certificate(&p3, 1.0, 2.0, 0.5, None).is_err());
        let cert = quotient_certificate(&p3, 1.0, 3.0, 0.5, Some(2.0)).unwrap();
        assert!(close(cert.mu_prime, 1.5 / 2.0 + (2.0 + 1.5 * 1.5 / 4.0f64).sqrt(), 1e-15));

        // irreducibility is required
        let split = disjoint_union(&p3, &p3).unwrap();
        assert!(matches!(
            quotient_certificate(&split, 1.0, 2.0, 0.0, None),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn merged_blocks_beat_split_blocks() {
        let out = lemma8_compare(None, 3, 3).unwrap();
        assert!(out.strict && !out.indeterminate);
        assert!(out.mu_merged > out.mu_split);
        let k3 = Graph::complete(3).unwrap();
        assert!(lemma8_compare(Some(&k3), 3, 4).unwrap().strict);
        assert!(lemma8_compare(None, 2, 3).is_err());
    }

    #[test]
    fn perron_is_positive_and_normalized() {
        let g = construct_snk_plus(9, 3).unwrap();
        let r = spectral_radius(&g).unwrap();
        assert!(r.perron.iter().all(|&x| x > 0.0));
        assert!(close(r.perron.iter().sum::<f64>(), 1.0, 1e-12));
        for (v, &row) in g.adjacency_rows().iter().enumerate() {
            let ax: f64 = set_bits(row).map(|w| r.perron[w]).sum();
            assert!(close(ax, r.mu * r.perron[v], 1e-9));
        }
        let _ = full_set(9);
    }
}
