//! Simple undirected graphs, their Laplacians, a full symmetric
//! eigendecomposition built from the crate's own rotation kernels, and the
//! approximate graph Fourier transform comparison.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::factorize::{
    factorize_elimination, factorize_greedy, factorize_l1, jacobi_truncated, off_diagonal_sum,
    require_symmetric, Algorithm, FactorizeConfig, FactorizeTrace,
};
use crate::matrix::{DenseMatrix, GivensRotation};
use crate::metrics::symnorm;
use crate::record::{Experiment, ExperimentRecord};
use crate::rng::rng_from_seed;
use rand::Rng;

/// A simple undirected graph: no self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            let id = u.max(v);
            if id >= n {
                return Err(Error::IndexOutOfRange { index: id, dim: n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { n, edges: set })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }
}

/// The unnormalized Laplacian `L = D - A`: symmetric, positive
/// semi-definite, zero row sums.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut l = DenseMatrix::zeros(n);
    for (u, v) in g.edges() {
        l.set(u, v, -1.0);
        l.set(v, u, -1.0);
        l.set(u, u, l.get(u, u) + 1.0);
        l.set(v, v, l.get(v, v) + 1.0);
    }
    l
}

/// Preferential-attachment random graph: `n0` initially unconnected
/// vertices, then one vertex at a time, each wired to `m` distinct existing
/// vertices chosen with probability proportional to degree (uniformly while
/// all degrees are still zero).
pub fn barabasi_albert(n: usize, m: usize, n0: usize, rng_seed: u64) -> Result<Graph> {
    if m < 1 || n0 < m || n <= n0 {
        return Err(Error::invalid(format!(
            "infeasible parameters: need n > n0 >= m >= 1, got n={n}, n0={n0}, m={m}"
        )));
    }
    let mut rng = rng_from_seed(rng_seed);
    let mut degrees = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut total_degree = 0usize;

    for vertex in n0..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        let mut chosen_degree = 0usize;
        for _ in 0..m {
            let pool = total_degree - chosen_degree;
            let target = if pool == 0 {
                // Degree-blind phase: uniform over unchosen existing vertices.
                let mut pick = rng.gen_range(0..vertex - chosen.len());
                let mut target = usize::MAX;
                for candidate in 0..vertex {
                    if chosen.contains(&candidate) {
                        continue;
                    }
                    if pick == 0 {
                        target = candidate;
                        break;
                    }
                    pick -= 1;
                }
                target
            } else {
                let mut ticket = rng.gen_range(0..pool);
                let mut target = usize::MAX;
                for (candidate, &w) in degrees.iter().enumerate().take(vertex) {
                    if chosen.contains(&candidate) {
                        continue;
                    }
                    if ticket < w {
                        target = candidate;
                        break;
                    }
                    ticket -= w;
                }
                target
            };
            debug_assert!(target != usize::MAX);
            chosen_degree += degrees[target];
            chosen.push(target);
        }
        for &target in &chosen {
            edges.push((vertex, target));
            degrees[vertex] += 1;
            degrees[target] += 1;
            total_degree += 2;
        }
    }
    Graph::new(n, edges)
}

/// Counters from parsing an edge-list file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeListStats {
    pub self_loops_skipped: usize,
    pub duplicates_skipped: usize,
}

/// Reads a whitespace-separated edge list: one `u v` pair per line,
/// `#`-prefixed comment lines ignored, optional `n=<int>` header, 0-based
/// vertex ids. Without a header the vertex count is `1 + max id`. Reversed
/// duplicates collapse to one edge; self-loops are skipped and counted.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<(Graph, EdgeListStats)> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(std::io::BufReader::new(file))
}

pub fn parse_edge_list(reader: impl BufRead) -> Result<(Graph, EdgeListStats)> {
    let mut stats = EdgeListStats::default();
    let mut declared_n: Option<usize> = None;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut max_id = 0usize;
    let mut any_vertex = false;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("n=") {
            declared_n = Some(rest.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex count '{rest}'"),
            })?);
            continue;
        }
        let mut tokens = text.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two vertex ids, got '{text}'"),
                })
            }
        };
        let parse = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex id '{tok}'"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        any_vertex = true;
        max_id = max_id.max(u).max(v);
        if u == v {
            stats.self_loops_skipped += 1;
            continue;
        }
        if !edges.insert((u.min(v), u.max(v))) {
            stats.duplicates_skipped += 1;
        }
    }

    let n = declared_n.unwrap_or(if any_vertex { max_id + 1 } else { 0 });
    if any_vertex && max_id >= n {
        return Err(Error::IndexOutOfRange {
            index: max_id,
            dim: n,
        });
    }
    Ok((Graph { n, edges }, stats))
}

/// Eigenvalues in ascending order with the orthogonal eigenbasis as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: DenseMatrix,
}

const MAX_SWEEPS: usize = 64;

/// Full symmetric eigendecomposition by cyclic-by-row two-sided rotation
/// sweeps, run until the off-diagonal mass falls below `1e-18 ||L||_F^2`.
///
/// Eigenvector signs follow a fixed convention (largest-magnitude entry
/// positive, earliest index on ties) so repeated runs agree exactly.
pub fn eigendecompose(l: &DenseMatrix) -> Result<EigenDecomposition> {
    require_symmetric(l)?;
    let d = l.dim();
    let mut a = l.clone();
    let mut basis = DenseMatrix::identity(d);
    let fro = l.frobenius_norm();
    let threshold = 1e-18 * fro * fro;
    let skip_tol = if d > 0 {
        (threshold / (d * d) as f64).sqrt()
    } else {
        0.0
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sum(&a) <= threshold {
            converged = true;
            break;
        }
        for i in 0..d.saturating_sub(1) {
            for j in (i + 1)..d {
                if a.get(i, j).abs() <= skip_tol {
                    continue;
                }
                let g = GivensRotation::new(i, j, crate::factorize::jacobi::jacobi_angle(&a, i, j));
                crate::factorize::jacobi::jacobi_rotate(&mut a, &g);
                basis.rotate_cols(&g);
            }
        }
    }
    if !converged && off_diagonal_sum(&a) > threshold {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| {
        a.get(x, x)
            .partial_cmp(&a.get(y, y))
            .expect("finite eigenvalues")
            .then(x.cmp(&y))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a.get(k, k)).collect();
    let mut sorted = DenseMatrix::zeros(d);
    for (col, &src) in order.iter().enumerate() {
        let mut lead = 0usize;
        for r in 1..d {
            if basis.get(r, src).abs() > basis.get(lead, src).abs() {
                lead = r;
            }
        }
        let flip = if basis.get(lead, src) < 0.0 {
            -1.0
        } else {
            1.0
        };
        for r in 0..d {
            sorted.set(r, col, flip * basis.get(r, src));
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        basis: sorted,
    })
}

/// Compares factorization algorithms on the Fourier basis of a graph at a
/// fixed factor budget. The rotation-based diagonalization runs on the
/// Laplacian directly; the others factorize the eigenbasis. The reported
/// error is `symnorm(U, approximation)/sqrt(n)` in all cases.
pub fn gft_experiment(
    g: &Graph,
    budget: usize,
    algorithms: &[Algorithm],
    seed: u64,
    graph_label: &str,
) -> Result<Vec<ExperimentRecord>> {
    let n = g.n();
    let l = laplacian(g);
    let eig = eigendecompose(&l)?;
    let u = &eig.basis;
    let sqrt_n = (n as f64).max(1.0).sqrt();

    let mut rows = Vec::with_capacity(algorithms.len());
    for &algorithm in algorithms {
        let cfg = FactorizeConfig::new(algorithm, budget, 1e-9);
        let trace: FactorizeTrace = match algorithm {
            Algorithm::TruncatedJacobi => jacobi_truncated(&l, &cfg)?,
            Algorithm::Elimination => {
                let full = factorize_elimination(u)?;
                FactorizeTrace {
                    sequence: full.sequence.prefix(budget),
                    objective_history: Vec::new(),
                    error_checkpoints: Vec::new(),
                    stop: full.stop,
                }
            }
            Algorithm::GreedyFrobenius => factorize_greedy(u, &cfg)?,
            Algorithm::L1CoordinateDescent => factorize_l1(u, &cfg)?,
        };
        let (error, _) = symnorm(u, &trace.sequence.materialize())?;
        rows.push(ExperimentRecord {
            experiment: Experiment::Gft,
            d: n,
            k_or_graph: graph_label.to_string(),
            algorithm: algorithm.name().to_string(),
            n_factors: trace.sequence.len(),
            error: error / sqrt_n,
            seed,
            wall_time_ms: 0,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn path_graph(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|k| (k, k + 1))).unwrap()
    }

    fn complete_graph(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = rng_from_seed(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    fn connected_components(g: &Graph) -> usize {
        // Union-find oracle.
        let mut parent: Vec<usize> = (0..g.n()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (u, v) in g.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..g.n()).filter(|&x| find(&mut parent, x) == x).count()
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        let g = Graph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn laplacian_of_textbook_graphs() {
        let p3 = laplacian(&path_graph(3));
        let expected = DenseMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p3, expected);

        let empty = laplacian(&Graph::new(4, []).unwrap());
        assert_eq!(empty, DenseMatrix::zeros(4));

        // Complete graph on 4 vertices: L = 4I - J, spectrum {0, 4, 4, 4}.
        let k4 = laplacian(&complete_graph(4));
        let eig = eigendecompose(&k4).unwrap();
        let expected = [0.0, 4.0, 4.0, 4.0];
        for (got, want) in eig.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-10, "{:?}", eig.eigenvalues);
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero_and_diagonal_is_degree() {
        let g = random_graph(12, 0.3, 8);
        let l = laplacian(&g);
        for (r, &deg) in g.degrees().iter().enumerate() {
            let sum: f64 = l.row(r).iter().sum();
            assert!(sum.abs() < 1e-12);
            assert_eq!(l.get(r, r), deg as f64);
        }
    }

    #[test]
    fn eigendecompose_diagonal_input() {
        let mut m = DenseMatrix::zeros(3);
        m.set(0, 0, 3.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 2.0);
        let eig = eigendecompose(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
        // The basis is the permutation sending sorted positions to sources.
        let expected = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(eig.basis.sub(&expected).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn path_graph_spectrum_is_known() {
        let eig = eigendecompose(&laplacian(&path_graph(3))).unwrap();
        let expected = [0.0, 1.0, 3.0];
        for (got, want) in eig.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn eigendecomposition_invariants_on_random_graphs() {
        for seed in 0..20 {
            let g = random_graph(10, 0.35, 100 + seed);
            let l = laplacian(&g);
            let eig = eigendecompose(&l).unwrap();
            assert!(eig.basis.is_orthogonal(1e-8));
            // Reconstruction within relative tolerance.
            let mut lam = DenseMatrix::zeros(10);
            for k in 0..10 {
                lam.set(k, k, eig.eigenvalues[k]);
            }
            let rebuilt = eig
                .basis
                .matmul(&lam)
                .unwrap()
                .matmul(&eig.basis.transpose())
                .unwrap();
            let rel = rebuilt.sub(&l).unwrap().frobenius_norm();
            assert!(rel <= 1e-6 * l.frobenius_norm().max(1e-12), "seed {seed}");
            // Positive semi-definite spectrum.
            assert!(eig.eigenvalues[0] >= -1e-9, "seed {seed}");
            // Ascending order.
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
            // Kernel multiplicity equals the number of components.
            let zeros = eig.eigenvalues.iter().filter(|&&v| v < 1e-8).count();
            assert_eq!(zeros, connected_components(&g), "seed {seed}");
        }
    }

    #[test]
    fn connected_graph_kernel_vector_is_constant() {
        let g = path_graph(6);
        let eig = eigendecompose(&laplacian(&g)).unwrap();
        let zeros = eig.eigenvalues.iter().filter(|&&v| v < 1e-8).count();
        assert_eq!(zeros, 1);
        let expected = 1.0 / 6.0_f64.sqrt();
        for r in 0..6 {
            assert!((eig.basis.get(r, 0) - expected).abs() < 1e-8);
        }
    }

    #[test]
    fn forward_inverse_transform_round_trip() {
        let g = random_graph(9, 0.4, 33);
        let eig = eigendecompose(&laplacian(&g)).unwrap();
        let mut rng = rng_from_seed(4);
        let signal: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let spectral = eig.basis.transpose().mul_vec(&signal).unwrap();
        let back = eig.basis.mul_vec(&spectral).unwrap();
        for (a, b) in back.iter().zip(&signal) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn barabasi_albert_edge_counts_follow_the_attachment_schedule() {
        // Each arriving vertex adds exactly m edges: m (n - n0) total, which
        // for the n = 64 parameter rows lands near the quarter- and
        // half-dense targets.
        let quarter_target = 0.25 * (64.0 * 63.0 / 2.0);
        let half_target = 0.5 * (64.0 * 63.0 / 2.0);
        for seed in 0..3 {
            let g1 = barabasi_albert(64, 54, 54, seed).unwrap();
            let e1 = g1.edge_count() as f64;
            assert!(
                (e1 - quarter_target).abs() / quarter_target < 0.15,
                "m=54: {e1} vs {quarter_target}"
            );
            let g2 = barabasi_albert(64, 36, 36, seed).unwrap();
            let e2 = g2.edge_count() as f64;
            assert!(
                (e2 - half_target).abs() / half_target < 0.15,
                "m=36: {e2} vs {half_target}"
            );
        }
    }

    #[test]
    fn barabasi_albert_rejects_infeasible_parameters() {
        assert!(barabasi_albert(10, 0, 5, 0).is_err());
        assert!(barabasi_albert(10, 6, 5, 0).is_err());
        assert!(barabasi_albert(5, 2, 5, 0).is_err());
    }

    #[test]
    fn preferential_attachment_yields_heavy_tails() {
        for seed in 0..10 {
            let g = barabasi_albert(256, 2, 2, 500 + seed).unwrap();
            let mut deg = g.degrees();
            deg.sort_unstable();
            let median = deg[deg.len() / 2] as f64;
            let max = *deg.last().unwrap() as f64;
            assert!(
                max > 3.0 * median,
                "seed {seed}: max {max}, median {median}"
            );
        }
    }

    #[test]
    fn edge_list_parsing_cases() {
        let (g, stats) = parse_edge_list(Cursor::new("0 1\n1 2\n")).unwrap();
        assert_eq!(g, path_graph(3));
        assert_eq!(stats, EdgeListStats::default());

        let (g, stats) = parse_edge_list(Cursor::new("1 0\n0 1\n")).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(stats.duplicates_skipped, 1);

        let (g, stats) = parse_edge_list(Cursor::new("# comment\nn=5\n0 1\n3 3\n")).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(stats.self_loops_skipped, 1);

        assert!(parse_edge_list(Cursor::new("0 1 2\n")).is_err());
        assert!(parse_edge_list(Cursor::new("a b\n")).is_err());
        assert!(parse_edge_list(Cursor::new("n=2\n0 5\n")).is_err());
    }

    #[test]
    fn full_budget_elimination_recovers_the_basis_exactly() {
        let g = random_graph(8, 0.45, 21);
        let rows = gft_experiment(&g, 8 * 7 / 2, &[Algorithm::Elimination], 0, "random8").unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].error < 1e-8, "error {}", rows[0].error);
    }

    #[test]
    fn gft_experiment_runs_all_algorithms_on_a_complete_graph() {
        let g = complete_graph(8);
        let budget = 24; // 8 * log2(8)
        let rows = gft_experiment(
            &g,
            budget,
            &[
                Algorithm::L1CoordinateDescent,
                Algorithm::GreedyFrobenius,
                Algorithm::TruncatedJacobi,
            ],
            0,
            "k8",
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert!(row.n_factors <= budget);
            assert!(row.error.is_finite() && row.error >= 0.0);
        }
        // The massively degenerate spectrum makes this basis easy: every
        // algorithm lands well below the generic-matrix error level (~1.3
        // for Haar pairs at this size).
        for row in &rows {
            assert!(row.error < 0.8, "{}: {}", row.algorithm, row.error);
        }
    }
}
