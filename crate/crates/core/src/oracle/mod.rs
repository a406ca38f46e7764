//! Explicit graphs and brute-force counts used to check the solvers.

mod graphs;

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use graphs::{
    build_graph, cycle, hoffman_singleton, hoffman_singleton_edge_deleted, hypercube, kneser, path, rook, GRAPH_NAMES,
};

use crate::drg::{IntersectionArray, ParameterTable};
use crate::triples::{cell_index, TripleConfig, TripleError, TripleFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("unknown graph {0:?}")]
    UnknownGraph(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("not distance-regular: {0}")]
    NotDrg(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

/// Simple undirected connected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    name: String,
    adj: Vec<Vec<usize>>,
}

impl ExplicitGraph {
    pub fn new(name: &str, n: usize, edges: &[(usize, usize)]) -> Result<Self, OracleError> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(OracleError::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(OracleError::InvalidGraph(format!("loop at {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let g = ExplicitGraph { name: name.to_string(), adj };
        if n == 0 || g.bfs(0).iter().any(|&x| x == u8::MAX) {
            return Err(OracleError::Disconnected);
        }
        Ok(g)
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    fn bfs(&self, s: usize) -> Vec<u8> {
        let mut dist = vec![u8::MAX; self.order()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u8::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distances(&self) -> Distances {
        let n = self.order();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(self.bfs(s));
        }
        Distances { n, d }
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = None::<usize>;
        for s in 0..self.order() {
            let mut dist = vec![usize::MAX; self.order()];
            let mut parent = vec![usize::MAX; self.order()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// All-pairs distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    n: usize,
    d: Vec<u8>,
}

impl Distances {
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.d[x * self.n + y] as usize
    }

    pub fn diameter(&self) -> usize {
        self.d.iter().copied().max().unwrap_or(0) as usize
    }

    /// Vertices at distance `i` from `x`, ascending.
    pub fn layer(&self, x: usize, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.get(x, y) == i).collect()
    }
}

/// Counts `p^h_ij` over every ordered pair and checks they depend only on `h`.
pub fn brute_force_p_table(g: &ExplicitGraph) -> Result<ParameterTable, OracleError> {
    let dist = g.distances();
    brute_force_p_table_with(g, &dist)
}

pub fn brute_force_p_table_with(g: &ExplicitGraph, dist: &Distances) -> Result<ParameterTable, OracleError> {
    let n = g.order();
    let d = dist.diameter();
    let mut p: Vec<Option<Vec<Vec<u64>>>> = vec![None; d + 1];
    for x in 0..n {
        for y in 0..n {
            let h = dist.get(x, y);
            let mut counts = vec![vec![0u64; d + 1]; d + 1];
            for z in 0..n {
                counts[dist.get(x, z)][dist.get(y, z)] += 1;
            }
            match &p[h] {
                None => p[h] = Some(counts),
                Some(seen) if *seen != counts => {
                    return Err(OracleError::NotDrg(format!("pairs at distance {h} have different counts")));
                }
                Some(_) => {}
            }
        }
    }
    let p: Vec<Vec<Vec<u64>>> = p.into_iter().map(|x| x.expect("every distance occurs")).collect();
    let k = (0..=d).map(|i| p[0][i][i]).collect();
    Ok(ParameterTable { v: n as u64, k, p })
}

/// `b_i = p^i_{1,i+1}`, `c_i = p^i_{1,i-1}`.
pub fn intersection_array_of(pt: &ParameterTable) -> Result<IntersectionArray, OracleError> {
    let d = pt.diameter();
    let b = (0..d).map(|i| pt.p(i, 1, i + 1)).collect();
    let c = (1..=d).map(|i| pt.p(i, 1, i - 1)).collect();
    IntersectionArray::new(b, c).map_err(|e| OracleError::NotDrg(e.to_string()))
}

/// Counts of `x` by `(d(u,x), d(v,x), d(w,x))`, including zero indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleCounts {
    pub d: usize,
    counts: Vec<u64>,
}

impl TripleCounts {
    pub fn get(&self, i: usize, j: usize, h: usize) -> u64 {
        let m = self.d + 1;
        self.counts[(i * m + j) * m + h]
    }

    /// Cells with all indices in `1..=d`, in family order.
    pub fn inner(&self) -> Vec<i64> {
        let d = self.d;
        let mut out = vec![0; d * d * d];
        for i in 1..=d {
            for j in 1..=d {
                for h in 1..=d {
                    out[cell_index(d, i, j, h)] = self.get(i, j, h) as i64;
                }
            }
        }
        out
    }
}

pub fn brute_force_triples(dist: &Distances, u: usize, v: usize, w: usize) -> TripleCounts {
    let d = dist.diameter();
    let m = d + 1;
    let mut counts = vec![0u64; m * m * m];
    for x in 0..dist.n {
        let (i, j, h) = (dist.get(u, x), dist.get(v, x), dist.get(w, x));
        counts[(i * m + j) * m + h] += 1;
    }
    TripleCounts { d, counts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Check every triple when the graph has at most this many vertices.
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { exhaustive_limit: 70, samples: 10_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub graph: String,
    pub config: TripleConfig,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub triples_checked: usize,
    pub distinct_tables: usize,
    pub violation_count: usize,
    /// First few violating triples `(u, v, w)`.
    pub violations: Vec<[usize; 3]>,
}

/// Ordered triples `(u, v, w)` realizing the configuration, all of them or
/// a seeded uniform sample.
pub fn realizing_triples(dist: &Distances, cfg: TripleConfig, opts: &CheckOptions) -> (Vec<[usize; 3]>, bool) {
    let n = dist.n;
    if n <= opts.exhaustive_limit {
        let mut out = Vec::new();
        for u in 0..n {
            for v in dist.layer(u, cfg.duv) {
                for w in dist.layer(u, cfg.duw) {
                    if dist.get(v, w) == cfg.dvw {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        return (out, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    // the number of completions is the same for every (u, v), so this is uniform
    while out.len() < opts.samples {
        let u = rng.gen_range(0..n);
        let vs = dist.layer(u, cfg.duv);
        if vs.is_empty() {
            break;
        }
        let v = vs[rng.gen_range(0..vs.len())];
        let ws: Vec<usize> = (0..n).filter(|&w| dist.get(u, w) == cfg.duw && dist.get(v, w) == cfg.dvw).collect();
        if ws.is_empty() {
            break;
        }
        out.push([u, v, ws[rng.gen_range(0..ws.len())]]);
    }
    (out, false)
}

/// Checks that every realized triple table is an enumerated point of `fam`.
pub fn check_against_family(
    g: &ExplicitGraph,
    dist: &Distances,
    fam: &TripleFamily,
    opts: &CheckOptions,
) -> Result<OracleReport, OracleError> {
    let points: BTreeSet<Vec<i64>> = fam.points()?.into_iter().collect();
    let (triples, exhaustive) = realizing_triples(dist, fam.config, opts);
    let mut seen = BTreeSet::new();
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for &[u, v, w] in &triples {
        let table = brute_force_triples(dist, u, v, w).inner();
        if !points.contains(&table) {
            violation_count += 1;
            if violations.len() < 20 {
                violations.push([u, v, w]);
            }
        }
        seen.insert(table);
    }
    Ok(OracleReport {
        graph: g.name().to_string(),
        config: fam.config,
        exhaustive,
        seed: (!exhaustive).then_some(opts.seed),
        triples_checked: triples.len(),
        distinct_tables: seen.len(),
        violation_count,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_have_expected_shape() {
        let p = build_graph("petersen").unwrap();
        assert_eq!((p.order(), p.degrees(), p.girth()), (10, BTreeSet::from([3]), Some(5)));
        let c = build_graph("cube3").unwrap();
        assert_eq!((c.order(), c.distances().diameter(), c.girth()), (8, 3, Some(4)));
        let hs = build_graph("hoffman_singleton").unwrap();
        assert_eq!((hs.order(), hs.degrees(), hs.girth()), (50, BTreeSet::from([7]), Some(5)));
        let r = build_graph("rook(56)").unwrap();
        assert_eq!((r.order(), r.degrees()), (3136, BTreeSet::from([110])));
        assert_eq!(build_graph("hoffman_singleton_edge_deleted").unwrap().order(), 36);
        assert!(matches!(build_graph("moore57"), Err(OracleError::UnknownGraph(_))));
    }

    #[test]
    fn path_is_not_drg() {
        let g = build_graph("path(4)").unwrap();
        assert!(matches!(brute_force_p_table(&g), Err(OracleError::NotDrg(_))));
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(ExplicitGraph::new("x", 3, &[(0, 1)]), Err(OracleError::Disconnected));
        assert!(ExplicitGraph::new("x", 2, &[(0, 0)]).is_err());
    }

    #[test]
    fn boundary_counts() {
        let g = build_graph("petersen").unwrap();
        let dist = g.distances();
        let (u, v) = (0, g.neighbors(0)[0]);
        let w = dist.layer(u, 1).into_iter().find(|&w| w != v).unwrap();
        let t = brute_force_triples(&dist, u, v, w);
        assert_eq!(t.get(0, 1, 1), 1);
        assert_eq!(t.get(1, 0, 2), 1);
        assert_eq!(t.get(1, 2, 0), 1);
        let total: u64 = (0..=2).flat_map(|i| (0..=2).flat_map(move |j| (0..=2).map(move |h| (i, j, h)))).map(|(i, j, h)| t.get(i, j, h)).sum();
        assert_eq!(total, 10);
    }
}
