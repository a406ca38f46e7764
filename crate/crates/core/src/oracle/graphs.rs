use super::{ExplicitGraph, OracleError};

/// Names accepted by [`build_graph`].
pub const GRAPH_NAMES: &[&str] = &[
    "pentagon",
    "petersen",
    "cube3",
    "odd4",
    "hoffman_singleton",
    "hoffman_singleton_edge_deleted",
    "rook(n)",
    "path(n)",
];

fn subsets(n: usize, r: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == r).collect()
}

/// Kneser graph `K(n, r)`: `r`-subsets, adjacent when disjoint.
pub fn kneser(n: usize, r: usize) -> Result<ExplicitGraph, OracleError> {
    let sets = subsets(n, r);
    let mut edges = Vec::new();
    for (a, x) in sets.iter().enumerate() {
        for (b, y) in sets.iter().enumerate().skip(a + 1) {
            if x & y == 0 {
                edges.push((a, b));
            }
        }
    }
    ExplicitGraph::new(&format!("kneser({n},{r})"), sets.len(), &edges)
}

pub fn cycle(n: usize) -> Result<ExplicitGraph, OracleError> {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    ExplicitGraph::new(&format!("cycle({n})"), n, &edges)
}

pub fn path(n: usize) -> Result<ExplicitGraph, OracleError> {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    ExplicitGraph::new(&format!("path({n})"), n, &edges)
}

pub fn hypercube(dim: usize) -> Result<ExplicitGraph, OracleError> {
    let n = 1 << dim;
    let mut edges = Vec::new();
    for x in 0..n {
        for b in 0..dim {
            let y = x ^ (1 << b);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    ExplicitGraph::new(&format!("cube{dim}"), n, &edges)
}

/// `n x n` grid, adjacent when sharing a row or a column.
pub fn rook(n: usize) -> Result<ExplicitGraph, OracleError> {
    let id = |r: usize, c: usize| r * n + c;
    let mut edges = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for k in c + 1..n {
                edges.push((id(r, c), id(r, k)));
                edges.push((id(c, r), id(k, r)));
            }
        }
    }
    ExplicitGraph::new(&format!("rook({n})"), n * n, &edges)
}

/// Pentagons `P_h` and pentagrams `Q_i` on `Z_5`, with `P_h[j] ~ Q_i[h i + j]`.
pub fn hoffman_singleton() -> Result<ExplicitGraph, OracleError> {
    let p = |h: usize, j: usize| 5 * h + j;
    let q = |i: usize, j: usize| 25 + 5 * i + j;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, (j + 1) % 5)));
            edges.push((q(h, j), q(h, (j + 2) % 5)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    ExplicitGraph::new("hoffman_singleton", 50, &edges)
}

/// Hoffman-Singleton graph minus an edge and every neighbour of its ends:
/// 36 vertices, intersection array `{5,4,2;1,1,4}`.
pub fn hoffman_singleton_edge_deleted() -> Result<ExplicitGraph, OracleError> {
    let hs = hoffman_singleton()?;
    let (a, b) = (0, hs.neighbors(0)[0]);
    let mut removed = vec![false; hs.order()];
    for x in [a, b] {
        removed[x] = true;
        for &y in hs.neighbors(x) {
            removed[y] = true;
        }
    }
    let keep: Vec<usize> = (0..hs.order()).filter(|&x| !removed[x]).collect();
    let mut index = vec![usize::MAX; hs.order()];
    for (k, &x) in keep.iter().enumerate() {
        index[x] = k;
    }
    let mut edges = Vec::new();
    for &x in &keep {
        for &y in hs.neighbors(x) {
            if !removed[y] && x < y {
                edges.push((index[x], index[y]));
            }
        }
    }
    ExplicitGraph::new("hoffman_singleton_edge_deleted", keep.len(), &edges)
}

fn sized(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    inner.trim().parse().ok()
}

pub fn build_graph(name: &str) -> Result<ExplicitGraph, OracleError> {
    let name = name.trim();
    match name {
        "pentagon" => cycle(5).map(|g| g.renamed("pentagon")),
        "petersen" => kneser(5, 2).map(|g| g.renamed("petersen")),
        "cube3" => hypercube(3),
        "odd4" => kneser(7, 3).map(|g| g.renamed("odd4")),
        "hoffman_singleton" => hoffman_singleton(),
        "hoffman_singleton_edge_deleted" => hoffman_singleton_edge_deleted(),
        _ => {
            if let Some(n) = sized(name, "rook").filter(|&n| n >= 2) {
                rook(n)
            } else if let Some(n) = sized(name, "path").filter(|&n| n >= 2) {
                path(n)
            } else {
                Err(OracleError::UnknownGraph(name.to_string()))
            }
        }
    }
}
