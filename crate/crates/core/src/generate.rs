//! Graph generators with documented id layouts.
//!
//! * `gen_tree(d, m)`: root is 0, remaining vertices in BFS order, children of
//!   a vertex are consecutive.
//! * `gen_halfgraph(t)`: `u_i` is `i - 1`, `w_j` is `t + j - 1`; predicates `U`
//!   and `W` mark the two sides.
//! * `subdivide`: original ids are kept, new internal vertices are appended in
//!   edge order (`(u, v)` with `u < v`, lexicographic), each path listed from `u`
//!   towards `v`.
//! * `gen_random`: the `gnp-chacha8-v1` scheme. A `ChaCha8Rng` seeded with
//!   `seed_from_u64(seed)` draws one `f64` in `[0, 1)` per pair `u < v` in
//!   lexicographic order; the edge is present iff the draw is `< p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Name of the random-graph scheme used by [`gen_random`].
pub const RANDOM_SCHEME: &str = "gnp-chacha8-v1";

/// Complete `m`-ary tree of depth `d` (`T_{d,m}`).
pub fn gen_tree(d: usize, m: usize) -> Graph {
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next_id = 1;
    for _ in 0..d {
        let mut next_level = Vec::with_capacity(level.len() * m);
        for &parent in &level {
            for _ in 0..m {
                edges.push((parent, next_id));
                next_level.push(next_id);
                next_id += 1;
            }
        }
        level = next_level;
    }
    Graph::from_edges(next_id, edges).expect("tree edges are valid")
}

/// Replaces edge number `i` (in `g.edges()` order) by a path with `counts[i]`
/// fresh internal vertices.
pub fn subdivide(g: &Graph, counts: &[usize]) -> Result<Graph> {
    let edges: Vec<_> = g.edges().collect();
    if counts.len() != edges.len() {
        return Err(Error::Precondition(format!(
            "{} subdivision counts for {} edges",
            counts.len(),
            edges.len()
        )));
    }
    let total: usize = g.n() + counts.iter().sum::<usize>();
    let mut new_edges = Vec::with_capacity(edges.len() + counts.iter().sum::<usize>());
    let mut next_id = g.n();
    for (&(u, v), &c) in edges.iter().zip(counts) {
        let mut prev = u;
        for _ in 0..c {
            new_edges.push((prev, next_id));
            prev = next_id;
            next_id += 1;
        }
        new_edges.push((prev, v));
    }
    let mut out = Graph::from_edges(total, new_edges)?;
    for (name, set) in g.predicates() {
        out.set_predicate(name, set.clone())?;
    }
    Ok(out)
}

/// Subdivides every edge exactly `c` times.
pub fn subdivide_uniform(g: &Graph, c: usize) -> Graph {
    subdivide(g, &vec![c; g.edge_count()]).expect("count vector matches edges")
}

/// Half-graph of order `t`: `u_i ~ w_j` iff `i <= j`, no other edges.
pub fn gen_halfgraph(t: usize) -> Graph {
    let edges = (0..t).flat_map(|i| (i..t).map(move |j| (i, t + j)));
    let mut g = Graph::from_edges(2 * t, edges).expect("half-graph edges are valid");
    g.set_predicate("U", (0..t).collect()).unwrap();
    g.set_predicate("W", (t..2 * t).collect()).unwrap();
    g
}

/// Erdős–Rényi `G(n, p)` under the [`RANDOM_SCHEME`] scheme.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    // pushes happen in increasing order for both endpoints
    Graph::from_sorted_adjacency(adj)
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle `C_n` for `n >= 3`; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0).unwrap();
    }
    g
}

/// Star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}
