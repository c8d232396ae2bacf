//! Oracles and generators shared by the integration tests and the
//! acceptance harness. Everything here is deliberately naive.

#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use rankflip_core::generate::gen_random;
use rankflip_core::ranking::Rank;
use rankflip_core::{Graph, Vertex, VertexSet};

/// Graphs on `1..=max_n` vertices with every pair present independently.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// A seeded mixed-density corpus of small random graphs.
pub fn random_corpus(count: u64, max_n: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let n = 1 + (i as usize * 7 + seed as usize) % max_n;
            let p = 0.1 + 0.8 * ((i * 37 + seed) % 100) as f64 / 100.0;
            gen_random(n, p, seed * 1_000_003 + i)
        })
        .collect()
}

/// BFS distances avoiding `removed`.
pub fn distances(g: &Graph, v: Vertex, removed: &VertexSet) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w].is_none() && !removed.contains(&w) {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All subsets of `items` with at most `k` elements.
pub fn subsets_upto(items: &[Vertex], k: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::new()];
    for &x in items {
        let extended: Vec<VertexSet> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| {
                let mut t = s.clone();
                t.insert(x);
                t
            })
            .collect();
        out.extend(extended);
    }
    out
}

/// The rank as a fixed point: `rank(v)` is the least `i` such that some set
/// of at most `m` other vertices cuts `v` off, within distance `r`, from every
/// vertex of rank `>= i`. Computed by decreasing iteration from all-infinite
/// over every candidate set, with no pruning.
pub fn declarative_ranks(g: &Graph, r: usize, m: usize) -> Vec<Rank> {
    let n = g.n();
    let cuts: Vec<Vec<VertexSet>> = (0..n)
        .map(|v| {
            let others: Vec<Vertex> = (0..n).filter(|&u| u != v).collect();
            subsets_upto(&others, m)
        })
        .collect();
    let mut rank = vec![Rank::Infinite; n];
    loop {
        let next: Vec<Rank> = (0..n)
            .map(|v| {
                cuts[v]
                    .iter()
                    .map(|s| {
                        let d = distances(g, v, s);
                        let worst = (0..n)
                            .filter(|&u| u != v && d[u].is_some_and(|x| x <= r))
                            .map(|u| rank[u])
                            .max()
                            .unwrap_or(Rank::Finite(0));
                        match worst {
                            Rank::Finite(i) => Rank::Finite(i + 1),
                            Rank::Infinite => Rank::Infinite,
                        }
                    })
                    .min()
                    .unwrap()
            })
            .collect();
        if next == rank {
            return rank;
        }
        rank = next;
    }
}

/// Uniformly random permutation of `0..n` from a seed.
pub fn permutation(n: usize, seed: u64) -> Vec<Vertex> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

/// Same-component pairs `(u, v)` of `NT_k(g)` with symdiff above `bound`.
pub fn far_pairs(g: &Graph, k: usize, bound: u64) -> Vec<(Vertex, Vertex)> {
    let view = rankflip_core::neartwin::neartwin_view(g, k);
    let mut out = Vec::new();
    for comp in &view.components {
        for (i, &u) in comp.iter().enumerate() {
            for &v in &comp[i + 1..] {
                if rankflip_core::neartwin::symdiff(g, u, v).unwrap() as u64 > bound {
                    out.push((u, v));
                }
            }
        }
    }
    out
}

/// Runs the extraction on the `NT_k` path joining `u` and `v`, oriented so
/// that the last vertex sees more of the difference, with `c = t + 1`.
pub fn extract_between(
    g: &Graph,
    k: usize,
    t: usize,
    u: Vertex,
    v: Vertex,
) -> Result<rankflip_core::neartwin::HalfgraphExtraction, rankflip_core::neartwin::ExtractFailure> {
    let view = rankflip_core::neartwin::neartwin_view(g, k);
    let mut path = view.path(u, v).expect("same component");
    let nu: VertexSet = g.neighbors(u).iter().copied().collect();
    let nv: VertexSet = g.neighbors(v).iter().copied().collect();
    if nv.difference(&nu).count() < nu.difference(&nv).count() {
        path.reverse();
    }
    rankflip_core::neartwin::extract_halfgraph(g, &path, k, t, t as u64 + 1)
}

/// Replaces each vertex of `base` by `size` copies (independent sets, or
/// cliques when `cliques` is set), joins copies of adjacent vertices
/// completely, then toggles `noise` random vertex pairs.
pub fn blowup(base: &Graph, size: usize, cliques: bool, noise: usize, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let n = base.n() * size;
    let mut adj: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let (a, b) = (u / size, v / size);
                    u < v && if a == b { cliques } else { base.has_edge(a, b) }
                })
                .collect()
        })
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..noise {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u < v {
            adj[u][v] = !adj[u][v];
        }
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.filter(|&(u, v)| adj[u][v]).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Mixed corpus for sparsifier tests: random graphs of up to `max_n`
/// vertices, the structured families, and noisy blow-ups that produce heavy
/// parts. Exactly `count` graphs.
pub fn sparsify_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    use rankflip_core::generate::*;
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let s = seed.wrapping_mul(0x9e37_79b9).wrapping_add(i);
        let small = 1 + (i as usize % 20);
        let g = match i % 8 {
            0 => gen_random(1 + (s as usize % max_n), 0.02 + (s % 50) as f64 / 60.0, s),
            1 => complete(small + 2),
            2 => complete_bipartite(small, 1 + (s as usize % 20)),
            3 => cycle(small + 3),
            4 => gen_tree(1 + (i as usize % 3), 1 + (s as usize % 4)),
            5 => gen_halfgraph(small),
            _ => {
                let base = gen_random(2 + (s as usize % 5), 0.5, s);
                let size = (6 + (s as usize % 10)).min(max_n / base.n()).max(1);
                blowup(&base, size, s.is_multiple_of(3), (s as usize) % 6, s)
            }
        };
        if g.n() <= max_n {
            out.push(g);
        }
        i += 1;
    }
    out
}
