//! Near-twins, the near-twin graph `NT_k(G)`, semi-induced half-graphs and
//! the constructive argument turning a long near-twin path into a half-graph.
//!
//! Neighbourhoods are open: `u` and `v` are `k`-near-twins when
//! `|N(u) Δ N(v)| <= k`. Twin leaves of a star have symmetric difference 0,
//! while two adjacent vertices always differ in at least each other.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::caps::{Budget, Caps};
use crate::error::{Error, Result};
use crate::graph::{check_vertex, Graph, Vertex, VertexSet};

fn symdiff_unchecked(g: &Graph, u: Vertex, v: Vertex) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// `|N(u) Δ N(v)|` for distinct `u`, `v`.
pub fn symdiff(g: &Graph, u: Vertex, v: Vertex) -> Result<usize> {
    check_vertex(u, g.n())?;
    check_vertex(v, g.n())?;
    if u == v {
        return Err(Error::Precondition("symdiff of a vertex with itself".into()));
    }
    Ok(symdiff_unchecked(g, u, v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearTwinView {
    pub k: usize,
    pub nt_graph: Graph,
    /// Connected components of `nt_graph`, sorted, ordered by smallest member.
    pub components: Vec<Vec<Vertex>>,
    pub component_of: Vec<usize>,
}

impl NearTwinView {
    /// A shortest path from `u` to `v` in `NT_k(G)`, if they share a component.
    pub fn path(&self, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
        shortest_path(&self.nt_graph, u, v)
    }
}

fn shortest_path(g: &Graph, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            let mut path = vec![v];
            let mut y = v;
            while y != u {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// The full near-twin graph, computed pair by pair.
pub fn neartwin_view(g: &Graph, k: usize) -> NearTwinView {
    let n = g.n();
    let lists: Vec<Vec<Vertex>> = (0..n)
        .into_par_iter()
        .map(|u| (u + 1..n).filter(|&v| symdiff_unchecked(g, u, v) <= k).collect())
        .collect();
    let edges = lists
        .into_iter()
        .enumerate()
        .flat_map(|(u, vs)| vs.into_iter().map(move |v| (u, v)));
    let nt_graph = Graph::from_edges(n, edges).expect("pairs are in range");
    let components = nt_graph.components();
    let mut component_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }
    NearTwinView {
        k,
        nt_graph,
        components,
        component_of,
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // keep the smaller id as representative
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Components of `NT_k(G)` without building the near-twin graph.
///
/// Two vertices without a common neighbour have symmetric difference
/// `deg(u) + deg(v)`. All vertices `u` with `deg(u) + d_min <= k` are therefore
/// near-twins of a minimum-degree vertex, and every other near-twin pair shares
/// a neighbour, so it is found by walking two steps from each vertex.
pub fn neartwin_components(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut sets = DisjointSets::new(n);
    if n == 0 {
        return Vec::new();
    }
    let x = g.vertices().min_by_key(|&v| (g.degree(v), v)).unwrap();
    let d_min = g.degree(x);
    if d_min <= k {
        for u in g.vertices() {
            if u != x && g.degree(u) + d_min <= k {
                sets.union(u, x);
            }
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0usize; n], Vec::new()),
            |(common, touched), u| {
                touched.clear();
                for &w in g.neighbors(u) {
                    for &v in g.neighbors(w) {
                        if v > u {
                            if common[v] == 0 {
                                touched.push(v);
                            }
                            common[v] += 1;
                        }
                    }
                }
                let mut out = Vec::new();
                for &v in touched.iter() {
                    if g.degree(u) + g.degree(v) - 2 * common[v] <= k {
                        out.push((u, v));
                    }
                    common[v] = 0;
                }
                out
            },
        )
        .flatten()
        .collect();
    for (u, v) in pairs {
        sets.union(u, v);
    }
    let mut by_root: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        let root = sets.find(v);
        by_root[root].push(v);
    }
    // roots are the smallest members, so this is ordered by smallest member
    by_root.into_iter().filter(|c| !c.is_empty()).collect()
}

/// `g(c, k, 1) = c`, `g(c, k, t) = g(c, k, t - 1) * (t - 1) + k + c`.
pub fn g_bound(c: u64, k: u64, t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::Precondition("g_bound needs t >= 1".into()));
    }
    let mut value = c;
    for s in 2..=t {
        value = value
            .checked_mul(s - 1)
            .and_then(|x| x.checked_add(k))
            .and_then(|x| x.checked_add(c))
            .ok_or(Error::Overflow("g_bound"))?;
    }
    Ok(value)
}

/// `h(k, t) = 2 * g(t + 1, k, t)`.
pub fn h_bound(k: u64, t: u64) -> Result<u64> {
    g_bound(t + 1, k, t)?.checked_mul(2).ok_or(Error::Overflow("h_bound"))
}

/// Distinct vertices `u_1..u_t`, `w_1..w_t` with `u_i ~ w_j` iff `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfgraphWitness {
    pub u: Vec<Vertex>,
    pub w: Vec<Vertex>,
}

impl HalfgraphWitness {
    pub fn order(&self) -> usize {
        self.u.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.u.len() != self.w.len() {
            return Err(Error::Invariant("sides of different length".into()));
        }
        let mut seen = VertexSet::new();
        for &x in self.u.iter().chain(&self.w) {
            check_vertex(x, g.n())?;
            if !seen.insert(x) {
                return Err(Error::Invariant(format!("vertex {x} repeated")));
            }
        }
        for (i, &a) in self.u.iter().enumerate() {
            for (j, &b) in self.w.iter().enumerate() {
                if g.has_edge(a, b) != (i <= j) {
                    return Err(Error::Invariant(format!("u_{} w_{} adjacency is wrong", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Backtracking search for a semi-induced half-graph of order `t`. Pairs
/// `(w_i, u_i)` are chosen in index order, candidates by decreasing degree.
pub fn find_halfgraph(g: &Graph, t: usize, caps: &Caps) -> Result<Option<HalfgraphWitness>> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = HalfSearch {
        g,
        t,
        order,
        u: Vec::with_capacity(t),
        w: Vec::with_capacity(t),
        used: vec![false; g.n()],
        budget: Budget::new(caps.nodes, "half-graph search"),
    };
    Ok(if s.step()? {
        Some(HalfgraphWitness { u: s.u, w: s.w })
    } else {
        None
    })
}

struct HalfSearch<'a> {
    g: &'a Graph,
    t: usize,
    order: Vec<Vertex>,
    u: Vec<Vertex>,
    w: Vec<Vertex>,
    used: Vec<bool>,
    budget: Budget,
}

impl HalfSearch<'_> {
    fn step(&mut self) -> Result<bool> {
        let i = self.u.len();
        if i == self.t {
            return Ok(true);
        }
        let g = self.g;
        for idx in 0..self.order.len() {
            let x = self.order[idx];
            // w_i needs u_1..u_i as neighbours
            if g.degree(x) <= i {
                break;
            }
            if self.used[x] || !self.u.iter().all(|&a| g.has_edge(a, x)) {
                continue;
            }
            self.budget.tick()?;
            self.used[x] = true;
            self.w.push(x);
            for jdx in 0..self.order.len() {
                let y = self.order[jdx];
                // u_i needs w_i..w_t as neighbours
                if g.degree(y) < self.t - i {
                    break;
                }
                if self.used[y] || !g.has_edge(x, y) || self.w[..i].iter().any(|&b| g.has_edge(b, y)) {
                    continue;
                }
                self.budget.tick()?;
                self.used[y] = true;
                self.u.push(y);
                if self.room_for_rest() && self.step()? {
                    return Ok(true);
                }
                self.u.pop();
                self.used[y] = false;
            }
            self.w.pop();
            self.used[x] = false;
        }
        Ok(false)
    }

    /// The remaining `w`'s must be unused common neighbours of all chosen `u`'s.
    fn room_for_rest(&self) -> bool {
        let needed = self.t - self.u.len();
        if needed == 0 {
            return true;
        }
        let first = self.u[0];
        self.g
            .neighbors(first)
            .iter()
            .filter(|&&x| !self.used[x] && self.u[1..].iter().all(|&a| self.g.has_edge(a, x)))
            .take(needed)
            .count()
            == needed
    }
}

/// Why [`extract_halfgraph`] could not run or finish.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractFailure {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("path is empty or repeats a vertex")]
    NotAPath,
    #[error("path positions {index} and {} are not {k}-near-twins", index + 1)]
    NotNearTwins { index: usize, k: usize },
    #[error("need c >= t + 1, got c = {c}, t = {t}")]
    CTooSmall { c: u64, t: u64 },
    #[error("|N(v_m) \\ N(v_1)| = {size} is below g(c, k, t) = {needed}")]
    SetTooSmall { size: usize, needed: u64 },
    #[error("bound arithmetic overflowed")]
    Overflow,
    #[error("no split vertex while building level {level}")]
    NoSplit { level: usize },
    #[error("level {level} violates property {property}")]
    Property { level: usize, property: u8 },
    #[error("no eligible vertex for u_{index}")]
    NoCandidate { index: usize },
}

/// Output of [`extract_halfgraph`]: the half-graph and the chain
/// `(w_i, X_i)` it was read off from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfgraphExtraction {
    pub witness: HalfgraphWitness,
    pub chain: Vec<(Vertex, VertexSet)>,
    /// `S = N(v_m) \ N(v_1)`.
    pub s: VertexSet,
}

fn neighbourhood(g: &Graph, v: Vertex) -> VertexSet {
    g.neighbors(v).iter().copied().collect()
}

/// Builds a half-graph of order `t` from a path `v_1 .. v_m` in `NT_k(G)` whose
/// end vertices differ a lot: `S = N(v_m) \ N(v_1)` must have at least
/// `g(c, k, t)` elements.
///
/// First a chain `w_1, .., w_t` of path vertices with nested sets
/// `X_1 ⊆ .. ⊆ X_t ⊆ S`, `X_i ⊆ N(w_i)`, is built by repeatedly cutting the
/// path at the first vertex seeing many elements of the current set. Then
/// `u_i` is the smallest vertex of `X_i` outside `N(w_1) ∪ .. ∪ N(w_{i-1})`
/// and different from every `w_j`.
pub fn extract_halfgraph(
    g: &Graph,
    nt_path: &[Vertex],
    k: usize,
    t: usize,
    c: u64,
) -> Result<HalfgraphExtraction, ExtractFailure> {
    let n = g.n();
    for &v in nt_path {
        if v >= n {
            return Err(ExtractFailure::VertexOutOfRange { vertex: v, n });
        }
    }
    if nt_path.is_empty() || nt_path.iter().copied().collect::<VertexSet>().len() != nt_path.len() {
        return Err(ExtractFailure::NotAPath);
    }
    for (i, pair) in nt_path.windows(2).enumerate() {
        if symdiff_unchecked(g, pair[0], pair[1]) > k {
            return Err(ExtractFailure::NotNearTwins { index: i + 1, k });
        }
    }
    if t == 0 {
        return Ok(HalfgraphExtraction {
            witness: HalfgraphWitness { u: vec![], w: vec![] },
            chain: vec![],
            s: VertexSet::new(),
        });
    }
    if c < t as u64 + 1 {
        return Err(ExtractFailure::CTooSmall { c, t: t as u64 });
    }
    let first = neighbourhood(g, nt_path[0]);
    let s: VertexSet = neighbourhood(g, *nt_path.last().unwrap())
        .difference(&first)
        .copied()
        .collect();
    let needed = g_bound(c, k as u64, t as u64).map_err(|_| ExtractFailure::Overflow)?;
    if (s.len() as u64) < needed {
        return Err(ExtractFailure::SetTooSmall { size: s.len(), needed });
    }

    // chain[level - 1] = (w_level, X_level), filled from level t down to 1
    let mut chain: Vec<(Vertex, VertexSet)> = vec![(0, VertexSet::new()); t];
    let mut end = nt_path.len();
    let mut current = s.clone();
    for level in (1..=t).rev() {
        let w = nt_path[end - 1];
        chain[level - 1] = (w, current.clone());
        if level == 1 {
            break;
        }
        let threshold = g_bound(c, k as u64, level as u64 - 1).map_err(|_| ExtractFailure::Overflow)?;
        let q = (0..end)
            .find(|&i| current.iter().filter(|&&x| g.has_edge(nt_path[i], x)).count() as u64 >= threshold)
            .ok_or(ExtractFailure::NoSplit { level })?;
        if q + 1 >= end {
            return Err(ExtractFailure::NoSplit { level });
        }
        current.retain(|&x| g.has_edge(nt_path[q], x));
        end = q + 1;
    }
    validate_chain(g, &chain, &s, c)?;

    let ws: Vec<Vertex> = chain.iter().map(|(w, _)| *w).collect();
    let mut us = Vec::with_capacity(t);
    for (i, (_, x)) in chain.iter().enumerate() {
        let pick = x
            .iter()
            .copied()
            .find(|&y| !ws.contains(&y) && ws[..i].iter().all(|&b| !g.has_edge(b, y)))
            .ok_or(ExtractFailure::NoCandidate { index: i + 1 })?;
        us.push(pick);
    }
    let witness = HalfgraphWitness { u: us, w: ws };
    Ok(HalfgraphExtraction { witness, chain, s })
}

/// Independent check of the chain properties:
/// 1. `X_i ⊆ N(w_i) ∩ S`;
/// 2. `X_{i-1} ⊆ X_i`;
/// 3. `|X_i| >= |X_i ∩ N(w_1)| + .. + |X_i ∩ N(w_{i-1})| + c`;
///
/// and that the `w_i` are distinct.
pub fn validate_chain(g: &Graph, chain: &[(Vertex, VertexSet)], s: &VertexSet, c: u64) -> Result<(), ExtractFailure> {
    let distinct: VertexSet = chain.iter().map(|(w, _)| *w).collect();
    if distinct.len() != chain.len() {
        return Err(ExtractFailure::Property { level: 0, property: 0 });
    }
    for (i, (w, x)) in chain.iter().enumerate() {
        let level = i + 1;
        if !x.iter().all(|&y| s.contains(&y) && g.has_edge(*w, y)) {
            return Err(ExtractFailure::Property { level, property: 1 });
        }
        if i > 0 && !chain[i - 1].1.is_subset(x) {
            return Err(ExtractFailure::Property { level, property: 2 });
        }
        let seen: u64 = chain[..i]
            .iter()
            .map(|(b, _)| x.iter().filter(|&&y| g.has_edge(*b, y)).count() as u64)
            .sum();
        if (x.len() as u64) < seen + c {
            return Err(ExtractFailure::Property { level, property: 3 });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, gen_halfgraph, gen_random, star};

    #[test]
    fn symdiff_examples() {
        let s = star(3);
        assert_eq!(symdiff(&s, 1, 2).unwrap(), 0);
        assert_eq!(symdiff(&s, 0, 1).unwrap(), 4);
        assert_eq!(symdiff(&complete(5), 1, 3).unwrap(), 2);
        assert!(symdiff(&s, 1, 1).is_err());
    }

    #[test]
    fn view_examples() {
        let v = neartwin_view(&star(3), 0);
        assert_eq!(v.components, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(neartwin_view(&complete(6), 2).components.len(), 1);
        assert_eq!(neartwin_view(&Graph::new(4), 0).components, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn fast_components_match_view() {
        for seed in 0..40 {
            let g = gen_random(30, 0.05 + (seed % 8) as f64 * 0.1, seed);
            for k in 0..5 {
                assert_eq!(
                    neartwin_components(&g, k),
                    neartwin_view(&g, k).components,
                    "seed {seed} k {k}"
                );
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(g_bound(3, 2, 1).unwrap(), 3);
        assert_eq!(g_bound(3, 2, 2).unwrap(), 8);
        assert_eq!(g_bound(3, 2, 3).unwrap(), 21);
        assert_eq!(h_bound(2, 2).unwrap(), 16);
        assert_eq!(h_bound(7, 1).unwrap(), 4);
        assert_eq!(h_bound(0, 2).unwrap(), 12);
    }

    #[test]
    fn halfgraph_search_examples() {
        let caps = Caps::default();
        let h = gen_halfgraph(3);
        let found = find_halfgraph(&h, 3, &caps).unwrap().unwrap();
        found.validate(&h).unwrap();
        assert_eq!(find_halfgraph(&complete(4), 2, &caps).unwrap(), None);
        assert_eq!(find_halfgraph(&Graph::new(3), 1, &caps).unwrap(), None);
        assert_eq!(find_halfgraph(&h, 4, &caps).unwrap(), None);
    }

    #[test]
    fn witness_validation() {
        let h = gen_halfgraph(2);
        HalfgraphWitness {
            u: vec![0, 1],
            w: vec![2, 3],
        }
        .validate(&h)
        .unwrap();
        assert!(HalfgraphWitness {
            u: vec![1, 0],
            w: vec![2, 3]
        }
        .validate(&h)
        .is_err());
        assert!(HalfgraphWitness {
            u: vec![0, 0],
            w: vec![2, 3]
        }
        .validate(&h)
        .is_err());
    }

    /// `0` is isolated and `1` has `size` leaves, so `N(1) \ N(0)` has `size` elements.
    fn separated_pair(size: usize) -> Graph {
        Graph::from_edges(size + 2, (2..size + 2).map(|x| (1, x))).unwrap()
    }

    #[test]
    fn extraction_base_case() {
        let g = separated_pair(3);
        let out = extract_halfgraph(&g, &[0, 1], 3, 1, 2).unwrap();
        assert_eq!(out.witness, HalfgraphWitness { u: vec![2], w: vec![1] });
        out.witness.validate(&g).unwrap();
    }

    #[test]
    fn extraction_failures() {
        let g = separated_pair(3);
        assert_eq!(
            extract_halfgraph(&g, &[0, 1], 3, 1, 4),
            Err(ExtractFailure::SetTooSmall { size: 3, needed: 4 })
        );
        assert_eq!(
            extract_halfgraph(&g, &[0, 1], 2, 1, 2),
            Err(ExtractFailure::NotNearTwins { index: 1, k: 2 })
        );
        assert_eq!(
            extract_halfgraph(&g, &[0, 1], 3, 2, 2),
            Err(ExtractFailure::CTooSmall { c: 2, t: 2 })
        );
    }

    #[test]
    fn extraction_along_halfgraph_chain() {
        // neighbourhoods of w_1 ⊂ w_2 ⊂ .. grow one u at a time in a large
        // half-graph, so consecutive w's are 1-near-twins
        let t = 40;
        let h = gen_halfgraph(t);
        let path: Vec<Vertex> = (t..2 * t).collect();
        let c = 3;
        for order in 1..=2 {
            let out = extract_halfgraph(&h, &path, 1, order, c).unwrap();
            out.witness.validate(&h).unwrap();
            assert_eq!(out.witness.order(), order);
            validate_chain(&h, &out.chain, &out.s, c).unwrap();
        }
    }
}
