//! The round-based `(r, m)`-ranking and the verification oracles around it.
//!
//! In round `i` every vertex still at rank infinity checks whether some set
//! `S` of at most `m` other vertices cuts it, within distance `r`, from every
//! vertex that was still infinite at the end of round `i - 1`. All checks of a
//! round read the same frozen state, so the result does not depend on the order
//! (or parallel schedule) in which the vertices of a round are processed.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{check_vertex, Graph, Vertex, VertexSet};

/// Extended natural rank: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(i) => Some(i),
            Rank::Infinite => None,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(i) => write!(f, "{i}"),
            Rank::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    pub r: usize,
    pub m: usize,
    pub ranks: Vec<Rank>,
    /// The separator found when the rank was assigned; `None` for infinite ranks.
    pub witness: Vec<Option<VertexSet>>,
}

impl RankAssignment {
    pub fn rank(&self, v: Vertex) -> Rank {
        self.ranks[v]
    }

    pub fn all_finite(&self) -> bool {
        self.ranks.iter().all(|r| r.is_finite())
    }

    pub fn max_finite(&self) -> Option<u32> {
        self.ranks.iter().filter_map(|r| r.finite()).max()
    }
}

/// Counters collected by [`compute_ranking_instrumented`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub rounds: u32,
    pub searches: u64,
    pub total_nodes: u64,
    /// Largest number of branch nodes expanded by a single separator search.
    pub max_nodes: u64,
}

pub fn compute_ranking(g: &Graph, r: usize, m: usize) -> RankAssignment {
    compute_ranking_instrumented(g, r, m).0
}

pub fn compute_ranking_instrumented(g: &Graph, r: usize, m: usize) -> (RankAssignment, SearchStats) {
    let n = g.n();
    let mut ranks = vec![Rank::Infinite; n];
    let mut witness: Vec<Option<VertexSet>> = vec![None; n];
    let mut stats = SearchStats::default();
    let mut infinite: Vec<bool> = vec![true; n];
    let mut pending: Vec<Vertex> = g.vertices().collect();
    let mut round = 0u32;

    while !pending.is_empty() {
        round += 1;
        let frozen = &infinite;
        let results: Vec<(Vertex, Option<Vec<Vertex>>, u64)> = pending
            .par_iter()
            .map_init(
                || Searcher::new(n),
                |s, &v| {
                    s.nodes = 0;
                    let found = s.search(g, v, r, m, &|w| frozen[w]);
                    (v, found, s.nodes)
                },
            )
            .collect();

        let mut still = Vec::with_capacity(pending.len());
        let mut assigned = Vec::new();
        for (v, found, nodes) in results {
            stats.searches += 1;
            stats.total_nodes += nodes;
            stats.max_nodes = stats.max_nodes.max(nodes);
            match found {
                Some(sep) => {
                    ranks[v] = Rank::Finite(round);
                    witness[v] = Some(sep.into_iter().collect());
                    assigned.push(v);
                }
                None => still.push(v),
            }
        }
        if assigned.is_empty() {
            break;
        }
        for v in assigned {
            infinite[v] = false;
        }
        pending = still;
    }
    stats.rounds = round;
    (RankAssignment { r, m, ranks, witness }, stats)
}

/// Reusable BFS scratch space for the branching separator search.
struct Searcher {
    mark: Vec<u32>,
    epoch: u32,
    parent: Vec<Vertex>,
    dist: Vec<usize>,
    queue: Vec<Vertex>,
    deleted: Vec<Vertex>,
    nodes: u64,
}

impl Searcher {
    fn new(n: usize) -> Self {
        Searcher {
            mark: vec![0; n],
            epoch: 0,
            parent: vec![0; n],
            dist: vec![0; n],
            queue: Vec::new(),
            deleted: Vec::new(),
            nodes: 0,
        }
    }

    /// Shortest path (without `v`, ordered from `v` outwards) in `G - deleted`
    /// from `v` to the first target reached by BFS within distance `r`.
    fn violating_path(
        &mut self,
        g: &Graph,
        v: Vertex,
        r: usize,
        target: &dyn Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.mark[v] = epoch;
        self.dist[v] = 0;
        self.queue.clear();
        self.queue.push(v);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            if self.dist[u] >= r {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.mark[w] == epoch || self.deleted.contains(&w) {
                    continue;
                }
                self.mark[w] = epoch;
                self.parent[w] = u;
                self.dist[w] = self.dist[u] + 1;
                if target(w) {
                    let mut path = vec![w];
                    let mut x = w;
                    while self.parent[x] != v {
                        x = self.parent[x];
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                self.queue.push(w);
            }
        }
        None
    }

    fn search(
        &mut self,
        g: &Graph,
        v: Vertex,
        r: usize,
        m: usize,
        target: &dyn Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        self.deleted.clear();
        let is_target = |w: Vertex| w != v && target(w);
        self.branch(g, v, r, m, &is_target)
    }

    fn branch(
        &mut self,
        g: &Graph,
        v: Vertex,
        r: usize,
        m: usize,
        target: &dyn Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        self.nodes += 1;
        let Some(path) = self.violating_path(g, v, r, target) else {
            return Some(self.deleted.clone());
        };
        if self.deleted.len() >= m {
            return None;
        }
        // every separator must hit this path
        for x in path {
            self.deleted.push(x);
            let found = self.branch(g, v, r, m, target);
            self.deleted.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn check_separator_input(g: &Graph, v: Vertex, a: &VertexSet) -> Result<()> {
    check_vertex(v, g.n())?;
    for &w in a {
        check_vertex(w, g.n())?;
    }
    if a.contains(&v) {
        return Err(Error::Precondition(format!("vertex {v} is in the target set")));
    }
    Ok(())
}

/// Finds `S` with `|S| <= m`, `v` not in `S`, such that no vertex of `a` lies
/// within distance `r` of `v` in `G - S`. Branches on the vertices of a
/// shortest violating path, so at most `r^m` leaves are explored.
pub fn separator_search(g: &Graph, v: Vertex, a: &VertexSet, r: usize, m: usize) -> Result<Option<VertexSet>> {
    Ok(separator_search_counted(g, v, a, r, m)?.0)
}

/// [`separator_search`] together with the number of branch nodes expanded.
pub fn separator_search_counted(
    g: &Graph,
    v: Vertex,
    a: &VertexSet,
    r: usize,
    m: usize,
) -> Result<(Option<VertexSet>, u64)> {
    check_separator_input(g, v, a)?;
    let mut in_a = vec![false; g.n()];
    a.iter().for_each(|&w| in_a[w] = true);
    let mut s = Searcher::new(g.n());
    let found = s.search(g, v, r, m, &|w| in_a[w]);
    Ok((found.map(|s| s.into_iter().collect()), s.nodes))
}

pub const BRUTEFORCE_MAX_N: usize = 12;
pub const BRUTEFORCE_MAX_M: usize = 4;

/// Same decision as [`separator_search`] by trying every candidate set in
/// order of size, then lexicographically.
pub fn separator_search_bruteforce(
    g: &Graph,
    v: Vertex,
    a: &VertexSet,
    r: usize,
    m: usize,
) -> Result<Option<VertexSet>> {
    check_separator_input(g, v, a)?;
    if g.n() > BRUTEFORCE_MAX_N || m > BRUTEFORCE_MAX_M {
        return Err(Error::ScaleExceeded(format!(
            "brute-force separator search limited to n <= {BRUTEFORCE_MAX_N}, m <= {BRUTEFORCE_MAX_M}"
        )));
    }
    let others: Vec<Vertex> = g.vertices().filter(|&w| w != v).collect();
    for size in 0..=m.min(others.len()) {
        for s in others.iter().copied().combinations(size) {
            let s: VertexSet = s.into_iter().collect();
            if separates(g, v, a, &s, r) {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// True iff no vertex of `a` is within distance `r` of `v` in `G - s`.
pub fn separates(g: &Graph, v: Vertex, a: &VertexSet, s: &VertexSet, r: usize) -> bool {
    let mut dist = vec![usize::MAX; g.n()];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        if a.contains(&u) && u != v {
            return false;
        }
        if dist[u] == r {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX && !s.contains(&w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Vertices sorted by rank, ties broken by id. Fails if a rank is infinite.
pub fn rank_order(ra: &RankAssignment) -> Result<Vec<Vertex>> {
    if let Some(v) = ra.ranks.iter().position(|r| !r.is_finite()) {
        return Err(Error::Precondition(format!("vertex {v} has infinite rank")));
    }
    let mut order: Vec<Vertex> = (0..ra.ranks.len()).collect();
    order.sort_by_key(|&v| (ra.ranks[v], v));
    Ok(order)
}

fn positions(g: &Graph, order: &[Vertex]) -> Result<Vec<usize>> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::Precondition("order does not list every vertex".into()));
    }
    for (i, &v) in order.iter().enumerate() {
        check_vertex(v, n)?;
        if pos[v] != usize::MAX {
            return Err(Error::Precondition(format!("vertex {v} listed twice in order")));
        }
        pos[v] = i;
    }
    Ok(pos)
}

pub const BACKCONNECTIVITY_MAX_N: usize = 14;
pub const BACKCONNECTIVITY_MAX_R: usize = 3;

/// Maximum number of paths of length at most `r` from `v` to vertices after
/// `v` in `order`, with all internal vertices before `v`, pairwise disjoint
/// apart from `v`. Solved exactly by exhaustive search.
pub fn backconnectivity(g: &Graph, order: &[Vertex], v: Vertex, r: usize) -> Result<usize> {
    if g.n() > BACKCONNECTIVITY_MAX_N || r > BACKCONNECTIVITY_MAX_R {
        return Err(Error::ScaleExceeded(format!(
            "exact backconnectivity limited to n <= {BACKCONNECTIVITY_MAX_N}, r <= {BACKCONNECTIVITY_MAX_R}"
        )));
    }
    check_vertex(v, g.n())?;
    let pos = positions(g, order)?;

    // candidate paths grouped by first vertex; each path is stored without v
    let firsts: Vec<Vertex> = g.neighbors(v).to_vec();
    let mut by_first: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(firsts.len());
    for &u in &firsts {
        let mut paths = Vec::new();
        let mut stack = vec![u];
        collect_paths(g, &pos, v, r, &mut stack, &mut paths);
        by_first.push(paths);
    }
    let mut used = vec![false; g.n()];
    let mut best = 0;
    pack(&by_first, 0, 0, &mut used, &mut best);
    Ok(best)
}

fn collect_paths(g: &Graph, pos: &[usize], v: Vertex, r: usize, stack: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    let last = *stack.last().unwrap();
    if pos[last] > pos[v] {
        out.push(stack.clone());
        return;
    }
    if stack.len() >= r {
        return;
    }
    for &w in g.neighbors(last) {
        if w != v && !stack.contains(&w) {
            stack.push(w);
            collect_paths(g, pos, v, r, stack, out);
            stack.pop();
        }
    }
}

fn pack(by_first: &[Vec<Vec<Vertex>>], i: usize, taken: usize, used: &mut [bool], best: &mut usize) {
    *best = (*best).max(taken);
    if i == by_first.len() || taken + (by_first.len() - i) <= *best {
        return;
    }
    for path in &by_first[i] {
        if path.iter().all(|&x| !used[x]) {
            path.iter().for_each(|&x| used[x] = true);
            pack(by_first, i + 1, taken + 1, used, best);
            path.iter().for_each(|&x| used[x] = false);
        }
    }
    pack(by_first, i + 1, taken, used, best);
}

/// Number of vertices strongly `r`-reachable from `v` when exactly the
/// vertices in `before` precede it; `v` itself counts.
fn strong_reach(g: &Graph, v: Vertex, before: u32, r: usize) -> usize {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        if dist[u] == r {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] != usize::MAX {
                continue;
            }
            dist[w] = dist[u] + 1;
            if before & (1 << w) != 0 {
                queue.push_back(w);
            } else {
                count += 1;
            }
        }
    }
    count
}

/// Largest instance accepted by [`scol_bruteforce`].
pub const SCOL_MAX_N: usize = 16;

/// Exact strong `r`-colouring number. The number of vertices strongly
/// reachable from `v` depends only on the set of vertices placed before `v`,
/// so a dynamic program over subsets replaces enumeration of all orderings.
pub fn scol_bruteforce(g: &Graph, r: usize) -> Result<usize> {
    let n = g.n();
    if n > SCOL_MAX_N {
        return Err(Error::ScaleExceeded(format!("exact scol limited to n <= {SCOL_MAX_N}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let mut b = usize::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = set & !(1 << v);
            let cost = best[prev as usize].max(strong_reach(g, v, prev, r));
            b = b.min(cost);
        }
        best[set as usize] = b;
    }
    Ok(best[full as usize])
}

/// Maximum strong-reachability count of a given ordering.
pub fn scol_of_order(g: &Graph, order: &[Vertex], r: usize) -> Result<usize> {
    if g.n() > 32 {
        return Err(Error::ScaleExceeded("ordering check limited to n <= 32".into()));
    }
    positions(g, order)?;
    let mut before = 0u32;
    let mut worst = 0;
    for &v in order {
        worst = worst.max(strong_reach(g, v, before, r));
        before |= 1 << v;
    }
    Ok(worst)
}
