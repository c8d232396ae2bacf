//! Shallow topological tree minors: exhaustive detection and the greedy
//! extraction of a subdivided `T_{d,m}` rooted at a vertex of high rank.
//!
//! Tree nodes use the layout of [`crate::generate::gen_tree`]: the root is 0
//! and the children of node `p` are `p*m + 1 ..= p*m + m`.

use std::collections::VecDeque;

use crate::caps::{Budget, Caps};
use crate::error::{Error, Result};
use crate::graph::{check_vertex, Graph, Vertex};
use crate::ranking::{Rank, RankAssignment};

/// Number of vertices of `T_{d-1,m}` with every edge subdivided `r` times.
pub fn w_count(d: u64, m: u64, r: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Precondition("w_count needs d >= 1".into()));
    }
    let mut v: u64 = 0;
    let mut level: u64 = 1;
    for i in 0..d {
        if i > 0 {
            level = level.checked_mul(m).ok_or(Error::Overflow("w_count"))?;
        }
        v = v.checked_add(level).ok_or(Error::Overflow("w_count"))?;
    }
    r.checked_mul(v - 1)
        .and_then(|x| x.checked_add(v))
        .ok_or(Error::Overflow("w_count"))
}

/// The branching bound `m'` such that a vertex of `(r, m')`-rank above `d` is
/// the root of an `<= r`-subdivision of `T_{d,m}`.
pub fn m_prime(d: u64, r: u64, m: u64) -> Result<u64> {
    if d == 0 || m == 0 {
        return Err(Error::Precondition("m_prime needs d >= 1 and m >= 1".into()));
    }
    if d == 1 {
        return Ok(m - 1);
    }
    let big_m = branching_bound(d, r, m)?;
    let inner = m_prime(d - 1, r, big_m)?;
    let rm = r.checked_mul(m).ok_or(Error::Overflow("m_prime"))?;
    Ok(inner.max(rm))
}

/// `M = m * W + r * m + m`: how many branches the subtrees one level down
/// need so that `m` of them survive pruning.
fn branching_bound(d: u64, r: u64, m: u64) -> Result<u64> {
    let w = w_count(d, m, r)?;
    m.checked_mul(w)
        .and_then(|x| x.checked_add(r.checked_mul(m)?))
        .and_then(|x| x.checked_add(m))
        .ok_or(Error::Overflow("branching bound"))
}

/// Number of nodes of `T_{d,m}`.
pub fn tree_size(d: usize, m: usize) -> usize {
    let mut total = 0;
    let mut level = 1;
    for _ in 0..=d {
        total += level;
        level *= m;
    }
    total
}

/// An `<= r`-subdivision of `T_{d,m}` inside a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub d: usize,
    pub m: usize,
    /// Graph vertex of each tree node.
    pub principal: Vec<Vertex>,
    /// `paths[c]` runs from the principal vertex of the parent of `c` to that
    /// of `c`, endpoints included. `paths[0]` is empty.
    pub paths: Vec<Vec<Vertex>>,
}

impl Embedding {
    pub fn parent(&self, c: usize) -> usize {
        (c - 1) / self.m
    }

    pub fn root(&self) -> Vertex {
        self.principal[0]
    }

    /// Checks the embedding against `g`: tree shape, distinct principal
    /// vertices, paths of at most `r` internal vertices that are disjoint from
    /// each other and from the principal vertices.
    pub fn validate(&self, g: &Graph, r: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        let size = if self.m == 0 { 1 } else { tree_size(self.d, self.m) };
        if self.principal.len() != size || self.paths.len() != size {
            return bad(format!("expected {size} tree nodes"));
        }
        if !self.paths[0].is_empty() {
            return bad("root has a path".into());
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (c, &v) in self.principal.iter().enumerate() {
            check_vertex(v, g.n())?;
            if owner[v] != usize::MAX {
                return bad(format!("vertex {v} used twice"));
            }
            owner[v] = c;
        }
        for c in 1..size {
            let path = &self.paths[c];
            let (from, to) = (self.principal[self.parent(c)], self.principal[c]);
            if path.len() < 2 || path[0] != from || path[path.len() - 1] != to {
                return bad(format!("path of tree node {c} does not join {from} to {to}"));
            }
            if path.len() - 2 > r {
                return bad(format!("path of tree node {c} has more than {r} internal vertices"));
            }
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return bad(format!("path of tree node {c} uses non-edge {} {}", w[0], w[1]));
                }
            }
            for &x in &path[1..path.len() - 1] {
                check_vertex(x, g.n())?;
                if owner[x] != usize::MAX {
                    return bad(format!("vertex {x} used twice"));
                }
                owner[x] = c;
            }
        }
        Ok(())
    }
}

/// Exhaustive search for an `<= r`-subdivision of `T_{d,m}` as a subgraph.
/// Tree nodes are placed in breadth-first order; sibling subtrees are
/// interchangeable, so siblings are forced to have increasing principal ids.
pub fn contains_shallow_tree(g: &Graph, d: usize, m: usize, r: usize, caps: &Caps) -> Result<Option<Embedding>> {
    let size = if m == 0 { 1 } else { tree_size(d, m) };
    if g.n() == 0 {
        return Ok(None);
    }
    let mut search = TreeSearch {
        g,
        d,
        m,
        r,
        size,
        principal: vec![usize::MAX; size],
        paths: vec![Vec::new(); size],
        used: vec![false; g.n()],
        budget: Budget::new(caps.nodes, "shallow tree search"),
    };
    let root_degree = if d == 0 { 0 } else { m };
    for v in g.vertices() {
        if g.degree(v) < root_degree {
            continue;
        }
        search.budget.tick()?;
        search.principal[0] = v;
        search.used[v] = true;
        if search.place(1)? {
            return Ok(Some(Embedding {
                d,
                m,
                principal: search.principal,
                paths: search.paths,
            }));
        }
        search.used[v] = false;
    }
    Ok(None)
}

struct TreeSearch<'a> {
    g: &'a Graph,
    d: usize,
    m: usize,
    r: usize,
    size: usize,
    principal: Vec<Vertex>,
    paths: Vec<Vec<Vertex>>,
    used: Vec<bool>,
    budget: Budget,
}

impl TreeSearch<'_> {
    fn depth(&self, mut c: usize) -> usize {
        let mut depth = 0;
        while c > 0 {
            c = (c - 1) / self.m;
            depth += 1;
        }
        depth
    }

    fn place(&mut self, c: usize) -> Result<bool> {
        if c == self.size {
            return Ok(true);
        }
        let parent = (c - 1) / self.m;
        let min_id = if (c - 1).is_multiple_of(self.m) {
            0
        } else {
            self.principal[c - 1] + 1
        };
        let needed_degree = if self.depth(c) < self.d { self.m + 1 } else { 1 };
        let mut path = vec![self.principal[parent]];
        self.extend(c, &mut path, min_id, needed_degree)
    }

    /// Grows `path` through unused vertices; every unused vertex reached may
    /// serve as the principal vertex of `c`.
    fn extend(&mut self, c: usize, path: &mut Vec<Vertex>, min_id: usize, needed_degree: usize) -> Result<bool> {
        let last = *path.last().unwrap();
        let neighbors = self.g.neighbors(last);
        for &w in neighbors {
            if self.used[w] {
                continue;
            }
            self.budget.tick()?;
            path.push(w);
            self.used[w] = true;
            if w >= min_id && self.g.degree(w) >= needed_degree {
                self.principal[c] = w;
                self.paths[c] = path.clone();
                if self.place(c + 1)? {
                    return Ok(true);
                }
            }
            // internal vertices sit strictly between the endpoints
            if path.len() - 1 <= self.r && self.extend(c, path, min_id, needed_degree)? {
                return Ok(true);
            }
            self.used[w] = false;
            path.pop();
        }
        Ok(false)
    }
}

/// A rooted subdivided tree under construction: each child is reached by a
/// path whose internal vertices are listed in `children[i].0`.
#[derive(Debug, Clone)]
struct Sprout {
    root: Vertex,
    children: Vec<(Vec<Vertex>, Sprout)>,
}

impl Sprout {
    fn leaf(root: Vertex) -> Self {
        Sprout {
            root,
            children: Vec::new(),
        }
    }

    fn collect(&self, out: &mut Vec<Vertex>) {
        out.push(self.root);
        for (internal, child) in &self.children {
            out.extend(internal);
            child.collect(out);
        }
    }

    /// Keeps the first `b` children at every node below the root.
    fn trim_below(&mut self, b: usize) {
        for (_, child) in &mut self.children {
            child.trim_all(b);
        }
    }

    fn trim_all(&mut self, b: usize) {
        self.children.truncate(b);
        self.trim_below(b);
    }
}

/// Extracts an `<= r`-subdivision of `T_{d,m}` rooted at `v`, given a ranking
/// computed with radius `r` and parameter at least `m_prime(d, r, m)` in which
/// `v` has rank greater than `d`.
///
/// Paths to high-rank vertices are collected greedily as shortest paths in the
/// graph minus the vertices already used, ties broken by smallest endpoint.
/// Each endpoint recursively roots a tree with many more branches than needed;
/// branches meeting vertices used elsewhere are discarded.
pub fn extract_shallow_tree(
    g: &Graph,
    ra: &RankAssignment,
    v: Vertex,
    d: usize,
    m: usize,
    r: usize,
) -> Result<Embedding> {
    check_vertex(v, g.n())?;
    if ra.ranks.len() != g.n() {
        return Err(Error::Precondition("ranking belongs to a different graph".into()));
    }
    if d == 0 || m == 0 {
        return Err(Error::Precondition("extraction needs d >= 1 and m >= 1".into()));
    }
    let needed = m_prime(d as u64, r as u64, m as u64)?;
    if ra.r != r || (ra.m as u64) < needed {
        return Err(Error::Precondition(format!(
            "ranking has parameters ({}, {}); extraction needs radius {r} and m >= {needed}",
            ra.r, ra.m
        )));
    }
    if ra.ranks[v] <= Rank::Finite(d as u32) {
        return Err(Error::Precondition(format!(
            "vertex {v} has rank {} <= {d}",
            ra.ranks[v]
        )));
    }
    let tree = grow(g, &ra.ranks, v, d, m, r)?;
    let emb = flatten(&tree, d, m);
    emb.validate(g, r)?;
    Ok(emb)
}

fn grow(g: &Graph, ranks: &[Rank], v: Vertex, j: usize, b: usize, r: usize) -> Result<Sprout> {
    if j == 0 {
        return Ok(Sprout::leaf(v));
    }
    let threshold = Rank::Finite(j as u32);
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    let mut paths = Vec::with_capacity(b);
    for _ in 0..b {
        let path = nearest_target(g, v, r, &blocked, |w| ranks[w] >= threshold)
            .ok_or_else(|| Error::Invariant(format!("no further short path from {v} to a vertex of rank >= {j}")))?;
        for &x in &path {
            blocked[x] = true;
        }
        paths.push(path);
    }

    if j == 1 {
        let children = paths
            .into_iter()
            .map(|mut p| {
                let u = p.pop().unwrap();
                (p, Sprout::leaf(u))
            })
            .collect();
        return Ok(Sprout { root: v, children });
    }

    let big_m = branching_bound(j as u64, r as u64, b as u64)? as usize;
    let mut taken = vec![false; g.n()];
    taken[v] = true;
    for p in &paths {
        p.iter().for_each(|&x| taken[x] = true);
    }
    let mut children = Vec::with_capacity(b);
    for mut p in paths {
        let u = p.pop().unwrap();
        let mut sub = grow(g, ranks, u, j - 1, big_m, r)?;
        sub.trim_below(b);
        taken[u] = false;
        let mut kept = Vec::with_capacity(b);
        for (internal, child) in std::mem::take(&mut sub.children) {
            if kept.len() == b {
                break;
            }
            let mut verts = internal.clone();
            child.collect(&mut verts);
            if verts.iter().all(|&x| !taken[x]) {
                kept.push((internal, child));
            }
        }
        if kept.len() < b {
            return Err(Error::Invariant(format!(
                "only {} of {big_m} branches below {u} avoid the used vertices",
                kept.len()
            )));
        }
        sub.children = kept;
        let mut verts = Vec::new();
        sub.collect(&mut verts);
        verts.iter().for_each(|&x| taken[x] = true);
        children.push((p, sub));
    }
    Ok(Sprout { root: v, children })
}

/// Shortest path from `v` (excluded) to the target of smallest id among the
/// nearest ones, within distance `r`, avoiding `blocked`.
fn nearest_target(
    g: &Graph,
    v: Vertex,
    r: usize,
    blocked: &[bool],
    is_target: impl Fn(Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[v] = v;
    let mut layer = vec![v];
    for _ in 0..r {
        let mut next = Vec::new();
        for &u in &layer {
            for &w in g.neighbors(u) {
                if parent[w] == usize::MAX && !blocked[w] {
                    parent[w] = u;
                    next.push(w);
                }
            }
        }
        if let Some(&t) = next.iter().filter(|&&w| is_target(w)).min() {
            let mut path = vec![t];
            let mut x = t;
            while parent[x] != v {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    None
}

fn flatten(tree: &Sprout, d: usize, m: usize) -> Embedding {
    let size = tree_size(d, m);
    let mut principal = Vec::with_capacity(size);
    let mut paths = Vec::with_capacity(size);
    let mut queue = VecDeque::from([(tree, Vec::new())]);
    while let Some((node, path)) = queue.pop_front() {
        principal.push(node.root);
        paths.push(path);
        for (internal, child) in &node.children {
            let mut p = Vec::with_capacity(internal.len() + 2);
            p.push(node.root);
            p.extend(internal);
            p.push(child.root);
            queue.push_back((child, p));
        }
    }
    Embedding { d, m, principal, paths }
}
