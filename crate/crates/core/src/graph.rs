//! Finite simple undirected graphs with named unary predicates.
//!
//! Vertex ids are dense integers `0..n`. Adjacency lists are kept sorted, which
//! makes equality literal: two `Graph` values compare equal exactly when they
//! have the same vertex count, the same edges and the same non-empty predicates.
//! All operations that change the graph return a new value.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Ordered set of vertex ids.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    predicates: BTreeMap<String, VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            predicates: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::Invariant(format!("self-loop on {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph::from_sorted_adjacency(adj))
    }

    /// Builds a graph from adjacency lists that are already sorted, deduplicated,
    /// symmetric and loop-free. Only checked in debug builds.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let g = Graph {
            adj,
            predicates: BTreeMap::new(),
        };
        debug_assert!(g.validate().is_ok(), "{:?}", g.validate());
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Inserts edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        check_vertex(u, self.n())?;
        check_vertex(v, self.n())?;
        if u == v {
            return Err(Error::Invariant(format!("self-loop on {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn predicate(&self, name: &str) -> Option<&VertexSet> {
        self.predicates.get(name)
    }

    pub fn has_label(&self, name: &str, v: Vertex) -> bool {
        self.predicates.get(name).is_some_and(|s| s.contains(&v))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &VertexSet)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Replaces predicate `name`. An empty set removes the predicate, so a graph
    /// never stores empty label sets.
    pub fn set_predicate(&mut self, name: &str, set: VertexSet) -> Result<()> {
        if let Some(&v) = set.iter().next_back() {
            check_vertex(v, self.n())?;
        }
        if set.is_empty() {
            self.predicates.remove(name);
        } else {
            self.predicates.insert(name.to_string(), set);
        }
        Ok(())
    }

    pub fn label(&mut self, name: &str, v: Vertex) -> Result<()> {
        check_vertex(v, self.n())?;
        self.predicates.entry(name.to_string()).or_default().insert(v);
        Ok(())
    }

    pub fn remove_predicate(&mut self, name: &str) -> Option<VertexSet> {
        self.predicates.remove(name)
    }

    /// Checks symmetry, irreflexivity, sortedness and predicate ranges.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant(format!("adjacency of {u} not strictly sorted")));
            }
            for &v in list {
                check_vertex(v, n)?;
                if v == u {
                    return Err(Error::Invariant(format!("self-loop on {u}")));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::Invariant(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        for (name, set) in &self.predicates {
            if set.is_empty() {
                return Err(Error::Invariant(format!("empty predicate {name}")));
            }
            if let Some(&v) = set.iter().next_back() {
                check_vertex(v, n)?;
            }
        }
        Ok(())
    }

    /// BFS distances from `v`; `None` marks unreachable vertices.
    pub fn distances_from(&self, v: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[v] = Some(0);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices reachable from `v` by a path of at most `r` edges, `v` included.
    pub fn closed_ball(&self, v: Vertex, r: usize) -> VertexSet {
        let mut seen = VertexSet::new();
        seen.insert(v);
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for u in frontier {
                for &w in &self.adj[u] {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// Complements every pair `(u, v)` with `u` in `a`, `v` in `b`, `u != v`.
    /// The sets must be disjoint or equal.
    pub fn flip(&self, a: &VertexSet, b: &VertexSet) -> Result<Graph> {
        for &v in a.iter().chain(b.iter()) {
            check_vertex(v, self.n())?;
        }
        if a != b && a.intersection(b).next().is_some() {
            return Err(Error::OverlappingSets);
        }
        let n = self.n();
        let mut in_a = vec![false; n];
        let mut in_b = vec![false; n];
        a.iter().for_each(|&v| in_a[v] = true);
        b.iter().for_each(|&v| in_b[v] = true);
        let mut adj = self.adj.clone();
        let mut toggle = |u: Vertex, partner: &VertexSet, in_partner: &[bool]| {
            let old = &self.adj[u];
            let mut list: Vec<Vertex> = old.iter().copied().filter(|&w| !in_partner[w]).collect();
            list.extend(
                partner
                    .iter()
                    .copied()
                    .filter(|&w| w != u && old.binary_search(&w).is_err()),
            );
            list.sort_unstable();
            adj[u] = list;
        };
        if a == b {
            for &u in a {
                toggle(u, a, &in_a);
            }
        } else {
            for &u in a {
                toggle(u, b, &in_b);
            }
            for &u in b {
                toggle(u, a, &in_a);
            }
        }
        let mut g = Graph::from_sorted_adjacency(adj);
        g.predicates = self.predicates.clone();
        Ok(g)
    }

    /// The partition `F_S`: each vertex of `s` forms its own class (in id order),
    /// then the remaining vertices grouped by their neighbourhood inside `s`,
    /// classes ordered by smallest member.
    pub fn s_flip_classes(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        for &v in s {
            check_vertex(v, self.n())?;
        }
        let mut classes: Vec<VertexSet> = s.iter().map(|&v| VertexSet::from([v])).collect();
        let mut by_signature: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for v in self.vertices().filter(|v| !s.contains(v)) {
            let signature: Vec<Vertex> = self.adj[v].iter().copied().filter(|w| s.contains(w)).collect();
            let idx = *by_signature.entry(signature).or_insert_with(|| {
                classes.push(VertexSet::new());
                classes.len() - 1
            });
            classes[idx].insert(v);
        }
        Ok(classes)
    }

    /// Applies an S-flip: flips between every named pair of `F_S` classes.
    /// Pairs are unordered; repeated pairs count once.
    pub fn s_flip(&self, s: &VertexSet, flips: &[(usize, usize)]) -> Result<Graph> {
        let classes = self.s_flip_classes(s)?;
        let pairs: BTreeSet<(usize, usize)> = flips.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        let mut g = self.clone();
        for &(_, j) in &pairs {
            if j >= classes.len() {
                return Err(Error::UnknownClass {
                    class: j,
                    classes: classes.len(),
                });
            }
        }
        for (i, j) in pairs {
            g = g.flip(&classes[i], &classes[j])?;
        }
        Ok(g)
    }

    /// Subgraph induced on `x`, with ids remapped densely in increasing order.
    /// The returned table maps each new id to its old id.
    pub fn induced(&self, x: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        for &v in x {
            check_vertex(v, self.n())?;
        }
        let old_ids: Vec<Vertex> = x.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old_ids
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        let mut g = Graph::from_sorted_adjacency(adj);
        for (name, set) in &self.predicates {
            let mapped: VertexSet = set
                .iter()
                .filter(|&&v| new_id[v] != usize::MAX)
                .map(|&v| new_id[v])
                .collect();
            g.set_predicate(name, mapped)?;
        }
        Ok((g, old_ids))
    }

    /// `G - X`: the subgraph induced on the complement of `x`.
    pub fn delete(&self, x: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        for &v in x {
            check_vertex(v, self.n())?;
        }
        let rest: VertexSet = self.vertices().filter(|v| !x.contains(v)).collect();
        self.induced(&rest)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<Vertex> = list.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adj[perm[u]] = mapped;
        }
        let mut g = Graph::from_sorted_adjacency(adj);
        for (name, set) in &self.predicates {
            g.set_predicate(name, set.iter().map(|&v| perm[v]).collect())?;
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

pub(crate) fn check_vertex(v: Vertex, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn closed_ball_on_path() {
        let g = path(3);
        assert_eq!(g.closed_ball(0, 1), set(&[0, 1]));
        assert_eq!(g.closed_ball(0, 2), set(&[0, 1, 2]));
        assert_eq!(g.closed_ball(1, 0), set(&[1]));
    }

    #[test]
    fn flip_k3_leaves_one_edge() {
        let g = complete(3);
        let f = g.flip(&set(&[0]), &set(&[1, 2])).unwrap();
        assert_eq!(f.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(f.flip(&set(&[0]), &set(&[1, 2])).unwrap(), g);
    }

    #[test]
    fn flip_same_set_complements_inside() {
        let g = path(4);
        let f = g.flip(&set(&[0, 1, 2]), &set(&[0, 1, 2])).unwrap();
        assert_eq!(f.edges().collect::<Vec<_>>(), vec![(0, 2), (2, 3)]);
    }

    #[test]
    fn flip_rejects_overlap() {
        let g = path(4);
        assert_eq!(g.flip(&set(&[0, 1]), &set(&[1, 2])), Err(Error::OverlappingSets));
    }

    #[test]
    fn s_flip_star_isolates_center() {
        let g = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        let s = set(&[0]);
        let classes = g.s_flip_classes(&s).unwrap();
        assert_eq!(classes, vec![set(&[0]), set(&[1, 2, 3, 4])]);
        let f = g.s_flip(&s, &[(0, 1)]).unwrap();
        assert_eq!(f.edge_count(), 0);
        assert_eq!(f.s_flip(&s, &[(0, 1)]).unwrap(), g);
        assert_eq!(g.s_flip(&VertexSet::new(), &[]).unwrap(), g);
    }

    #[test]
    fn s_flip_rejects_unknown_class() {
        let g = path(3);
        assert!(matches!(
            g.s_flip(&set(&[1]), &[(0, 7)]),
            Err(Error::UnknownClass { class: 7, .. })
        ));
    }

    #[test]
    fn induced_and_delete() {
        let g = complete(3);
        assert_eq!(g.induced(&set(&[0, 1, 2])).unwrap().0, g);
        let (d, map) = g.delete(&set(&[1])).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.edge_count(), 1);
        assert_eq!(map, vec![0, 2]);
    }

    #[test]
    fn induced_keeps_predicates() {
        let mut g = path(4);
        g.set_predicate("R", set(&[1, 3])).unwrap();
        let (h, _) = g.induced(&set(&[2, 3])).unwrap();
        assert_eq!(h.predicate("R"), Some(&set(&[1])));
        let (h, _) = g.induced(&set(&[0, 2])).unwrap();
        assert_eq!(h.predicate("R"), None);
    }

    #[test]
    fn add_edge_rejects_loop_and_reports_duplicates() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(0, 3).is_err());
    }

    #[test]
    fn permute_preserves_shape() {
        let g = path(4);
        let p = g.permute(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p, g);
        let q = g.permute(&[1, 0, 2, 3]).unwrap();
        assert!(q.has_edge(0, 2) && q.has_edge(0, 1) && q.has_edge(2, 3));
        assert!(!q.has_edge(1, 2));
        assert!(g.permute(&[0, 0, 1, 2]).is_err());
    }
}
