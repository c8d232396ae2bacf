//! The sparsifier `S(G)` and its exact inverse.
//!
//! Vertices are grouped into the components of `NT_k(G)`. Two parts `A`, `B`
//! (possibly equal) are *mutually heavy* when both have at least `5h + 1`
//! vertices and some vertex of one has more than `2h` neighbours in the other.
//! `S(G)` flips the edges between every mutually heavy pair, adds an apex
//! `v_A` (predicate `R`) adjacent to each heavy part, marks `v_A` with `F`
//! when `A` was flipped with itself, and joins `v_A`, `v_B` when `A != B` were
//! flipped. The original graph is recovered from the marks alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::caps::{Budget, Caps};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::labd::{labd_check, ClassSpec, LabdReport};
use crate::logic::{APEX, SELF_FLIP};
use crate::neartwin::{h_bound, neartwin_components, symdiff};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartPartition {
    pub k: usize,
    /// Sorted parts, ordered by smallest member.
    pub parts: Vec<Vec<Vertex>>,
    pub part_of: Vec<usize>,
}

impl PartPartition {
    pub fn from_parts(k: usize, n: usize, parts: Vec<Vec<Vertex>>) -> Self {
        let mut part_of = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        PartPartition { k, parts, part_of }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Parts are the connected components of `NT_k(G)`.
pub fn component_partition(g: &Graph, k: usize) -> PartPartition {
    PartPartition::from_parts(k, g.n(), neartwin_components(g, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavyClassification {
    pub h: usize,
    pub heavy: BTreeSet<usize>,
    /// Unordered part pairs `(a, b)` with `a <= b`.
    pub mutually_heavy: BTreeSet<(usize, usize)>,
    /// Parts containing a vertex of degree at most `h`; used only in analysis.
    pub light: BTreeSet<usize>,
}

/// Classifies parts by direct counting. The relation is symmetrised: a
/// heavy vertex on either side makes the pair mutually heavy.
pub fn classify_heavy(g: &Graph, p: &PartPartition, h: usize) -> Result<HeavyClassification> {
    if h < 1 {
        return Err(Error::Precondition("h must be at least 1".into()));
    }
    let big = |i: usize| p.parts[i].len() > 5 * h;
    let mut mutually_heavy = BTreeSet::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for v in g.vertices() {
        let b = p.part_of[v];
        if !big(b) {
            continue;
        }
        counts.clear();
        for &w in g.neighbors(v) {
            *counts.entry(p.part_of[w]).or_default() += 1;
        }
        for (&a, &c) in &counts {
            if c > 2 * h && big(a) {
                mutually_heavy.insert((a.min(b), a.max(b)));
            }
        }
    }
    let heavy = mutually_heavy.iter().flat_map(|&(a, b)| [a, b]).collect();
    let light = (0..p.len())
        .filter(|&i| p.parts[i].iter().any(|&v| g.degree(v) <= h))
        .collect();
    Ok(HeavyClassification {
        h,
        heavy,
        mutually_heavy,
        light,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    /// Every vertex on either side has at most `2k` neighbours on the other.
    Sparse,
    /// Every vertex on either side misses at most `2k` vertices of the other.
    Dense,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityReport {
    pub verdict: Density,
    /// Both sets have at least `5k + 1` vertices and are each pairwise
    /// `k`-near-twins, so the dichotomy is guaranteed.
    pub preconditions: bool,
}

/// Density of the pair `(a, b)`, which must be disjoint or equal.
pub fn pair_density(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Result<DensityReport> {
    if a != b && a.intersection(b).next().is_some() {
        return Err(Error::OverlappingSets);
    }
    for &v in a.iter().chain(b) {
        crate::graph::check_vertex(v, g.n())?;
    }
    let cross = |x: Vertex, other: &VertexSet| g.neighbors(x).iter().filter(|w| other.contains(w)).count();
    // a vertex is never its own neighbour, so it is excluded from its own side
    let others = |x: Vertex, other: &VertexSet| other.len() - usize::from(other.contains(&x));
    let sides = [(a, b), (b, a)];
    let sparse = sides.iter().all(|(s, o)| s.iter().all(|&x| cross(x, o) <= 2 * k));
    let dense = sides
        .iter()
        .all(|(s, o)| s.iter().all(|&x| others(x, o) - cross(x, o) <= 2 * k));
    let verdict = if sparse {
        Density::Sparse
    } else if dense {
        Density::Dense
    } else {
        Density::Mixed
    };
    Ok(DensityReport {
        verdict,
        preconditions: lemma_preconditions(g, a, b, k),
    })
}

/// Size and pairwise near-twin conditions under which a pair of sets is
/// either sparse or dense.
pub fn lemma_preconditions(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> bool {
    let twins = |s: &VertexSet| {
        let v: Vec<Vertex> = s.iter().copied().collect();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| symdiff(g, v[i], v[j]).is_ok_and(|d| d <= k)))
    };
    a.len() > 5 * k && b.len() > 5 * k && twins(a) && (a == b || twins(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsifiedGraph {
    pub graph: Graph,
    pub original_n: usize,
    /// Heavy part index to its apex vertex.
    pub apex: BTreeMap<usize, Vertex>,
    pub flipped_pairs: BTreeSet<(usize, usize)>,
    pub partition: PartPartition,
    pub classification: HeavyClassification,
}

impl SparsifiedGraph {
    /// Sidecar lines `apex <part> <vertex>` and `flip <a> <b>`.
    pub fn provenance(&self) -> String {
        let mut out = String::new();
        for (part, v) in &self.apex {
            writeln!(out, "apex {part} {v}").unwrap();
        }
        for (a, b) in &self.flipped_pairs {
            writeln!(out, "flip {a} {b}").unwrap();
        }
        out
    }

    /// Checks the structural invariants of the construction.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        let n = self.original_n;
        let bad = |msg: String| Err(Error::Invariant(msg));
        let r_set = g.predicate(APEX).cloned().unwrap_or_default();
        let f_set = g.predicate(SELF_FLIP).cloned().unwrap_or_default();
        let apexes: VertexSet = self.apex.values().copied().collect();
        if r_set != apexes {
            return bad("R-marked vertices differ from the apexes".into());
        }
        if !f_set.is_subset(&r_set) {
            return bad("an F-marked vertex is not R-marked".into());
        }
        if g.n() != n + apexes.len() {
            return bad("vertex count is not original plus apexes".into());
        }
        for (&part, &va) in &self.apex {
            let mut expected: VertexSet = self.partition.parts[part].iter().copied().collect();
            for &(a, b) in &self.flipped_pairs {
                if a != b && (a == part || b == part) {
                    let other = if a == part { b } else { a };
                    expected.insert(self.apex[&other]);
                }
            }
            let actual: VertexSet = g.neighbors(va).iter().copied().collect();
            if actual != expected {
                return bad(format!("apex {va} of part {part} has the wrong neighbourhood"));
            }
            if f_set.contains(&va) != self.flipped_pairs.contains(&(part, part)) {
                return bad(format!("apex {va} has the wrong F mark"));
            }
        }
        for v in 0..n {
            if g.neighbors(v).iter().filter(|w| r_set.contains(w)).count() > 1 {
                return bad(format!("vertex {v} has two R-marked neighbours"));
            }
        }
        Ok(())
    }
}

/// For each vertex, complements its adjacency to every vertex whose group is
/// listed in `partners[group[v]]`; vertices without a group keep their
/// adjacency. Groups must be disjoint.
fn flip_groups(
    g: &Graph,
    group: &[Option<usize>],
    members: &[Vec<Vertex>],
    partners: &[Vec<usize>],
) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut toggled = vec![false; members.len()];
    (0..n)
        .map(|v| {
            let Some(gv) = group[v] else {
                return g.neighbors(v).to_vec();
            };
            if partners[gv].is_empty() {
                return g.neighbors(v).to_vec();
            }
            for &p in &partners[gv] {
                toggled[p] = true;
            }
            let in_toggled = |w: Vertex| group[w].is_some_and(|gw| toggled[gw]);
            let mut list: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| !in_toggled(w)).collect();
            for &p in &partners[gv] {
                list.extend(members[p].iter().copied().filter(|&w| w != v && !g.has_edge(v, w)));
            }
            for &p in &partners[gv] {
                toggled[p] = false;
            }
            list.sort_unstable();
            list
        })
        .collect()
}

/// Builds `S(G)`. The predicates `R` and `F` are reserved for the marks, so
/// the input must not use them.
pub fn build_sparsifier(g: &Graph, k: usize, h: usize) -> Result<SparsifiedGraph> {
    if g.predicate(APEX).is_some() || g.predicate(SELF_FLIP).is_some() {
        return Err(Error::Precondition(format!(
            "predicates {APEX} and {SELF_FLIP} are reserved for the sparsifier"
        )));
    }
    let partition = component_partition(g, k);
    let classification = classify_heavy(g, &partition, h)?;
    let n = g.n();

    let mut partners = vec![Vec::new(); partition.len()];
    for &(a, b) in &classification.mutually_heavy {
        partners[a].push(b);
        if a != b {
            partners[b].push(a);
        }
    }
    let group: Vec<Option<usize>> = partition.part_of.iter().map(|&p| Some(p)).collect();
    let mut adj = flip_groups(g, &group, &partition.parts, &partners);

    let mut apex = BTreeMap::new();
    for (i, &part) in classification.heavy.iter().enumerate() {
        apex.insert(part, n + i);
    }
    adj.resize(n + apex.len(), Vec::new());
    for (&part, &va) in &apex {
        for &v in &partition.parts[part] {
            adj[v].push(va);
            adj[va].push(v);
        }
    }
    for &(a, b) in &classification.mutually_heavy {
        if a != b {
            let (va, vb) = (apex[&a], apex[&b]);
            adj[va].push(vb);
            adj[vb].push(va);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut graph = Graph::from_sorted_adjacency(adj);
    for (name, set) in g.predicates() {
        graph.set_predicate(name, set.clone())?;
    }
    graph.set_predicate(APEX, apex.values().copied().collect())?;
    let self_flipped = classification
        .mutually_heavy
        .iter()
        .filter(|(a, b)| a == b)
        .map(|(a, _)| apex[a])
        .collect();
    graph.set_predicate(SELF_FLIP, self_flipped)?;

    Ok(SparsifiedGraph {
        graph,
        original_n: n,
        apex,
        flipped_pairs: classification.mutually_heavy.clone(),
        partition,
        classification,
    })
}

/// Inverts [`build_sparsifier`] using only the graph and its marks: keeps the
/// vertices outside `R` and complements `xy` when `x`, `y` share an `F`-marked
/// `R`-neighbour or have distinct, adjacent `R`-neighbours. Other predicates
/// are kept, restricted to the surviving vertices.
pub fn recover_graph(s: &Graph) -> Result<Graph> {
    let n = s.n();
    let r_set = s.predicate(APEX).cloned().unwrap_or_default();
    let f_set = s.predicate(SELF_FLIP).cloned().unwrap_or_default();
    let apexes: Vec<Vertex> = r_set.iter().copied().collect();
    let index_of: BTreeMap<Vertex, usize> = apexes.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let mut group = vec![None; n];
    let mut members = vec![Vec::new(); apexes.len()];
    for v in (0..n).filter(|v| !r_set.contains(v)) {
        let mut marks = s.neighbors(v).iter().filter(|w| r_set.contains(w));
        if let Some(a) = marks.next() {
            if marks.next().is_some() {
                return Err(Error::Invariant(format!("vertex {v} has two R-marked neighbours")));
            }
            group[v] = Some(index_of[a]);
            members[index_of[a]].push(v);
        }
    }
    let partners: Vec<Vec<usize>> = apexes
        .iter()
        .map(|&a| {
            let mut p: Vec<usize> = s
                .neighbors(a)
                .iter()
                .filter(|w| r_set.contains(w))
                .map(|w| index_of[w])
                .collect();
            if f_set.contains(&a) {
                p.push(index_of[&a]);
            }
            p
        })
        .collect();
    let adj = flip_groups(s, &group, &members, &partners);
    let flipped = Graph::from_sorted_adjacency(adj);
    let kept: VertexSet = (0..n).filter(|v| !r_set.contains(v)).collect();
    // apex rows still hold stale lists; induced() drops them
    Ok(flipped_with_predicates(flipped, s)?.induced(&kept)?.0)
}

fn flipped_with_predicates(mut g: Graph, source: &Graph) -> Result<Graph> {
    for (name, set) in source.predicates() {
        g.set_predicate(name, set.clone())?;
    }
    Ok(g)
}

/// [`recover_graph`] after checking the recorded invariants.
pub fn recover(sg: &SparsifiedGraph) -> Result<Graph> {
    sg.validate()?;
    recover_graph(&sg.graph)
}

/// `G / F`: one vertex per part, parts adjacent when some edge joins them.
pub fn quotient_graph(g: &Graph, p: &PartPartition) -> Result<Graph> {
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (p.part_of[u], p.part_of[v]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(p.len(), edges)
}

/// The threshold `h = h(k(3), t)` with `t = m(2) k(2) + m(2) + 1`.
pub fn theorem_h(k3: u64, k2: u64, m2: u64) -> Result<u64> {
    h_bound(k3, crate::labd::no_ladder_bound(k2, m2)?)
}

/// First successful candidate of [`sflip_driver`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SflipFound {
    pub s: VertexSet,
    /// Class pairs of the S-flip, in the order of the enumeration.
    pub flips: Vec<(usize, usize)>,
    pub flipped: Graph,
    pub sparsified: SparsifiedGraph,
    pub report: LabdReport,
    /// Number of candidates tried, this one included.
    pub tried: u64,
}

/// Subsets of `0..n` of size `size` in colexicographic order.
fn colex_subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<Vertex>> {
    let mut current: Option<Vec<Vertex>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        // advance: bump the first element that can move, reset those before it
        let c = current.as_mut().unwrap();
        let mut i = 0;
        loop {
            if i == c.len() {
                current = None;
                break;
            }
            let limit = if i + 1 < c.len() { c[i + 1] } else { n };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, slot) in c.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    })
}

/// Tries every S-flip `G'` of `g` with `|S| <= s` and returns the first one
/// whose sparsifier recovers `G'` and passes `verifier`.
///
/// Sets `S` are enumerated by size, then colexicographically. For each `S` the
/// pairs of `F_S` classes (self-pairs included, lexicographic) are read as bit
/// positions and flip specifications enumerated in binary-counter order,
/// starting with the empty one.
pub fn sflip_driver(
    g: &Graph,
    s: usize,
    k: usize,
    h: usize,
    verifier: &ClassSpec,
    caps: &Caps,
) -> Result<Option<SflipFound>> {
    let mut budget = Budget::new(caps.branches, "S-flip enumeration");
    let mut tried = 0;
    for size in 0..=s.min(g.n()) {
        for subset in colex_subsets(g.n(), size) {
            let set: VertexSet = subset.into_iter().collect();
            let classes = g.s_flip_classes(&set)?.len();
            let pairs: Vec<(usize, usize)> = (0..classes).flat_map(|i| (i..classes).map(move |j| (i, j))).collect();
            if pairs.len() >= 63 {
                return Err(Error::ScaleExceeded(format!(
                    "{} class pairs to enumerate",
                    pairs.len()
                )));
            }
            for mask in 0u64..(1 << pairs.len()) {
                budget.tick()?;
                tried += 1;
                let flips: Vec<(usize, usize)> = (0..pairs.len())
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| pairs[b])
                    .collect();
                let flipped = g.s_flip(&set, &flips)?;
                let sparsified = build_sparsifier(&flipped, k, h)?;
                if recover(&sparsified)? != flipped {
                    continue;
                }
                let report = labd_check(&sparsified.graph, verifier);
                if report.holds() {
                    return Ok(Some(SflipFound {
                        s: set,
                        flips,
                        flipped,
                        sparsified,
                        report,
                        tried,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, complete_bipartite, cycle, gen_random};

    fn parts(p: &PartPartition) -> Vec<Vec<Vertex>> {
        p.parts.clone()
    }

    #[test]
    fn partitions() {
        assert_eq!(
            parts(&component_partition(&complete_bipartite(7, 7), 0)),
            vec![(0..7).collect::<Vec<_>>(), (7..14).collect()]
        );
        assert_eq!(component_partition(&cycle(10), 0).len(), 10);
        assert_eq!(component_partition(&complete(11), 2).len(), 1);
    }

    #[test]
    fn heavy_examples() {
        let kb = complete_bipartite(7, 7);
        let c = classify_heavy(&kb, &component_partition(&kb, 0), 1).unwrap();
        assert_eq!(c.mutually_heavy, BTreeSet::from([(0, 1)]));
        assert_eq!(c.heavy, BTreeSet::from([0, 1]));
        let k11 = complete(11);
        let c = classify_heavy(&k11, &component_partition(&k11, 2), 2).unwrap();
        assert_eq!(c.mutually_heavy, BTreeSet::from([(0, 0)]));
        let c10 = cycle(10);
        let c = classify_heavy(&c10, &component_partition(&c10, 0), 1).unwrap();
        assert!(c.heavy.is_empty() && c.light.is_empty());
        let c = classify_heavy(&c10, &component_partition(&c10, 0), 2).unwrap();
        assert_eq!(c.light.len(), 10);
        assert!(classify_heavy(&c10, &component_partition(&c10, 0), 0).is_err());
    }

    #[test]
    fn density_examples() {
        let kb = complete_bipartite(7, 7);
        let a: VertexSet = (0..7).collect();
        let b: VertexSet = (7..14).collect();
        let report = pair_density(&kb, &a, &b, 0).unwrap();
        assert_eq!(report.verdict, Density::Dense);
        assert!(report.preconditions);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let report = pair_density(&two, &VertexSet::from([0, 1]), &VertexSet::from([2, 3]), 3).unwrap();
        assert_eq!(report.verdict, Density::Sparse);
        // a perfect matching plus one extra edge between two sets of six
        let mut edges: Vec<_> = (0..6).map(|i| (i, i + 6)).collect();
        edges.extend((0..6).flat_map(|i| (0..6).filter(move |&j| j != i && j < 3).map(move |j| (i, j + 6))));
        let mixed = Graph::from_edges(12, edges).unwrap();
        let report = pair_density(&mixed, &(0..6).collect(), &(6..12).collect(), 1).unwrap();
        assert_eq!(report.verdict, Density::Mixed);
        assert!(!report.preconditions);
    }

    #[test]
    fn sparsifier_examples() {
        let kb = complete_bipartite(7, 7);
        let s = build_sparsifier(&kb, 0, 1).unwrap();
        assert_eq!((s.graph.n(), s.graph.edge_count()), (16, 15));
        assert_eq!(s.graph.components().len(), 1);
        assert_eq!(s.provenance(), "apex 0 14\napex 1 15\nflip 0 1\n");
        assert_eq!(recover(&s).unwrap(), kb);

        let k11 = complete(11);
        let s = build_sparsifier(&k11, 2, 2).unwrap();
        assert_eq!(s.graph.edge_count(), 11);
        assert_eq!(s.graph.degree(11), 11);
        assert_eq!(s.graph.predicate(APEX), Some(&VertexSet::from([11])));
        assert_eq!(s.graph.predicate(SELF_FLIP), Some(&VertexSet::from([11])));
        assert_eq!(recover(&s).unwrap(), k11);

        let c10 = cycle(10);
        let s = build_sparsifier(&c10, 0, 1).unwrap();
        assert_eq!(s.graph, c10);
        assert_eq!(recover(&s).unwrap(), c10);
    }

    #[test]
    fn reserved_predicates_are_refused() {
        let mut g = cycle(4);
        g.set_predicate("R", VertexSet::from([0])).unwrap();
        assert!(build_sparsifier(&g, 0, 1).is_err());
    }

    #[test]
    fn other_predicates_survive_round_trip() {
        let mut g = complete_bipartite(8, 9);
        g.set_predicate("Q", VertexSet::from([1, 10])).unwrap();
        let s = build_sparsifier(&g, 0, 1).unwrap();
        assert_eq!(recover(&s).unwrap(), g);
    }

    #[test]
    fn recovery_rejects_double_marks() {
        let mut g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        g.set_predicate(APEX, VertexSet::from([1, 2])).unwrap();
        assert!(recover_graph(&g).is_err());
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..30 {
            let g = gen_random(40, 0.1 + 0.03 * (seed % 25) as f64, seed);
            for (k, h) in [(0, 1), (1, 1), (2, 2), (3, 5)] {
                let s = build_sparsifier(&g, k, h).unwrap();
                s.validate().unwrap();
                assert_eq!(recover(&s).unwrap(), g, "seed {seed} k {k} h {h}");
            }
        }
    }

    #[test]
    fn quotients() {
        let kb = complete_bipartite(7, 7);
        let q = quotient_graph(&kb, &component_partition(&kb, 0)).unwrap();
        assert_eq!(q, Graph::from_edges(2, [(0, 1)]).unwrap());
        let e = Graph::new(4);
        assert_eq!(
            quotient_graph(&e, &PartPartition::from_parts(0, 4, (0..4).map(|v| vec![v]).collect())).unwrap(),
            e
        );
        let c10 = cycle(10);
        assert_eq!(quotient_graph(&c10, &component_partition(&c10, 0)).unwrap(), c10);
    }

    #[test]
    fn colex_order() {
        let all: Vec<Vec<usize>> = colex_subsets(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(colex_subsets(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(colex_subsets(2, 3).count(), 0);
    }

    fn spec(f: &str, d: &str) -> ClassSpec {
        ClassSpec {
            f: f.parse().unwrap(),
            d: d.parse().unwrap(),
        }
    }

    #[test]
    fn driver_with_empty_s_is_plain_sparsification() {
        let kb = complete_bipartite(7, 7);
        let found = sflip_driver(&kb, 0, 0, 1, &spec("const:2", "const:1"), &Caps::default())
            .unwrap()
            .unwrap();
        assert!(found.s.is_empty() && found.flips.is_empty());
        assert_eq!(found.sparsified, build_sparsifier(&kb, 0, 1).unwrap());
    }

    #[test]
    fn driver_isolates_universal_vertex() {
        // vertex 0 is adjacent to both sides of K_{7,7} on 1..=14
        let mut edges: Vec<_> = (1..=7).flat_map(|a| (8..=14).map(move |b| (a, b))).collect();
        edges.extend((1..=14).map(|v| (0, v)));
        let g = Graph::from_edges(15, edges).unwrap();
        let found = sflip_driver(&g, 1, 0, 1, &spec("const:2", "const:1"), &Caps::default())
            .unwrap()
            .unwrap();
        assert_eq!(found.s, VertexSet::from([0]));
        assert_eq!(found.flips, vec![(0, 1)]);
        assert_eq!(found.flipped.degree(0), 0);
        assert_eq!(found.sparsified.flipped_pairs.len(), 1);
    }

    #[test]
    fn driver_reports_absence() {
        let found = sflip_driver(&cycle(6), 1, 0, 1, &spec("const:0", "const:0"), &Caps::default()).unwrap();
        assert!(found.is_none());
        let tiny = Caps { nodes: 1, branches: 3 };
        assert!(sflip_driver(&cycle(6), 1, 0, 1, &spec("const:0", "const:0"), &tiny)
            .unwrap_err()
            .is_scale_exceeded());
    }

    #[test]
    fn theorem_threshold() {
        // t = 3*2 + 3 + 1 = 10, h(1, 10) = 2 g(11, 1, 10)
        let t = crate::labd::no_ladder_bound(2, 3).unwrap();
        assert_eq!(theorem_h(1, 2, 3).unwrap(), h_bound(1, t).unwrap());
    }
}
