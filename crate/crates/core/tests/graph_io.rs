mod common;

use common::arb_graph;
use proptest::prelude::*;
use rankflip_core::io::{parse_graph, write_graph};
use rankflip_core::{Graph, VertexSet};

fn with_labels(mut g: Graph, mask: u32) -> Graph {
    let set: VertexSet = g.vertices().filter(|v| mask >> (v % 32) & 1 == 1).collect();
    g.set_predicate("Q", set).unwrap();
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_round_trip(g in arb_graph(20), mask in any::<u32>()) {
        let g = with_labels(g, mask);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn flip_is_an_involution(g in arb_graph(12), a in any::<u16>(), b in any::<u16>()) {
        let pick = |mask: u16| -> VertexSet { g.vertices().filter(|v| mask >> v & 1 == 1).collect() };
        let (sa, mut sb) = (pick(a), pick(b));
        sb.retain(|v| !sa.contains(v));
        let once = g.flip(&sa, &sb).unwrap();
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v != u) {
                let crossing = sa.contains(&u) && sb.contains(&v) || sa.contains(&v) && sb.contains(&u);
                prop_assert_eq!(once.has_edge(u, v), g.has_edge(u, v) != crossing);
            }
        }
        prop_assert_eq!(once.flip(&sa, &sb).unwrap(), g);
    }

    #[test]
    fn s_flip_classes_partition(g in arb_graph(12), mask in any::<u16>()) {
        let s: VertexSet = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let classes = g.s_flip_classes(&s).unwrap();
        let mut seen = VertexSet::new();
        for class in &classes {
            for &v in class {
                prop_assert!(seen.insert(v));
            }
        }
        prop_assert_eq!(seen.len(), g.n());
        // vertices outside S in one class see S identically
        for class in &classes {
            let outside: Vec<_> = class.iter().filter(|v| !s.contains(v)).collect();
            for w in outside.windows(2) {
                for &x in &s {
                    prop_assert_eq!(g.has_edge(*w[0], x), g.has_edge(*w[1], x));
                }
            }
        }
    }

    #[test]
    fn induced_keeps_exactly_inner_edges(g in arb_graph(14), mask in any::<u16>()) {
        let x: VertexSet = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let (sub, old) = g.induced(&x).unwrap();
        prop_assert_eq!(sub.n(), x.len());
        for a in sub.vertices() {
            for b in sub.vertices() {
                prop_assert_eq!(sub.has_edge(a, b), g.has_edge(old[a], old[b]));
            }
        }
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    for text in [
        "p 2 1\ne 0 2\n",
        "p 2 1\ne 0 0\n",
        "p 2 2\ne 0 1\ne 1 0\n",
        "e 0 1\n",
        "p 2 1\nx\n",
    ] {
        let err = parse_graph(text).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }
}
