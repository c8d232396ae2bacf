//! Text serialisations of library results.

use std::fmt::Write as _;

use rankflip_core::labd::{CoverMode, LabdReport, NearCoveredReport};
use rankflip_core::neartwin::HalfgraphWitness;
use rankflip_core::ranking::RankAssignment;
use rankflip_core::shallow::Embedding;
use rankflip_core::Vertex;

fn join(items: impl IntoIterator<Item = Vertex>) -> String {
    items.into_iter().map(|v| format!(" {v}")).collect()
}

/// `<v> <rank|inf>` per vertex, then `w <v> <s1> ...` lines if requested.
pub fn ranks(ra: &RankAssignment, witness: bool) -> String {
    let mut out = String::new();
    for (v, rank) in ra.ranks.iter().enumerate() {
        writeln!(out, "{v} {rank}").unwrap();
    }
    if witness {
        for (v, w) in ra.witness.iter().enumerate() {
            if let Some(s) = w {
                writeln!(out, "w {v}{}", join(s.iter().copied())).unwrap();
            }
        }
    }
    out
}

/// `principal <node> <vertex>` per tree node, then `path <node> <v1> ...`
/// for the edge from each non-root node to its parent.
pub fn embedding(e: &Embedding) -> String {
    let mut out = String::new();
    for (c, v) in e.principal.iter().enumerate() {
        writeln!(out, "principal {c} {v}").unwrap();
    }
    for (c, path) in e.paths.iter().enumerate().skip(1) {
        writeln!(out, "path {c}{}", join(path.iter().copied())).unwrap();
    }
    out
}

pub fn components(parts: &[Vec<Vertex>]) -> String {
    parts
        .iter()
        .map(|p| format!("c{}\n", join(p.iter().copied())))
        .collect()
}

pub fn halfgraph(w: &HalfgraphWitness) -> String {
    format!("u{}\nw{}\n", join(w.u.iter().copied()), join(w.w.iter().copied()))
}

pub fn labd(report: &LabdReport) -> String {
    let mut out = format!("labd {}\n", report.holds());
    if !report.skipped.is_empty() {
        writeln!(out, "skipped{}", join(report.skipped.iter().copied())).unwrap();
    }
    if let Some(f) = &report.failure {
        writeln!(out, "fail {} {}{}", f.r, f.v, join(f.offending.iter().copied())).unwrap();
    }
    out
}

pub fn near_covered(report: &NearCoveredReport) -> String {
    let mode = match report.mode {
        CoverMode::Exact => "exact",
        CoverMode::Greedy if report.holds => "greedy-inconclusive",
        CoverMode::Greedy => "greedy",
    };
    let mut out = format!("near-covered {} {mode}\n", report.holds);
    if let Some(cert) = &report.certificate {
        writeln!(out, "cert{}", join(cert.iter().copied())).unwrap();
    }
    out
}

/// Prefixes every line with `# `, so the text can trail a graph file.
pub fn as_comments(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}
