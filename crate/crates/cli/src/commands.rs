use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rankflip_core::generate::{self, RANDOM_SCHEME};
use rankflip_core::io::{parse_graph, write_graph};
use rankflip_core::labd::{self, ClassSpec, CoverMode, ParamFunction};
use rankflip_core::logic::{apply_interpretation, recovery_interpretation};
use rankflip_core::neartwin::{self, find_halfgraph, neartwin_view};
use rankflip_core::ranking::{compute_ranking, Rank};
use rankflip_core::shallow::{self, contains_shallow_tree, extract_shallow_tree};
use rankflip_core::sparsify::{self, build_sparsifier, recover, sflip_driver};
use rankflip_core::{Caps, Error, Graph};

use crate::{format, BoundsArgs, Cli, Command, Family, GenKind, Global};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Verdict {
    True = 0,
    False = 1,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

pub fn exit_status(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::ScaleExceeded(_) | Error::Overflow(_) => 3,
                _ => 2,
            };
        }
    }
    2
}

fn read_graph(global: &Global) -> Result<Graph> {
    let text = match &global.input {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
    };
    parse_graph(&text).map_err(Error::from).context("parsing graph")
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn note(global: &Global, msg: impl AsRef<str>) {
    if !global.quiet {
        eprintln!("{}", msg.as_ref());
    }
}

fn caps(global: &Global) -> Caps {
    Caps {
        nodes: global.cap_nodes,
        branches: global.cap_branch,
    }
}

/// `table:<file>` reads the values from a file; everything else is inline.
fn param(spec: &str) -> Result<ParamFunction> {
    match spec.parse::<ParamFunction>() {
        Ok(f) => Ok(f),
        Err(err) => match spec.strip_prefix("table:").filter(|p| Path::new(p).is_file()) {
            Some(path) => {
                let values = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                Ok(format!("table:{values}").parse()?)
            }
            None => Err(err.into()),
        },
    }
}

fn numbers<const N: usize>(flag: &str, text: &str) -> Result<[u64; N]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(Error::Precondition(format!("--{flag} takes {N} comma-separated numbers")).into());
    }
    let mut out = [0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("--{flag}: `{part}` is not a number")))?;
    }
    Ok(out)
}

fn bounds(args: &BoundsArgs) -> Result<u64> {
    let value = if let Some(s) = &args.g {
        let [c, k, t] = numbers("g", s)?;
        neartwin::g_bound(c, k, t)?
    } else if let Some(s) = &args.h {
        let [k, t] = numbers("h", s)?;
        neartwin::h_bound(k, t)?
    } else if let Some(s) = &args.w {
        let [d, m, r] = numbers("w", s)?;
        shallow::w_count(d, m, r)?
    } else if let Some(s) = &args.m_prime {
        let [d, r, m] = numbers("m-prime", s)?;
        shallow::m_prime(d, r, m)?
    } else if let Some(s) = &args.ladder {
        let [k2, m2] = numbers("ladder", s)?;
        labd::no_ladder_bound(k2, m2)?
    } else if let Some(s) = &args.theorem_h {
        let [k3, k2, m2] = numbers("theorem-h", s)?;
        sparsify::theorem_h(k3, k2, m2)?
    } else {
        bail!("no bound requested");
    };
    Ok(value)
}

fn generate(kind: GenKind, depth: usize, branch: usize, order: usize, n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("--p {p} is not a probability")).into());
    }
    Ok(match kind {
        GenKind::Tree => generate::gen_tree(depth, branch),
        GenKind::Halfgraph => generate::gen_halfgraph(order),
        GenKind::Random => generate::gen_random(n, p, seed),
        GenKind::Complete => generate::complete(n),
        GenKind::Bipartite => generate::complete_bipartite(n, n),
        GenKind::Cycle => {
            if n < 3 {
                return Err(Error::Precondition("a cycle needs at least 3 vertices".into()).into());
            }
            generate::cycle(n)
        }
    })
}

/// Files of a corpus family as `(name, params, graph)`.
fn corpus_entries(cmd: &Command, seed: u64) -> Result<Vec<(String, String, Graph)>> {
    let Command::Corpus {
        family,
        max_depth,
        max_branch,
        max_r,
        max_t,
        count,
        n,
        p,
        ..
    } = cmd
    else {
        unreachable!()
    };
    let mut out = Vec::new();
    match family {
        Family::Trees => {
            for d in 1..=*max_depth {
                for b in 1..=*max_branch {
                    for c in 0..=*max_r {
                        let g = generate::subdivide_uniform(&generate::gen_tree(d, b), c);
                        out.push((
                            format!("tree_d{d}_b{b}_s{c}.txt"),
                            format!("depth={d} branch={b} subdivide={c}"),
                            g,
                        ));
                    }
                }
            }
        }
        Family::Random => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Precondition(format!("--p {p} is not a probability")).into());
            }
            for i in 0..*count {
                let s = seed.wrapping_add(i as u64);
                let g = generate::gen_random(*n, *p, s);
                out.push((
                    format!("random_{i:04}.txt"),
                    format!("n={n} p={p} seed={s} scheme={RANDOM_SCHEME}"),
                    g,
                ));
            }
        }
        Family::Halfgraph => {
            for t in 1..=*max_t {
                out.push((
                    format!("halfgraph_t{t}.txt"),
                    format!("order={t}"),
                    generate::gen_halfgraph(t),
                ));
            }
        }
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<Verdict> {
    let global = &cli.global;
    match &cli.command {
        Command::Gen {
            kind,
            depth,
            branch,
            order,
            n,
            p,
            subdivide,
        } => {
            let g = generate(*kind, *depth, *branch, *order, *n, *p, global.seed)?;
            emit(global, &write_graph(&generate::subdivide_uniform(&g, *subdivide)))?;
            Ok(Verdict::True)
        }
        Command::Rank { r, m, witness } => {
            if *r == 0 {
                return Err(Error::Precondition("--r must be at least 1".into()).into());
            }
            let g = read_graph(global)?;
            let ra = compute_ranking(&g, *r, *m);
            emit(global, &format::ranks(&ra, *witness))?;
            note(
                global,
                format!(
                    "{} of {} ranks finite",
                    ra.ranks.iter().filter(|x| x.is_finite()).count(),
                    g.n()
                ),
            );
            Ok(Verdict::True)
        }
        Command::Certify {
            d,
            m,
            r,
            extract,
            vertex,
        } => {
            let g = read_graph(global)?;
            if !*extract {
                return match contains_shallow_tree(&g, *d, *m, *r, &caps(global))? {
                    Some(e) => {
                        emit(global, &format::embedding(&e))?;
                        Ok(Verdict::True)
                    }
                    None => {
                        emit(global, "absent\n")?;
                        Ok(Verdict::False)
                    }
                };
            }
            let v = vertex.expect("clap enforces --vertex");
            let mp = shallow::m_prime(*d as u64, *r as u64, *m as u64)?;
            let mp = usize::try_from(mp).map_err(|_| Error::Overflow("m'"))?;
            let ra = compute_ranking(&g, *r, mp);
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() }.into());
            }
            if ra.rank(v) <= Rank::Finite(*d as u32) {
                emit(global, &format!("rank {v} {} m' {mp}\n", ra.rank(v)))?;
                return Ok(Verdict::False);
            }
            emit(
                global,
                &format::embedding(&extract_shallow_tree(&g, &ra, v, *d, *m, *r)?),
            )?;
            Ok(Verdict::True)
        }
        Command::Neartwin { k, components } => {
            let g = read_graph(global)?;
            let view = neartwin_view(&g, *k);
            if *components {
                emit(global, &format::components(&view.components))?;
            } else {
                emit(global, &write_graph(&view.nt_graph))?;
            }
            note(global, format!("{} components", view.components.len()));
            Ok(Verdict::True)
        }
        Command::Halfgraph { t } => {
            let g = read_graph(global)?;
            match find_halfgraph(&g, *t, &caps(global))? {
                Some(w) => {
                    emit(global, &format::halfgraph(&w))?;
                    Ok(Verdict::True)
                }
                None => {
                    emit(global, "absent\n")?;
                    Ok(Verdict::False)
                }
            }
        }
        Command::Bounds(args) => {
            emit(global, &format!("{}\n", bounds(args)?))?;
            Ok(Verdict::True)
        }
        Command::LabdCheck { f, d, r_max } => {
            let spec = ClassSpec {
                f: param(f)?,
                d: param(d)?,
            };
            let g = read_graph(global)?;
            let report = match r_max {
                Some(r) => labd::labd_check_upto(&g, &spec, *r),
                None => labd::labd_check(&g, &spec),
            };
            emit(global, &format::labd(&report))?;
            Ok(report.holds().into())
        }
        Command::NearCovered { k, m, exact } => {
            let g = read_graph(global)?;
            let mode = if *exact { CoverMode::Exact } else { CoverMode::Greedy };
            let report = labd::near_covered_check(&g, *k, *m, mode, &caps(global))?;
            emit(global, &format::near_covered(&report))?;
            Ok(report.holds.into())
        }
        Command::Sparsify { k, h, out } => {
            let g = read_graph(global)?;
            let sg = build_sparsifier(&g, *k, *h as usize)?;
            let text = write_graph(&sg.graph);
            match out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    let mut prov = path.clone().into_os_string();
                    prov.push(".prov");
                    fs::write(&prov, sg.provenance()).context("writing provenance")?;
                }
                None => emit(global, &(text + &format::as_comments(&sg.provenance())))?,
            }
            note(
                global,
                format!(
                    "{} parts, {} apexes, {} flipped pairs",
                    sg.partition.len(),
                    sg.apex.len(),
                    sg.flipped_pairs.len()
                ),
            );
            Ok(Verdict::True)
        }
        Command::Recover => {
            let s = read_graph(global)?;
            emit(global, &write_graph(&sparsify::recover_graph(&s)?))?;
            Ok(Verdict::True)
        }
        Command::VerifyRoundtrip { k, h } => {
            let g = read_graph(global)?;
            let sg = build_sparsifier(&g, *k, *h as usize)?;
            sg.validate()?;
            let direct = recover(&sg)?;
            let (via_formula, _) = apply_interpretation(&sg.graph, &recovery_interpretation())?;
            let mut out = String::new();
            for (name, got) in [("recover", &direct), ("formula", &via_formula)] {
                match first_difference(&g, got) {
                    None => writeln!(out, "{name} ok").unwrap(),
                    Some(diff) => writeln!(out, "{name} differs {diff}").unwrap(),
                }
            }
            let ok = direct == g && via_formula == g;
            emit(global, &out)?;
            Ok(ok.into())
        }
        Command::SflipSearch { s, k, h, f, d } => {
            let spec = ClassSpec {
                f: param(f)?,
                d: param(d)?,
            };
            let g = read_graph(global)?;
            match sflip_driver(&g, *s, *k, *h as usize, &spec, &caps(global))? {
                Some(found) => {
                    let mut head = String::new();
                    writeln!(head, "s{}", found.s.iter().map(|v| format!(" {v}")).collect::<String>()).unwrap();
                    for (a, b) in &found.flips {
                        writeln!(head, "flip {a} {b}").unwrap();
                    }
                    writeln!(head, "tried {}", found.tried).unwrap();
                    head.push_str(&found.sparsified.provenance());
                    emit(
                        global,
                        &(format::as_comments(&head) + &write_graph(&found.sparsified.graph)),
                    )?;
                    Ok(Verdict::True)
                }
                None => {
                    emit(global, "absent\n")?;
                    Ok(Verdict::False)
                }
            }
        }
        cmd @ Command::Corpus { dir, .. } => {
            let entries = corpus_entries(cmd, global.seed)?;
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut manifest = String::from("# file\tparameters\n");
            for (name, params, g) in &entries {
                fs::write(dir.join(name), write_graph(g)).with_context(|| format!("writing {name}"))?;
                writeln!(manifest, "{name}\t{params}").unwrap();
            }
            fs::write(dir.join("manifest.tsv"), manifest).context("writing manifest")?;
            note(global, format!("{} files", entries.len()));
            Ok(Verdict::True)
        }
    }
}

/// Describes the first way `got` differs from `want`.
fn first_difference(want: &Graph, got: &Graph) -> Option<String> {
    if want.n() != got.n() {
        return Some(format!("vertices {} {}", want.n(), got.n()));
    }
    for u in want.vertices() {
        if let Some(&v) = want
            .neighbors(u)
            .iter()
            .chain(got.neighbors(u))
            .find(|&&v| want.has_edge(u, v) != got.has_edge(u, v))
        {
            return Some(format!("edge {u} {v}"));
        }
    }
    (want != got).then(|| "predicates".to_string())
}
