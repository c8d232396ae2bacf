//! Membership checks for locally almost bounded degree and for
//! (locally) near-covered graphs, driven by parameter functions.
//!
//! A [`ParamFunction`] is evaluated against a budget `n`: it either returns its
//! value, when that value is at most `n`, or reports that it exceeds `n`.
//! Checks only ever need values up to the size of the graph.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::caps::{Budget, Caps};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::neartwin::symdiff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamValue {
    Value(u64),
    Exceeds,
}

/// Built-in parameter families.
///
/// Spec syntax: `const:c`, `linear:a,b` (`a*r + b`), `exp2` (`2^r`), `tower`
/// (`1, 2, 4, 16, 65536, ...`), `table:v0,v1,...` where an entry may be `over`
/// (larger than any budget) and the last entry repeats for larger `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamFunction {
    Const(u64),
    Linear { a: u64, b: u64 },
    Exp2,
    Tower,
    Table(Vec<Option<u64>>),
}

impl ParamFunction {
    pub fn eval(&self, r: u64, budget: u64) -> ParamValue {
        let exact: Option<u64> = match self {
            ParamFunction::Const(c) => Some(*c),
            ParamFunction::Linear { a, b } => a.checked_mul(r).and_then(|x| x.checked_add(*b)),
            ParamFunction::Exp2 => u32::try_from(r).ok().and_then(|r| 1u64.checked_shl(r)),
            ParamFunction::Tower => {
                let mut value: u64 = 1;
                let mut ok = true;
                for _ in 0..r {
                    if value >= 64 {
                        ok = false;
                        break;
                    }
                    value = 1u64 << value;
                }
                ok.then_some(value)
            }
            ParamFunction::Table(values) => {
                let idx = (r as usize).min(values.len() - 1);
                values[idx]
            }
        };
        match exact {
            Some(v) if v <= budget => ParamValue::Value(v),
            _ => ParamValue::Exceeds,
        }
    }
}

impl FromStr for ParamFunction {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |msg: &str| Error::ParamSpec(format!("`{spec}`: {msg}"));
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        let (name, arg) = match spec.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (spec, None),
        };
        match (name, arg) {
            ("const", Some(c)) => Ok(ParamFunction::Const(num(c)?)),
            ("linear", Some(ab)) => {
                let (a, b) = ab.split_once(',').ok_or_else(|| bad("expected linear:a,b"))?;
                Ok(ParamFunction::Linear { a: num(a)?, b: num(b)? })
            }
            ("exp2", None) => Ok(ParamFunction::Exp2),
            ("tower", None) => Ok(ParamFunction::Tower),
            ("table", Some(list)) => {
                let values = list
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| if s == "over" { Ok(None) } else { num(s).map(Some) })
                    .collect::<Result<Vec<_>>>()?;
                if values.is_empty() {
                    return Err(bad("empty table"));
                }
                Ok(ParamFunction::Table(values))
            }
            _ => Err(bad("unknown function")),
        }
    }
}

impl fmt::Display for ParamFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamFunction::Const(c) => write!(f, "const:{c}"),
            ParamFunction::Linear { a, b } => write!(f, "linear:{a},{b}"),
            ParamFunction::Exp2 => write!(f, "exp2"),
            ParamFunction::Tower => write!(f, "tower"),
            ParamFunction::Table(values) => {
                write!(f, "table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    match v {
                        Some(v) => write!(f, "{v}")?,
                        None => write!(f, "over")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// `f` bounds the number of high-degree vertices per ball, `d` the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub f: ParamFunction,
    pub d: ParamFunction,
}

/// A ball `N_r(v)` containing too many vertices of degree above `d(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabdFailure {
    pub r: usize,
    pub v: Vertex,
    pub offending: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabdReport {
    /// First failure, ordered by `(r, v)`.
    pub failure: Option<LabdFailure>,
    /// Radii skipped because `f(r)` or `d(r)` exceeds `n`.
    pub skipped: Vec<usize>,
    pub r_max: usize,
}

impl LabdReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks every radius `r <= n`; larger radii give the same balls.
pub fn labd_check(g: &Graph, spec: &ClassSpec) -> LabdReport {
    labd_check_upto(g, spec, g.n())
}

/// Checks radii `0..=r_max` only, which is weaker than [`labd_check`] when
/// `r_max < n`.
pub fn labd_check_upto(g: &Graph, spec: &ClassSpec, r_max: usize) -> LabdReport {
    let n = g.n() as u64;
    let mut skipped = Vec::new();
    let mut radii = Vec::new();
    for r in 0..=r_max {
        match (spec.f.eval(r as u64, n), spec.d.eval(r as u64, n)) {
            (ParamValue::Value(f), ParamValue::Value(d)) => radii.push((r, f as usize, d as usize)),
            _ => skipped.push(r),
        }
    }
    // per vertex: the first failing radius on the list
    let failure = g
        .vertices()
        .into_par_iter()
        .filter_map(|v| {
            let dist = g.distances_from(v);
            radii.iter().find_map(|&(r, f, d)| {
                let offending: VertexSet = g
                    .vertices()
                    .filter(|&u| dist[u].is_some_and(|du| du <= r) && g.degree(u) > d)
                    .collect();
                (offending.len() > f).then_some(LabdFailure { r, v, offending })
            })
        })
        .min_by_key(|fail| (fail.r, fail.v));
    LabdReport {
        failure,
        skipped,
        r_max,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Exhaustive search; both verdicts are exact.
    Exact,
    /// Greedy by smallest id; only a negative verdict is conclusive.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearCoveredReport {
    pub holds: bool,
    pub mode: CoverMode,
    /// `m + 1` pairwise non-near-twins when the check fails.
    pub certificate: Option<Vec<Vertex>>,
}

impl NearCoveredReport {
    /// Whether the verdict is guaranteed correct.
    pub fn conclusive(&self) -> bool {
        self.mode == CoverMode::Exact || !self.holds
    }
}

/// Is every set of pairwise non-`k`-near-twins of size at most `m`?
/// Equivalently: does `NT_k(G)` have no independent set of size `m + 1`?
pub fn near_covered_check(g: &Graph, k: usize, m: usize, mode: CoverMode, caps: &Caps) -> Result<NearCoveredReport> {
    let target = m + 1;
    let twins = |u: Vertex, v: Vertex| symdiff(g, u, v).map(|s| s <= k).unwrap_or(true);
    let found = if target > g.n() {
        None
    } else {
        match mode {
            CoverMode::Greedy => {
                let mut chosen: Vec<Vertex> = Vec::new();
                for v in g.vertices() {
                    if chosen.iter().all(|&u| !twins(u, v)) {
                        chosen.push(v);
                        if chosen.len() == target {
                            break;
                        }
                    }
                }
                (chosen.len() == target).then_some(chosen)
            }
            CoverMode::Exact => {
                let n = g.n();
                let far: Vec<Vec<bool>> = (0..n)
                    .map(|u| (0..n).map(|v| u != v && !twins(u.min(v), u.max(v))).collect())
                    .collect();
                let mut budget = Budget::new(caps.nodes, "near-covered search");
                let mut chosen = Vec::with_capacity(target);
                let candidates: Vec<Vertex> = g.vertices().collect();
                independent(&far, &candidates, target, &mut chosen, &mut budget)?.then_some(chosen)
            }
        }
    };
    Ok(NearCoveredReport {
        holds: found.is_none(),
        mode,
        certificate: found,
    })
}

/// Extends `chosen` to `target` vertices pairwise `far`, using `candidates`.
fn independent(
    far: &[Vec<bool>],
    candidates: &[Vertex],
    target: usize,
    chosen: &mut Vec<Vertex>,
    budget: &mut Budget,
) -> Result<bool> {
    if chosen.len() == target {
        return Ok(true);
    }
    for (i, &v) in candidates.iter().enumerate() {
        if chosen.len() + (candidates.len() - i) < target {
            break;
        }
        budget.tick()?;
        let rest: Vec<Vertex> = candidates[i + 1..].iter().copied().filter(|&u| far[v][u]).collect();
        if chosen.len() + 1 + rest.len() < target {
            continue;
        }
        chosen.push(v);
        if independent(far, &rest, target, chosen, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// A ball whose induced subgraph is not `(k(r), m(r))`-near-covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCoverFailure {
    pub r: usize,
    pub v: Vertex,
    /// Pairwise non-near-twins inside the ball, in original ids.
    pub certificate: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCoverReport {
    pub failure: Option<LocalCoverFailure>,
    pub mode: CoverMode,
    pub r_max: usize,
}

impl LocalCoverReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs [`near_covered_check`] on the subgraph induced by every ball
/// `N_r(v)`, `r <= r_max`. Radii where `m(r)` exceeds `n` hold trivially.
/// When `k(r)` exceeds `2n` every pair is a near-twin, so `2n` is used.
pub fn locally_near_covered_check(
    g: &Graph,
    kf: &ParamFunction,
    mf: &ParamFunction,
    r_max: usize,
    mode: CoverMode,
    caps: &Caps,
) -> Result<LocalCoverReport> {
    let n = g.n() as u64;
    for r in 0..=r_max {
        let ParamValue::Value(m) = mf.eval(r as u64, n) else {
            continue;
        };
        let k = match kf.eval(r as u64, 2 * n) {
            ParamValue::Value(k) => k,
            ParamValue::Exceeds => 2 * n,
        };
        for v in g.vertices() {
            let ball = g.closed_ball(v, r);
            if ball.len() as u64 <= m {
                continue;
            }
            let (sub, old_ids) = g.induced(&ball)?;
            let report = near_covered_check(&sub, k as usize, m as usize, mode, caps)?;
            if let Some(cert) = report.certificate {
                return Ok(LocalCoverReport {
                    failure: Some(LocalCoverFailure {
                        r,
                        v,
                        certificate: cert.into_iter().map(|x| old_ids[x]).collect(),
                    }),
                    mode,
                    r_max,
                });
            }
        }
    }
    Ok(LocalCoverReport {
        failure: None,
        mode,
        r_max,
    })
}

/// Order of the half-graph that a locally near-covered class excludes:
/// `m(2) * k(2) + m(2) + 1`.
pub fn no_ladder_bound(k2: u64, m2: u64) -> Result<u64> {
    m2.checked_mul(k2)
        .and_then(|x| x.checked_add(m2))
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("no_ladder_bound"))
}
