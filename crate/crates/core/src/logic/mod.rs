//! First-order formulas over the graph signature (`E`, `=`, unary predicates),
//! brute-force evaluation and simple interpretations.
//!
//! Evaluation enumerates quantified variables over all vertices, so a formula
//! of quantifier depth `q` costs `O(n^q)` per assignment.

mod sexpr;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub use sexpr::parse_formula;

pub type Var = String;

pub type Assignment = BTreeMap<Var, Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Edge(Var, Var),
    Pred(String, Var),
    Eq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn edge(x: &str, y: &str) -> Self {
        Formula::Edge(x.into(), y.into())
    }

    pub fn pred(name: &str, x: &str) -> Self {
        Formula::Pred(name.into(), x.into())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn negate(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: impl IntoIterator<Item = Formula>) -> Self {
        Formula::And(fs.into_iter().collect())
    }

    pub fn or(fs: impl IntoIterator<Item = Formula>) -> Self {
        Formula::Or(fs.into_iter().collect())
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Var>) {
        let mut visit = |v: &Var, bound: &Vec<&str>| {
            if !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Edge(x, y) | Formula::Eq(x, y) => {
                visit(x, bound);
                visit(y, bound);
            }
            Formula::Pred(_, x) => visit(x, bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Edge(..) | Formula::Pred(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }
}

/// Innermost binding last.
struct Env<'a> {
    bindings: Vec<(&'a str, Vertex)>,
}

impl Env<'_> {
    fn get(&self, x: &str) -> Vertex {
        self.bindings
            .iter()
            .rev()
            .find(|(name, _)| *name == x)
            .map(|&(_, v)| v)
            .expect("free variables are checked before evaluation")
    }
}

fn eval<'a>(g: &Graph, f: &'a Formula, env: &mut Env<'a>) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Edge(x, y) => {
            let (u, v) = (env.get(x), env.get(y));
            u != v && g.has_edge(u, v)
        }
        Formula::Pred(p, x) => g.has_label(p, env.get(x)),
        Formula::Eq(x, y) => env.get(x) == env.get(y),
        Formula::Not(f) => !eval(g, f, env),
        Formula::And(fs) => fs.iter().all(|f| eval(g, f, env)),
        Formula::Or(fs) => fs.iter().any(|f| eval(g, f, env)),
        Formula::Exists(x, body) => {
            let mut found = false;
            for v in g.vertices() {
                env.bindings.push((x, v));
                found = eval(g, body, env);
                env.bindings.pop();
                if found {
                    break;
                }
            }
            found
        }
        Formula::Forall(x, body) => {
            let mut all = true;
            for v in g.vertices() {
                env.bindings.push((x, v));
                all = eval(g, body, env);
                env.bindings.pop();
                if !all {
                    break;
                }
            }
            all
        }
    }
}

fn check_assignment(g: &Graph, f: &Formula, assignment: &Assignment) -> Result<()> {
    for x in f.free_vars() {
        match assignment.get(&x) {
            None => return Err(Error::UnboundVariable(x)),
            Some(&v) if v >= g.n() => return Err(Error::VertexOutOfRange { vertex: v, n: g.n() }),
            Some(_) => {}
        }
    }
    Ok(())
}

/// Decides `g |= f[assignment]` by direct recursion.
pub fn evaluate(g: &Graph, f: &Formula, assignment: &Assignment) -> Result<bool> {
    check_assignment(g, f, assignment)?;
    let mut env = Env {
        bindings: assignment.iter().map(|(k, &v)| (k.as_str(), v)).collect(),
    };
    Ok(eval(g, f, &mut env))
}

/// Evaluates a formula whose free variables are among `x` and `y`.
fn eval_pair(g: &Graph, f: &Formula, u: Vertex, v: Vertex) -> bool {
    let mut env = Env {
        bindings: vec![(X, u), (Y, v)],
    };
    eval(g, f, &mut env)
}

pub const X: &str = "x";
pub const Y: &str = "y";

/// A simple interpretation `(psi(x, y), delta(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub psi: Formula,
    pub delta: Formula,
}

impl Interpretation {
    pub fn new(psi: Formula, delta: Formula) -> Result<Self> {
        if let Some(x) = psi.free_vars().into_iter().find(|v| v != X && v != Y) {
            return Err(Error::UnboundVariable(x));
        }
        if let Some(x) = delta.free_vars().into_iter().find(|v| v != X) {
            return Err(Error::UnboundVariable(x));
        }
        Ok(Interpretation { psi, delta })
    }
}

/// Applies `i` to `g`. Kept vertices are renumbered densely in increasing order;
/// the returned table maps new ids to old ids. An edge `uv` (`u != v`) is
/// present iff `psi(u, v)` or `psi(v, u)` holds, so the result is a simple graph
/// even when `psi` is not symmetric. Predicates of `g` are carried over,
/// restricted to the kept vertices.
pub fn apply_interpretation(g: &Graph, i: &Interpretation) -> Result<(Graph, Vec<Vertex>)> {
    let i = Interpretation::new(i.psi.clone(), i.delta.clone())?;
    let kept: VertexSet = g.vertices().filter(|&v| eval_pair(g, &i.delta, v, v)).collect();
    let (mut out, old_ids) = g.induced(&kept)?;
    let k = old_ids.len();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let (u, v) = (old_ids[a], old_ids[b]);
            if eval_pair(g, &i.psi, u, v) || eval_pair(g, &i.psi, v, u) {
                edges.push((a, b));
            }
        }
    }
    let mut fresh = Graph::from_edges(k, edges)?;
    for (name, set) in out.predicates() {
        fresh.set_predicate(name, set.clone())?;
    }
    out = fresh;
    Ok((out, old_ids))
}

/// First ordered pair `(u, v)` at distance greater than `b` (or disconnected)
/// with `g |= psi(u, v)`, if any.
pub fn range_violation(g: &Graph, psi: &Formula, b: usize) -> Result<Option<(Vertex, Vertex)>> {
    if let Some(x) = psi.free_vars().into_iter().find(|v| v != X && v != Y) {
        return Err(Error::UnboundVariable(x));
    }
    for u in g.vertices() {
        let dist = g.distances_from(u);
        for v in g.vertices() {
            let far = dist[v].is_none_or(|d| d > b);
            if far && eval_pair(g, psi, u, v) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

/// Empirical range check on one graph: true iff no pair at distance `> b`
/// satisfies `psi`.
pub fn check_range(g: &Graph, psi: &Formula, b: usize) -> Result<bool> {
    Ok(range_violation(g, psi, b)?.is_none())
}

/// Predicate marking apex vertices of a sparsified graph.
pub const APEX: &str = "R";
/// Predicate marking apexes whose part was flipped with itself.
pub const SELF_FLIP: &str = "F";

/// The fixed interpretation that undoes the sparsifier.
///
/// `psi(x, y)` is `E(x, y)` exclusive-or `C(x, y)`, where `C` holds when `x`
/// and `y` share an `R`-neighbour that is also `F`-marked, or when they have
/// distinct `R`-neighbours that are adjacent. `delta(x)` is `not R(x)`.
pub fn recovery_interpretation() -> Interpretation {
    let shared_self_flip = Formula::exists(
        "w",
        Formula::and([
            Formula::pred(APEX, "w"),
            Formula::pred(SELF_FLIP, "w"),
            Formula::edge(X, "w"),
            Formula::edge(Y, "w"),
        ]),
    );
    let adjacent_apexes = Formula::exists(
        "a",
        Formula::and([
            Formula::pred(APEX, "a"),
            Formula::edge(X, "a"),
            Formula::exists(
                "b",
                Formula::and([
                    Formula::pred(APEX, "b"),
                    Formula::negate(Formula::eq("a", "b")),
                    Formula::edge(Y, "b"),
                    Formula::edge("a", "b"),
                ]),
            ),
        ]),
    );
    let complemented = Formula::or([shared_self_flip, adjacent_apexes]);
    let psi = Formula::or([
        Formula::and([Formula::edge(X, Y), Formula::negate(complemented.clone())]),
        Formula::and([Formula::negate(Formula::edge(X, Y)), complemented]),
    ]);
    let delta = Formula::negate(Formula::pred(APEX, X));
    Interpretation { psi, delta }
}
