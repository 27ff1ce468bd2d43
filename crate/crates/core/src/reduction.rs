//! 3SAT-to-bipartite-graph constructions for the four perturbation
//! parameters, and converters between truth assignments and the dominating
//! sets that encode them.
//!
//! Vertex names: `u<i>` and `nu<i>` for the literals of variable i,
//! `v<i>`, `p<i>`, `q<i>`, `r<i>` for the remaining variable-gadget vertices,
//! `c<j>` for clause j, and `s<k>` (or a lone `s`) for the anchor gadget.
//!
//! | kind                | variable gadget              | anchor                     |
//! |---------------------|------------------------------|----------------------------|
//! | bondage             | 6-cycle u v nu r q p         | path s1 s2 s3, s1/s3 ~ c_j |
//! | total bondage       | K(2,3), {v,q} vs {u,nu,p}    | 6-vertex T, s1/s3 ~ c_j    |
//! | reinforcement       | 6-cycle                      | apex s ~ c_j               |
//! | total reinforcement | K(2,3)                       | path s1 s2 s3, s1 ~ c_j    |

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Assignment, CnfError, CnfInstance, Literal};
use crate::domset::covers;
use crate::graph::{Graph, Label};
use crate::perturb::Parameter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error("assignment does not satisfy the instance")]
    UnsatisfyingAssignment,
    #[error("instance has no variables to anchor the added edge")]
    NoVariables,
    #[error("role map line {line}: {msg}")]
    RoleMap { line: usize, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "literal+")]
    LiteralPos,
    #[serde(rename = "literal-")]
    LiteralNeg,
    #[serde(rename = "cycle-aux")]
    CycleAux,
    #[serde(rename = "clause")]
    ClauseVertex,
    #[serde(rename = "anchor")]
    Anchor,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::LiteralPos => "literal+",
            Role::LiteralNeg => "literal-",
            Role::CycleAux => "cycle-aux",
            Role::ClauseVertex => "clause",
            Role::Anchor => "anchor",
        })
    }
}

impl FromStr for Role {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "literal+" => Role::LiteralPos,
            "literal-" => Role::LiteralNeg,
            "cycle-aux" => Role::CycleAux,
            "clause" => Role::ClauseVertex,
            "anchor" => Role::Anchor,
            other => return Err(format!("unknown role {other:?}")),
        })
    }
}

/// Gadget graph plus the role of each vertex (indexed like the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub kind: Parameter,
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub instance: CnfInstance,
}

/// Dominating set produced from a satisfying assignment, with the edge to
/// add for the reinforcement kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedWitness {
    pub set: Vec<Label>,
    pub added_edge: Option<(Label, Label)>,
}

impl EncodedWitness {
    /// The graph the set dominates: the gadget graph, plus the added edge if any.
    pub fn target_graph(&self, out: &ReductionOutput) -> Graph {
        match &self.added_edge {
            Some(e) => out
                .graph
                .add_edges([e.clone()])
                .expect("added edge is a complement edge"),
            None => out.graph.clone(),
        }
    }
}

pub fn lit_label(l: Literal) -> String {
    if l.is_positive() {
        format!("u{}", l.var())
    } else {
        format!("nu{}", l.var())
    }
}

/// Closed-form vertex count of the gadget graph.
pub fn expected_vertex_count(kind: Parameter, n: usize, m: usize) -> usize {
    match kind {
        Parameter::Bondage => 6 * n + m + 3,
        Parameter::TotalBondage => 5 * n + m + 6,
        Parameter::Reinforcement => 6 * n + m + 1,
        Parameter::TotalReinforcement => 5 * n + m + 3,
    }
}

/// Closed-form edge count of the gadget graph.
pub fn expected_edge_count(kind: Parameter, n: usize, m: usize) -> usize {
    match kind {
        Parameter::Bondage => 6 * n + 5 * m + 2,
        Parameter::TotalBondage => 6 * n + 5 * m + 7,
        Parameter::Reinforcement => 6 * n + 4 * m,
        Parameter::TotalReinforcement => 6 * n + 4 * m + 2,
    }
}

struct Builder {
    vertices: Vec<(String, Role)>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn vertex(&mut self, name: String, role: Role) {
        self.vertices.push((name, role));
    }

    fn edge(&mut self, a: impl Into<String>, b: impl Into<String>) {
        self.edges.push((a.into(), b.into()));
    }

    fn hexagon(&mut self, i: usize) {
        let [u, v, nu, r, q, p] = ["u", "v", "nu", "r", "q", "p"].map(|x| format!("{x}{i}"));
        self.vertex(u.clone(), Role::LiteralPos);
        self.vertex(v.clone(), Role::CycleAux);
        self.vertex(nu.clone(), Role::LiteralNeg);
        self.vertex(r.clone(), Role::CycleAux);
        self.vertex(q.clone(), Role::CycleAux);
        self.vertex(p.clone(), Role::CycleAux);
        self.edge(&u, &v);
        self.edge(&v, &nu);
        self.edge(&nu, &r);
        self.edge(&r, &q);
        self.edge(&q, &p);
        self.edge(&p, &u);
    }

    fn bipartite_five(&mut self, i: usize) {
        let [u, nu, v, p, q] = ["u", "nu", "v", "p", "q"].map(|x| format!("{x}{i}"));
        self.vertex(u.clone(), Role::LiteralPos);
        self.vertex(nu.clone(), Role::LiteralNeg);
        self.vertex(v.clone(), Role::CycleAux);
        self.vertex(p.clone(), Role::CycleAux);
        self.vertex(q.clone(), Role::CycleAux);
        self.edge(&u, &v);
        self.edge(&u, &q);
        self.edge(&nu, &v);
        self.edge(&v, &p);
        self.edge(&p, &q);
        self.edge(&nu, &q);
    }

    fn clauses(&mut self, inst: &CnfInstance) {
        for (j, c) in inst.clauses().iter().enumerate() {
            let cj = format!("c{}", j + 1);
            self.vertex(cj.clone(), Role::ClauseVertex);
            for &l in c.literals() {
                self.edge(&cj, lit_label(l));
            }
        }
    }

    fn anchors(&mut self, names: &[&str]) {
        for s in names {
            self.vertex(s.to_string(), Role::Anchor);
        }
    }

    fn join_clauses(&mut self, anchor: &str, m: usize) {
        for j in 1..=m {
            self.edge(anchor, format!("c{j}"));
        }
    }

    fn finish(self, kind: Parameter, inst: &CnfInstance) -> ReductionOutput {
        let graph = Graph::from_edge_list(
            self.vertices.iter().map(|(v, _)| v.as_str()),
            self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .expect("gadget construction yields a simple graph");
        ReductionOutput {
            kind,
            graph,
            roles: self.vertices.into_iter().map(|(_, r)| r).collect(),
            instance: inst.clone(),
        }
    }
}

pub fn build(kind: Parameter, inst: &CnfInstance) -> ReductionOutput {
    match kind {
        Parameter::Bondage => build_bondage(inst),
        Parameter::TotalBondage => build_total_bondage(inst),
        Parameter::Reinforcement => build_reinforcement(inst),
        Parameter::TotalReinforcement => build_total_reinforcement(inst),
    }
}

fn builder() -> Builder {
    Builder {
        vertices: Vec::new(),
        edges: Vec::new(),
    }
}

pub fn build_bondage(inst: &CnfInstance) -> ReductionOutput {
    let mut b = builder();
    for i in 1..=inst.num_vars() {
        b.hexagon(i);
    }
    b.clauses(inst);
    b.anchors(&["s1", "s2", "s3"]);
    b.edge("s1", "s2");
    b.edge("s2", "s3");
    b.join_clauses("s1", inst.num_clauses());
    b.join_clauses("s3", inst.num_clauses());
    b.finish(Parameter::Bondage, inst)
}

pub fn build_total_bondage(inst: &CnfInstance) -> ReductionOutput {
    let mut b = builder();
    for i in 1..=inst.num_vars() {
        b.bipartite_five(i);
    }
    b.clauses(inst);
    b.anchors(&["s1", "s2", "s3", "s4", "s5", "s6"]);
    for (x, y) in [
        ("s1", "s2"),
        ("s1", "s4"),
        ("s2", "s3"),
        ("s2", "s5"),
        ("s3", "s4"),
        ("s4", "s5"),
        ("s5", "s6"),
    ] {
        b.edge(x, y);
    }
    b.join_clauses("s1", inst.num_clauses());
    b.join_clauses("s3", inst.num_clauses());
    b.finish(Parameter::TotalBondage, inst)
}

pub fn build_reinforcement(inst: &CnfInstance) -> ReductionOutput {
    let mut b = builder();
    for i in 1..=inst.num_vars() {
        b.hexagon(i);
    }
    b.clauses(inst);
    b.anchors(&["s"]);
    b.join_clauses("s", inst.num_clauses());
    b.finish(Parameter::Reinforcement, inst)
}

pub fn build_total_reinforcement(inst: &CnfInstance) -> ReductionOutput {
    let mut b = builder();
    for i in 1..=inst.num_vars() {
        b.bipartite_five(i);
    }
    b.clauses(inst);
    b.anchors(&["s1", "s2", "s3"]);
    b.edge("s1", "s2");
    b.edge("s2", "s3");
    b.join_clauses("s1", inst.num_clauses());
    b.finish(Parameter::TotalReinforcement, inst)
}

impl ReductionOutput {
    pub fn n(&self) -> usize {
        self.instance.num_vars()
    }

    pub fn m(&self) -> usize {
        self.instance.num_clauses()
    }

    pub fn role(&self, v: &str) -> Option<Role> {
        self.graph.index_of(v).ok().map(|i| self.roles[i])
    }

    /// Labels of the variable gadget for variable `i` (1-based).
    pub fn gadget(&self, i: usize) -> Vec<String> {
        let names: &[&str] = match self.kind {
            Parameter::Bondage | Parameter::Reinforcement => &["u", "v", "nu", "r", "q", "p"],
            Parameter::TotalBondage | Parameter::TotalReinforcement => &["u", "nu", "v", "p", "q"],
        };
        names.iter().map(|x| format!("{x}{i}")).collect()
    }

    pub fn anchor_labels(&self) -> Vec<Label> {
        self.labels_with(Role::Anchor)
    }

    pub fn clause_labels(&self) -> Vec<Label> {
        self.labels_with(Role::ClauseVertex)
    }

    fn labels_with(&self, role: Role) -> Vec<Label> {
        self.graph
            .labels()
            .iter()
            .zip(&self.roles)
            .filter(|(_, r)| **r == role)
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// `<label> <role>` per line, in vertex order.
    pub fn role_map_text(&self) -> String {
        self.graph
            .labels()
            .iter()
            .zip(&self.roles)
            .map(|(l, r)| format!("{l} {r}\n"))
            .collect()
    }
}

/// Parses a role map sidecar into `(label, role)` pairs.
pub fn parse_role_map(text: &str) -> Result<Vec<(Label, Role)>, ReductionError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| ReductionError::RoleMap { line: k + 1, msg };
        let mut f = t.split_whitespace();
        let (Some(l), Some(r), None) = (f.next(), f.next(), f.next()) else {
            return Err(err("expected `<label> <role>`".into()));
        };
        let label = Label::new(l).map_err(|e| err(e.to_string()))?;
        out.push((label, r.parse().map_err(err)?));
    }
    Ok(out)
}

/// Encodes a satisfying assignment as a (total) dominating set of the
/// gadget graph, or of the gadget graph plus one edge for the
/// reinforcement kinds.
///
/// Sizes: bondage 2n+1, total bondage 2n+2, reinforcement 2n,
/// total reinforcement 2n+1.
pub fn assignment_to_witness(
    out: &ReductionOutput,
    t: &Assignment,
) -> Result<EncodedWitness, ReductionError> {
    if !out.instance.evaluate(t)? {
        return Err(ReductionError::UnsatisfyingAssignment);
    }
    let n = out.n();
    let mut set: Vec<String> = Vec::new();
    for i in 1..=n {
        let truth = t.value(i as u32);
        let lit = lit_label(Literal::new(i as u32, truth));
        match out.kind {
            Parameter::Bondage | Parameter::Reinforcement => {
                set.push(lit);
                set.push(format!("{}{i}", if truth { "r" } else { "p" }));
            }
            Parameter::TotalBondage | Parameter::TotalReinforcement => {
                set.push(lit);
                set.push(format!("v{i}"));
            }
        }
    }
    // lowest-index true literal is the partner of the added edge
    let first_true = || {
        if n == 0 {
            return Err(ReductionError::NoVariables);
        }
        Ok(lit_label(Literal::new(1, t.value(1))))
    };
    let added = match out.kind {
        Parameter::Bondage => {
            set.push("s2".into());
            None
        }
        Parameter::TotalBondage => {
            set.extend(["s2".into(), "s5".into()]);
            None
        }
        Parameter::Reinforcement => Some(("s".to_string(), first_true()?)),
        Parameter::TotalReinforcement => {
            set.push("s2".into());
            Some(("s2".to_string(), first_true()?))
        }
    };
    let idx = out.graph.to_indices(&set).expect("gadget labels exist");
    Ok(EncodedWitness {
        set: out.graph.to_labels(idx),
        added_edge: added.map(|(a, b)| {
            let i = out.graph.index_of(&a).unwrap();
            let j = out.graph.index_of(&b).unwrap();
            out.graph.label_pair(i, j)
        }),
    })
}

/// t(u_i) = T iff the positive literal vertex `u<i>` is in the set.
pub fn witness_to_assignment<S: AsRef<str>>(
    out: &ReductionOutput,
    set: impl IntoIterator<Item = S>,
) -> Assignment {
    let members: HashSet<String> = set.into_iter().map(|s| s.as_ref().to_string()).collect();
    Assignment::new(
        (1..=out.n())
            .map(|i| members.contains(&format!("u{i}")))
            .collect(),
    )
}

/// Whether `w` dominates its target graph in the sense `kind` requires.
pub fn witness_is_valid(out: &ReductionOutput, w: &EncodedWitness) -> bool {
    let g = w.target_graph(out);
    let idx = g.to_indices(&w.set).expect("witness labels exist");
    covers(&g, &idx, out.kind.domination())
}

/// Size the encoded witness must have for `n` variables.
pub fn encoded_witness_size(kind: Parameter, n: usize) -> usize {
    match kind {
        Parameter::Bondage | Parameter::TotalReinforcement => 2 * n + 1,
        Parameter::TotalBondage => 2 * n + 2,
        Parameter::Reinforcement => 2 * n,
    }
}
