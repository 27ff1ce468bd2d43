//! Undirected simple graphs over labeled vertices.
//!
//! Vertices keep their insertion order, which also fixes the dense index used
//! by every solver. Graph values are never mutated in place: edge removal and
//! addition return a new graph.

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{Bits, WideBits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownEndpoint(String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("edge {0} {1} is not in the graph")]
    UnknownEdge(String, String),
    #[error("edge {0} {1} is already present")]
    EdgeAlreadyPresent(String, String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Vertex name: nonempty, no whitespace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Self, GraphError> {
        let s = s.into();
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(GraphError::InvalidLabel(s));
        }
        Ok(Label(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Label {
    type Error = GraphError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Label::new(s)
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.0
    }
}

impl Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone)]
pub struct Graph {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    adj: Vec<WideBits>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from explicit vertex and edge lists.
    pub fn from_edge_list<V, A, B>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self, GraphError>
    where
        V: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = Graph::empty();
        for v in vertices {
            g.push_vertex(v.as_ref())?;
        }
        g.ensure_adj();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = g.endpoint(a)?;
            let j = g.endpoint(b)?;
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if g.adj[i].contains(j) {
                let (x, y) = normalized(a, b);
                return Err(GraphError::DuplicateEdge(x.to_string(), y.to_string()));
            }
            g.link(i, j);
        }
        Ok(g)
    }

    fn empty() -> Self {
        Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            edge_count: 0,
        }
    }

    fn push_vertex(&mut self, name: &str) -> Result<(), GraphError> {
        let label = Label::new(name)?;
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateLabel(name.to_string()));
        }
        self.index.insert(label.clone(), self.labels.len());
        self.labels.push(label);
        Ok(())
    }

    fn endpoint(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEndpoint(name.to_string()))
    }

    fn link(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        self.edge_count += 1;
    }

    fn unlink(&mut self, i: usize, j: usize) {
        self.adj[i].remove(j);
        self.adj[j].remove(i);
        self.edge_count -= 1;
    }

    fn ensure_adj(&mut self) {
        let n = self.labels.len();
        if self.adj.len() != n {
            self.adj = vec![WideBits::empty(n); n];
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Result<usize, GraphError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.has_edge_idx(i, j),
            _ => false,
        }
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Neighbor indices of vertex `i`, ascending.
    pub fn neighbor_indices(&self, i: usize) -> Vec<usize> {
        self.adj[i].members()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    /// Open neighborhoods packed into the bitset type `B`.
    pub(crate) fn open_sets<B: Bits>(&self) -> Vec<B> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                let mut s = B::empty(n);
                for j in self.neighbor_indices(i) {
                    s.insert(j);
                }
                s
            })
            .collect()
    }

    /// N(v), in vertex order.
    pub fn open_neighbors(&self, v: &str) -> Result<Vec<Label>, GraphError> {
        let i = self.index_of(v)?;
        Ok(self.to_labels(self.neighbor_indices(i)))
    }

    /// N[v], in vertex order.
    pub fn closed_neighbors(&self, v: &str) -> Result<Vec<Label>, GraphError> {
        let i = self.index_of(v)?;
        let mut idx = self.neighbor_indices(i);
        idx.push(i);
        idx.sort_unstable();
        Ok(self.to_labels(idx))
    }

    pub fn to_labels(&self, idx: impl IntoIterator<Item = usize>) -> Vec<Label> {
        idx.into_iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Resolves labels to sorted, deduplicated dense indices.
    pub fn to_indices<S: AsRef<str>>(
        &self,
        set: impl IntoIterator<Item = S>,
    ) -> Result<Vec<usize>, GraphError> {
        let mut out = set
            .into_iter()
            .map(|v| self.index_of(v.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Edges as dense index pairs `(i, j)` with `i < j`, sorted.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for i in 0..self.vertex_count() {
            self.adj[i].for_each(|j| {
                if j > i {
                    out.push((i, j));
                }
            });
        }
        out
    }

    /// Edges as normalized label pairs (lexicographically smaller label
    /// first), ordered by dense index pair.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| self.label_pair(i, j))
            .collect()
    }

    pub fn label_pair(&self, i: usize, j: usize) -> (Label, Label) {
        let (a, b) = normalized(self.labels[i].as_str(), self.labels[j].as_str());
        (Label(a.to_string()), Label(b.to_string()))
    }

    /// All unordered non-adjacent vertex pairs, ordered by dense index pair.
    pub fn complement_edge_indices(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.has_edge_idx(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement_edges(&self) -> Vec<(Label, Label)> {
        self.complement_edge_indices()
            .into_iter()
            .map(|(i, j)| self.label_pair(i, j))
            .collect()
    }

    pub fn isolated_indices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&i| self.degree(i) == 0)
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<Label> {
        self.to_labels(self.isolated_indices())
    }

    /// Two-coloring (0/1 per vertex index) if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<u8>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for y in self.neighbor_indices(x) {
                    match color[y] {
                        None => {
                            color[y] = Some(1 - cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// G − B. Every pair in `edges` must be an edge of `self`.
    pub fn remove_edges<A: AsRef<str>, B: AsRef<str>>(
        &self,
        edges: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let missing = || {
                let (x, y) = normalized(a, b);
                GraphError::UnknownEdge(x.to_string(), y.to_string())
            };
            let i = g.index.get(a).copied().ok_or_else(missing)?;
            let j = g.index.get(b).copied().ok_or_else(missing)?;
            if !g.has_edge_idx(i, j) {
                return Err(missing());
            }
            g.unlink(i, j);
        }
        Ok(g)
    }

    /// G + R. Pairs must be absent from `self` and join distinct vertices.
    pub fn add_edges<A: AsRef<str>, B: AsRef<str>>(
        &self,
        edges: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = g.endpoint(a)?;
            let j = g.endpoint(b)?;
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if g.has_edge_idx(i, j) {
                let (x, y) = normalized(a, b);
                return Err(GraphError::EdgeAlreadyPresent(x.to_string(), y.to_string()));
            }
            g.link(i, j);
        }
        Ok(g)
    }

    pub(crate) fn remove_edge_indices(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(i, j) in edges {
            g.unlink(i, j);
        }
        g
    }

    pub(crate) fn add_edge_indices(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(i, j) in edges {
            g.link(i, j);
        }
        g
    }

    /// Serializes to the line-oriented graph text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p graph {} {}", self.vertex_count(), self.edge_count());
        for l in &self.labels {
            let _ = writeln!(out, "v {l}");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }

    /// Parses the graph text format: `p graph <n> <m>`, `v <label>` lines,
    /// `e <a> <b>` lines, `#` comments.
    pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut vertices: Vec<&str> = Vec::new();
        let mut edges: Vec<(&str, &str, usize)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| GraphError::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "graph", n, m] => {
                    if header.is_some() {
                        return Err(err("duplicate header"));
                    }
                    let n = n.parse().map_err(|_| err("bad vertex count"))?;
                    let m = m.parse().map_err(|_| err("bad edge count"))?;
                    header = Some((n, m, line_no));
                }
                ["v", label] if header.is_some() => vertices.push(label),
                ["e", a, b] if header.is_some() => edges.push((a, b, line_no)),
                ["v", ..] | ["e", ..] if header.is_none() => {
                    return Err(err("record before `p graph` header"))
                }
                _ => return Err(err("unrecognized line")),
            }
        }
        let (n, m, header_line) = header.ok_or(GraphError::Parse {
            line: 1,
            msg: "missing `p graph` header".into(),
        })?;
        if vertices.len() != n || edges.len() != m {
            return Err(GraphError::Parse {
                line: header_line,
                msg: format!(
                    "header declares {n} vertices and {m} edges, found {} and {}",
                    vertices.len(),
                    edges.len()
                ),
            });
        }
        let mut g = Graph::empty();
        for v in vertices {
            g.push_vertex(v)?;
        }
        g.ensure_adj();
        let mut seen = HashSet::new();
        for (a, b, _) in edges {
            let i = g.endpoint(a)?;
            let j = g.endpoint(b)?;
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                let (x, y) = normalized(a, b);
                return Err(GraphError::DuplicateEdge(x.to_string(), y.to_string()));
            }
            g.link(i, j);
        }
        Ok(g)
    }

    /// Undirected DOT rendering, one edge per line.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{l}\";");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

fn normalized<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edge_list(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        Graph::from_edge_list(&names, edges).unwrap()
    }

    fn names(ls: &[Label]) -> Vec<&str> {
        ls.iter().map(Label::as_str).collect()
    }

    #[test]
    fn construction_and_errors() {
        let g = Graph::from_edge_list(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = p3();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(
            Graph::from_edge_list(["a", "b"], [("a", "a")]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            Graph::from_edge_list(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Graph::from_edge_list(["a"], [("a", "z")]),
            Err(GraphError::UnknownEndpoint("z".into()))
        );
        assert_eq!(
            Graph::from_edge_list(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge("a".into(), "b".into()))
        );
        assert!(matches!(
            Graph::from_edge_list(["a b"], Vec::<(&str, &str)>::new()),
            Err(GraphError::InvalidLabel(_))
        ));
    }

    #[test]
    fn neighborhoods() {
        let g = p3();
        assert_eq!(names(&g.open_neighbors("b").unwrap()), ["a", "c"]);
        assert_eq!(names(&g.open_neighbors("a").unwrap()), ["b"]);
        assert_eq!(names(&g.closed_neighbors("b").unwrap()), ["a", "b", "c"]);
        assert_eq!(names(&g.closed_neighbors("a").unwrap()), ["a", "b"]);
        let single = Graph::from_edge_list(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(single.open_neighbors("a").unwrap().is_empty());
        assert_eq!(names(&single.closed_neighbors("a").unwrap()), ["a"]);
        assert_eq!(
            g.open_neighbors("zz"),
            Err(GraphError::UnknownVertex("zz".into()))
        );
    }

    #[test]
    fn bipartite_cycles() {
        assert!(cycle(6).is_bipartite());
        assert!(!cycle(5).is_bipartite());
        let g = cycle(6);
        let col = g.two_coloring().unwrap();
        for (i, j) in g.edge_indices() {
            assert_ne!(col[i], col[j]);
        }
    }

    #[test]
    fn edge_removal_and_addition() {
        let g = p3();
        let h = g.remove_edges([("a", "b")]).unwrap();
        assert_eq!(names(&h.isolated_vertices()), ["a"]);
        assert_eq!(
            h.edges(),
            vec![(Label::new("b").unwrap(), Label::new("c").unwrap())]
        );
        assert_eq!(g.remove_edges(Vec::<(&str, &str)>::new()).unwrap(), g);
        assert_eq!(
            g.remove_edges([("a", "c")]),
            Err(GraphError::UnknownEdge("a".into(), "c".into()))
        );
        let c4 = cycle(4);
        let two = c4.remove_edges([("x0", "x1"), ("x2", "x3")]).unwrap();
        assert_eq!(two.edge_count(), 2);
        assert!(two.isolated_vertices().is_empty());

        assert_eq!(
            g.add_edges([("a", "b")]),
            Err(GraphError::EdgeAlreadyPresent("a".into(), "b".into()))
        );
        assert_eq!(
            g.add_edges([("a", "a")]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            g.add_edges([("a", "q")]),
            Err(GraphError::UnknownEndpoint("q".into()))
        );
        let k3 = g.add_edges([("c", "a")]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(h.add_edges([("a", "b")]).unwrap(), g);
    }

    #[test]
    fn complement_and_isolated() {
        let k3 = cycle(3);
        assert!(k3.complement_edges().is_empty());
        assert_eq!(
            p3().complement_edges(),
            vec![(Label::new("a").unwrap(), Label::new("c").unwrap())]
        );
        let e3 = Graph::from_edge_list(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(e3.complement_edges().len(), 3);
        assert!(p3().isolated_vertices().is_empty());
        let e2 = Graph::from_edge_list(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(names(&e2.isolated_vertices()), ["a", "b"]);
    }

    #[test]
    fn edges_normalize_lexicographically() {
        let g = Graph::from_edge_list(["z", "a"], [("z", "a")]).unwrap();
        assert_eq!(g.edges()[0].0.as_str(), "a");
        assert!(g.to_text().contains("e a z"));
    }

    #[test]
    fn text_format_round_trip() {
        let g = cycle(5);
        let text = g.to_text();
        assert!(text.starts_with("p graph 5 5\nv x0\n"));
        let back = Graph::parse_text(&format!("# comment\n{text}")).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.labels(), g.labels());
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            Graph::parse_text("v a\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_text("p graph 2 1\nv a\nv b\n"),
            Err(GraphError::Parse { .. })
        ));
        assert_eq!(
            Graph::parse_text("p graph 1 1\nv a\ne a a\n"),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert!(matches!(
            Graph::parse_text("p graph 1 0\nv a\nx\n"),
            Err(GraphError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn dot_export() {
        let dot = p3().to_dot();
        assert!(dot.starts_with("graph {\n"));
        assert!(dot.contains("\"a\" -- \"b\";\n"));
        assert!(dot.ends_with("}\n"));
    }
}
