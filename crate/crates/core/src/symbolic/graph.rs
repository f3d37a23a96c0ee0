use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::word::{render_symbols, Symbol, Word};
use crate::error::{DegreeSide, Error, Result};

/// A vertex-labelled directed graph in which every vertex has in- and
/// out-degree at least one. Vertex indices follow the declared symbol order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct DirectedGraph {
    labels: Vec<String>,
    succ: Vec<Vec<Symbol>>,
    pred: Vec<Vec<Symbol>>,
}

/// JSON form: `{"vertices":[...],"edges":[[u,v],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl TryFrom<GraphJson> for DirectedGraph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        build_graph(g.vertices, g.edges)
    }
}

impl From<DirectedGraph> for GraphJson {
    fn from(g: DirectedGraph) -> Self {
        let edges = g
            .edges()
            .map(|(u, v)| (g.labels[u as usize].clone(), g.labels[v as usize].clone()))
            .collect();
        GraphJson {
            vertices: g.labels,
            edges,
        }
    }
}

/// Validates and builds a graph from labelled vertices and edges.
pub fn build_graph<S, I, E>(vertices: I, edges: E) -> Result<DirectedGraph>
where
    S: AsRef<str>,
    I: IntoIterator<Item = S>,
    E: IntoIterator<Item = (S, S)>,
{
    let labels: Vec<String> = vertices.into_iter().map(|s| s.as_ref().to_owned()).collect();
    let mut index = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i as Symbol).is_some() {
            return Err(Error::DuplicateVertex(l.clone()));
        }
    }
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(s.to_owned()))
    };
    let mut pairs = Vec::new();
    for (u, v) in edges {
        pairs.push((lookup(u.as_ref())?, lookup(v.as_ref())?));
    }
    DirectedGraph::from_indexed(labels, pairs)
}

impl DirectedGraph {
    /// Builds from index pairs; duplicate edges are dropped.
    pub fn from_indexed(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (Symbol, Symbol)>,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let n = labels.len();
        let set: BTreeSet<(Symbol, Symbol)> = edges.into_iter().collect();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in &set {
            if u as usize >= n || v as usize >= n {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            succ[u as usize].push(v);
            pred[v as usize].push(u);
        }
        for p in &mut pred {
            p.sort_unstable();
        }
        if let Some(i) = succ.iter().position(Vec::is_empty) {
            return Err(Error::DegreeViolation {
                vertex: labels[i].clone(),
                side: DegreeSide::Out,
            });
        }
        if let Some(i) = pred.iter().position(Vec::is_empty) {
            return Err(Error::DegreeViolation {
                vertex: labels[i].clone(),
                side: DegreeSide::In,
            });
        }
        Ok(DirectedGraph { labels, succ, pred })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Symbol) -> &str {
        &self.labels[v as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<Symbol> {
        self.labels.iter().position(|l| l == label).map(|i| i as Symbol)
    }

    pub fn successors(&self, v: Symbol) -> &[Symbol] {
        &self.succ[v as usize]
    }

    pub fn predecessors(&self, v: Symbol) -> &[Symbol] {
        &self.pred[v as usize]
    }

    pub fn successor_lists(&self) -> &[Vec<Symbol>] {
        &self.succ
    }

    pub fn has_edge(&self, u: Symbol, v: Symbol) -> bool {
        self.succ[u as usize].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u as Symbol, v)))
    }

    pub fn is_path(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.labels.len())
            && w.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    pub fn is_subgraph_of(&self, other: &DirectedGraph) -> bool {
        self.labels == other.labels && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn has_self_loop(&self) -> bool {
        (0..self.labels.len()).any(|v| self.has_edge(v as Symbol, v as Symbol))
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        render_symbols(w, &self.labels)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let compact = self.labels.iter().all(|l| l.chars().count() == 1);
        let tokens: Vec<String> = if compact && !text.contains(' ') {
            text.chars().map(String::from).collect()
        } else {
            text.split_whitespace().map(str::to_owned).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| Error::WordNotInLanguage(text.to_owned()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }

    /// Vertices reachable from `start` (following edges, or reversed edges).
    pub(crate) fn reachable(&self, start: Symbol, reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::from([start]);
        seen[start as usize] = true;
        while let Some(u) = queue.pop_front() {
            let next = if reverse {
                self.predecessors(u)
            } else {
                self.successors(u)
            };
            for &v in next {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reachable(0, false).iter().all(|&b| b) && self.reachable(0, true).iter().all(|&b| b)
    }

    /// Shortest path from `u` to `v` with at least one edge, as the list of
    /// intermediate vertices (ties broken toward smaller symbols).
    pub fn shortest_connector(&self, u: Symbol, v: Symbol) -> Option<Vec<Symbol>> {
        let n = self.labels.len();
        let mut parent: Vec<Option<Symbol>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in self.successors(u) {
            if s == v {
                return Some(Vec::new());
            }
            if !seen[s as usize] {
                seen[s as usize] = true;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &s in self.successors(x) {
                if s == v {
                    let mut path = vec![x];
                    let mut cur = x;
                    while let Some(p) = parent[cur as usize] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    parent[s as usize] = Some(x);
                    queue.push_back(s);
                }
            }
        }
        None
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(name));
        for l in &self.labels {
            let _ = writeln!(out, "  {};", dot_id(l));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  {} -> {};",
                dot_id(&self.labels[u as usize]),
                dot_id(&self.labels[v as usize])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
