//! Weighted co-occurrence graphs built by thresholding a [`CooccurMatrix`].
//!
//! Labels compare with [`natural_cmp`] throughout, so author graphs order
//! `"2"` before `"10"`. Node centrality is strength (weighted degree).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::natural_cmp;
use crate::error::{Error, Result};
use crate::matrix::CooccurMatrix;

/// Iteration cap for label propagation.
pub const LABEL_PROPAGATION_MAX_ITERS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub label: String,
    pub strength: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub weight: u64,
}

/// Undirected weighted graph without self-loops.
///
/// Nodes are sorted by strength descending then label; edges by `(a, b)`
/// with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    min_weight: u64,
}

impl CoGraph {
    /// Assembles a graph from an edge list and the labels of isolated nodes.
    ///
    /// Strengths are recomputed from the edges. Fails on self-loops,
    /// duplicate edges, or edges lighter than `min_weight`.
    pub fn from_edges(
        edges: impl IntoIterator<Item = Edge>,
        isolated: impl IntoIterator<Item = String>,
        min_weight: u64,
    ) -> Result<Self> {
        if min_weight < 1 {
            return Err(Error::InvalidMinWeight(min_weight));
        }
        let mut strength: HashMap<String, u64> = HashMap::new();
        let mut normalized = Vec::new();
        for mut e in edges {
            match natural_cmp(&e.a, &e.b) {
                Ordering::Equal => return Err(Error::Parse(format!("self-loop on {:?}", e.a))),
                Ordering::Greater => std::mem::swap(&mut e.a, &mut e.b),
                Ordering::Less => {}
            }
            if e.weight < min_weight {
                return Err(Error::Parse(format!(
                    "edge {:?} -- {:?} has weight {} below {min_weight}",
                    e.a, e.b, e.weight
                )));
            }
            *strength.entry(e.a.clone()).or_default() += e.weight;
            *strength.entry(e.b.clone()).or_default() += e.weight;
            normalized.push(e);
        }
        normalized.sort_by(|x, y| natural_cmp(&x.a, &y.a).then_with(|| natural_cmp(&x.b, &y.b)));
        if normalized
            .windows(2)
            .any(|w| w[0].a == w[1].a && w[0].b == w[1].b)
        {
            return Err(Error::Parse("duplicate edge".into()));
        }
        for label in isolated {
            strength.entry(label).or_default();
        }
        let mut nodes: Vec<Node> = strength
            .into_iter()
            .map(|(label, strength)| Node { label, strength })
            .collect();
        nodes.sort_by(node_order);
        Ok(CoGraph {
            nodes,
            edges: normalized,
            min_weight,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn min_weight(&self) -> u64 {
        self.min_weight
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn strength(&self, label: &str) -> Option<u64> {
        self.nodes
            .iter()
            .find(|n| n.label == label)
            .map(|n| n.strength)
    }

    /// Node labels in natural order.
    pub fn labels_in_key_order(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.nodes.iter().map(|n| n.label.as_str()).collect();
        labels.sort_by(|a, b| natural_cmp(a, b));
        labels
    }
}

fn node_order(x: &Node, y: &Node) -> Ordering {
    y.strength
        .cmp(&x.strength)
        .then_with(|| natural_cmp(&x.label, &y.label))
}

/// Keeps every off-diagonal pair whose entry is at least `min_weight`.
pub fn build_graph(m: &CooccurMatrix, min_weight: u64, keep_isolated: bool) -> Result<CoGraph> {
    if min_weight < 1 {
        return Err(Error::InvalidMinWeight(min_weight));
    }
    let keys = m.keys();
    let mut edges = Vec::new();
    for i in 0..m.len() {
        for (&j, &w) in m.row(i).range(i + 1..) {
            if w >= min_weight {
                edges.push(Edge {
                    a: keys[i].clone(),
                    b: keys[j].clone(),
                    weight: w,
                });
            }
        }
    }
    let isolated = if keep_isolated {
        keys.to_vec()
    } else {
        Vec::new()
    };
    CoGraph::from_edges(edges, isolated, min_weight)
}

/// The `k` strongest nodes, ties broken by label.
pub fn central_nodes(g: &CoGraph, k: usize) -> Vec<String> {
    g.nodes.iter().take(k).map(|n| n.label.clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CommunityMethod {
    #[default]
    Components,
    LabelPropagation,
}

impl fmt::Display for CommunityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommunityMethod::Components => "components",
            CommunityMethod::LabelPropagation => "label_propagation",
        })
    }
}

/// A partition of a graph's nodes. Each community is sorted, and communities
/// are ordered by their first member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunitySet {
    pub communities: Vec<Vec<String>>,
    pub method: CommunityMethod,
}

struct Adjacency<'g> {
    labels: Vec<&'g str>,
    neighbors: Vec<Vec<(usize, u64)>>,
}

impl<'g> Adjacency<'g> {
    fn new(g: &'g CoGraph) -> Self {
        let labels = g.labels_in_key_order();
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut neighbors = vec![Vec::new(); labels.len()];
        for e in &g.edges {
            let (a, b) = (pos[e.a.as_str()], pos[e.b.as_str()]);
            neighbors[a].push((b, e.weight));
            neighbors[b].push((a, e.weight));
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Adjacency { labels, neighbors }
    }

    fn group(&self, assignment: &[usize]) -> Vec<Vec<String>> {
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (node, &label) in assignment.iter().enumerate() {
            groups
                .entry(label)
                .or_default()
                .push(self.labels[node].to_string());
        }
        let mut out: Vec<Vec<String>> = groups.into_values().collect();
        // members are pushed in key order already
        out.sort_by(|x, y| natural_cmp(&x[0], &y[0]));
        out
    }
}

pub fn communities(g: &CoGraph, method: CommunityMethod) -> CommunitySet {
    let adj = Adjacency::new(g);
    let assignment = match method {
        CommunityMethod::Components => components(&adj),
        CommunityMethod::LabelPropagation => label_propagation(&adj),
    };
    CommunitySet {
        communities: adj.group(&assignment),
        method,
    }
}

fn components(adj: &Adjacency) -> Vec<usize> {
    let n = adj.labels.len();
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj.neighbors[v] {
                if comp[u] == usize::MAX {
                    comp[u] = start;
                    stack.push(u);
                }
            }
        }
    }
    comp
}

// Labels are node positions in key order, so "smallest label" is the
// smallest index. Nodes are visited in key order and see labels already
// updated earlier in the same sweep.
fn label_propagation(adj: &Adjacency) -> Vec<usize> {
    let n = adj.labels.len();
    let mut label: Vec<usize> = (0..n).collect();
    let mut votes: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..LABEL_PROPAGATION_MAX_ITERS {
        let mut changed = false;
        for v in 0..n {
            if adj.neighbors[v].is_empty() {
                continue;
            }
            votes.clear();
            for &(u, w) in &adj.neighbors[v] {
                *votes.entry(label[u]).or_default() += w;
            }
            let best = votes.values().copied().max().unwrap_or(0);
            let choice = votes
                .iter()
                .find(|&(_, &w)| w == best)
                .map(|(&l, _)| l)
                .expect("non-empty votes");
            if choice != label[v] {
                label[v] = choice;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    label
}
