//! Interfaced directed acyclic graphs.
//!
//! An `(n, m)`-idag has `n` input ports, `m` output ports, a finite sequence
//! of labelled internal nodes, and weighted edges from inputs or nodes to
//! outputs or nodes. The edge support restricted to node-to-node edges is
//! acyclic. Only nonzero weights are stored.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::{Weight, WeightKind};

/// Node label. The unlabelled theory uses the single label `•`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub const DEFAULT: &'static str = "•";

    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_default(&self) -> bool {
        self.0 == Self::DEFAULT
    }
}

impl Default for Label {
    fn default() -> Self {
        Label(Self::DEFAULT.to_string())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

/// An edge endpoint named by node id, used when building idags from raw data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    In(usize),
    Out(usize),
    Node(String),
}

impl Vertex {
    pub fn node(id: impl Into<String>) -> Self {
        Vertex::Node(id.into())
    }
}

/// An edge endpoint inside an idag; `Node` carries the position in the node
/// sequence. The derived order (inputs, then nodes, then outputs) is the
/// edge order used for serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    In(usize),
    Node(usize),
    Out(usize),
}

impl End {
    pub fn node_index(self) -> Option<usize> {
        match self {
            End::Node(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeData {
    pub id: String,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IdagError {
    #[error("internal nodes form a cycle through `{0}`")]
    CycleDetected(String),
    #[error("bad edge endpoint: {0}")]
    BadEndpoint(String),
    #[error("edge {0} has zero weight")]
    ZeroWeight(String),
    #[error("weight {weight} on edge {edge} is not allowed in {kind} mode")]
    BadWeight {
        edge: String,
        weight: i64,
        kind: WeightKind,
    },
    #[error("negative weight on edge {0} requires int mode")]
    AntipodeWeight(String),
    #[error("duplicate node id `{0}`")]
    DuplicateNodeId(String),
    #[error("edge {0} listed twice")]
    DuplicateEdge(String),
    #[error("not a bijection: {0:?}")]
    NotBijective(Vec<usize>),
    #[error("interface mismatch: {left} outputs composed with {right} inputs")]
    InterfaceMismatch { left: usize, right: usize },
    #[error("operation requires {expected} mode, idag is in {found} mode")]
    ModeMismatch {
        expected: WeightKind,
        found: WeightKind,
    },
    #[error("canonical labelling search exceeded its budget of {0} steps")]
    SearchBudgetExceeded(u64),
}

pub type Result<T, E = IdagError> = std::result::Result<T, E>;

/// A validated idag with weights in `W`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Idag<W> {
    n_in: usize,
    n_out: usize,
    nodes: Vec<NodeData>,
    edges: BTreeMap<(End, End), W>,
}

fn show_vertex(v: &Vertex) -> String {
    match v {
        Vertex::In(i) => format!("in{i}"),
        Vertex::Out(j) => format!("out{j}"),
        Vertex::Node(id) => id.clone(),
    }
}

impl<W: Weight> Idag<W> {
    /// Validates raw data: endpoints, weights, node ids and acyclicity.
    pub fn new<I, E>(n_in: usize, n_out: usize, nodes: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Label)>,
        E: IntoIterator<Item = (Vertex, Vertex, W)>,
    {
        let nodes: Vec<NodeData> = nodes
            .into_iter()
            .map(|(id, label)| NodeData { id, label })
            .collect();
        let mut index = BTreeMap::new();
        for (k, node) in nodes.iter().enumerate() {
            if index.insert(node.id.clone(), k).is_some() {
                return Err(IdagError::DuplicateNodeId(node.id.clone()));
            }
        }
        let mut map = BTreeMap::new();
        for (src, dst, w) in edges {
            let name = format!("({}, {})", show_vertex(&src), show_vertex(&dst));
            let src = match src {
                Vertex::In(i) if i < n_in => End::In(i),
                Vertex::In(i) => {
                    return Err(IdagError::BadEndpoint(format!(
                        "{name}: input {i} out of range for {n_in} inputs"
                    )))
                }
                Vertex::Node(id) => End::Node(*index.get(&id).ok_or_else(|| {
                    IdagError::BadEndpoint(format!("{name}: unknown node `{id}`"))
                })?),
                Vertex::Out(_) => {
                    return Err(IdagError::BadEndpoint(format!(
                        "{name}: edges cannot leave an output"
                    )))
                }
            };
            let dst = match dst {
                Vertex::Out(j) if j < n_out => End::Out(j),
                Vertex::Out(j) => {
                    return Err(IdagError::BadEndpoint(format!(
                        "{name}: output {j} out of range for {n_out} outputs"
                    )))
                }
                Vertex::Node(id) => End::Node(*index.get(&id).ok_or_else(|| {
                    IdagError::BadEndpoint(format!("{name}: unknown node `{id}`"))
                })?),
                Vertex::In(_) => {
                    return Err(IdagError::BadEndpoint(format!(
                        "{name}: edges cannot enter an input"
                    )))
                }
            };
            if w.is_zero() {
                return Err(IdagError::ZeroWeight(name));
            }
            if W::KIND == WeightKind::Bool && !w.is_one() {
                return Err(IdagError::BadWeight {
                    edge: name,
                    weight: w.to_count(),
                    kind: W::KIND,
                });
            }
            if map.insert((src, dst), w).is_some() {
                return Err(IdagError::DuplicateEdge(name));
            }
        }
        let dag = Idag {
            n_in,
            n_out,
            nodes,
            edges: map,
        };
        dag.check_acyclic()?;
        Ok(dag)
    }

    /// Builds from index-based parts; the caller guarantees endpoint ranges
    /// and acyclicity. Zero weights are dropped.
    pub(crate) fn from_parts(
        n_in: usize,
        n_out: usize,
        nodes: Vec<NodeData>,
        edges: impl IntoIterator<Item = ((End, End), W)>,
    ) -> Self {
        let edges = edges.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let dag = Idag {
            n_in,
            n_out,
            nodes,
            edges,
        };
        debug_assert!(dag.check_acyclic().is_ok());
        dag
    }

    /// The empty `(0, 0)`-idag, unit of juxtaposition.
    pub fn empty() -> Self {
        Self::identity(0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts(
            n,
            n,
            Vec::new(),
            (0..n).map(|i| ((End::In(i), End::Out(i)), W::one())),
        )
    }

    /// The wiring sending input `i` to output `perm[i]`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let distinct: BTreeSet<_> = perm.iter().collect();
        if distinct.len() != n || perm.iter().any(|&j| j >= n) {
            return Err(IdagError::NotBijective(perm.to_vec()));
        }
        Ok(Self::from_parts(
            n,
            n,
            Vec::new(),
            perm.iter()
                .enumerate()
                .map(|(i, &j)| ((End::In(i), End::Out(j)), W::one())),
        ))
    }

    /// Block symmetry `n + m -> m + n`.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let perm: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        Self::from_permutation(&perm).expect("block symmetry is a bijection")
    }

    /// A `(1, 1)`-idag with one labelled node on the wire.
    pub fn node(id: impl Into<String>, label: Label) -> Self {
        Self::from_parts(
            1,
            1,
            vec![NodeData {
                id: id.into(),
                label,
            }],
            [
                ((End::In(0), End::Node(0)), W::one()),
                ((End::Node(0), End::Out(0)), W::one()),
            ],
        )
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.n_in, self.n_out)
    }

    pub fn kind(&self) -> WeightKind {
        W::KIND
    }

    pub fn nodes(&self) -> &[NodeData] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.nodes[k].label
    }

    /// Edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (End, End, W)> + '_ {
        self.edges.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weight of the edge, zero if absent.
    pub fn weight(&self, src: End, dst: End) -> W {
        self.edges.get(&(src, dst)).copied().unwrap_or_else(W::zero)
    }

    /// Outgoing edges of a source endpoint.
    pub fn out_edges(&self, src: End) -> impl Iterator<Item = (End, W)> + '_ {
        let lo = (src, End::In(0));
        let hi = (src, End::Out(usize::MAX));
        self.edges.range(lo..=hi).map(|(&(_, t), &w)| (t, w))
    }

    /// Endpoint with node ids, for display and serialization.
    pub fn vertex(&self, e: End) -> Vertex {
        match e {
            End::In(i) => Vertex::In(i),
            End::Out(j) => Vertex::Out(j),
            End::Node(k) => Vertex::Node(self.nodes[k].id.clone()),
        }
    }

    /// Node-to-node successor lists.
    pub fn node_successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nodes.len()];
        for (s, t, _) in self.edges() {
            if let (End::Node(a), End::Node(b)) = (s, t) {
                succ[a].push(b);
            }
        }
        succ
    }

    /// Node-to-node predecessor lists.
    pub fn node_predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.nodes.len()];
        for (s, t, _) in self.edges() {
            if let (End::Node(a), End::Node(b)) = (s, t) {
                pred[b].push(a);
            }
        }
        pred
    }

    fn check_acyclic(&self) -> Result<()> {
        let n = self.nodes.len();
        let succ = self.node_successors();
        let mut indegree = vec![0usize; n];
        for list in &succ {
            for &b in list {
                indegree[b] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
        let mut seen = 0;
        while let Some(a) = ready.pop() {
            seen += 1;
            for &b in &succ[a] {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(b);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            let k = (0..n).find(|&k| indegree[k] > 0).unwrap_or(0);
            Err(IdagError::CycleDetected(self.nodes[k].id.clone()))
        }
    }

    /// Renames nodes. `ids[k]` is the new id of node `k`.
    pub fn rename(&self, ids: &[String]) -> Result<Self> {
        assert_eq!(ids.len(), self.nodes.len(), "one id per node");
        let distinct: HashSet<_> = ids.iter().collect();
        if distinct.len() != ids.len() {
            let dup = ids
                .iter()
                .enumerate()
                .find(|(k, id)| ids[..*k].contains(id))
                .map(|(_, id)| id.clone())
                .unwrap_or_default();
            return Err(IdagError::DuplicateNodeId(dup));
        }
        let mut out = self.clone();
        for (node, id) in out.nodes.iter_mut().zip(ids) {
            node.id = id.clone();
        }
        Ok(out)
    }

    /// Reorders the node sequence: node `k` of the result is node `order[k]`
    /// of `self`.
    pub fn reorder(&self, order: &[usize]) -> Self {
        let n = self.nodes.len();
        assert_eq!(order.len(), n, "order must list every node");
        let mut position = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        assert!(position.iter().all(|&p| p != usize::MAX), "order is not a permutation");
        let map = |e: End| match e {
            End::Node(k) => End::Node(position[k]),
            other => other,
        };
        Idag::from_parts(
            self.n_in,
            self.n_out,
            order.iter().map(|&k| self.nodes[k].clone()).collect(),
            self.edges().map(|(s, t, w)| ((map(s), map(t)), w)),
        )
    }

    /// Replaces every node label.
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.label = f(&node.label);
        }
        out
    }

    /// Removes the given nodes and their incident edges.
    pub(crate) fn remove_nodes(&self, dead: &[bool]) -> Self {
        let mut position = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (k, node) in self.nodes.iter().enumerate() {
            if !dead[k] {
                position[k] = nodes.len();
                nodes.push(node.clone());
            }
        }
        let map = |e: End| match e {
            End::Node(k) if dead[k] => None,
            End::Node(k) => Some(End::Node(position[k])),
            other => Some(other),
        };
        let edges = self
            .edges()
            .filter_map(|(s, t, w)| Some(((map(s)?, map(t)?), w)))
            .collect::<Vec<_>>();
        Idag::from_parts(self.n_in, self.n_out, nodes, edges)
    }

    pub(crate) fn with_edges(&self, edges: impl IntoIterator<Item = ((End, End), W)>) -> Self {
        Idag::from_parts(self.n_in, self.n_out, self.nodes.clone(), edges)
    }

    /// The In-by-Out block of the edge weights: the relation an idag without
    /// internal nodes stands for.
    pub fn interface_matrix(&self) -> crate::matrix::Matrix<W> {
        let mut m = crate::matrix::Matrix::zeros(self.n_in, self.n_out);
        for (s, t, w) in self.edges() {
            if let (End::In(i), End::Out(j)) = (s, t) {
                m.set(i, j, w);
            }
        }
        m
    }

    /// The node-free idag of a matrix.
    pub fn from_matrix(m: &crate::matrix::Matrix<W>) -> Self {
        let mut edges = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                edges.push(((End::In(i), End::Out(j)), m.get(i, j)));
            }
        }
        Idag::from_parts(m.rows(), m.cols(), Vec::new(), edges)
    }
}

/// Ids for the nodes of `right` that avoid every id in `taken`: unchanged
/// when free, otherwise suffixed with `.k` for the least free `k`.
fn fresh_ids(taken: &mut HashSet<String>, right: &[NodeData]) -> Vec<NodeData> {
    let own: HashSet<&str> = right.iter().map(|n| n.id.as_str()).collect();
    let mut out = Vec::with_capacity(right.len());
    for node in right {
        let mut id = node.id.clone();
        if taken.contains(&id) {
            let mut k = 1;
            loop {
                let candidate = format!("{}.{k}", node.id);
                if !taken.contains(&candidate) && !own.contains(candidate.as_str()) {
                    id = candidate;
                    break;
                }
                k += 1;
            }
        }
        taken.insert(id.clone());
        out.push(NodeData {
            id,
            label: node.label.clone(),
        });
    }
    out
}

/// Concatenation `d2 . d1`: the outputs of `d1` are plugged into the inputs
/// of `d2`. Nodes of `d1` come first and keep their ids.
pub fn concat<W: Weight>(d2: &Idag<W>, d1: &Idag<W>) -> Result<Idag<W>> {
    if d1.n_out != d2.n_in {
        return Err(IdagError::InterfaceMismatch {
            left: d1.n_out,
            right: d2.n_in,
        });
    }
    let offset = d1.nodes.len();
    let mut taken: HashSet<String> = d1.nodes.iter().map(|n| n.id.clone()).collect();
    let mut nodes = d1.nodes.clone();
    nodes.extend(fresh_ids(&mut taken, &d2.nodes));

    let lift2 = |e: End| match e {
        End::Node(k) => End::Node(offset + k),
        other => other,
    };

    // Where each middle wire leads inside d2.
    let mut through: Vec<Vec<(End, W)>> = vec![Vec::new(); d2.n_in];
    for (s, t, w) in d2.edges() {
        if let End::In(j) = s {
            through[j].push((lift2(t), w));
        }
    }

    let mut edges: BTreeMap<(End, End), W> = BTreeMap::new();
    for (s, t, w) in d1.edges() {
        match t {
            End::Out(j) => {
                for &(y, v) in &through[j] {
                    let entry = edges.entry((s, y)).or_insert_with(W::zero);
                    *entry = *entry + w * v;
                }
            }
            _ => {
                edges.insert((s, t), w);
            }
        }
    }
    for (s, t, w) in d2.edges() {
        if let End::Node(_) = s {
            edges.insert((lift2(s), lift2(t)), w);
        }
    }
    Ok(Idag::from_parts(d1.n_in, d2.n_out, nodes, edges))
}

/// Juxtaposition: `d1` above `d2`. Interfaces of `d2` are shifted past those
/// of `d1`; nodes of `d1` come first and keep their ids.
pub fn juxt<W: Weight>(d1: &Idag<W>, d2: &Idag<W>) -> Idag<W> {
    let offset = d1.nodes.len();
    let mut taken: HashSet<String> = d1.nodes.iter().map(|n| n.id.clone()).collect();
    let mut nodes = d1.nodes.clone();
    nodes.extend(fresh_ids(&mut taken, &d2.nodes));
    let shift = |e: End| match e {
        End::In(i) => End::In(d1.n_in + i),
        End::Out(j) => End::Out(d1.n_out + j),
        End::Node(k) => End::Node(offset + k),
    };
    let edges = d1
        .edges()
        .map(|(s, t, w)| ((s, t), w))
        .chain(d2.edges().map(|(s, t, w)| ((shift(s), shift(t)), w)));
    Idag::from_parts(d1.n_in + d2.n_in, d1.n_out + d2.n_out, nodes, edges)
}

impl<W: Weight> Idag<W> {
    /// `next . self`.
    pub fn then(&self, next: &Idag<W>) -> Result<Idag<W>> {
        concat(next, self)
    }

    pub fn tensor(&self, other: &Idag<W>) -> Idag<W> {
        juxt(self, other)
    }
}

impl<W: Weight> fmt::Debug for Idag<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Idag<{}>({} -> {}; nodes [", W::KIND, self.n_in, self.n_out)?;
        for (k, node) in self.nodes.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if node.label.is_default() {
                write!(f, "{}", node.id)?;
            } else {
                write!(f, "{}:{}", node.id, node.label)?;
            }
        }
        f.write_str("]; edges {")?;
        for (k, (s, t, w)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}->{}", show_vertex(&self.vertex(s)), show_vertex(&self.vertex(t)))?;
            if !w.is_one() {
                write!(f, "×{w}")?;
            }
        }
        f.write_str("})")
    }
}
