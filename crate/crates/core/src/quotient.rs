//! Relational operations used by the quotient theories: transitive closure
//! (for `node = nabla . (node * id) . delta`), pruning of dangling nodes (for
//! `node . eta = eta` and `eps . node = eps`), and the forest predicate.
//!
//! All three are only defined over [`Boolean`](crate::weight::Boolean) weights.

use std::collections::BTreeSet;


use crate::idag::{End, Idag, IdagError, Result};
use crate::weight::{Weight, WeightKind};

fn require_bool<W: Weight>() -> Result<()> {
    if W::KIND == WeightKind::Bool {
        Ok(())
    } else {
        Err(IdagError::ModeMismatch {
            expected: WeightKind::Bool,
            found: W::KIND,
        })
    }
}

/// Adds an edge `x -> y` whenever a path from `x` to `y` passes through at
/// least one internal node. Paths starting at inputs and ending at outputs
/// are included.
pub fn transitive_closure<W: Weight>(d: &Idag<W>) -> Result<Idag<W>> {
    require_bool::<W>()?;
    let n = d.node_count();
    // reach[k]: endpoints reachable from node k by a nonempty path
    let order = topological_order(d);
    let mut reach: Vec<BTreeSet<End>> = vec![BTreeSet::new(); n];
    for &k in order.iter().rev() {
        let mut set = BTreeSet::new();
        for (t, _) in d.out_edges(End::Node(k)) {
            set.insert(t);
            if let End::Node(b) = t {
                set.extend(reach[b].iter().copied());
            }
        }
        reach[k] = set;
    }
    let mut edges: BTreeSet<(End, End)> = d.edges().map(|(s, t, _)| (s, t)).collect();
    for (k, set) in reach.iter().enumerate() {
        for &t in set {
            edges.insert((End::Node(k), t));
        }
    }
    for i in 0..d.n_in() {
        let direct: Vec<End> = d.out_edges(End::In(i)).map(|(t, _)| t).collect();
        for t in direct {
            if let End::Node(b) = t {
                for &u in &reach[b] {
                    edges.insert((End::In(i), u));
                }
            }
        }
    }
    Ok(d.with_edges(edges.into_iter().map(|e| (e, W::one()))))
}

/// Node indices in a topological order (sources first).
pub(crate) fn topological_order<W: Weight>(d: &Idag<W>) -> Vec<usize> {
    let n = d.node_count();
    let succ = d.node_successors();
    let mut indegree = vec![0usize; n];
    for list in &succ {
        for &b in list {
            indegree[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(a) = ready.pop_first() {
        out.push(a);
        for &b in &succ[a] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    out
}

/// Nodes with no incoming or no outgoing edges.
pub fn dangling_nodes<W: Weight>(d: &Idag<W>) -> Vec<usize> {
    let n = d.node_count();
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for (s, t, _) in d.edges() {
        if let End::Node(k) = s {
            has_out[k] = true;
        }
        if let End::Node(k) = t {
            has_in[k] = true;
        }
    }
    (0..n).filter(|&k| !has_in[k] || !has_out[k]).collect()
}

/// Deletes one node and its incident edges.
pub fn remove_node<W: Weight>(d: &Idag<W>, k: usize) -> Idag<W> {
    let mut dead = vec![false; d.node_count()];
    dead[k] = true;
    d.remove_nodes(&dead)
}

/// Repeatedly deletes nodes lacking incoming or outgoing edges until every
/// remaining node has both.
pub fn prune_dangling<W: Weight>(d: &Idag<W>) -> Result<Idag<W>> {
    require_bool::<W>()?;
    let mut current = d.clone();
    loop {
        let dangling = dangling_nodes(&current);
        if dangling.is_empty() {
            return Ok(current);
        }
        let mut dead = vec![false; current.node_count()];
        for k in dangling {
            dead[k] = true;
        }
        current = current.remove_nodes(&dead);
    }
}

/// True iff every input and every node has exactly one outgoing edge.
pub fn is_forest<W: Weight>(d: &Idag<W>) -> Result<bool> {
    require_bool::<W>()?;
    let mut count = vec![0usize; d.n_in() + d.node_count()];
    for (s, _, _) in d.edges() {
        match s {
            End::In(i) => count[i] += 1,
            End::Node(k) => count[d.n_in() + k] += 1,
            End::Out(_) => unreachable!("edges never leave outputs"),
        }
    }
    Ok(count.iter().all(|&c| c == 1))
}
