//! Layered decomposition of idags along topological sortings.
//!
//! A topological sorting `sigma` of an `(n, m)`-idag with nodes `N` lists
//! the nodes so that every node-to-node edge goes forward. It splits the
//! idag into relations
//!
//! ```text
//! D = L_|N| . (id(n+|N|-1) * node) . L_|N|-1 . ... . (id(n) * node) . L_0
//! ```
//!
//! where layer `L_k : n+k -> n+k+1` (for `k < |N|`) passes its inputs
//! through unchanged and adds one wire carrying the edges into `sigma_k`,
//! and the final layer `L_|N| : n+|N| -> m` carries the edges into the
//! outputs. [`decompose`] writes this as an expression, [`interpret`]
//! evaluates it directly in any [`Model`].

use std::collections::HashMap;

use rand::Rng;
use thiserror::Error;

use crate::expr::Expr;
use crate::idag::{End, Idag};
use crate::matrix::Matrix;
use crate::model::{EvalError, Model};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("{0:?} is not a topological sorting")]
    NotATopologicalSorting(Vec<usize>),
    #[error("layer index {index} out of range for {nodes} nodes")]
    IndexOutOfRange { index: usize, nodes: usize },
    #[error("sortings do not differ by the adjacent transposition at {0}")]
    NotAdjacentTransposition(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A linear extension of the node order: `order[k]` is the index of the
/// `k`-th node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopSort(Vec<usize>);

impl TopSort {
    pub fn new<W: Weight>(d: &Idag<W>, order: Vec<usize>) -> Result<Self, DecomposeError> {
        let n = d.node_count();
        let mut position = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(DecomposeError::NotATopologicalSorting(order));
            }
            position[v] = k;
        }
        if order.len() != n {
            return Err(DecomposeError::NotATopologicalSorting(order));
        }
        let forward = d.edges().all(|(s, t, _)| match (s, t) {
            (End::Node(a), End::Node(b)) => position[a] < position[b],
            _ => true,
        });
        if !forward {
            return Err(DecomposeError::NotATopologicalSorting(order));
        }
        Ok(TopSort(order))
    }

    /// Sorting given by node ids.
    pub fn from_ids<W: Weight>(d: &Idag<W>, ids: &[&str]) -> Result<Self, DecomposeError> {
        let order = ids
            .iter()
            .map(|id| d.node_index(id).unwrap_or(usize::MAX))
            .collect();
        Self::new(d, order)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `then / self`: this sorting followed by `then`, shifted past our nodes.
    pub fn stack(&self, then: &TopSort) -> TopSort {
        let offset = self.0.len();
        TopSort(
            self.0
                .iter()
                .copied()
                .chain(then.0.iter().map(|&k| offset + k))
                .collect(),
        )
    }

    /// The image of the sorting under a node bijection.
    pub fn map(&self, witness: &[usize]) -> TopSort {
        TopSort(self.0.iter().map(|&k| witness[k]).collect())
    }

    /// Swaps positions `i` and `i + 1`.
    pub fn transpose(&self, i: usize) -> TopSort {
        let mut order = self.0.clone();
        order.swap(i, i + 1);
        TopSort(order)
    }
}

/// Lazy enumeration of all topological sortings in lexicographic order of
/// node indices. The first one always picks the least available node.
pub struct Sortings {
    succ: Vec<Vec<usize>>,
    indegree: Vec<usize>,
    prefix: Vec<usize>,
    /// available nodes at each depth and the index of the current choice
    levels: Vec<(Vec<usize>, usize)>,
    started: bool,
    done: bool,
}

impl Sortings {
    fn apply(&mut self, v: usize) {
        self.prefix.push(v);
        for &s in &self.succ[v] {
            self.indegree[s] -= 1;
        }
    }

    fn undo(&mut self) {
        let v = self.prefix.pop().expect("nonempty prefix");
        for &s in &self.succ[v] {
            self.indegree[s] += 1;
        }
    }

    /// Extends the prefix with the least choice at every remaining depth.
    fn descend(&mut self) {
        while self.prefix.len() < self.succ.len() {
            let available = match self.levels.last() {
                None => (0..self.succ.len())
                    .filter(|&k| self.indegree[k] == 0)
                    .collect(),
                Some((prev, idx)) => {
                    let chosen = prev[*idx];
                    let mut next: Vec<usize> =
                        prev.iter().copied().filter(|&k| k != chosen).collect();
                    next.extend(self.succ[chosen].iter().copied().filter(|&s| self.indegree[s] == 0));
                    next.sort_unstable();
                    next.dedup();
                    next
                }
            };
            let first = available[0];
            self.levels.push((available, 0));
            self.apply(first);
        }
    }
}

impl Iterator for Sortings {
    type Item = TopSort;

    fn next(&mut self) -> Option<TopSort> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            if self.succ.is_empty() {
                self.done = true;
            }
            return Some(TopSort(self.prefix.clone()));
        }
        loop {
            let Some((available, idx)) = self.levels.pop() else {
                self.done = true;
                return None;
            };
            self.undo();
            if idx + 1 < available.len() {
                let v = available[idx + 1];
                self.levels.push((available, idx + 1));
                self.apply(v);
                self.descend();
                return Some(TopSort(self.prefix.clone()));
            }
        }
    }
}

/// All topological sortings, lazily.
pub fn topological_sortings<W: Weight>(d: &Idag<W>) -> Sortings {
    let succ = d.node_successors();
    let mut indegree = vec![0; succ.len()];
    for list in &succ {
        for &b in list {
            indegree[b] += 1;
        }
    }
    Sortings {
        succ,
        indegree,
        prefix: Vec::new(),
        levels: Vec::new(),
        started: false,
        done: false,
    }
}

/// The first sorting of [`topological_sortings`].
pub fn default_sorting<W: Weight>(d: &Idag<W>) -> TopSort {
    topological_sortings(d)
        .next()
        .expect("acyclic idags have a sorting")
}

/// Counts linear extensions by dynamic programming over sets of placed
/// nodes. Limited to 64 nodes.
pub struct ExtensionCounter {
    pred_mask: Vec<u64>,
    memo: HashMap<u64, u128>,
    full: u64,
}

impl ExtensionCounter {
    pub fn new<W: Weight>(d: &Idag<W>) -> Self {
        let n = d.node_count();
        assert!(n <= 64, "extension counting supports at most 64 nodes");
        let mut pred_mask = vec![0u64; n];
        for (b, preds) in d.node_predecessors().iter().enumerate() {
            for &a in preds {
                pred_mask[b] |= 1 << a;
            }
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        ExtensionCounter {
            pred_mask,
            memo: HashMap::new(),
            full,
        }
    }

    /// Extensions of the remaining nodes once `placed` are placed.
    pub fn count_from(&mut self, placed: u64) -> u128 {
        if placed == self.full {
            return 1;
        }
        if let Some(&c) = self.memo.get(&placed) {
            return c;
        }
        let mut total = 0u128;
        for v in 0..self.pred_mask.len() {
            let bit = 1u64 << v;
            if placed & bit == 0 && self.pred_mask[v] & !placed == 0 {
                total += self.count_from(placed | bit);
            }
        }
        self.memo.insert(placed, total);
        total
    }

    pub fn count(&mut self) -> u128 {
        self.count_from(0)
    }

    /// A uniformly random linear extension.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> TopSort {
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(self.pred_mask.len());
        while placed != self.full {
            let total = self.count_from(placed);
            let mut pick = rng.gen_range(0..total);
            for v in 0..self.pred_mask.len() {
                let bit = 1u64 << v;
                if placed & bit != 0 || self.pred_mask[v] & !placed != 0 {
                    continue;
                }
                let c = self.count_from(placed | bit);
                if pick < c {
                    placed |= bit;
                    order.push(v);
                    break;
                }
                pick -= c;
            }
        }
        TopSort(order)
    }
}

pub fn count_sortings<W: Weight>(d: &Idag<W>) -> u128 {
    ExtensionCounter::new(d).count()
}

/// Up to `limit` distinct sortings: all of them when there are at most
/// `limit`, otherwise the default sorting and `limit - 1` others drawn
/// uniformly without repetition.
pub fn sample_sortings<W: Weight, R: Rng + ?Sized>(d: &Idag<W>, limit: usize, rng: &mut R) -> Vec<TopSort> {
    let mut counter = ExtensionCounter::new(d);
    if counter.count() <= limit as u128 {
        return topological_sortings(d).collect();
    }
    let mut out = vec![default_sorting(d)];
    while out.len() < limit {
        let s = counter.sample(rng);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Layer `k` of the decomposition along `sigma`.
pub fn layer<W: Weight>(d: &Idag<W>, sigma: &TopSort, k: usize) -> Result<Matrix<W>, DecomposeError> {
    let n = d.n_in();
    let nodes = sigma.as_slice();
    if k > nodes.len() {
        return Err(DecomposeError::IndexOutOfRange {
            index: k,
            nodes: nodes.len(),
        });
    }
    if k < nodes.len() {
        let target = End::Node(nodes[k]);
        let mut m = Matrix::identity(n + k).tensor(&Matrix::zeros(0, 1));
        for i in 0..n {
            m.set(i, n + k, d.weight(End::In(i), target));
        }
        for (l, &v) in nodes[..k].iter().enumerate() {
            m.set(n + l, n + k, d.weight(End::Node(v), target));
        }
        Ok(m)
    } else {
        let mut m = Matrix::zeros(n + nodes.len(), d.n_out());
        for j in 0..d.n_out() {
            for i in 0..n {
                m.set(i, j, d.weight(End::In(i), End::Out(j)));
            }
            for (l, &v) in nodes.iter().enumerate() {
                m.set(n + l, j, d.weight(End::Node(v), End::Out(j)));
            }
        }
        Ok(m)
    }
}

fn ten_parts(parts: Vec<Expr>) -> Expr {
    // merge neighbouring identities and drop empty ones
    let mut merged: Vec<Expr> = Vec::new();
    for p in parts {
        match (merged.last_mut(), &p) {
            (_, Expr::Id(0)) => {}
            (Some(Expr::Id(a)), Expr::Id(b)) => *a += b,
            _ => merged.push(p),
        }
    }
    Expr::ten_all(merged)
}

fn seq_parts(width: usize, parts: Vec<Expr>) -> Expr {
    let kept: Vec<Expr> = parts
        .into_iter()
        .filter(|p| !matches!(p, Expr::Id(_)))
        .collect();
    if kept.is_empty() {
        Expr::Id(width)
    } else {
        Expr::seq_all(kept)
    }
}

/// One input copied `r` times.
fn fan_out(r: usize) -> Expr {
    match r {
        0 => Expr::Eps,
        1 => Expr::Id(1),
        _ => Expr::seq_all(
            std::iter::once(Expr::Delta).chain((3..=r).map(|k| ten_parts(vec![Expr::Id(k - 2), Expr::Delta]))),
        ),
    }
}

/// `c` wires merged into one.
fn fan_in(c: usize) -> Expr {
    match c {
        0 => Expr::Eta,
        1 => Expr::Id(1),
        _ => Expr::seq_all(
            (3..=c)
                .rev()
                .map(|k| ten_parts(vec![Expr::Id(k - 2), Expr::Nabla]))
                .chain(std::iter::once(Expr::Nabla)),
        ),
    }
}

/// A generator expression for a relation: every input is copied once per
/// unit of outgoing weight, copies of negative entries pass through `anti`,
/// the copies are regrouped by target with block symmetries, and every
/// output merges its copies. Discarded inputs become `eps`, unfed outputs
/// `eta`.
pub fn encode_relation<W: Weight>(f: &Matrix<W>) -> Expr {
    let (rows, cols) = (f.rows(), f.cols());
    let count = |i: usize, j: usize| f.get(i, j).to_count().unsigned_abs() as usize;
    let negative = |i: usize, j: usize| f.get(i, j).to_count() < 0;

    let copies: Vec<usize> = (0..rows).map(|i| (0..cols).map(|j| count(i, j)).sum()).collect();
    let merges: Vec<usize> = (0..cols).map(|j| (0..rows).map(|i| count(i, j)).sum()).collect();
    let total: usize = copies.iter().sum();

    let fans = ten_parts(copies.iter().map(|&r| fan_out(r)).collect());

    // blocks of parallel copies, source-major
    let mut blocks: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if count(i, j) > 0 {
                blocks.push((i, j, count(i, j)));
            }
        }
    }
    let signs = ten_parts(
        blocks
            .iter()
            .flat_map(|&(i, j, c)| {
                let g = if negative(i, j) { Expr::Anti } else { Expr::Id(1) };
                std::iter::repeat_n(g, c)
            })
            .collect(),
    );

    // selection sort of blocks into target-major order; each step moves one
    // block in front of the ones between it and its destination
    let mut target = blocks.clone();
    target.sort_by_key(|&(i, j, _)| (j, i));
    let mut current = blocks;
    let mut moves = Vec::new();
    for t in 0..current.len() {
        let p = (t..current.len())
            .find(|&p| current[p] == target[t])
            .expect("block present");
        if p == t {
            continue;
        }
        let before: usize = current[..t].iter().map(|b| b.2).sum();
        let skipped: usize = current[t..p].iter().map(|b| b.2).sum();
        let moved = current[p].2;
        let after = total - before - skipped - moved;
        moves.push(ten_parts(vec![
            Expr::Id(before),
            Expr::Sym(skipped, moved),
            Expr::Id(after),
        ]));
        let block = current.remove(p);
        current.insert(t, block);
    }

    let merge = ten_parts(merges.iter().map(|&c| fan_in(c)).collect());

    let mut parts = vec![fans, signs];
    parts.extend(moves);
    parts.push(merge);
    let width = if rows == cols && total == rows { rows } else { total };
    seq_parts(width, parts)
}

/// The layered expression of `d` along `sigma`.
pub fn decompose<W: Weight>(d: &Idag<W>, sigma: &TopSort) -> Result<Expr, DecomposeError> {
    let sigma = TopSort::new(d, sigma.as_slice().to_vec())?;
    let n = d.n_in();
    let mut parts = Vec::new();
    for (k, &v) in sigma.as_slice().iter().enumerate() {
        parts.push(encode_relation(&layer(d, &sigma, k)?));
        parts.push(ten_parts(vec![Expr::Id(n + k), Expr::Node(d.label(v).clone())]));
    }
    parts.push(encode_relation(&layer(d, &sigma, sigma.len())?));
    let kept: Vec<Expr> = parts
        .into_iter()
        .filter(|p| !matches!(p, Expr::Id(_)))
        .collect();
    Ok(if kept.is_empty() {
        Expr::Id(n)
    } else {
        Expr::seq_all(kept)
    })
}

/// The interpretation of `d` in `model` along `sigma`: interpreted layers
/// interleaved with `id * node`.
pub fn interpret<W: Weight, M: Model>(
    d: &Idag<W>,
    sigma: &TopSort,
    model: &M,
) -> Result<M::Morphism, DecomposeError> {
    let sigma = TopSort::new(d, sigma.as_slice().to_vec())?;
    let n = d.n_in();
    let mut acc = model.relation(&layer(d, &sigma, 0)?)?;
    for (k, &v) in sigma.as_slice().iter().enumerate() {
        let node = model.generator(&Expr::Node(d.label(v).clone()))?;
        let step = model.tensor(&model.identity(n + k), &node);
        acc = model.then(&acc, &step)?;
        acc = model.then(&acc, &model.relation(&layer(d, &sigma, k + 1)?)?)?;
    }
    Ok(acc)
}

/// Outcome of checking the five layer identities for an adjacent
/// transposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionReport {
    /// Layers before the swap agree.
    pub earlier_layers_agree: bool,
    /// The two swapped layers agree up to a symmetry on their new wires.
    pub swapped_pair: bool,
    /// Later inner layers commute with the symmetry.
    pub later_layers: bool,
    /// The final layer absorbs the symmetry.
    pub final_layer: bool,
    /// The node slides through the next layer, for both sortings.
    pub node_slides: bool,
}

impl TranspositionReport {
    pub fn results(&self) -> [(&'static str, bool); 5] {
        [
            ("(1) earlier layers agree", self.earlier_layers_agree),
            ("(2) swapped pair", self.swapped_pair),
            ("(3) later layers", self.later_layers),
            ("(4) final layer", self.final_layer),
            ("(5) node slides", self.node_slides),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.results().iter().all(|(_, ok)| *ok)
    }
}

fn perm_block<W: Weight>(before: usize, after: usize) -> Matrix<W> {
    Matrix::identity(before)
        .tensor(&Matrix::symmetry(1, 1))
        .tensor(&Matrix::identity(after))
}

/// Checks the layer identities relating two sortings that differ by
/// swapping positions `i` and `i + 1`. Identities (1)-(4) are exact matrix
/// equalities; (5) is checked in `model`.
pub fn transposition_identities<W: Weight, M: Model>(
    d: &Idag<W>,
    sigma: &TopSort,
    sigma2: &TopSort,
    i: usize,
    model: &M,
) -> Result<TranspositionReport, DecomposeError> {
    let sigma = TopSort::new(d, sigma.as_slice().to_vec())?;
    let sigma2 = TopSort::new(d, sigma2.as_slice().to_vec())?;
    let size = d.node_count();
    if size < 2 || i + 1 >= size || sigma.transpose(i) != sigma2 {
        return Err(DecomposeError::NotAdjacentTransposition(i));
    }
    let n = d.n_in();
    let l = |s: &TopSort, k: usize| layer(d, s, k);
    let mismatch = |a: Option<Matrix<W>>, b: Option<Matrix<W>>| a.is_some() && a == b;

    let mut earlier = true;
    for j in 0..i {
        earlier &= l(&sigma, j)? == l(&sigma2, j)?;
    }

    let swap: Matrix<W> = perm_block(n + i, 0);
    let lhs = l(&sigma, i)?.then(&l(&sigma, i + 1)?);
    let rhs = l(&sigma2, i)?
        .then(&l(&sigma2, i + 1)?)
        .and_then(|m| m.then(&swap));
    let pair = mismatch(lhs, rhs);

    let mut later = true;
    for j in i + 2..size {
        let lhs = perm_block::<W>(n + i, j - i - 2).then(&l(&sigma, j)?);
        let rhs = l(&sigma2, j)?.then(&perm_block(n + i, j - i - 1));
        later &= mismatch(lhs, rhs);
    }

    let last = perm_block::<W>(n + i, size - i - 2).then(&l(&sigma, size)?);
    let final_layer = mismatch(last, Some(l(&sigma2, size)?));

    let mut slides = true;
    for tau in [&sigma, &sigma2] {
        let r = model.relation(&l(tau, i + 1)?)?;
        let node = model.generator(&Expr::Node(d.label(tau.as_slice()[i]).clone()))?;
        let before = model.tensor(&model.identity(n + i), &node);
        let after = model.tensor(&before, &model.identity(1));
        let lhs = model.then(&before, &r)?;
        let rhs = model.then(&r, &after)?;
        slides &= model.equal(&lhs, &rhs)?;
    }

    Ok(TranspositionReport {
        earlier_layers_agree: earlier,
        swapped_pair: pair,
        later_layers: later,
        final_layer,
        node_slides: slides,
    })
}

/// True when the matrix has no entries other than zero and one.
pub fn is_relation<W: Weight>(m: &Matrix<W>) -> bool {
    (0..m.rows()).all(|i| m.row(i).iter().all(|w| w.is_zero() || w.is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idag::{Label, Vertex};
    use crate::model::{eval, MatrixModel};
    use crate::parse::parse;
    use crate::weight::Boolean;

    fn four_node_idag() -> Idag<Boolean> {
        let v = Vertex::node;
        Idag::new(
            3,
            1,
            ["a", "b", "c", "d"].map(|s| (s.to_string(), Label::default())),
            [
                (Vertex::In(0), v("a")),
                (Vertex::In(0), v("b")),
                (Vertex::In(1), v("a")),
                (Vertex::In(2), v("a")),
                (Vertex::In(2), v("c")),
                (v("a"), v("b")),
                (v("a"), v("d")),
                (v("b"), Vertex::Out(0)),
                (v("c"), v("d")),
                (v("d"), Vertex::Out(0)),
            ]
            .map(|(s, t)| (s, t, Boolean::TRUE)),
        )
        .unwrap()
    }

    fn names(d: &Idag<Boolean>, s: &TopSort) -> String {
        s.as_slice().iter().map(|&k| d.nodes()[k].id.as_str()).collect()
    }

    #[test]
    fn sortings_of_figure() {
        let d = four_node_idag();
        let all: Vec<String> = topological_sortings(&d).map(|s| names(&d, &s)).collect();
        assert_eq!(all, ["abcd", "acbd", "acdb", "cabd", "cadb"]);
        assert_eq!(count_sortings(&d), 5);
    }

    #[test]
    fn sortings_trivial_cases() {
        let id = Idag::<Boolean>::identity(2);
        let all: Vec<TopSort> = topological_sortings(&id).collect();
        assert_eq!(all, vec![TopSort(vec![])]);
        let chain = parse("node ; node ; node").unwrap();
        let d = eval(&chain, &crate::model::FreeModel::<Boolean>::new()).unwrap();
        assert_eq!(topological_sortings(&d).count(), 1);
    }

    #[test]
    fn invalid_sorting_rejected() {
        let d = four_node_idag();
        assert!(TopSort::from_ids(&d, &["b", "a", "c", "d"]).is_err());
        assert!(TopSort::from_ids(&d, &["a", "b", "c"]).is_err());
        assert!(TopSort::new(&d, vec![0, 0, 1, 2]).is_err());
    }

    #[test]
    fn figure_layers() {
        let d = four_node_idag();
        let sigma = TopSort::from_ids(&d, &["a", "b", "c", "d"]).unwrap();
        let t = Boolean::TRUE;
        let f = Boolean::FALSE;
        assert_eq!(
            layer(&d, &sigma, 0).unwrap(),
            Matrix::from_rows(vec![vec![t, f, f, t], vec![f, t, f, t], vec![f, f, t, t]])
        );
        let l1 = layer(&d, &sigma, 1).unwrap();
        assert_eq!((l1.rows(), l1.cols()), (4, 5));
        let col: Vec<Boolean> = (0..4).map(|r| l1.get(r, 4)).collect();
        assert_eq!(col, [t, f, f, t]);
        let last = layer(&d, &sigma, 4).unwrap();
        let col: Vec<Boolean> = (0..7).map(|r| last.get(r, 0)).collect();
        assert_eq!(col, [f, f, f, f, t, f, t]);
        assert!(matches!(
            layer(&d, &sigma, 5),
            Err(DecomposeError::IndexOutOfRange { index: 5, nodes: 4 })
        ));
    }

    #[test]
    fn relation_encodings() {
        assert_eq!(encode_relation(&Matrix::<Boolean>::identity(3)), Expr::Id(3));
        assert_eq!(encode_relation(&Matrix::<Boolean>::identity(0)), Expr::Id(0));
        let t = Boolean::TRUE;
        assert_eq!(encode_relation(&Matrix::from_rows(vec![vec![t], vec![t]])), Expr::Nabla);
        assert_eq!(
            encode_relation(&Matrix::<u64>::scalar(2)).to_string(),
            "delta ; nabla"
        );
        assert_eq!(encode_relation(&Matrix::<i64>::scalar(-1)), Expr::Anti);
        assert_eq!(encode_relation(&Matrix::<u64>::zeros(0, 2)).to_string(), "eta * eta");
        assert_eq!(encode_relation(&Matrix::<u64>::zeros(2, 0)).to_string(), "eps * eps");
        assert_eq!(
            encode_relation(&Matrix::<u64>::symmetry(1, 1)).to_string(),
            "sym(1,1)"
        );
    }

    #[test]
    fn encoding_evaluates_back() {
        let m = Matrix::<i64>::from_rows(vec![vec![2, 0, -1], vec![0, 0, 0], vec![1, -3, 1]]);
        let e = encode_relation(&m);
        assert_eq!(eval(&e, &MatrixModel::<i64>::new()).unwrap(), m);
    }

    #[test]
    fn decompose_without_nodes() {
        let d = Idag::<Boolean>::symmetry(1, 1);
        let e = decompose(&d, &TopSort(vec![])).unwrap();
        assert_eq!(e, encode_relation(&d.interface_matrix()));
    }

    #[test]
    fn transposition_needs_adjacent_swap() {
        let d = four_node_idag();
        let sigma = TopSort::from_ids(&d, &["a", "b", "c", "d"]).unwrap();
        let model = MatrixModel::<u64>::new();
        assert!(matches!(
            transposition_identities(&d, &sigma, &sigma, 1, &model),
            Err(DecomposeError::NotAdjacentTransposition(1))
        ));
        let other = TopSort::from_ids(&d, &["a", "c", "b", "d"]).unwrap();
        let report = transposition_identities(&d, &sigma, &other, 1, &model).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }
}
