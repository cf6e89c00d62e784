//! Seeded random instances: idags, matrices, node scalars and well-typed
//! expressions.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::expr::Expr;
use crate::idag::{Idag, Label, Vertex};
use crate::matrix::Matrix;
use crate::weight::{Weight, WeightKind};

#[derive(Clone, Debug)]
pub struct IdagParams {
    pub n_in: usize,
    pub n_out: usize,
    pub n_nodes: usize,
    pub edge_prob: f64,
    /// Labels drawn uniformly per node; the default label when empty.
    pub labels: Vec<Label>,
}

impl IdagParams {
    pub fn new(n_in: usize, n_out: usize, n_nodes: usize, edge_prob: f64) -> Self {
        IdagParams {
            n_in,
            n_out,
            n_nodes,
            edge_prob,
            labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        self.labels = labels.iter().map(|l| Label::new(*l)).collect();
        self
    }
}

/// A nonzero weight: one for bool, `1..=3` for nat, `±(1..=3)` for int.
pub fn random_edge_weight<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> W {
    let magnitude = rng.gen_range(1..=3);
    let count = match W::KIND {
        WeightKind::Bool => 1,
        WeightKind::Nat => magnitude,
        WeightKind::Int => {
            if rng.gen_bool(0.5) {
                -magnitude
            } else {
                magnitude
            }
        }
    };
    W::from_count(count).expect("weight in range")
}

/// Nodes `n0, n1, ...` are placed in a random hidden order; every edge
/// compatible with that order (and with the interfaces) is present
/// independently with probability `edge_prob`.
pub fn random_idag<W: Weight, R: Rng + ?Sized>(rng: &mut R, p: &IdagParams) -> Idag<W> {
    let ids: Vec<String> = (0..p.n_nodes).map(|k| format!("n{k}")).collect();
    let nodes: Vec<(String, Label)> = ids
        .iter()
        .map(|id| {
            let label = p.labels.choose(rng).cloned().unwrap_or_default();
            (id.clone(), label)
        })
        .collect();
    let mut rank: Vec<usize> = (0..p.n_nodes).collect();
    rank.shuffle(rng);

    let mut edges = Vec::new();
    let sources = (0..p.n_in)
        .map(|i| (Vertex::In(i), None))
        .chain((0..p.n_nodes).map(|a| (Vertex::Node(ids[a].clone()), Some(a))));
    for (src, node) in sources {
        let targets = (0..p.n_nodes)
            .filter(|&b| node.is_none_or(|a| rank[a] < rank[b]))
            .map(|b| Vertex::Node(ids[b].clone()))
            .chain((0..p.n_out).map(Vertex::Out));
        for t in targets {
            if rng.gen_bool(p.edge_prob) {
                edges.push((src.clone(), t, random_edge_weight::<W, R>(rng)));
            }
        }
    }
    Idag::new(p.n_in, p.n_out, nodes, edges).expect("acyclic by construction")
}

/// Random node permutation and fresh ids: an isomorphic copy.
pub fn shuffled_copy<W: Weight, R: Rng + ?Sized>(rng: &mut R, d: &Idag<W>) -> Idag<W> {
    let mut order: Vec<usize> = (0..d.node_count()).collect();
    order.shuffle(rng);
    let ids: Vec<String> = (0..order.len()).map(|k| format!("m{k}")).collect();
    d.reorder(&order).rename(&ids).expect("fresh ids are distinct")
}

/// Entries in `0..=max` (bool: `0..=1`), or `-max..=max` for int.
pub fn random_matrix<W: Weight, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, max: i64) -> Matrix<W> {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let c = match W::KIND {
                WeightKind::Bool => rng.gen_range(0..=1),
                WeightKind::Nat => rng.gen_range(0..=max),
                WeightKind::Int => rng.gen_range(-max..=max),
            };
            m.set(i, j, W::from_count(c).expect("in range"));
        }
    }
    m
}

/// A scalar to interpret a node label in a matrix model.
pub fn random_scalar<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> W {
    let c = match W::KIND {
        WeightKind::Bool => rng.gen_range(0..=1),
        WeightKind::Nat => rng.gen_range(0..=4),
        WeightKind::Int => rng.gen_range(-3..=3),
    };
    W::from_count(c).expect("in range")
}

/// Settings for random expressions.
#[derive(Clone, Debug)]
pub struct ExprParams {
    pub max_depth: usize,
    /// Bound on the number of wires entering any layer.
    pub max_width: usize,
    pub anti: bool,
    pub labels: Vec<Label>,
}

impl Default for ExprParams {
    fn default() -> Self {
        ExprParams {
            max_depth: 8,
            max_width: 5,
            anti: true,
            labels: vec![Label::default(), Label::new("x"), Label::new("y")],
        }
    }
}

struct ExprGen<'a, R: ?Sized> {
    rng: &'a mut R,
    p: &'a ExprParams,
}

impl<R: Rng + ?Sized> ExprGen<'_, R> {
    fn unary(&mut self) -> Expr {
        match self.rng.gen_range(0..if self.p.anti { 4 } else { 3 }) {
            0 => Expr::Id(1),
            1 => Expr::Node(self.p.labels.choose(self.rng).cloned().unwrap_or_default()),
            2 => Expr::Eps,
            _ => Expr::Anti,
        }
    }

    /// One atom consuming at most `remaining` wires; `grow` allows atoms
    /// that add wires.
    fn atom(&mut self, remaining: usize, grow: bool) -> Expr {
        if remaining == 0 {
            return if grow && self.rng.gen_bool(0.7) { Expr::Eta } else { Expr::Id(0) };
        }
        let roll = self.rng.gen_range(0..10);
        match roll {
            0 if grow => Expr::Eta,
            1 | 2 if grow => Expr::Delta,
            3 | 4 if remaining >= 2 => Expr::Nabla,
            5 if remaining >= 2 => {
                let a = self.rng.gen_range(1..remaining);
                let b = self.rng.gen_range(1..=remaining - a);
                Expr::Sym(a, b)
            }
            6 => Expr::Id(self.rng.gen_range(1..=remaining)),
            _ => self.unary(),
        }
    }

    /// A tensor of atoms with exactly `k` inputs and depth at most `depth`.
    fn layer(&mut self, k: usize, depth: usize) -> Expr {
        let mut parts = Vec::new();
        let mut used = 0;
        let mut width = 0;
        while used < k || parts.is_empty() {
            let last = parts.len() + 1 >= depth;
            let atom = if last {
                Expr::Id(k - used)
            } else {
                let grow = width + (k - used) < self.p.max_width;
                self.atom(k - used, grow)
            };
            let (n, m) = atom.arity().expect("atoms are typed");
            used += n;
            width += m;
            parts.push(atom);
        }
        Expr::ten_all(parts)
    }

    fn with_inputs(&mut self, k: usize, depth: usize) -> Expr {
        if depth <= 1 {
            return self.layer(k, 1);
        }
        match self.rng.gen_range(0..4) {
            0 => self.layer(k, depth),
            1 if k > 0 => {
                let k1 = self.rng.gen_range(0..=k);
                let a = self.with_inputs(k1, depth - 1);
                let b = self.with_inputs(k - k1, depth - 1);
                Expr::ten(a, b)
            }
            _ => {
                let a = self.with_inputs(k, depth - 1);
                let (_, mid) = a.arity().expect("generated typed");
                if mid > self.p.max_width {
                    return a;
                }
                let b = self.with_inputs(mid, depth - 1);
                Expr::seq(a, b)
            }
        }
    }
}

/// A well-typed expression with at most `inputs` inputs and depth at most
/// `p.max_depth`.
pub fn random_expr_with_inputs<R: Rng + ?Sized>(rng: &mut R, inputs: usize, p: &ExprParams) -> Expr {
    ExprGen { rng, p }.with_inputs(inputs, p.max_depth.max(1))
}

pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, p: &ExprParams) -> Expr {
    let inputs = rng.gen_range(0..=3.min(p.max_width));
    random_expr_with_inputs(rng, inputs, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Boolean;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_probability_gives_isolated_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d: Idag<u64> = random_idag(&mut rng, &IdagParams::new(2, 2, 4, 0.0));
        assert_eq!(d.node_count(), 4);
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = IdagParams::new(2, 3, 5, 0.5).with_labels(&["x", "y"]);
        let a: Idag<i64> = random_idag(&mut ChaCha8Rng::seed_from_u64(9), &p);
        let b: Idag<i64> = random_idag(&mut ChaCha8Rng::seed_from_u64(9), &p);
        assert_eq!(a, b);
    }

    #[test]
    fn weights_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d: Idag<i64> = random_idag(&mut rng, &IdagParams::new(3, 3, 5, 0.6));
            assert!(d.edges().all(|(_, _, w)| (1..=3).contains(&w.abs())));
            let b: Idag<Boolean> = random_idag(&mut rng, &IdagParams::new(3, 3, 5, 0.6));
            assert!(b.edges().all(|(_, _, w)| w == Boolean::TRUE));
        }
    }

    #[test]
    fn expressions_are_typed_and_shallow() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = ExprParams::default();
        for _ in 0..500 {
            let e = random_expr(&mut rng, &p);
            assert!(e.arity().is_ok(), "{e}");
            assert!(e.depth() <= p.max_depth, "{e}");
        }
    }
}
