//! The algebra of interfaced directed acyclic graphs (idags).
//!
//! Idags with `n` inputs and `m` outputs form a PROP under concatenation
//! and juxtaposition. This crate builds them, evaluates generator
//! expressions over `eta, nabla, eps, delta, node[l], anti` into idag,
//! matrix and loop models, decomposes idags back into expressions along a
//! topological sorting, and decides equality of expressions modulo the
//! theory of (degenerate) commutative bialgebras or Hopf algebras with
//! labelled nodes by normalising through the free idag model.
//!
//! Everything is generic over the edge [`Weight`]:
//!
//! | weights   | theory                                      | aliases               |
//! |-----------|---------------------------------------------|-----------------------|
//! | [`Boolean`] | degenerate commutative bialgebra + nodes  | [`BoolIdag`], [`BoolMatrix`] |
//! | `u64`     | commutative bialgebra + nodes               | [`NatIdag`], [`NatMatrix`]   |
//! | `i64`     | commutative Hopf algebra + nodes            | [`IntIdag`], [`IntMatrix`]   |
//!
//! ```
//! use idag_core::{equal_mod_theory, parse, Boolean, Quotients};
//!
//! let lhs = parse("delta ; nabla").unwrap();
//! let rhs = parse("id(1)").unwrap();
//! let report = equal_mod_theory::<Boolean>(&lhs, &rhs, &Quotients::none()).unwrap();
//! assert!(report.equal);
//! ```

pub mod canon;
pub mod check;
pub mod decompose;
pub mod equiv;
pub mod expr;
pub mod idag;
pub mod json;
pub mod matrix;
pub mod model;
pub mod parse;
pub mod quotient;
pub mod random;
pub mod weight;

pub use canon::{canonical_form, is_isomorphic};
pub use decompose::{
    decompose, encode_relation, interpret, layer, topological_sortings, transposition_identities,
    DecomposeError, TopSort,
};
pub use equiv::{equal_mod_theory, normalize, EqReport, EquivError, Quotient, Quotients, TheoryMode};
pub use expr::{expand_symmetry, Expr, Generator, TypeMismatch};
pub use idag::{concat, juxt, End, Idag, IdagError, Label, NodeData, Vertex};
pub use matrix::Matrix;
pub use model::{eval, free_generator_image, loops_eval, EvalError, FreeModel, LoopsModel, LoopsMorphism, MatrixModel, Model};
pub use parse::{parse, ParseError};
pub use quotient::{is_forest, prune_dangling, transitive_closure};
pub use weight::{Boolean, Weight, WeightKind};

/// Relations with nodes.
pub type BoolIdag = Idag<Boolean>;
/// Idags with positive natural edge weights.
pub type NatIdag = Idag<u64>;
/// Idags with nonzero integer edge weights.
pub type IntIdag = Idag<i64>;

pub type BoolMatrix = Matrix<Boolean>;
pub type NatMatrix = Matrix<u64>;
pub type IntMatrix = Matrix<i64>;
