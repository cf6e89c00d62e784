//! Models of generator expressions.
//!
//! A [`Model`] supplies an image for each generator plus identities,
//! symmetries, composition and tensor. [`eval`] is the structural
//! interpretation of an expression in a model. Three models are provided:
//!
//! * [`FreeModel`]: idags, the free model. Morphisms compare by canonical
//!   form.
//! * [`MatrixModel`]: matrices over a weight system, with a chosen scalar
//!   for each node label.
//! * [`LoopsModel`]: the free PROP on a set of unary operations, i.e. a
//!   permutation together with one word of labels per input.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::canon::canonical_form;
use crate::decompose::encode_relation;
use crate::expr::{Expr, Generator, TypeMismatch};
use crate::idag::{concat, juxt, End, Idag, IdagError, Label, NodeData};
use crate::matrix::Matrix;
use crate::weight::{Weight, WeightKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("model {model} does not support generator `{generator}`")]
    UnsupportedGenerator {
        model: String,
        generator: Generator,
    },
    #[error("model {model} cannot represent weight {weight}")]
    UnsupportedWeight { model: String, weight: i64 },
    #[error(transparent)]
    Type(#[from] TypeMismatch),
    #[error(transparent)]
    Idag(#[from] IdagError),
}

pub trait Model {
    type Morphism: Clone + fmt::Debug;

    /// Short name used in error messages.
    fn name(&self) -> String;

    /// Image of a generator (`Eta`, `Nabla`, `Eps`, `Delta`, `Node`, `Anti`).
    fn generator(&self, g: &Expr) -> Result<Self::Morphism, EvalError>;

    fn identity(&self, n: usize) -> Self::Morphism;

    fn symmetry(&self, n: usize, m: usize) -> Self::Morphism;

    /// `next . first`.
    fn then(&self, first: &Self::Morphism, next: &Self::Morphism) -> Result<Self::Morphism, EvalError>;

    fn tensor(&self, a: &Self::Morphism, b: &Self::Morphism) -> Self::Morphism;

    fn arity(&self, f: &Self::Morphism) -> (usize, usize);

    fn equal(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<bool, EvalError>;

    /// Interpretation of a relation, i.e. of a node-free idag given by its
    /// matrix. Defaults to evaluating its generator encoding.
    fn relation<V: Weight>(&self, r: &Matrix<V>) -> Result<Self::Morphism, EvalError>
    where
        Self: Sized,
    {
        eval(&encode_relation(r), self)
    }

    fn unsupported(&self, g: &Expr) -> EvalError {
        EvalError::UnsupportedGenerator {
            model: self.name(),
            generator: g.generator().expect("called on a generator"),
        }
    }
}

/// Structural interpretation: `Seq` is composition, `Ten` is tensor.
pub fn eval<M: Model>(e: &Expr, model: &M) -> Result<M::Morphism, EvalError> {
    e.arity()?;
    eval_unchecked(e, model)
}

fn eval_unchecked<M: Model>(e: &Expr, model: &M) -> Result<M::Morphism, EvalError> {
    match e {
        Expr::Id(n) => Ok(model.identity(*n)),
        Expr::Sym(n, m) => Ok(model.symmetry(*n, *m)),
        Expr::Seq(a, b) => {
            let fa = eval_unchecked(a, model)?;
            let fb = eval_unchecked(b, model)?;
            model.then(&fa, &fb)
        }
        Expr::Ten(a, b) => {
            let fa = eval_unchecked(a, model)?;
            let fb = eval_unchecked(b, model)?;
            Ok(model.tensor(&fa, &fb))
        }
        g => model.generator(g),
    }
}

/// The free model: expressions evaluate to idags.
pub struct FreeModel<W>(PhantomData<W>);

impl<W> FreeModel<W> {
    pub fn new() -> Self {
        FreeModel(PhantomData)
    }
}

impl<W> Default for FreeModel<W> {
    fn default() -> Self {
        Self::new()
    }
}

/// The idag a generator stands for.
pub fn free_generator_image<W: Weight>(g: &Expr) -> Result<Idag<W>, EvalError> {
    let wire = |pairs: &[(End, End)]| -> Vec<((End, End), W)> {
        pairs.iter().map(|&p| (p, W::one())).collect()
    };
    Ok(match g {
        Expr::Eta => Idag::from_parts(0, 1, Vec::new(), []),
        Expr::Nabla => Idag::from_parts(
            2,
            1,
            Vec::new(),
            wire(&[(End::In(0), End::Out(0)), (End::In(1), End::Out(0))]),
        ),
        Expr::Eps => Idag::from_parts(1, 0, Vec::new(), []),
        Expr::Delta => Idag::from_parts(
            1,
            2,
            Vec::new(),
            wire(&[(End::In(0), End::Out(0)), (End::In(0), End::Out(1))]),
        ),
        Expr::Node(label) => Idag::from_parts(
            1,
            1,
            vec![NodeData {
                id: "p".into(),
                label: label.clone(),
            }],
            wire(&[(End::In(0), End::Node(0)), (End::Node(0), End::Out(0))]),
        ),
        Expr::Anti if W::KIND.has_antipode() => {
            let minus_one = W::from_count(-1).expect("weights with an antipode contain -1");
            Idag::from_parts(1, 1, Vec::new(), [((End::In(0), End::Out(0)), minus_one)])
        }
        other => {
            return Err(EvalError::UnsupportedGenerator {
                model: format!("free({})", W::KIND),
                generator: other.generator().unwrap_or(Generator::Anti),
            })
        }
    })
}

impl<W: Weight> Model for FreeModel<W> {
    type Morphism = Idag<W>;

    fn name(&self) -> String {
        format!("free({})", W::KIND)
    }

    fn generator(&self, g: &Expr) -> Result<Idag<W>, EvalError> {
        free_generator_image(g)
    }

    fn identity(&self, n: usize) -> Idag<W> {
        Idag::identity(n)
    }

    fn symmetry(&self, n: usize, m: usize) -> Idag<W> {
        Idag::symmetry(n, m)
    }

    fn then(&self, first: &Idag<W>, next: &Idag<W>) -> Result<Idag<W>, EvalError> {
        Ok(concat(next, first)?)
    }

    fn tensor(&self, a: &Idag<W>, b: &Idag<W>) -> Idag<W> {
        juxt(a, b)
    }

    fn arity(&self, f: &Idag<W>) -> (usize, usize) {
        f.arity()
    }

    fn equal(&self, a: &Idag<W>, b: &Idag<W>) -> Result<bool, EvalError> {
        Ok(a.arity() == b.arity() && canonical_form(a)? == canonical_form(b)?)
    }
}

/// Matrices over `W`. Each node label is sent to a chosen scalar (by
/// default one); `anti` is `-1` and only available over the integers.
#[derive(Clone, Debug)]
pub struct MatrixModel<W> {
    lambda: BTreeMap<Label, W>,
}

impl<W: Weight> MatrixModel<W> {
    pub fn new() -> Self {
        MatrixModel {
            lambda: BTreeMap::new(),
        }
    }

    pub fn with_lambda(mut self, label: Label, w: W) -> Self {
        self.lambda.insert(label, w);
        self
    }

    pub fn lambda(&self, label: &Label) -> W {
        self.lambda.get(label).copied().unwrap_or_else(W::one)
    }
}

impl<W: Weight> Default for MatrixModel<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Weight> Model for MatrixModel<W> {
    type Morphism = Matrix<W>;

    fn name(&self) -> String {
        format!("matrix({})", W::KIND)
    }

    fn generator(&self, g: &Expr) -> Result<Matrix<W>, EvalError> {
        let one = W::one();
        Ok(match g {
            Expr::Eta => Matrix::zeros(0, 1),
            Expr::Nabla => Matrix::from_rows(vec![vec![one], vec![one]]),
            Expr::Eps => Matrix::zeros(1, 0),
            Expr::Delta => Matrix::from_rows(vec![vec![one, one]]),
            Expr::Node(l) => Matrix::scalar(self.lambda(l)),
            Expr::Anti => match one.negate() {
                Some(minus_one) if W::KIND == WeightKind::Int => Matrix::scalar(minus_one),
                _ => return Err(self.unsupported(g)),
            },
            other => return Err(self.unsupported(other)),
        })
    }

    fn identity(&self, n: usize) -> Matrix<W> {
        Matrix::identity(n)
    }

    fn symmetry(&self, n: usize, m: usize) -> Matrix<W> {
        Matrix::symmetry(n, m)
    }

    fn then(&self, first: &Matrix<W>, next: &Matrix<W>) -> Result<Matrix<W>, EvalError> {
        first.then(next).ok_or_else(|| {
            IdagError::InterfaceMismatch {
                left: first.cols(),
                right: next.rows(),
            }
            .into()
        })
    }

    fn tensor(&self, a: &Matrix<W>, b: &Matrix<W>) -> Matrix<W> {
        a.tensor(b)
    }

    fn arity(&self, f: &Matrix<W>) -> (usize, usize) {
        (f.rows(), f.cols())
    }

    fn equal(&self, a: &Matrix<W>, b: &Matrix<W>) -> Result<bool, EvalError> {
        Ok(a == b)
    }

    fn relation<V: Weight>(&self, r: &Matrix<V>) -> Result<Matrix<W>, EvalError> {
        r.convert::<W>().ok_or_else(|| EvalError::UnsupportedWeight {
            model: self.name(),
            weight: (0..r.rows())
                .flat_map(|i| r.row(i).iter().map(|w| w.to_count()))
                .find(|&c| W::from_count(c).is_none())
                .unwrap_or_default(),
        })
    }
}

/// A morphism of the loops PROP: input `i` travels to output `perm[i]`
/// and picks up `words[i]` on the way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopsMorphism {
    pub perm: Vec<usize>,
    pub words: Vec<Vec<Label>>,
}

impl LoopsMorphism {
    pub fn identity(n: usize) -> Self {
        LoopsMorphism {
            perm: (0..n).collect(),
            words: vec![Vec::new(); n],
        }
    }

    /// `(tau, w) . (sigma, v) = (tau . sigma, (w[sigma(i)] v[i])_i)`: the
    /// later word is written first.
    pub fn then(&self, next: &LoopsMorphism) -> Option<LoopsMorphism> {
        if self.perm.len() != next.perm.len() {
            return None;
        }
        let perm = self.perm.iter().map(|&j| next.perm[j]).collect();
        let words = self
            .perm
            .iter()
            .zip(&self.words)
            .map(|(&j, v)| {
                let mut word = next.words[j].clone();
                word.extend(v.iter().cloned());
                word
            })
            .collect();
        Some(LoopsMorphism { perm, words })
    }

    pub fn tensor(&self, other: &LoopsMorphism) -> LoopsMorphism {
        let n = self.perm.len();
        LoopsMorphism {
            perm: self
                .perm
                .iter()
                .copied()
                .chain(other.perm.iter().map(|&j| n + j))
                .collect(),
            words: self.words.iter().chain(&other.words).cloned().collect(),
        }
    }
}

impl fmt::Display for LoopsMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, j) in self.perm.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}->{j}")?;
        }
        f.write_str("; ")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if w.is_empty() {
                f.write_str("ε")?;
            } else {
                let parts: Vec<&str> = w.iter().map(Label::as_str).collect();
                f.write_str(&parts.join("·"))?;
            }
        }
        f.write_str(")")
    }
}

/// The free PROP on one unary operation per label. Only `node`, `id` and
/// `sym` are supported.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoopsModel;

impl Model for LoopsModel {
    type Morphism = LoopsMorphism;

    fn name(&self) -> String {
        "loops".into()
    }

    fn generator(&self, g: &Expr) -> Result<LoopsMorphism, EvalError> {
        match g {
            Expr::Node(l) => Ok(LoopsMorphism {
                perm: vec![0],
                words: vec![vec![l.clone()]],
            }),
            other => Err(self.unsupported(other)),
        }
    }

    fn identity(&self, n: usize) -> LoopsMorphism {
        LoopsMorphism::identity(n)
    }

    fn symmetry(&self, n: usize, m: usize) -> LoopsMorphism {
        LoopsMorphism {
            perm: (0..n).map(|i| m + i).chain(0..m).collect(),
            words: vec![Vec::new(); n + m],
        }
    }

    fn then(&self, first: &LoopsMorphism, next: &LoopsMorphism) -> Result<LoopsMorphism, EvalError> {
        first.then(next).ok_or_else(|| {
            IdagError::InterfaceMismatch {
                left: first.perm.len(),
                right: next.perm.len(),
            }
            .into()
        })
    }

    fn tensor(&self, a: &LoopsMorphism, b: &LoopsMorphism) -> LoopsMorphism {
        a.tensor(b)
    }

    fn arity(&self, f: &LoopsMorphism) -> (usize, usize) {
        (f.perm.len(), f.perm.len())
    }

    fn equal(&self, a: &LoopsMorphism, b: &LoopsMorphism) -> Result<bool, EvalError> {
        Ok(a == b)
    }
}

/// Evaluates a node/id/sym expression in the loops PROP.
pub fn loops_eval(e: &Expr) -> Result<LoopsMorphism, EvalError> {
    eval(e, &LoopsModel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::weight::Boolean;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    fn words(ws: &[&[&str]]) -> Vec<Vec<Label>> {
        ws.iter()
            .map(|w| w.iter().map(|l| Label::new(*l)).collect())
            .collect()
    }

    #[test]
    fn matrix_examples() {
        let nat = MatrixModel::<u64>::new();
        assert_eq!(eval(&p("delta ; nabla"), &nat).unwrap(), Matrix::scalar(2));
        assert_eq!(
            eval(&p("nabla ; delta"), &nat).unwrap(),
            Matrix::from_rows(vec![vec![1, 1], vec![1, 1]])
        );
        let int = MatrixModel::<i64>::new();
        let hopf = eval(&p("delta ; (anti * id(1)) ; nabla"), &int).unwrap();
        assert_eq!(hopf, Matrix::scalar(0));
        assert_eq!(hopf, eval(&p("eps ; eta"), &int).unwrap());
    }

    #[test]
    fn antipode_needs_integers() {
        assert!(matches!(
            eval(&p("anti"), &MatrixModel::<u64>::new()),
            Err(EvalError::UnsupportedGenerator { generator: Generator::Anti, .. })
        ));
        assert!(matches!(
            eval(&p("anti"), &FreeModel::<Boolean>::new()),
            Err(EvalError::UnsupportedGenerator { .. })
        ));
        let anti = free_generator_image::<i64>(&Expr::Anti).unwrap();
        assert_eq!(anti.weight(End::In(0), End::Out(0)), -1);
    }

    #[test]
    fn free_images() {
        let delta = free_generator_image::<Boolean>(&Expr::Delta).unwrap();
        assert_eq!(delta.arity(), (1, 2));
        let targets: Vec<_> = delta.edges().map(|(s, t, _)| (s, t)).collect();
        assert_eq!(
            targets,
            [(End::In(0), End::Out(0)), (End::In(0), End::Out(1))]
        );
        let node = free_generator_image::<Boolean>(&p("node")).unwrap();
        assert_eq!(node.node_count(), 1);
        assert_eq!(node.edge_count(), 2);
    }

    #[test]
    fn node_labels_use_lambda() {
        let m = MatrixModel::<i64>::new().with_lambda(Label::new("x"), 3);
        assert_eq!(eval(&p("node[x] ; node[x] ; node"), &m).unwrap(), Matrix::scalar(9));
    }

    #[test]
    fn loops_examples() {
        assert_eq!(
            loops_eval(&p("node[x] ; node[y]")).unwrap(),
            LoopsMorphism {
                perm: vec![0],
                words: words(&[&["y", "x"]])
            }
        );
        assert_eq!(
            loops_eval(&p("sym(1,1)")).unwrap(),
            LoopsMorphism {
                perm: vec![1, 0],
                words: words(&[&[], &[]])
            }
        );
        assert_eq!(
            loops_eval(&p("(node[x] * id(1)) ; sym(1,1)")).unwrap(),
            LoopsMorphism {
                perm: vec![1, 0],
                words: words(&[&["x"], &[]])
            }
        );
        assert!(loops_eval(&p("delta ; nabla")).is_err());
        assert_eq!(
            loops_eval(&p("node[x] ; node[y]")).unwrap().to_string(),
            "(0->0; y·x)"
        );
    }

    #[test]
    fn type_errors_surface() {
        let bad = Expr::seq(Expr::Nabla, Expr::Nabla);
        assert!(matches!(eval(&bad, &LoopsModel), Err(EvalError::Type(_))));
    }
}
