//! Self-check suites over random instances, shared by the CLI `selftest`
//! command. Each suite compares library results against a direct oracle
//! and reports the first failing case.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_form;
use crate::decompose::{
    decompose, default_sorting, interpret, sample_sortings, transposition_identities, ExtensionCounter, TopSort,
};
use crate::equiv::{equal_mod_theory, Quotients};
use crate::expr::Expr;
use crate::idag::{concat, juxt, End, Idag, Label, Vertex};
use crate::json::idag_to_json;
use crate::matrix::Matrix;
use crate::model::{eval, EvalError, FreeModel, MatrixModel, Model};
use crate::parse::parse;
use crate::quotient::{dangling_nodes, prune_dangling, remove_node, transitive_closure};
use crate::random::{random_expr, random_idag, random_matrix, random_scalar, shuffled_copy, ExprParams, IdagParams};
use crate::weight::{Boolean, Weight, WeightKind};

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    /// Counts a case; `describe` runs only for the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<24} {}/{} cases",
            self.name,
            self.cases - self.failures,
            self.cases
        )
    }
}

/// Sizes of the random corpora.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub sort_invariance: usize,
    pub transpositions: usize,
    pub composition_pairs: usize,
    pub round_trips: usize,
    pub iso_pool: usize,
    pub matrix_pairs: usize,
    pub quotient_idags: usize,
    pub asts: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            sort_invariance: 1000,
            transpositions: 500,
            composition_pairs: 500,
            round_trips: 1000,
            iso_pool: 200,
            matrix_pairs: 500,
            quotient_idags: 200,
            asts: 1000,
        }
    }

    pub fn reduced() -> Self {
        Scale {
            sort_invariance: 200,
            transpositions: 100,
            composition_pairs: 100,
            round_trips: 200,
            iso_pool: 60,
            matrix_pairs: 100,
            quotient_idags: 50,
            asts: 200,
        }
    }
}

// The idags of the figures.

fn build<W: Weight>(n_in: usize, n_out: usize, ids: &[&str], edges: &[(Vertex, Vertex)]) -> Idag<W> {
    Idag::new(
        n_in,
        n_out,
        ids.iter().map(|id| (id.to_string(), Label::default())),
        edges.iter().map(|(s, t)| (s.clone(), t.clone(), W::one())),
    )
    .expect("figure idags are valid")
}

/// The (2,3)-idag with nodes `k, l`.
pub fn figure_left<W: Weight>() -> Idag<W> {
    let v = Vertex::node;
    build(
        2,
        3,
        &["k", "l"],
        &[
            (Vertex::In(0), Vertex::Out(1)),
            (Vertex::In(0), v("k")),
            (Vertex::In(1), v("k")),
            (v("k"), Vertex::Out(1)),
            (v("k"), Vertex::Out(2)),
            (v("l"), Vertex::Out(2)),
        ],
    )
}

/// The (3,1)-idag with nodes `a, b, c, d`.
pub fn figure_right<W: Weight>() -> Idag<W> {
    let v = Vertex::node;
    build(
        3,
        1,
        &["a", "b", "c", "d"],
        &[
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
        ],
    )
}

/// Their concatenation, as drawn.
pub fn figure_concat<W: Weight>() -> Idag<W> {
    let v = Vertex::node;
    build(
        2,
        1,
        &["k", "l", "a", "b", "c", "d"],
        &[
            (Vertex::In(0), v("a")),
            (Vertex::In(0), v("k")),
            (Vertex::In(1), v("k")),
            (v("k"), v("a")),
            (v("k"), v("c")),
            (v("l"), v("a")),
            (v("l"), v("c")),
            (v("a"), v("b")),
            (v("a"), v("d")),
            (v("b"), Vertex::Out(0)),
            (v("c"), v("d")),
            (v("d"), Vertex::Out(0)),
        ],
    )
}

pub fn figure_suite() -> SuiteReport {
    let mut r = SuiteReport::new("figure");
    let got = concat(&figure_right::<Boolean>(), &figure_left()).and_then(|d| canonical_form(&d));
    let want = canonical_form(&figure_concat::<Boolean>()).expect("small");
    match got {
        Ok(got) => {
            let (g, w) = (idag_to_json(&got), idag_to_json(&want));
            r.record(g == w, || format!("concatenation:\n{g}\nexpected:\n{w}"));
        }
        Err(e) => r.record(false, || format!("concatenation failed: {e}")),
    }
    r
}

// Axioms.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Monoid,
    Comonoid,
    Bialgebra,
    Degenerate,
    Hopf,
}

/// One defining equation of a theory (or a pair stated together).
#[derive(Clone, Debug)]
pub struct Axiom {
    pub family: Family,
    pub name: &'static str,
    pub equations: Vec<(&'static str, &'static str)>,
}

impl Axiom {
    /// The weight systems whose theory contains this axiom.
    pub fn modes(&self) -> &'static [WeightKind] {
        match self.family {
            Family::Monoid | Family::Comonoid | Family::Bialgebra => {
                &[WeightKind::Bool, WeightKind::Nat, WeightKind::Int]
            }
            Family::Degenerate => &[WeightKind::Bool],
            Family::Hopf => &[WeightKind::Int],
        }
    }
}

pub fn axioms() -> Vec<Axiom> {
    use Family::*;
    let ax = |family, name, equations: &[(&'static str, &'static str)]| Axiom {
        family,
        name,
        equations: equations.to_vec(),
    };
    vec![
        ax(Monoid, "unit", &[("eta * id(1) ; nabla", "id(1)"), ("id(1) * eta ; nabla", "id(1)")]),
        ax(Monoid, "associativity", &[("nabla * id(1) ; nabla", "id(1) * nabla ; nabla")]),
        ax(Monoid, "commutativity", &[("sym(1,1) ; nabla", "nabla")]),
        ax(Comonoid, "counit", &[("delta ; eps * id(1)", "id(1)"), ("delta ; id(1) * eps", "id(1)")]),
        ax(Comonoid, "coassociativity", &[("delta ; delta * id(1)", "delta ; id(1) * delta")]),
        ax(Comonoid, "cocommutativity", &[("delta ; sym(1,1)", "delta")]),
        ax(Bialgebra, "unit-counit", &[("eta ; eps", "id(0)")]),
        ax(Bialgebra, "multiplication-counit", &[("nabla ; eps", "eps * eps")]),
        ax(Bialgebra, "unit-comultiplication", &[("eta ; delta", "eta * eta")]),
        ax(
            Bialgebra,
            "multiplication-comultiplication",
            &[("nabla ; delta", "delta * delta ; id(1) * sym(1,1) * id(1) ; nabla * nabla")],
        ),
        ax(Degenerate, "special", &[("delta ; nabla", "id(1)")]),
        ax(Hopf, "antipode-unit", &[("eta ; anti", "eta")]),
        ax(Hopf, "antipode-multiplication", &[("anti * anti ; nabla", "nabla ; anti")]),
        ax(Hopf, "antipode-counit", &[("anti ; eps", "eps")]),
        ax(Hopf, "antipode-comultiplication", &[("delta ; anti * anti", "anti ; delta")]),
        ax(
            Hopf,
            "antipode",
            &[
                ("delta ; anti * id(1) ; nabla", "eps ; eta"),
                ("delta ; id(1) * anti ; nabla", "eps ; eta"),
            ],
        ),
    ]
}

/// A deliberately broken free model with the images of `nabla` and `delta`
/// exchanged.
pub struct Swapped<M>(pub M);

impl<M: Model> Model for Swapped<M> {
    type Morphism = M::Morphism;

    fn name(&self) -> String {
        format!("swapped({})", self.0.name())
    }

    fn generator(&self, g: &Expr) -> Result<M::Morphism, EvalError> {
        match g {
            Expr::Nabla => self.0.generator(&Expr::Delta),
            Expr::Delta => self.0.generator(&Expr::Nabla),
            other => self.0.generator(other),
        }
    }

    fn identity(&self, n: usize) -> M::Morphism {
        self.0.identity(n)
    }

    fn symmetry(&self, n: usize, m: usize) -> M::Morphism {
        self.0.symmetry(n, m)
    }

    fn then(&self, first: &M::Morphism, next: &M::Morphism) -> Result<M::Morphism, EvalError> {
        self.0.then(first, next)
    }

    fn tensor(&self, a: &M::Morphism, b: &M::Morphism) -> M::Morphism {
        self.0.tensor(a, b)
    }

    fn arity(&self, f: &M::Morphism) -> (usize, usize) {
        self.0.arity(f)
    }

    fn equal(&self, a: &M::Morphism, b: &M::Morphism) -> Result<bool, EvalError> {
        self.0.equal(a, b)
    }
}

/// Checks one equation in the free model (by the decision procedure, or
/// in the mutant) and in the matrix model over `W`.
fn check_equation<W: Weight>(lhs: &Expr, rhs: &Expr, mutant: bool) -> Result<(), String> {
    if mutant {
        let m = Swapped(FreeModel::<W>::new());
        let l = eval(lhs, &m).map_err(|e| e.to_string())?;
        let r = eval(rhs, &m).map_err(|e| e.to_string())?;
        if !m.equal(&l, &r).map_err(|e| e.to_string())? {
            return Err(format!("normal forms differ:\n{}\n{}", idag_to_json(&l), idag_to_json(&r)));
        }
    } else {
        let report = equal_mod_theory::<W>(lhs, rhs, &Quotients::none()).map_err(|e| e.to_string())?;
        if !report.equal {
            return Err(format!(
                "normal forms differ:\n{}\n{}",
                idag_to_json(&report.lhs),
                idag_to_json(&report.rhs)
            ));
        }
    }
    let m = MatrixModel::<W>::new();
    let l = eval(lhs, &m).map_err(|e| e.to_string())?;
    let r = eval(rhs, &m).map_err(|e| e.to_string())?;
    if l != r {
        return Err(format!("matrices differ: {l:?} vs {r:?}"));
    }
    Ok(())
}

fn check_in(kind: WeightKind, lhs: &Expr, rhs: &Expr, mutant: bool) -> Result<(), String> {
    match kind {
        WeightKind::Bool => check_equation::<Boolean>(lhs, rhs, mutant),
        WeightKind::Nat => check_equation::<u64>(lhs, rhs, mutant),
        WeightKind::Int => check_equation::<i64>(lhs, rhs, mutant),
    }
}

/// Every axiom in every weight system whose theory contains it. One case
/// per axiom.
pub fn axiom_suite(mutant: bool) -> SuiteReport {
    let mut r = SuiteReport::new("axioms");
    for axiom in axioms() {
        let mut failure = None;
        'eqs: for (l, rt) in &axiom.equations {
            let (lhs, rhs) = (parse(l).expect("axiom parses"), parse(rt).expect("axiom parses"));
            for &kind in axiom.modes() {
                if let Err(e) = check_in(kind, &lhs, &rhs, mutant) {
                    failure = Some(format!("{:?} {} in {kind}: {l}  =  {rt}\n{e}", axiom.family, axiom.name));
                    break 'eqs;
                }
            }
        }
        r.record(failure.is_none(), || failure.clone().unwrap_or_default());
    }
    r
}

// Random corpora.

const LABELS: &[&str] = &["•", "x", "y"];

fn random_params<R: Rng + ?Sized>(rng: &mut R, max_iface: usize, max_nodes: usize, edge_prob: f64) -> IdagParams {
    IdagParams::new(
        rng.gen_range(0..=max_iface),
        rng.gen_range(0..=max_iface),
        rng.gen_range(0..=max_nodes),
        edge_prob,
    )
    .with_labels(LABELS)
}

fn random_lambda<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> MatrixModel<W> {
    LABELS
        .iter()
        .fold(MatrixModel::new(), |m, l| m.with_lambda(Label::new(*l), random_scalar(rng)))
}

fn random_sorting<W: Weight, R: Rng + ?Sized>(rng: &mut R, d: &Idag<W>) -> TopSort {
    ExtensionCounter::new(d).sample(rng)
}

fn same_form<W: Weight>(a: &Idag<W>, b: &Idag<W>) -> bool {
    matches!((canonical_form(a), canonical_form(b)), (Ok(x), Ok(y)) if x == y)
}

fn sorting_text<W: Weight>(d: &Idag<W>, s: &TopSort) -> String {
    let ids: Vec<&str> = s.as_slice().iter().map(|&k| d.nodes()[k].id.as_str()).collect();
    format!("({})", ids.join(","))
}

/// Interpretations along every sampled sorting agree, in the free model
/// and in nat and int matrix models with random node scalars.
pub fn sort_invariance_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("sort-invariance");
    for _ in 0..count {
        let p = random_params(rng, 5, 7, 0.4);
        let d: Idag<Boolean> = random_idag(rng, &p);
        let sortings = sample_sortings(&d, 20, rng);
        let nat = random_lambda::<u64, R>(rng);
        let int = random_lambda::<i64, R>(rng);
        let base = (
            interpret(&d, &sortings[0], &FreeModel::<Boolean>::new()),
            interpret(&d, &sortings[0], &nat),
            interpret(&d, &sortings[0], &int),
        );
        let mut bad = None;
        for s in &sortings[1..] {
            let ok = match (&base, interpret(&d, s, &FreeModel::<Boolean>::new())) {
                ((Ok(f0), Ok(n0), Ok(i0)), Ok(f)) => {
                    same_form(f0, &f)
                        && interpret(&d, s, &nat).as_ref() == Ok(n0)
                        && interpret(&d, s, &int).as_ref() == Ok(i0)
                }
                _ => false,
            };
            if !ok {
                bad = Some(s.clone());
                break;
            }
        }
        r.record(bad.is_none(), || {
            format!(
                "{}\nsortings {} and {} disagree",
                idag_to_json(&d),
                sorting_text(&d, &sortings[0]),
                sorting_text(&d, bad.as_ref().expect("failing sorting"))
            )
        });
    }
    r
}

fn transposition_case<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> Result<(), String> {
    loop {
        let mut p = random_params(rng, 3, 6, 0.4);
        p.n_nodes = p.n_nodes.max(2);
    let d: Idag<W> = random_idag(rng, &p);
        let sigma = random_sorting(rng, &d);
        let order = sigma.as_slice();
        let swappable: Vec<usize> = (0..order.len() - 1)
            .filter(|&i| d.weight(End::Node(order[i]), End::Node(order[i + 1])).is_zero())
            .collect();
        let Some(&i) = swappable.choose(rng) else {
            continue;
        };
        let sigma2 = sigma.transpose(i);
        let describe = |what: &str| {
            format!(
                "{}\nsortings {} / {} at {i}: {what}",
                idag_to_json(&d),
                sorting_text(&d, &sigma),
                sorting_text(&d, &sigma2)
            )
        };
        let free = transposition_identities(&d, &sigma, &sigma2, i, &FreeModel::<W>::new())
            .map_err(|e| describe(&e.to_string()))?;
        let matrix = transposition_identities(&d, &sigma, &sigma2, i, &random_lambda::<W, R>(rng))
            .map_err(|e| describe(&e.to_string()))?;
        for report in [free, matrix] {
            if let Some((name, _)) = report.results().iter().find(|(_, ok)| !ok) {
                return Err(describe(name));
            }
        }
        return Ok(());
    }
}

fn by_kind<R: Rng + ?Sized>(
    case: usize,
    rng: &mut R,
    f: fn(&mut R) -> Result<(), String>,
    g: fn(&mut R) -> Result<(), String>,
    h: fn(&mut R) -> Result<(), String>,
) -> Result<(), String> {
    match case % 3 {
        0 => f(rng),
        1 => g(rng),
        _ => h(rng),
    }
}

/// The five layer identities for random adjacent transpositions.
pub fn transposition_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("transposition");
    for case in 0..count {
        let out = by_kind(
            case,
            rng,
            transposition_case::<Boolean, R>,
            transposition_case::<u64, R>,
            transposition_case::<i64, R>,
        );
        r.record(out.is_ok(), || out.clone().unwrap_err());
    }
    r
}

fn composition_case<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> Result<(), String> {
    let (a, b, c) = (rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
    let mk = |rng: &mut R, n_in, n_out| -> Idag<W> {
        let nodes = rng.gen_range(0..=4);
        random_idag(rng, &IdagParams::new(n_in, n_out, nodes, 0.4).with_labels(LABELS))
    };
    let d1 = mk(rng, a, b);
    let d2 = mk(rng, b, c);
    let d3 = mk(rng, c, a);
    let (s1, s2, s3) = (random_sorting(rng, &d1), random_sorting(rng, &d2), random_sorting(rng, &d3));
    let free = FreeModel::<W>::new();
    let err = |what: &str| format!("{what}:\n{}\n{}", idag_to_json(&d1), idag_to_json(&d2));

    let composite = concat(&d2, &d1).map_err(|e| err(&e.to_string()))?;
    let whole = interpret(&composite, &s1.stack(&s2), &free).map_err(|e| err(&e.to_string()))?;
    let parts = free
        .then(
            &interpret(&d1, &s1, &free).map_err(|e| err(&e.to_string()))?,
            &interpret(&d2, &s2, &free).map_err(|e| err(&e.to_string()))?,
        )
        .map_err(|e| err(&e.to_string()))?;
    if !same_form(&whole, &parts) {
        return Err(err("concatenation"));
    }

    let side = juxt(&d1, &d3);
    let whole = interpret(&side, &s1.stack(&s3), &free).map_err(|e| err(&e.to_string()))?;
    let parts = free.tensor(
        &interpret(&d1, &s1, &free).map_err(|e| err(&e.to_string()))?,
        &interpret(&d3, &s3, &free).map_err(|e| err(&e.to_string()))?,
    );
    if !same_form(&whole, &parts) {
        return Err(format!("juxtaposition:\n{}\n{}", idag_to_json(&d1), idag_to_json(&d3)));
    }
    Ok(())
}

/// Interpretation commutes with concatenation and juxtaposition.
pub fn compositionality_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("compositionality");
    for case in 0..count {
        let out = by_kind(
            case,
            rng,
            composition_case::<Boolean, R>,
            composition_case::<u64, R>,
            composition_case::<i64, R>,
        );
        r.record(out.is_ok(), || out.clone().unwrap_err());
    }
    r
}

fn round_trip_case<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> Result<(), String> {
    let p = random_params(rng, 4, 6, 0.4);
    let d: Idag<W> = random_idag(rng, &p);
    let random = random_sorting(rng, &d);
    for sigma in [default_sorting(&d), random] {
        let back = decompose(&d, &sigma)
            .map_err(|e| e.to_string())
            .and_then(|e| eval(&e, &FreeModel::<W>::new()).map_err(|e| e.to_string()));
        match back {
            Ok(back) if same_form(&back, &d) => {}
            _ => {
                return Err(format!(
                    "{}\nsorting {} does not round-trip",
                    idag_to_json(&d),
                    sorting_text(&d, &sigma)
                ))
            }
        }
    }
    Ok(())
}

/// Decomposing and evaluating returns an isomorphic idag.
pub fn round_trip_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("freeness-round-trip");
    for case in 0..count {
        let out = by_kind(
            case,
            rng,
            round_trip_case::<Boolean, R>,
            round_trip_case::<u64, R>,
            round_trip_case::<i64, R>,
        );
        r.record(out.is_ok(), || out.clone().unwrap_err());
    }
    r
}

/// Exhaustive search over all node bijections.
pub fn brute_force_isomorphic<W: Weight>(d1: &Idag<W>, d2: &Idag<W>) -> bool {
    if d1.arity() != d2.arity() || d1.node_count() != d2.node_count() || d1.edge_count() != d2.edge_count() {
        return false;
    }
    let n = d1.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let matches = |perm: &[usize]| {
        (0..n).all(|k| d1.label(k) == d2.label(perm[k]))
            && d1.edges().all(|(s, t, w)| {
                let map = |e: End| match e {
                    End::Node(k) => End::Node(perm[k]),
                    other => other,
                };
                d2.weight(map(s), map(t)) == w
            })
    };
    // Heap's algorithm
    let mut c = vec![0; n];
    if matches(&perm) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if matches(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// A pool of random idags, shuffled copies and near copies; canonical form
/// equality must match exhaustive search on every pair.
pub fn iso_suite<R: Rng + ?Sized>(rng: &mut R, pool: usize) -> SuiteReport {
    let mut r = SuiteReport::new("isomorphism");
    let mut idags: Vec<Idag<Boolean>> = Vec::new();
    while idags.len() < pool {
        let roll = rng.gen_range(0..3);
        let d = match (roll, idags.choose(rng)) {
            (1, Some(base)) => shuffled_copy(rng, base),
            (2, Some(base)) => {
                let copy = shuffled_copy(rng, base);
                let edges: Vec<_> = copy.edges().collect();
                match edges.choose(rng) {
                    Some(&(s0, t0, _)) => copy.with_edges(
                        edges
                            .iter()
                            .filter(|&&(s, t, _)| (s, t) != (s0, t0))
                            .map(|&(s, t, w)| ((s, t), w)),
                    ),
                    None => copy,
                }
            }
            _ => {
                let p = IdagParams::new(rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=6), 0.35)
                    .with_labels(&["•", "x"]);
                random_idag(rng, &p)
            }
        };
        idags.push(d);
    }
    let forms: Vec<_> = idags.iter().map(|d| canonical_form(d).expect("small idags")).collect();
    for i in 0..idags.len() {
        for j in i + 1..idags.len() {
            let canon = forms[i] == forms[j];
            let brute = brute_force_isomorphic(&idags[i], &idags[j]);
            r.record(canon == brute, || {
                format!(
                    "canonical forms say {canon}, exhaustive search says {brute}:\n{}\n{}",
                    idag_to_json(&idags[i]),
                    idag_to_json(&idags[j])
                )
            });
        }
    }
    r
}

/// Schoolbook product over the semiring.
pub fn naive_product<W: Weight>(f: &Matrix<W>, g: &Matrix<W>) -> Matrix<W> {
    let mut out = Matrix::zeros(f.rows(), g.cols());
    for i in 0..f.rows() {
        for k in 0..g.cols() {
            let mut acc = W::zero();
            for j in 0..f.cols() {
                acc = acc + f.get(i, j) * g.get(j, k);
            }
            out.set(i, k, acc);
        }
    }
    out
}

fn matrix_case<W: Weight, R: Rng + ?Sized>(rng: &mut R) -> Result<(), String> {
    let (a, b, c) = (rng.gen_range(0..=6), rng.gen_range(0..=6), rng.gen_range(0..=6));
    let f: Matrix<W> = random_matrix(rng, a, b, 4);
    let g: Matrix<W> = random_matrix(rng, b, c, 4);
    let composite = concat(&Idag::from_matrix(&g), &Idag::from_matrix(&f)).map_err(|e| e.to_string())?;
    if composite.interface_matrix() != naive_product(&f, &g) || composite.node_count() != 0 {
        return Err(format!("concat disagrees with the product of\n{f:?}\n{g:?}"));
    }
    let model = MatrixModel::<W>::new();
    for m in [&f, &g] {
        let e = crate::decompose::encode_relation(m);
        if eval(&e, &model).as_ref() != Ok(m) {
            return Err(format!("encoding {e} does not evaluate to {m:?}"));
        }
    }
    Ok(())
}

/// Node-free concatenation is matrix product, and relation encodings
/// evaluate back to their matrices.
pub fn matrix_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("matrix-agreement");
    for case in 0..count {
        let out = by_kind(case, rng, matrix_case::<Boolean, R>, matrix_case::<u64, R>, matrix_case::<i64, R>);
        r.record(out.is_ok(), || out.clone().unwrap_err());
    }
    r
}

/// `node` replaced by `delta ; (node * id(1)) ; nabla`.
pub fn bypass_node(label: &Label) -> Expr {
    Expr::seq_all([
        Expr::Delta,
        Expr::ten(Expr::Node(label.clone()), Expr::Id(1)),
        Expr::Nabla,
    ])
}

/// Deletes dangling nodes one at a time in random order.
pub fn prune_in_random_order<W: Weight, R: Rng + ?Sized>(rng: &mut R, d: &Idag<W>) -> Idag<W> {
    let mut current = d.clone();
    while let Some(&k) = dangling_nodes(&current).choose(rng) {
        current = remove_node(&current, k);
    }
    current
}

/// The quotient equations: the bypass substitution yields the transitive
/// closure, the antipode law holds in the integer matrices, and pruning is
/// independent of the deletion order.
pub fn conclusion_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("quotients");
    for _ in 0..count {
        let p = random_params(rng, 4, 6, 0.4);
        let d: Idag<Boolean> = random_idag(rng, &p);
        let sigma = random_sorting(rng, &d);
        let substituted = decompose(&d, &sigma)
            .map(|e| e.substitute_nodes(&bypass_node))
            .map_err(|e| e.to_string())
            .and_then(|e| eval(&e, &FreeModel::<Boolean>::new()).map_err(|e| e.to_string()));
        let closed = transitive_closure(&d).expect("bool");
        r.record(matches!(&substituted, Ok(s) if same_form(s, &closed)), || {
            format!("bypassed decomposition is not the closure of\n{}", idag_to_json(&d))
        });
    }
    let hopf = parse("delta ; anti * id(1) ; nabla").expect("parses");
    let m = eval(&hopf, &MatrixModel::<i64>::new());
    r.record(m == Ok(Matrix::scalar(0)), || format!("antipode law gave {m:?}"));
    for _ in 0..count {
        let p = random_params(rng, 3, 7, 0.25);
        let d: Idag<Boolean> = random_idag(rng, &p);
        let pruned = prune_dangling(&d).expect("bool");
        let ok = (0..3).all(|_| same_form(&prune_in_random_order(rng, &d), &pruned));
        r.record(ok, || format!("pruning depends on the order for\n{}", idag_to_json(&d)));
    }
    r
}

/// Printing then parsing returns the same tree.
pub fn print_parse_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("print-parse");
    let p = ExprParams::default();
    for _ in 0..count {
        let e = random_expr(rng, &p);
        let text = e.to_string();
        let back = parse(&text);
        r.record(back.as_ref() == Ok(&e), || format!("{text} reparses as {back:?}"));
    }
    r
}

/// Every suite, seeded. With `mutant` the axiom suite runs against the
/// swapped free model.
pub fn run_all(scale: Scale, seed: u64, mutant: bool) -> Vec<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        figure_suite(),
        axiom_suite(mutant),
        sort_invariance_suite(&mut rng, scale.sort_invariance),
        transposition_suite(&mut rng, scale.transpositions),
        compositionality_suite(&mut rng, scale.composition_pairs),
        round_trip_suite(&mut rng, scale.round_trips),
        iso_suite(&mut rng, scale.iso_pool),
        matrix_suite(&mut rng, scale.matrix_pairs),
        conclusion_suite(&mut rng, scale.quotient_idags),
        print_parse_suite(&mut rng, scale.asts),
    ]
}
