//! Canonical forms and isomorphism of idags.
//!
//! Two idags are isomorphic when a bijection of their nodes preserves
//! labels and every weighted edge, with the interface ports fixed.
//!
//! [`canonical_form`] refines a colouring of the nodes by label and weighted
//! neighbourhood profiles, then searches the individualisation tree for the
//! lexicographically least edge list. Twin nodes (same label, same weighted
//! neighbourhood) are interchangeable, so only one of each twin class is
//! branched on. [`is_isomorphic`] is a separate backtracking matcher.

use std::collections::BTreeMap;

use crate::idag::{End, Idag, IdagError, Label, Result};
use crate::weight::Weight;

/// Default cap on search-tree steps for [`canonical_form`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

struct Profile<W> {
    label: Label,
    in_iface: Vec<(usize, W)>,
    out_iface: Vec<(usize, W)>,
    node_in: Vec<(usize, W)>,
    node_out: Vec<(usize, W)>,
}

fn profiles<W: Weight>(d: &Idag<W>) -> Vec<Profile<W>> {
    let mut out: Vec<Profile<W>> = d
        .nodes()
        .iter()
        .map(|n| Profile {
            label: n.label.clone(),
            in_iface: Vec::new(),
            out_iface: Vec::new(),
            node_in: Vec::new(),
            node_out: Vec::new(),
        })
        .collect();
    for (s, t, w) in d.edges() {
        match (s, t) {
            (End::In(i), End::Node(k)) => out[k].in_iface.push((i, w)),
            (End::Node(k), End::Out(j)) => out[k].out_iface.push((j, w)),
            (End::Node(a), End::Node(b)) => {
                out[a].node_out.push((b, w));
                out[b].node_in.push((a, w));
            }
            _ => {}
        }
    }
    for p in &mut out {
        p.in_iface.sort();
        p.out_iface.sort();
        p.node_in.sort();
        p.node_out.sort();
    }
    out
}

/// Replaces each key by its rank among the distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let colors = keys
        .iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect();
    (colors, sorted.len())
}

/// Edge list of a candidate labelling, with the labelling itself.
type Candidate<W> = (Vec<(End, End, W)>, Vec<usize>);

struct Search<'a, W> {
    profiles: &'a [Profile<W>],
    edges: Vec<(End, End, W)>,
    /// twin class of every node; twins are interchangeable
    twin: Vec<usize>,
    budget: u64,
    steps: u64,
    best: Option<Candidate<W>>,
}

impl<W: Weight> Search<'_, W> {
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut count = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let keys: Vec<_> = self
                .profiles
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let mut ins: Vec<(usize, W)> =
                        p.node_in.iter().map(|&(a, w)| (colors[a], w)).collect();
                    let mut outs: Vec<(usize, W)> =
                        p.node_out.iter().map(|&(b, w)| (colors[b], w)).collect();
                    ins.sort_unstable();
                    outs.sort_unstable();
                    (colors[k], ins, outs)
                })
                .collect();
            let (next, next_count) = rank(&keys);
            colors = next;
            if next_count == count {
                return colors;
            }
            count = next_count;
        }
    }

    fn encode(&self, colors: &[usize]) -> Vec<(End, End, W)> {
        let map = |e: End| match e {
            End::Node(k) => End::Node(colors[k]),
            other => other,
        };
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|&(s, t, w)| (map(s), map(t), w))
            .collect();
        list.sort_unstable();
        list
    }

    fn visit(&mut self, colors: Vec<usize>) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(IdagError::SearchBudgetExceeded(self.budget));
        }
        let n = colors.len();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            let code = self.encode(&colors);
            let better = match &self.best {
                None => true,
                Some((best, _)) => code < *best,
            };
            if better {
                self.best = Some((code, colors));
            }
            return Ok(());
        };
        let mut tried_twins = Vec::new();
        for v in 0..n {
            if colors[v] != target || tried_twins.contains(&self.twin[v]) {
                continue;
            }
            tried_twins.push(self.twin[v]);
            let keys: Vec<(usize, bool)> = (0..n).map(|u| (colors[u], u != v)).collect();
            let (split, _) = rank(&keys);
            let refined = self.refine(split);
            self.visit(refined)?;
        }
        Ok(())
    }
}

/// Canonical position of every node: `labelling[k]` is the index node `k`
/// takes in the canonical form.
pub fn canonical_labelling<W: Weight>(d: &Idag<W>, budget: u64) -> Result<Vec<usize>> {
    let profiles = profiles(d);
    let initial: Vec<_> = profiles
        .iter()
        .map(|p| (p.label.clone(), p.in_iface.clone(), p.out_iface.clone()))
        .collect();
    let twin_keys: Vec<_> = profiles
        .iter()
        .map(|p| {
            (
                p.label.clone(),
                p.in_iface.clone(),
                p.out_iface.clone(),
                p.node_in.clone(),
                p.node_out.clone(),
            )
        })
        .collect();
    let (twin, _) = rank(&twin_keys);
    let (colors, _) = rank(&initial);
    let mut search = Search {
        profiles: &profiles,
        edges: d.edges().collect(),
        twin,
        budget,
        steps: 0,
        best: None,
    };
    let colors = search.refine(colors);
    search.visit(colors)?;
    Ok(search.best.map(|(_, c)| c).unwrap_or_default())
}

/// The canonical representative of the isomorphism class of `d`: nodes
/// reordered canonically and renamed `0..|N|-1`.
pub fn canonical_form<W: Weight>(d: &Idag<W>) -> Result<Idag<W>> {
    canonical_form_with_budget(d, DEFAULT_BUDGET)
}

pub fn canonical_form_with_budget<W: Weight>(d: &Idag<W>, budget: u64) -> Result<Idag<W>> {
    let labelling = canonical_labelling(d, budget)?;
    let mut order = vec![0; labelling.len()];
    for (k, &c) in labelling.iter().enumerate() {
        order[c] = k;
    }
    let ids: Vec<String> = (0..order.len()).map(|k| k.to_string()).collect();
    d.reorder(&order).rename(&ids)
}

/// Searches for an isomorphism `d1 -> d2`. The witness maps node `k` of `d1`
/// to node `witness[k]` of `d2`.
pub fn is_isomorphic<W: Weight>(d1: &Idag<W>, d2: &Idag<W>) -> Option<Vec<usize>> {
    if d1.arity() != d2.arity()
        || d1.node_count() != d2.node_count()
        || d1.edge_count() != d2.edge_count()
    {
        return None;
    }
    // interface-only edges are fixed pointwise
    let iface = |d: &Idag<W>| -> Vec<(End, End, W)> {
        d.edges()
            .filter(|(s, t, _)| s.node_index().is_none() && t.node_index().is_none())
            .collect()
    };
    if iface(d1) != iface(d2) {
        return None;
    }
    let p1 = profiles(d1);
    let p2 = profiles(d2);
    let signature = |p: &Profile<W>| {
        let mut ins: Vec<W> = p.node_in.iter().map(|&(_, w)| w).collect();
        let mut outs: Vec<W> = p.node_out.iter().map(|&(_, w)| w).collect();
        ins.sort_unstable();
        outs.sort_unstable();
        (p.label.clone(), p.in_iface.clone(), p.out_iface.clone(), ins, outs)
    };
    let s1: Vec<_> = p1.iter().map(signature).collect();
    let s2: Vec<_> = p2.iter().map(signature).collect();
    let mut multiset: BTreeMap<_, isize> = BTreeMap::new();
    for s in &s1 {
        *multiset.entry(s.clone()).or_default() += 1;
    }
    for s in &s2 {
        *multiset.entry(s.clone()).or_default() -= 1;
    }
    if multiset.values().any(|&c| c != 0) {
        return None;
    }
    let candidates: Vec<Vec<usize>> = s1
        .iter()
        .map(|s| (0..s2.len()).filter(|&b| s2[b] == *s).collect())
        .collect();
    // most constrained nodes first
    let mut order: Vec<usize> = (0..s1.len()).collect();
    order.sort_by_key(|&a| candidates[a].len());

    struct Matcher<'a, W> {
        d1: &'a Idag<W>,
        d2: &'a Idag<W>,
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl<W: Weight> Matcher<'_, W> {
        fn consistent(&self, a: usize, b: usize, depth: usize) -> bool {
            self.order[..depth].iter().all(|&x| {
                let y = self.map[x].expect("mapped");
                self.d1.weight(End::Node(x), End::Node(a)) == self.d2.weight(End::Node(y), End::Node(b))
                    && self.d1.weight(End::Node(a), End::Node(x))
                        == self.d2.weight(End::Node(b), End::Node(y))
            })
        }

        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let a = self.order[depth];
            for idx in 0..self.candidates[a].len() {
                let b = self.candidates[a][idx];
                if self.used[b] || !self.consistent(a, b, depth) {
                    continue;
                }
                self.map[a] = Some(b);
                self.used[b] = true;
                if self.go(depth + 1) {
                    return true;
                }
                self.map[a] = None;
                self.used[b] = false;
            }
            false
        }
    }

    let n = s1.len();
    let mut m = Matcher {
        d1,
        d2,
        order,
        candidates,
        map: vec![None; n],
        used: vec![false; n],
    };
    m.go(0)
        .then(|| m.map.into_iter().map(|b| b.expect("complete")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idag::Vertex;
    use crate::weight::Boolean;

    fn build(n_in: usize, n_out: usize, nodes: &[(&str, &str)], edges: &[(Vertex, Vertex)]) -> Idag<Boolean> {
        Idag::new(
            n_in,
            n_out,
            nodes.iter().map(|(i, l)| (i.to_string(), Label::new(*l))),
            edges.iter().map(|(s, t)| (s.clone(), t.clone(), Boolean::TRUE)),
        )
        .unwrap()
    }

    fn v(s: &str) -> Vertex {
        Vertex::node(s)
    }

    fn two_node_idag() -> Idag<Boolean> {
        build(
            2,
            3,
            &[("k", "•"), ("l", "•")],
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

    #[test]
    fn renaming_is_invisible() {
        let d = two_node_idag();
        let r = d.rename(&["x".into(), "y".into()]).unwrap();
        assert_eq!(canonical_form(&d).unwrap(), canonical_form(&r).unwrap());
        assert_eq!(is_isomorphic(&d, &r), Some(vec![0, 1]));
    }

    #[test]
    fn transposed_node_sequence_is_isomorphic() {
        let d = two_node_idag();
        let swapped = d.reorder(&[1, 0]);
        assert_eq!(is_isomorphic(&d, &swapped), Some(vec![1, 0]));
        assert_eq!(canonical_form(&d).unwrap(), canonical_form(&swapped).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let c = canonical_form(&two_node_idag()).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
        let names: Vec<_> = c.nodes().iter().map(|n| n.id.as_str()).collect();
        assert_eq!(names, ["0", "1"]);
    }

    #[test]
    fn labels_matter() {
        let x = build(0, 0, &[("p", "x")], &[]);
        let y = build(0, 0, &[("p", "y")], &[]);
        assert_eq!(is_isomorphic(&x, &y), None);
        assert_ne!(canonical_form(&x).unwrap(), canonical_form(&y).unwrap());
    }

    #[test]
    fn path_node_differs_from_isolated_node() {
        let path = build(1, 1, &[("p", "•")], &[(Vertex::In(0), v("p")), (v("p"), Vertex::Out(0))]);
        let wire = build(1, 1, &[("p", "•")], &[(Vertex::In(0), Vertex::Out(0))]);
        assert_eq!(is_isomorphic(&path, &wire), None);
        assert_ne!(canonical_form(&path).unwrap(), canonical_form(&wire).unwrap());
    }

    #[test]
    fn many_isolated_twins_stay_cheap() {
        let names: Vec<String> = (0..40).map(|k| format!("n{k}")).collect();
        let d = Idag::<Boolean>::new(
            0,
            0,
            names.iter().map(|n| (n.clone(), Label::default())),
            [],
        )
        .unwrap();
        assert!(canonical_form_with_budget(&d, 1_000).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        // two disjoint edges: refinement alone cannot separate them
        let d = build(
            0,
            0,
            &[("a", "•"), ("b", "•"), ("c", "•"), ("d", "•")],
            &[(v("a"), v("b")), (v("c"), v("d"))],
        );
        assert_eq!(
            canonical_form_with_budget(&d, 1),
            Err(IdagError::SearchBudgetExceeded(1))
        );
        assert!(canonical_form_with_budget(&d, 100).is_ok());
    }
}
