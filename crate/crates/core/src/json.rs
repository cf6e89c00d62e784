//! The JSON idag document:
//!
//! ```json
//! {"mode":"bool","inputs":2,"outputs":1,
//!  "nodes":[{"id":"k","label":"•"}],
//!  "edges":[{"src":{"in":0},"dst":{"node":"k"},"w":1},
//!           {"src":{"node":"k"},"dst":{"out":0},"w":1}]}
//! ```
//!
//! `"w"` defaults to 1 and `"label"` to `•` when omitted. Serialization
//! always writes both, lists nodes in sequence order and edges sorted by
//! (source, target) with inputs before nodes before outputs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::idag::{End, Idag, IdagError, Label, Vertex};
use crate::matrix::Matrix;
use crate::weight::{Weight, WeightKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdagDoc {
    mode: WeightKind,
    inputs: usize,
    outputs: usize,
    #[serde(default)]
    nodes: Vec<NodeDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum SrcDoc {
    In(usize),
    Node(String),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum DstDoc {
    Out(usize),
    Node(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    src: SrcDoc,
    dst: DstDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<i64>,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed idag JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid idag: {0}")]
    Invalid(#[from] IdagError),
}

/// Reads only the `"mode"` field, so callers can pick the weight type.
pub fn peek_mode(text: &str) -> Result<WeightKind, JsonError> {
    #[derive(Deserialize)]
    struct ModeOnly {
        mode: WeightKind,
    }
    Ok(serde_json::from_str::<ModeOnly>(text)?.mode)
}

pub fn idag_from_json<W: Weight>(text: &str) -> Result<Idag<W>, JsonError> {
    let doc: IdagDoc = serde_json::from_str(text)?;
    if doc.mode != W::KIND {
        return Err(IdagError::ModeMismatch {
            expected: W::KIND,
            found: doc.mode,
        }
        .into());
    }
    let nodes = doc.nodes.into_iter().map(|n| {
        let label = n.label.map(Label::new).unwrap_or_default();
        (n.id, label)
    });
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in doc.edges {
        let src = match e.src {
            SrcDoc::In(i) => Vertex::In(i),
            SrcDoc::Node(id) => Vertex::Node(id),
        };
        let dst = match e.dst {
            DstDoc::Out(j) => Vertex::Out(j),
            DstDoc::Node(id) => Vertex::Node(id),
        };
        let raw = e.w.unwrap_or(1);
        let name = || format!("{src:?} -> {dst:?}");
        let w = match W::from_count(raw) {
            Some(w) => w,
            None if raw < 0 => return Err(IdagError::AntipodeWeight(name()).into()),
            None => {
                return Err(IdagError::BadWeight {
                    edge: name(),
                    weight: raw,
                    kind: W::KIND,
                }
                .into())
            }
        };
        if raw != 0 && W::KIND == WeightKind::Bool && raw != 1 {
            return Err(IdagError::BadWeight {
                edge: name(),
                weight: raw,
                kind: W::KIND,
            }
            .into());
        }
        edges.push((src, dst, w));
    }
    Ok(Idag::new(doc.inputs, doc.outputs, nodes, edges)?)
}

fn to_doc<W: Weight>(d: &Idag<W>) -> IdagDoc {
    let nodes = d
        .nodes()
        .iter()
        .map(|n| NodeDoc {
            id: n.id.clone(),
            label: Some(n.label.as_str().to_string()),
        })
        .collect();
    let node_id = |k: usize| d.nodes()[k].id.clone();
    let edges = d
        .edges()
        .map(|(s, t, w)| EdgeDoc {
            src: match s {
                End::In(i) => SrcDoc::In(i),
                End::Node(k) => SrcDoc::Node(node_id(k)),
                End::Out(_) => unreachable!("edges never leave outputs"),
            },
            dst: match t {
                End::Out(j) => DstDoc::Out(j),
                End::Node(k) => DstDoc::Node(node_id(k)),
                End::In(_) => unreachable!("edges never enter inputs"),
            },
            w: Some(w.to_count()),
        })
        .collect();
    IdagDoc {
        mode: W::KIND,
        inputs: d.n_in(),
        outputs: d.n_out(),
        nodes,
        edges,
    }
}

pub fn idag_to_value<W: Weight>(d: &Idag<W>) -> serde_json::Value {
    serde_json::to_value(to_doc(d)).expect("idag documents always serialize")
}

/// Pretty-printed document.
pub fn idag_to_json<W: Weight>(d: &Idag<W>) -> String {
    serde_json::to_string_pretty(&to_doc(d)).expect("idag documents always serialize")
}

/// `{"inputs":n,"outputs":m,"rows":[[...],...]}` with row-major integer
/// entries.
pub fn matrix_to_value<W: Weight>(m: &Matrix<W>) -> serde_json::Value {
    serde_json::json!({
        "mode": W::KIND,
        "inputs": m.rows(),
        "outputs": m.cols(),
        "rows": m.to_count_rows(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Boolean;

    #[test]
    fn defaults_for_weight_and_label() {
        let text = r#"{"mode":"nat","inputs":1,"outputs":1,
            "nodes":[{"id":"p"}],
            "edges":[{"src":{"in":0},"dst":{"node":"p"}},
                     {"src":{"node":"p"},"dst":{"out":0},"w":3}]}"#;
        let d = idag_from_json::<u64>(text).unwrap();
        assert!(d.label(0).is_default());
        assert_eq!(d.weight(End::In(0), End::Node(0)), 1);
        assert_eq!(d.weight(End::Node(0), End::Out(0)), 3);
    }

    #[test]
    fn output_reparses_identically() {
        let text = r#"{"mode":"int","inputs":2,"outputs":1,
            "nodes":[{"id":"b","label":"x"},{"id":"a"}],
            "edges":[{"src":{"node":"b"},"dst":{"out":0},"w":-2},
                     {"src":{"in":1},"dst":{"node":"b"}},
                     {"src":{"in":0},"dst":{"out":0}},
                     {"src":{"node":"a"},"dst":{"node":"b"}}]}"#;
        let d = idag_from_json::<i64>(text).unwrap();
        let once = idag_to_json(&d);
        let again = idag_to_json(&idag_from_json::<i64>(&once).unwrap());
        assert_eq!(once, again);
        assert_eq!(peek_mode(&once).unwrap(), WeightKind::Int);
    }

    #[test]
    fn mode_and_weight_errors() {
        let text = r#"{"mode":"nat","inputs":1,"outputs":1,"nodes":[],"edges":[]}"#;
        assert!(matches!(
            idag_from_json::<Boolean>(text),
            Err(JsonError::Invalid(IdagError::ModeMismatch { .. }))
        ));
        let neg = r#"{"mode":"nat","inputs":1,"outputs":1,"edges":[{"src":{"in":0},"dst":{"out":0},"w":-1}]}"#;
        assert!(matches!(
            idag_from_json::<u64>(neg),
            Err(JsonError::Invalid(IdagError::AntipodeWeight(_)))
        ));
        let two = r#"{"mode":"bool","inputs":1,"outputs":1,"edges":[{"src":{"in":0},"dst":{"out":0},"w":2}]}"#;
        assert!(matches!(
            idag_from_json::<Boolean>(two),
            Err(JsonError::Invalid(IdagError::BadWeight { .. }))
        ));
        let zero = r#"{"mode":"int","inputs":1,"outputs":1,"edges":[{"src":{"in":0},"dst":{"out":0},"w":0}]}"#;
        assert!(matches!(
            idag_from_json::<i64>(zero),
            Err(JsonError::Invalid(IdagError::ZeroWeight(_)))
        ));
        let bad_field = r#"{"mode":"int","inputs":1,"outputs":1,"extra":1}"#;
        assert!(matches!(idag_from_json::<i64>(bad_field), Err(JsonError::Syntax(_))));
    }

    #[test]
    fn matrix_rows() {
        let m = Matrix::<i64>::from_rows(vec![vec![1, -1], vec![0, 2]]);
        assert_eq!(
            matrix_to_value(&m).to_string(),
            r#"{"inputs":2,"mode":"int","outputs":2,"rows":[[1,-1],[0,2]]}"#
        );
    }
}
