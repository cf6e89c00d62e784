//! Graphviz output: inputs in a source rank on the left, outputs in a sink
//! rank on the right, internal nodes as circles.

use std::fmt::Write;

use idag_core::{End, Idag, Weight};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn vertex_name<W: Weight>(d: &Idag<W>, e: End) -> String {
    match e {
        End::In(i) => format!("in{i}"),
        End::Out(j) => format!("out{j}"),
        End::Node(k) => quote(&format!("n:{}", d.nodes()[k].id)),
    }
}

pub fn render<W: Weight>(d: &Idag<W>) -> String {
    let mut out = String::new();
    out.push_str("digraph idag {\n  rankdir=LR;\n");

    out.push_str("  subgraph inputs {\n    rank=source;\n");
    for i in 0..d.n_in() {
        let _ = writeln!(out, "    in{i} [label=\"{i}\", shape=plaintext];");
    }
    out.push_str("  }\n  subgraph outputs {\n    rank=sink;\n");
    for j in 0..d.n_out() {
        let _ = writeln!(out, "    out{j} [label=\"{j}\", shape=plaintext];");
    }
    out.push_str("  }\n");

    for (k, node) in d.nodes().iter().enumerate() {
        let text = if node.label.is_default() {
            node.id.clone()
        } else {
            format!("{}: {}", node.id, node.label)
        };
        let _ = writeln!(
            out,
            "  {} [label={}, shape=circle];",
            vertex_name(d, End::Node(k)),
            quote(&text)
        );
    }

    // keep interface wires in index order top to bottom
    for (prefix, n) in [("in", d.n_in()), ("out", d.n_out())] {
        for i in 1..n {
            let _ = writeln!(out, "  {prefix}{} -> {prefix}{i} [style=invis];", i - 1);
        }
    }

    for (s, t, w) in d.edges() {
        let _ = write!(out, "  {} -> {}", vertex_name(d, s), vertex_name(d, t));
        if w.to_count() != 1 {
            let _ = write!(out, " [label=\"{w}\"]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
