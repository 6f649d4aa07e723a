use std::fmt::Write;

use super::{Circuit, Gate};

pub(super) fn render(c: &Circuit) -> String {
    let mut s = String::from("digraph circuit {\n");
    if c.node_count() > 0 {
        s.push_str("  rankdir=LR;\n");
    }
    for (id, gate) in c.gates().iter().enumerate() {
        let _ = match *gate {
            Gate::Input(i) => writeln!(s, "  n{id} [shape=box, label=\"x{i}\"];"),
            Gate::ConstZero => writeln!(s, "  n{id} [shape=diamond, label=\"0\"];"),
            Gate::Xor(..) => writeln!(s, "  n{id} [shape=circle, label=\"\u{2295}\"];"),
        };
    }
    for (id, gate) in c.gates().iter().enumerate() {
        if let Gate::Xor(a, b) = *gate {
            let _ = writeln!(s, "  n{} -> n{id};", a.0);
            let _ = writeln!(s, "  n{} -> n{id};", b.0);
        }
    }
    for (t, o) in c.outputs().iter().enumerate() {
        let label = o.label.replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(s, "  o{t} [shape=plaintext, label=\"{label}\"];");
        let _ = writeln!(s, "  n{} -> o{t};", o.node.0);
    }
    s.push_str("}\n");
    s
}
