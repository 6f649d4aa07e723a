use super::{eliminate_dead, fold_constants, Circuit, CircuitBuilder, Gate, NodeId};
use crate::error::{Error, Result};

/// Builds a circuit for the transposed map.
///
/// The circuit is first restricted to the outputs at `selected` (in that
/// order) and pruned of constants and dead nodes; call the result `C`, with
/// `i` inputs, `j` outputs and matrix `M` (outputs `= x M`). The returned
/// circuit has `j` inputs and `i` outputs and computes `y M^T`: input `t`
/// carries the value fed backwards into output `t` of `C`, and output `s` is
/// labelled `x{s}`.
///
/// Every edge is reversed. A node that feeds `f` consumers (output taps
/// included) becomes a balanced XOR tree over `f` terms, so the size is
/// `size(C) + j - i`.
///
/// Fails when `M` has a zero row or a zero column, i.e. when some input
/// feeds nothing or some selected output is constant.
pub fn transpose_circuit(c: &Circuit, selected: &[usize]) -> Result<Circuit> {
    let pruned = eliminate_dead(&fold_constants(&c.select_outputs(selected)?));
    let n = pruned.node_count();

    let mut terms_out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut consumers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, o) in pruned.outputs().iter().enumerate() {
        if matches!(pruned.gate(o.node), Gate::ConstZero) {
            return Err(Error::Precondition(format!("output {} is constant zero", o.label)));
        }
        terms_out[o.node.index()].push(t);
    }
    for (id, gate) in pruned.gates().iter().enumerate() {
        if let Gate::Xor(a, b) = *gate {
            consumers[a.index()].push(id);
            consumers[b.index()].push(id);
        }
    }

    let mut b = CircuitBuilder::new(selected.len());
    let mut value: Vec<Option<NodeId>> = vec![None; n];
    let mut input_value: Vec<Option<NodeId>> = vec![None; pruned.inputs()];
    for id in (0..n).rev() {
        if matches!(pruned.gates()[id], Gate::ConstZero) {
            continue;
        }
        let mut terms: Vec<NodeId> = terms_out[id].iter().map(|&t| b.input(t)).collect();
        terms.extend(consumers[id].iter().map(|&w| value[w].expect("consumers come later")));
        let v = balanced_xor(&mut b, terms);
        value[id] = v;
        if let Gate::Input(s) = pruned.gates()[id] {
            input_value[s] = v;
        }
    }

    for (s, v) in input_value.into_iter().enumerate() {
        let node = v.ok_or_else(|| Error::Precondition(format!("input x{s} feeds no output")))?;
        b.output(node, format!("x{s}"));
    }
    Ok(b.finish())
}

/// XOR of `terms` as a tree of depth `ceil(log2(len))`; `None` when empty.
pub(crate) fn balanced_xor(b: &mut CircuitBuilder, mut terms: Vec<NodeId>) -> Option<NodeId> {
    while terms.len() > 1 {
        terms = terms
            .chunks(2)
            .map(|pair| match *pair {
                [x, y] => b.xor(x, y),
                [x] => x,
                _ => unreachable!(),
            })
            .collect();
    }
    terms.pop()
}
