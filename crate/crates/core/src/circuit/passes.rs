//! Semantics-preserving rewrites. Each pass returns a new circuit whose
//! outputs compute the same linear functions as the input circuit's, and
//! returns an identical circuit when it finds nothing to do.

use rustc_hash::FxHashMap;

use super::{Circuit, Gate, NodeId, Output};

#[derive(Clone, Copy)]
enum Folded {
    Zero,
    Node(NodeId),
}

/// Removes XORs with a constant-zero operand (the XOR becomes an alias for
/// the other operand) and replaces nodes whose encoding vector is zero by the
/// constant.
pub fn fold_constants(c: &Circuit) -> Circuit {
    let sig = c.signatures();
    let mut gates = Vec::with_capacity(c.gates.len());
    let mut map = Vec::with_capacity(c.gates.len());
    let mut zero: Option<NodeId> = None;

    let push = |gates: &mut Vec<Gate>, g: Gate| {
        gates.push(g);
        NodeId((gates.len() - 1) as u32)
    };

    for (id, gate) in c.gates.iter().enumerate() {
        let folded = match *gate {
            Gate::Input(i) => Folded::Node(push(&mut gates, Gate::Input(i))),
            Gate::ConstZero => {
                let z = push(&mut gates, Gate::ConstZero);
                zero.get_or_insert(z);
                Folded::Zero
            }
            Gate::Xor(a, b) => match (map[a.index()], map[b.index()]) {
                (Folded::Zero, Folded::Zero) => Folded::Zero,
                (Folded::Zero, Folded::Node(n)) | (Folded::Node(n), Folded::Zero) => Folded::Node(n),
                (Folded::Node(x), Folded::Node(y)) if x == y => Folded::Zero,
                (Folded::Node(x), Folded::Node(y)) => {
                    if sig[id] == 0 && c.is_zero_vector(NodeId(id as u32)) {
                        Folded::Zero
                    } else {
                        Folded::Node(push(&mut gates, Gate::Xor(x, y)))
                    }
                }
            },
        };
        map.push(folded);
    }

    let outputs = c
        .outputs
        .iter()
        .map(|o| {
            let node = match map[o.node.index()] {
                Folded::Node(n) => n,
                Folded::Zero => *zero.get_or_insert_with(|| push(&mut gates, Gate::ConstZero)),
            };
            Output {
                node,
                label: o.label.clone(),
            }
        })
        .collect();

    Circuit {
        inputs: c.inputs,
        gates,
        outputs,
    }
}

/// Merges nodes with equal encoding vectors. Each class is represented by its
/// shallowest member (earliest on ties), so merging never increases depth.
pub fn merge_duplicates(c: &Circuit) -> Circuit {
    let n = c.gates.len();
    let sig = c.signatures();
    let depth = c.node_depths();

    let mut class_of = vec![0usize; n];
    let mut rep: Vec<usize> = Vec::new();
    let mut witness: Vec<usize> = Vec::new();
    let mut witness_operands: Vec<Option<(usize, usize)>> = Vec::new();
    // first class seen with each signature, further ones chained through
    // `same_sig` (only reachable on a signature collision)
    let mut by_sig: FxHashMap<u64, usize> =
        FxHashMap::with_capacity_and_hasher(n, Default::default());
    let mut same_sig: Vec<usize> = Vec::new();
    // operand pairs already proven to land in a class whose witness has
    // different operands; saves repeating the exact check
    let mut proven: FxHashMap<(usize, usize), usize> = FxHashMap::default();

    for id in 0..n {
        let operands = match c.gates[id] {
            Gate::Xor(a, b) => {
                let (ca, cb) = (class_of[a.index()], class_of[b.index()]);
                Some((ca.min(cb), ca.max(cb)))
            }
            _ => None,
        };
        let mut found = None;
        let mut cand = by_sig.get(&sig[id]).copied();
        while let Some(cl) = cand {
            let structural = operands.is_some()
                && (witness_operands[cl] == operands
                    || operands.and_then(|key| proven.get(&key)) == Some(&cl));
            if structural || c.same_vector(NodeId(id as u32), NodeId(witness[cl] as u32)) {
                if !structural {
                    if let Some(key) = operands {
                        proven.insert(key, cl);
                    }
                }
                found = Some(cl);
                break;
            }
            cand = (same_sig[cl] != usize::MAX).then_some(same_sig[cl]);
        }
        class_of[id] = match found {
            Some(cl) => {
                if depth[id] < depth[rep[cl]] {
                    rep[cl] = id;
                }
                cl
            }
            None => {
                let cl = rep.len();
                rep.push(id);
                witness.push(id);
                witness_operands.push(operands);
                same_sig.push(by_sig.insert(sig[id], cl).unwrap_or(usize::MAX));
                cl
            }
        };
    }

    if rep.len() == n {
        return c.clone();
    }

    // Emit classes in order of first appearance. A representative's operands
    // belong to classes whose representatives are strictly shallower, so the
    // explicit stack below always terminates.
    let mut emitted: Vec<Option<NodeId>> = vec![None; rep.len()];
    let mut gates = Vec::with_capacity(rep.len());
    let mut stack = Vec::new();
    for id in 0..n {
        stack.push(class_of[id]);
        while let Some(&cl) = stack.last() {
            if emitted[cl].is_some() {
                stack.pop();
                continue;
            }
            let gate = match c.gates[rep[cl]] {
                Gate::Xor(a, b) => {
                    let (ca, cb) = (class_of[a.index()], class_of[b.index()]);
                    match (emitted[ca], emitted[cb]) {
                        (Some(x), Some(y)) => Gate::Xor(x, y),
                        (None, _) => {
                            stack.push(ca);
                            continue;
                        }
                        (_, None) => {
                            stack.push(cb);
                            continue;
                        }
                    }
                }
                other => other,
            };
            gates.push(gate);
            emitted[cl] = Some(NodeId((gates.len() - 1) as u32));
            stack.pop();
        }
    }

    let outputs = c
        .outputs
        .iter()
        .map(|o| Output {
            node: emitted[class_of[o.node.index()]].expect("every class is emitted"),
            label: o.label.clone(),
        })
        .collect();

    Circuit {
        inputs: c.inputs,
        gates,
        outputs,
    }
}

/// Drops nodes that no output depends on. Input nodes are always kept.
pub fn eliminate_dead(c: &Circuit) -> Circuit {
    let live = c.live_nodes();
    let mut map: Vec<Option<NodeId>> = vec![None; c.gates.len()];
    let mut gates = Vec::with_capacity(c.gates.len());
    for (id, gate) in c.gates.iter().enumerate() {
        let keep = live[id] || matches!(gate, Gate::Input(_));
        if !keep {
            continue;
        }
        let g = match *gate {
            Gate::Xor(a, b) => Gate::Xor(
                map[a.index()].expect("operands of live gates are live"),
                map[b.index()].expect("operands of live gates are live"),
            ),
            other => other,
        };
        gates.push(g);
        map[id] = Some(NodeId((gates.len() - 1) as u32));
    }
    let outputs = c
        .outputs
        .iter()
        .map(|o| Output {
            node: map[o.node.index()].expect("outputs are live"),
            label: o.label.clone(),
        })
        .collect();
    Circuit {
        inputs: c.inputs,
        gates,
        outputs,
    }
}

/// Applies constant folding, duplicate merging and dead-node elimination
/// until none of them changes the circuit.
pub fn optimize(c: &Circuit) -> Circuit {
    let mut cur = c.clone();
    loop {
        let next = eliminate_dead(&merge_duplicates(&fold_constants(&cur)));
        if next == cur {
            return next;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::figure_one;
    use crate::circuit::{random_circuit, CircuitBuilder};
    use crate::gf2::BitVec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn same_function(a: &Circuit, b: &Circuit) -> bool {
        a.inputs() == b.inputs() && a.output_matrix() == b.output_matrix()
    }

    fn agree_on_random_inputs(a: &Circuit, b: &Circuit, rng: &mut impl Rng) -> bool {
        (0..16).all(|_| {
            let x = BitVec::from_fn(a.inputs(), |_| rng.random());
            a.evaluate(&x).unwrap() == b.evaluate(&x).unwrap()
        })
    }

    #[test]
    fn passes_leave_canonical_circuit_unchanged() {
        let c = figure_one();
        assert_eq!(fold_constants(&c), c);
        assert_eq!(merge_duplicates(&c), c);
        assert_eq!(eliminate_dead(&c), c);
        assert_eq!(optimize(&c), c);
    }

    #[test]
    fn constant_operand_becomes_alias() {
        let mut b = CircuitBuilder::new(2);
        let z = b.zero();
        let t = b.xor(b.input(0), z);
        let u = b.xor(t, b.input(1));
        b.output(u, "y");
        let c = b.finish();
        let f = fold_constants(&c);
        assert_eq!(f.size(), 1);
        assert!(same_function(&c, &f));
    }

    #[test]
    fn self_xor_folds_to_zero_output() {
        let mut b = CircuitBuilder::new(2);
        let t = b.xor(b.input(0), b.input(1));
        let u = b.xor(t, b.input(0));
        let w = b.xor(u, b.input(1));
        b.output(w, "y");
        let c = b.finish();
        let o = optimize(&c);
        assert_eq!(o.size(), 0);
        assert!(matches!(o.gate(o.outputs()[0].node), Gate::ConstZero));
        assert!(same_function(&c, &o));
    }

    #[test]
    fn duplicate_is_merged_to_shallowest() {
        // x0^x1 computed twice, once through a detour of depth 3
        let mut b = CircuitBuilder::new(3);
        let (x0, x1, x2) = (b.input(0), b.input(1), b.input(2));
        let a = b.xor(x0, x2);
        let a2 = b.xor(a, x1);
        let slow = b.xor(a2, x2);
        let fast = b.xor(x0, x1);
        b.output(slow, "p");
        b.output(fast, "q");
        b.output(a2, "r");
        let c = b.finish();
        let m = merge_duplicates(&c);
        assert!(m.node_count() < c.node_count());
        assert_eq!(m.outputs()[0].node, m.outputs()[1].node);
        assert_eq!(m.depth(), 2);
        assert!(same_function(&c, &m));
    }

    #[test]
    fn input_equivalent_gate_merges_into_input() {
        let mut b = CircuitBuilder::new(2);
        let t = b.xor(b.input(0), b.input(1));
        let u = b.xor(t, b.input(1));
        b.output(u, "y");
        let c = b.finish();
        let o = optimize(&c);
        assert_eq!(o.size(), 0);
        assert_eq!(o.outputs()[0].node, NodeId(0));
    }

    #[test]
    fn dead_nodes_removed_inputs_kept() {
        let mut b = CircuitBuilder::new(3);
        let t = b.xor(b.input(0), b.input(1));
        b.xor(t, b.input(2));
        b.output(b.input(2), "y");
        let c = eliminate_dead(&b.finish());
        assert_eq!(c.node_count(), 3);
        assert_eq!(c.size(), 0);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 40_001;
        let mut b = CircuitBuilder::new(2);
        let mut cur = b.input(0);
        for _ in 0..n {
            cur = b.xor(cur, b.input(1));
        }
        b.output(cur, "y");
        let o = optimize(&b.finish());
        // the chain alternates between two vectors, x0 and x0^x1
        assert_eq!(o.size(), 1);
    }

    fn check_canonical(o: &Circuit) {
        let vecs = o.encoding_vectors();
        let live = o.live_nodes();
        let mut seen = HashSet::new();
        for (id, gate) in o.gates().iter().enumerate() {
            if !live[id] && !matches!(gate, Gate::Input(_)) {
                panic!("dead node {id} survived");
            }
            if let Gate::Xor(a, b) = *gate {
                assert!(!vecs[a.index()].is_zero() && !vecs[b.index()].is_zero());
                assert!(!vecs[id].is_zero());
            }
            assert!(seen.insert(vecs[id].clone()), "duplicate vector at node {id}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn passes_preserve_semantics(seed in any::<u64>(), inputs in 1usize..9, gates in 0usize..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_circuit(&mut rng, inputs, gates, 4, 0.08);
            for p in [fold_constants(&c), merge_duplicates(&c), eliminate_dead(&c), optimize(&c)] {
                prop_assert!(same_function(&c, &p));
                prop_assert!(agree_on_random_inputs(&c, &p, &mut rng));
                prop_assert!(p.size() <= c.size());
                prop_assert!(p.depth() <= c.depth());
            }
        }

        #[test]
        fn optimize_reaches_canonical_fixpoint(seed in any::<u64>(), inputs in 1usize..8, gates in 0usize..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_circuit(&mut rng, inputs, gates, 5, 0.08);
            let o = optimize(&c);
            check_canonical(&o);
            prop_assert_eq!(optimize(&o), o);
        }
    }
}
