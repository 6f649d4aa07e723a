//! XOR-only circuits: the signal-flow graphs the encoders are traced into.
//!
//! A [`Circuit`] is a list of gates in creation order. Every `Xor` refers to
//! two earlier nodes, so creation order is a topological order and the graph
//! is acyclic by construction. Outputs are labelled references to nodes; an
//! output may point straight at an input node, which costs no gate.

mod dot;
mod passes;
mod transpose;

use std::collections::HashSet;
use std::fmt;
use std::ops::BitXor;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVec};

pub use passes::{eliminate_dead, fold_constants, merge_duplicates, optimize};
pub use transpose::transpose_circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    ConstZero,
    Xor(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Output {
    pub node: NodeId,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircuitStats {
    /// Number of XOR gates.
    pub size: usize,
    /// Largest number of XOR gates on an input-to-output path.
    pub depth: usize,
}

impl fmt::Display for CircuitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size={} depth={}", self.size, self.depth)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Circuit {
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<Output>,
}

impl Circuit {
    /// Validates and assembles a circuit.
    pub fn new(inputs: usize, gates: Vec<Gate>, outputs: Vec<Output>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (id, gate) in gates.iter().enumerate() {
            match *gate {
                Gate::Input(i) => {
                    if i >= inputs {
                        return Err(Error::Precondition(format!("input index {i} >= {inputs}")));
                    }
                    if !seen.insert(i) {
                        return Err(Error::Precondition(format!("input {i} appears twice")));
                    }
                }
                Gate::ConstZero => {}
                Gate::Xor(a, b) => {
                    if a.index() >= id || b.index() >= id {
                        return Err(Error::Precondition(format!(
                            "gate {id} refers to a node that is not earlier"
                        )));
                    }
                }
            }
        }
        if gates.len() > u32::MAX as usize {
            return Err(Error::Budget("too many gates".into()));
        }
        for out in &outputs {
            if out.node.index() >= gates.len() {
                return Err(Error::Precondition(format!(
                    "output {} refers to missing node {}",
                    out.label,
                    out.node.index()
                )));
            }
        }
        Ok(Circuit { inputs, gates, outputs })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Output] {
        &self.outputs
    }

    pub fn node_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gate(&self, id: NodeId) -> Gate {
        self.gates[id.index()]
    }

    /// Number of XOR gates.
    pub fn size(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Xor(..))).count()
    }

    /// XOR depth of every node; inputs and constants sit at depth 0.
    pub fn node_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.gates.len()];
        for (id, gate) in self.gates.iter().enumerate() {
            if let Gate::Xor(a, b) = *gate {
                depth[id] = 1 + depth[a.index()].max(depth[b.index()]);
            }
        }
        depth
    }

    pub fn depth(&self) -> usize {
        let depth = self.node_depths();
        self.outputs.iter().map(|o| depth[o.node.index()]).max().unwrap_or(0)
    }

    pub fn stats(&self) -> CircuitStats {
        CircuitStats {
            size: self.size(),
            depth: self.depth(),
        }
    }

    /// Value of every node when input `i` carries `input(i)`.
    pub fn simulate<T>(&self, mut input: impl FnMut(usize) -> T) -> Vec<T>
    where
        T: Copy + Default + BitXor<Output = T>,
    {
        let mut values: Vec<T> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match *gate {
                Gate::Input(i) => input(i),
                Gate::ConstZero => T::default(),
                Gate::Xor(a, b) => values[a.index()] ^ values[b.index()],
            };
            values.push(v);
        }
        values
    }

    /// Output values for the input assignment `x`.
    pub fn evaluate(&self, x: &BitVec) -> Result<BitVec> {
        check_len(self.inputs, x.len())?;
        let values = self.simulate(|i| x.get(i));
        Ok(BitVec::from_fn(self.outputs.len(), |t| {
            values[self.outputs[t].node.index()]
        }))
    }

    /// Evaluates 64 assignments at once; bit `l` of `x[i]` is input `i` of
    /// lane `l`.
    pub fn evaluate_words(&self, x: &[u64]) -> Result<Vec<u64>> {
        check_len(self.inputs, x.len())?;
        let values = self.simulate(|i| x[i]);
        Ok(self.outputs.iter().map(|o| values[o.node.index()]).collect())
    }

    /// Encoding vector of every node: the row vector `a` with node value
    /// `x . a`.
    pub fn encoding_vectors(&self) -> Vec<BitVec> {
        let mut vecs: Vec<BitVec> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match *gate {
                Gate::Input(i) => BitVec::unit(self.inputs, i),
                Gate::ConstZero => BitVec::zeros(self.inputs),
                Gate::Xor(a, b) => &vecs[a.index()] ^ &vecs[b.index()],
            };
            vecs.push(v);
        }
        vecs
    }

    /// The matrix `M` with outputs `= x M`: one row per input, one column per
    /// output.
    pub fn output_matrix(&self) -> BitMatrix {
        let columns: Vec<BitVec> = self
            .outputs
            .iter()
            .map(|o| self.vector_of_sum(&[o.node]))
            .collect();
        BitMatrix::from_columns(self.inputs, &columns).expect("columns have one entry per input")
    }

    /// Encoding vector of the XOR of `nodes`, found by propagating path
    /// parities backwards. Costs one pass over the gates and one bit per node.
    pub fn vector_of_sum(&self, nodes: &[NodeId]) -> BitVec {
        let mut out = BitVec::zeros(self.inputs);
        let Some(top) = nodes.iter().map(|n| n.index()).max() else {
            return out;
        };
        let mut parity = vec![false; top + 1];
        for n in nodes {
            parity[n.index()] ^= true;
        }
        for id in (0..=top).rev() {
            if !parity[id] {
                continue;
            }
            match self.gates[id] {
                Gate::Input(i) => out.flip(i),
                Gate::ConstZero => {}
                Gate::Xor(a, b) => {
                    parity[a.index()] ^= true;
                    parity[b.index()] ^= true;
                }
            }
        }
        out
    }

    /// Exact test for `vector(a) == vector(b)`.
    pub fn same_vector(&self, a: NodeId, b: NodeId) -> bool {
        a == b || self.sum_is_zero(&[a, b])
    }

    /// Exact test for a constant-zero node.
    pub fn is_zero_vector(&self, a: NodeId) -> bool {
        self.sum_is_zero(&[a])
    }

    fn sum_is_zero(&self, nodes: &[NodeId]) -> bool {
        let Some(top) = nodes.iter().map(|n| n.index()).max() else {
            return true;
        };
        let mut parity = vec![false; top + 1];
        for n in nodes {
            parity[n.index()] ^= true;
        }
        for id in (0..=top).rev() {
            if !parity[id] {
                continue;
            }
            match self.gates[id] {
                // every consumer of an input has a larger id, so its parity is final
                Gate::Input(_) => return false,
                Gate::ConstZero => {}
                Gate::Xor(a, b) => {
                    parity[a.index()] ^= true;
                    parity[b.index()] ^= true;
                }
            }
        }
        true
    }

    /// 64-lane random simulation. Equal encoding vectors give equal
    /// signatures; unequal ones collide with probability `2^-64`, and every
    /// match is confirmed exactly before it is acted on.
    pub(crate) fn signatures(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0fc1c_u64);
        let lanes: Vec<u64> = (0..self.inputs).map(|_| rng.random()).collect();
        self.simulate(|i| lanes[i])
    }

    /// Nodes from which some output is reachable.
    pub fn live_nodes(&self) -> Vec<bool> {
        let mut live = vec![false; self.gates.len()];
        for o in &self.outputs {
            live[o.node.index()] = true;
        }
        for id in (0..self.gates.len()).rev() {
            if live[id] {
                if let Gate::Xor(a, b) = self.gates[id] {
                    live[a.index()] = true;
                    live[b.index()] = true;
                }
            }
        }
        live
    }

    /// Keeps only the outputs at `indices`, in that order.
    pub fn select_outputs(&self, indices: &[usize]) -> Result<Circuit> {
        let outputs = indices
            .iter()
            .map(|&t| {
                self.outputs.get(t).cloned().ok_or_else(|| {
                    Error::Precondition(format!("output {t} does not exist"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            inputs: self.inputs,
            gates: self.gates.clone(),
            outputs,
        })
    }

    pub fn to_dot(&self) -> String {
        dot::render(self)
    }

    fn node_name(&self, id: NodeId) -> String {
        match self.gates[id.index()] {
            Gate::Input(i) => format!("x{i}"),
            Gate::ConstZero => "0".to_string(),
            Gate::Xor(..) => format!("t{}", id.0),
        }
    }
}

/// Straight-line program listing: one `t = a ^ b` line per XOR gate, then one
/// `label = node` line per output.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, gate) in self.gates.iter().enumerate() {
            if let Gate::Xor(a, b) = *gate {
                writeln!(
                    f,
                    "{} = {} ^ {}",
                    self.node_name(NodeId(id as u32)),
                    self.node_name(a),
                    self.node_name(b)
                )?;
            }
        }
        for o in &self.outputs {
            writeln!(f, "{} = {}", o.label, self.node_name(o.node))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Circuit({} inputs, {})", self.inputs, self.stats())?;
        fmt::Display::fmt(self, f)
    }
}

/// Incremental construction. All input nodes are created up front, in index
/// order.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<Output>,
    zero: Option<NodeId>,
}

impl CircuitBuilder {
    pub fn new(inputs: usize) -> Self {
        CircuitBuilder {
            inputs,
            gates: (0..inputs).map(Gate::Input).collect(),
            outputs: Vec::new(),
            zero: None,
        }
    }

    pub fn input(&self, i: usize) -> NodeId {
        assert!(i < self.inputs, "input {i} out of range");
        NodeId(i as u32)
    }

    /// The shared constant-zero node, created on first use.
    pub fn zero(&mut self) -> NodeId {
        match self.zero {
            Some(z) => z,
            None => {
                let z = self.push(Gate::ConstZero);
                self.zero = Some(z);
                z
            }
        }
    }

    pub fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        assert!(a.index() < self.gates.len() && b.index() < self.gates.len());
        self.push(Gate::Xor(a, b))
    }

    pub fn output(&mut self, node: NodeId, label: impl Into<String>) {
        assert!(node.index() < self.gates.len());
        self.outputs.push(Output {
            node,
            label: label.into(),
        });
    }

    pub fn node_count(&self) -> usize {
        self.gates.len()
    }

    pub fn finish(self) -> Circuit {
        Circuit {
            inputs: self.inputs,
            gates: self.gates,
            outputs: self.outputs,
        }
    }

    fn push(&mut self, gate: Gate) -> NodeId {
        let id = NodeId(self.gates.len() as u32);
        self.gates.push(gate);
        id
    }
}

/// A random circuit for exercising the passes: `xor_gates` XORs over random
/// earlier nodes (a constant-zero node is available as an operand with
/// probability `zero_rate` per gate), and `outputs` outputs on random nodes.
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    inputs: usize,
    xor_gates: usize,
    outputs: usize,
    zero_rate: f64,
) -> Circuit {
    assert!(inputs > 0);
    let mut b = CircuitBuilder::new(inputs);
    for _ in 0..xor_gates {
        let n = b.node_count();
        let pick = |rng: &mut R, b: &mut CircuitBuilder| {
            if rng.random_bool(zero_rate) {
                b.zero()
            } else {
                NodeId(rng.random_range(0..n) as u32)
            }
        };
        let x = pick(rng, &mut b);
        let y = pick(rng, &mut b);
        b.xor(x, y);
    }
    let n = b.node_count();
    for t in 0..outputs {
        let node = NodeId(rng.random_range(0..n) as u32);
        b.output(node, format!("y{t}"));
    }
    b.finish()
}
