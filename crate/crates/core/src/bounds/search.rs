//! Exact minimum XOR-circuit search.
//!
//! States are sets of available vectors (the inputs plus every gate built so
//! far). Iterative deepening raises the gate allowance one at a time, so the
//! first circuit found is minimal. Within one allowance the search is a plain
//! depth-first enumeration of operand pairs in index order; the top-level
//! branches may run on several threads, and the lowest successful branch
//! wins, so the result does not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Memo entries beyond this count are not stored.
const MEMO_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_gates: usize,
    pub max_seconds: f64,
}

impl SearchBudget {
    pub fn new(max_gates: usize, max_seconds: f64) -> Result<Self> {
        if !(max_seconds > 0.0 && max_seconds.is_finite()) {
            return Err(Error::Parameter(format!("time budget must be positive, got {max_seconds}")));
        }
        Ok(SearchBudget { max_gates, max_seconds })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A minimum-size circuit; output `t` computes target `t`.
    Found(Circuit),
    /// No circuit with at most this many gates exists.
    ProvenAbove(usize),
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Search states visited. Exact with one worker thread; with more it
    /// depends on how the shared memo was filled.
    pub explored: u64,
}

impl SearchResult {
    pub fn min_size(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Found(c) => Some(c.size()),
            _ => None,
        }
    }
}

/// Worker threads: `XORLIN_THREADS` if set, otherwise the machine's
/// parallelism.
pub fn search_threads() -> usize {
    std::env::var("XORLIN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Smallest circuit computing every target from the unit vectors, using
/// [`search_threads`] workers.
pub fn slp_min_search(targets: &[BitVec], budget: SearchBudget) -> Result<SearchResult> {
    slp_min_search_with(targets, budget, search_threads())
}

/// [`slp_min_search`] with an explicit worker count.
pub fn slp_min_search_with(targets: &[BitVec], budget: SearchBudget, threads: usize) -> Result<SearchResult> {
    let n = targets.first().map_or(0, BitVec::len);
    if targets.iter().any(|t| t.len() != n) {
        return Err(Error::Precondition("targets differ in length".into()));
    }
    if n > 64 {
        return Err(Error::Parameter(format!("search supports at most 64 inputs, got {n}")));
    }
    if targets.iter().any(BitVec::is_zero) {
        return Err(Error::Precondition("zero target".into()));
    }
    let masks: Vec<u64> = targets.iter().map(|t| t.to_mask().expect("n <= 64")).collect();

    let inputs: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut wanted: Vec<u64> = Vec::new();
    for &m in &masks {
        if m.count_ones() > 1 && !wanted.contains(&m) {
            wanted.push(m);
        }
    }

    let search = Search {
        inputs: n,
        targets: wanted,
        deadline: Instant::now() + Duration::from_secs_f64(budget.max_seconds),
        timed_out: AtomicBool::new(false),
        explored: AtomicU64::new(0),
        memo: DashMap::new(),
        memo_len: AtomicUsize::new(0),
    };
    let root = State {
        avail: inputs,
        ops: Vec::new(),
        unused: Vec::new(),
        missing: search.targets.clone(),
    };

    let start = search.targets.len();
    for allowance in start..=budget.max_gates {
        match search.level(&root, allowance, threads.max(1)) {
            Res::Found(ops) => {
                let circuit = build(n, &ops, &masks);
                return Ok(SearchResult {
                    outcome: SearchOutcome::Found(circuit),
                    explored: search.explored.load(Ordering::Relaxed),
                });
            }
            Res::Abort => {
                return Ok(SearchResult {
                    outcome: SearchOutcome::TimedOut,
                    explored: search.explored.load(Ordering::Relaxed),
                })
            }
            Res::Fail => {}
        }
    }
    Ok(SearchResult {
        outcome: SearchOutcome::ProvenAbove(budget.max_gates),
        explored: search.explored.load(Ordering::Relaxed),
    })
}

fn build(n: usize, ops: &[(usize, usize)], targets: &[u64]) -> Circuit {
    let mut b = CircuitBuilder::new(n);
    let mut nodes: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let mut vecs: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for &(i, j) in ops {
        nodes.push(b.xor(nodes[i], nodes[j]));
        vecs.push(vecs[i] ^ vecs[j]);
    }
    for (t, m) in targets.iter().enumerate() {
        let at = vecs.iter().position(|v| v == m).expect("every target was built");
        b.output(nodes[at], format!("y{t}"));
    }
    b.finish()
}

#[derive(Clone)]
struct State {
    avail: Vec<u64>,
    ops: Vec<(usize, usize)>,
    /// Non-target gates no later gate consumes yet.
    unused: Vec<u64>,
    missing: Vec<u64>,
}

impl State {
    fn apply(&mut self, i: usize, j: usize) {
        let (a, b) = (self.avail[i], self.avail[j]);
        let v = a ^ b;
        self.unused.retain(|&u| u != a && u != b);
        match self.missing.iter().position(|&t| t == v) {
            Some(p) => {
                self.missing.swap_remove(p);
            }
            None => self.unused.push(v),
        }
        self.avail.push(v);
        self.ops.push((i, j));
    }

    /// A missing target that is the XOR of two available vectors.
    fn closable(&self) -> Option<(usize, usize)> {
        for &t in &self.missing {
            for (i, &a) in self.avail.iter().enumerate() {
                if let Some(j) = self.avail.iter().position(|&b| b == a ^ t) {
                    return Some((i.min(j), i.max(j)));
                }
            }
        }
        None
    }

    fn key(&self, inputs: usize) -> (Vec<u64>, Vec<u64>) {
        let mut built = self.avail[inputs..].to_vec();
        built.sort_unstable();
        let mut unused = self.unused.clone();
        unused.sort_unstable();
        (built, unused)
    }
}

enum Res {
    Found(Vec<(usize, usize)>),
    Fail,
    Abort,
}

struct Search {
    inputs: usize,
    targets: Vec<u64>,
    deadline: Instant,
    timed_out: AtomicBool,
    explored: AtomicU64,
    /// Largest allowance known to be insufficient from a state.
    memo: DashMap<(Vec<u64>, Vec<u64>), usize>,
    memo_len: AtomicUsize,
}

impl Search {
    fn level(&self, root: &State, allowance: usize, threads: usize) -> Res {
        let mut st = root.clone();
        let mut remaining = allowance;
        if let Some(r) = self.close(&mut st, &mut remaining) {
            return r;
        }
        let branches = self.branches(&st);
        if threads == 1 || branches.len() < 2 {
            return self.expand(&st, remaining, &branches, None);
        }

        // lowest branch index known to succeed
        let best = AtomicUsize::new(usize::MAX);
        let next = AtomicUsize::new(0);
        let found: DashMap<usize, Vec<(usize, usize)>> = DashMap::new();
        std::thread::scope(|scope| {
            for _ in 0..threads.min(branches.len()) {
                scope.spawn(|| loop {
                    let b = next.fetch_add(1, Ordering::Relaxed);
                    if b >= branches.len() || b > best.load(Ordering::Relaxed) {
                        break;
                    }
                    let (i, j) = branches[b];
                    let mut child = st.clone();
                    child.apply(i, j);
                    if let Res::Found(ops) = self.dfs(child, remaining - 1, Some((&best, b))) {
                        found.insert(b, ops);
                        best.fetch_min(b, Ordering::Relaxed);
                    }
                });
            }
        });
        // a timeout may have cut short a branch below the best one
        if self.timed_out.load(Ordering::Relaxed) {
            return Res::Abort;
        }
        match best.load(Ordering::Relaxed) {
            usize::MAX => Res::Fail,
            b => Res::Found(found.remove(&b).expect("recorded").1),
        }
    }

    /// Adds gates for targets that are one XOR away. Returns a verdict when
    /// the state is decided without branching.
    fn close(&self, st: &mut State, remaining: &mut usize) -> Option<Res> {
        while let Some((i, j)) = st.closable() {
            if *remaining == 0 {
                return Some(Res::Fail);
            }
            st.apply(i, j);
            *remaining -= 1;
        }
        if st.missing.is_empty() {
            return Some(if st.unused.is_empty() {
                Res::Found(st.ops.clone())
            } else {
                Res::Fail
            });
        }
        let m = st.missing.len();
        // each target gate retires at most two unused gates, any other gate
        // at most one net
        if m > *remaining || st.unused.len() > *remaining + m {
            return Some(Res::Fail);
        }
        None
    }

    fn branches(&self, st: &State) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..st.avail.len() {
            for j in i + 1..st.avail.len() {
                let v = st.avail[i] ^ st.avail[j];
                if !st.avail.contains(&v) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn expand(
        &self,
        st: &State,
        remaining: usize,
        branches: &[(usize, usize)],
        cancel: Option<(&AtomicUsize, usize)>,
    ) -> Res {
        for &(i, j) in branches {
            let mut child = st.clone();
            child.apply(i, j);
            match self.dfs(child, remaining - 1, cancel) {
                Res::Fail => {}
                other => return other,
            }
        }
        Res::Fail
    }

    fn dfs(&self, mut st: State, mut remaining: usize, cancel: Option<(&AtomicUsize, usize)>) -> Res {
        let count = self.explored.fetch_add(1, Ordering::Relaxed);
        if count.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out.store(true, Ordering::Relaxed);
        }
        if self.timed_out.load(Ordering::Relaxed) {
            return Res::Abort;
        }
        if let Some((best, mine)) = cancel {
            if best.load(Ordering::Relaxed) < mine {
                return Res::Abort;
            }
        }
        if let Some(r) = self.close(&mut st, &mut remaining) {
            return r;
        }
        let key = st.key(self.inputs);
        if self.memo.get(&key).is_some_and(|failed| *failed >= remaining) {
            return Res::Fail;
        }
        let branches = self.branches(&st);
        let r = self.expand(&st, remaining, &branches, cancel);
        if matches!(r, Res::Fail) {
            self.remember(key, remaining);
        }
        r
    }

    fn remember(&self, key: (Vec<u64>, Vec<u64>), remaining: usize) {
        if let Some(mut e) = self.memo.get_mut(&key) {
            *e = (*e).max(remaining);
            return;
        }
        if self.memo_len.load(Ordering::Relaxed) < MEMO_CAP {
            self.memo.insert(key, remaining);
            self.memo_len.fetch_add(1, Ordering::Relaxed);
        }
    }
}
