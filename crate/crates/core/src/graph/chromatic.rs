//! Exact chromatic number by saturation-degree (DSATUR) branch and bound.
//!
//! The search starts from a greedy DSATUR colouring (upper bound) and a
//! greedy clique (lower bound, pre-coloured to break colour symmetry), then
//! looks for colourings with strictly fewer colours until the bounds meet.
//! With more than one thread the top of the search tree is expanded into a
//! deterministic frontier whose subtrees run in parallel against a shared
//! bound; `chi` is identical either way, the colouring certificate is only
//! reproducible single-threaded.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::Graph;
use crate::{Error, Result};

const MAX_COLOURS: usize = 64;
const UNCOLOURED: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn millis(ms: u64) -> Self {
        Self {
            max_nodes: None,
            time_limit: Some(Duration::from_millis(ms)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: Budget,
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            budget: Budget::unlimited(),
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBoundWitness {
    /// A clique on `chi` vertices.
    Clique(Vec<usize>),
    /// The search for a colouring with `colours` colours was exhausted.
    Exhausted { colours: usize, nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticCertificate {
    pub chi: usize,
    /// Colour of each vertex, in `0..chi`.
    pub colouring: Vec<usize>,
    pub witness: LowerBoundWitness,
    pub nodes: u64,
}

impl ChromaticCertificate {
    /// Checks that the colouring is proper and uses exactly `chi` colours,
    /// and that a clique witness really is a clique of size `chi`.
    pub fn check(&self, g: &Graph) -> bool {
        let proper = g
            .edges()
            .all(|(a, b)| self.colouring[a] != self.colouring[b]);
        let used: std::collections::BTreeSet<_> = self.colouring.iter().collect();
        let in_range = self.colouring.iter().all(|&c| c < self.chi);
        let witness_ok = match &self.witness {
            LowerBoundWitness::Clique(q) => {
                q.len() == self.chi
                    && q.iter()
                        .enumerate()
                        .all(|(i, &a)| q[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            }
            LowerBoundWitness::Exhausted { colours, .. } => *colours + 1 == self.chi,
        };
        proper && in_range && used.len() == self.chi && witness_ok
    }
}

struct Problem {
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

#[derive(Clone)]
struct State {
    colour: Vec<u8>,
    /// `counts[v * MAX_COLOURS + c]`: coloured neighbours of `v` with colour `c`.
    counts: Vec<u16>,
    mask: Vec<u64>,
    uncoloured: usize,
    used: usize,
}

impl State {
    fn new(n: usize) -> Self {
        Self {
            colour: vec![UNCOLOURED; n],
            counts: vec![0; n * MAX_COLOURS],
            mask: vec![0; n],
            uncoloured: n,
            used: 0,
        }
    }

    fn assign(&mut self, p: &Problem, v: usize, c: usize) {
        self.colour[v] = c as u8;
        self.uncoloured -= 1;
        for &w in &p.adj[v] {
            let slot = &mut self.counts[w * MAX_COLOURS + c];
            *slot += 1;
            self.mask[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, p: &Problem, v: usize) {
        let c = self.colour[v] as usize;
        self.colour[v] = UNCOLOURED;
        self.uncoloured += 1;
        for &w in &p.adj[v] {
            let slot = &mut self.counts[w * MAX_COLOURS + c];
            *slot -= 1;
            if *slot == 0 {
                self.mask[w] &= !(1 << c);
            }
        }
    }

    /// Uncoloured vertex of maximum saturation; ties by degree, then index.
    fn select(&self, p: &Problem) -> usize {
        let mut best = usize::MAX;
        let mut key = (0u32, 0usize);
        for v in 0..self.colour.len() {
            if self.colour[v] != UNCOLOURED {
                continue;
            }
            let k = (self.mask[v].count_ones(), p.degree[v]);
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        best
    }
}

struct Shared {
    best: AtomicUsize,
    best_colouring: Mutex<Vec<u8>>,
    lower: usize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
}

impl Shared {
    fn offer(&self, used: usize, colouring: &[u8]) {
        let mut guard = self.best_colouring.lock().unwrap();
        if used < self.best.load(Ordering::SeqCst) {
            *guard = colouring.to_vec();
            self.best.store(used, Ordering::SeqCst);
        }
    }

    fn done(&self) -> bool {
        self.aborted.load(Ordering::Relaxed) || self.best.load(Ordering::Relaxed) <= self.lower
    }

    fn charge(&self, local: &mut u64) {
        *local += 1;
        if *local >= 256 {
            let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if self.max_nodes.is_some_and(|m| total > m)
                || self.deadline.is_some_and(|d| Instant::now() > d)
            {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
    }
}

fn search(p: &Problem, st: &mut State, shared: &Shared, local: &mut u64) {
    if shared.done() {
        return;
    }
    shared.charge(local);
    if st.uncoloured == 0 {
        shared.offer(st.used, &st.colour);
        return;
    }
    if st.used >= shared.best.load(Ordering::Relaxed) {
        return;
    }
    let v = st.select(p);
    let mut c = 0;
    loop {
        // the bound may have dropped while exploring earlier siblings
        let limit = (st.used + 1).min(shared.best.load(Ordering::Relaxed) - 1);
        if c >= limit || shared.done() {
            return;
        }
        if st.mask[v] & (1 << c) == 0 {
            let prev_used = st.used;
            st.assign(p, v, c);
            st.used = st.used.max(c + 1);
            search(p, st, shared, local);
            st.unassign(p, v);
            st.used = prev_used;
        }
        c += 1;
    }
}

fn greedy_dsatur(p: &Problem) -> Vec<u8> {
    let n = p.adj.len();
    let mut st = State::new(n);
    while st.uncoloured > 0 {
        let v = st.select(p);
        let c = (!st.mask[v]).trailing_zeros() as usize;
        st.assign(p, v, c);
    }
    st.colour
}

/// Largest clique found by greedily extending from each vertex in turn.
fn greedy_clique(p: &Problem) -> Vec<usize> {
    let n = p.adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(p.degree[v]), v));
    let mut adjacent = vec![vec![false; n]; n];
    for (v, ns) in p.adj.iter().enumerate() {
        for &w in ns {
            adjacent[v][w] = true;
        }
    }
    let mut best = Vec::new();
    for &s in &order {
        let mut clique = vec![s];
        for &w in &order {
            if w != s && clique.iter().all(|&u| adjacent[u][w]) {
                clique.push(w);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Expands the search tree breadth-first into at least `target` open states.
fn frontier(p: &Problem, root: State, target: usize, shared: &Shared) -> Vec<State> {
    let mut level = vec![root];
    while level.len() < target {
        let mut next = Vec::new();
        let mut expanded = false;
        for st in level {
            if st.uncoloured == 0 {
                shared.offer(st.used, &st.colour);
                continue;
            }
            let best = shared.best.load(Ordering::SeqCst);
            if st.used >= best {
                continue;
            }
            let v = st.select(p);
            for c in 0..(st.used + 1).min(best - 1) {
                if st.mask[v] & (1 << c) == 0 {
                    let mut child = st.clone();
                    child.assign(p, v, c);
                    child.used = child.used.max(c + 1);
                    next.push(child);
                    expanded = true;
                }
            }
        }
        level = next;
        if !expanded {
            break;
        }
    }
    level
}

/// Exact chromatic number with a proper colouring and a lower-bound witness.
pub fn chromatic_number(g: &Graph, opts: &SolverOptions) -> Result<ChromaticCertificate> {
    let n = g.n();
    if n == 0 {
        return Ok(ChromaticCertificate {
            chi: 0,
            colouring: vec![],
            witness: LowerBoundWitness::Clique(vec![]),
            nodes: 0,
        });
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).collect()).collect();
    let degree = adj.iter().map(Vec::len).collect();
    let p = Problem { adj, degree };

    let clique = greedy_clique(&p);
    let greedy = greedy_dsatur(&p);
    let upper = greedy.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let finish = |chi: usize, colouring: &[u8], witness: LowerBoundWitness, nodes: u64| {
        let cert = ChromaticCertificate {
            chi,
            colouring: colouring.iter().map(|&c| c as usize).collect(),
            witness,
            nodes,
        };
        if cert.check(g) {
            Ok(cert)
        } else {
            Err(Error::verification(
                "chromatic_number certificate",
                Default::default(),
            ))
        }
    };
    if clique.len() == upper {
        return finish(upper, &greedy, LowerBoundWitness::Clique(clique), 0);
    }
    if upper > MAX_COLOURS {
        return Err(Error::UnsupportedParameters(format!(
            "more than {MAX_COLOURS} colours needed"
        )));
    }

    let shared = Shared {
        best: AtomicUsize::new(upper),
        best_colouring: Mutex::new(greedy),
        lower: clique.len(),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        deadline: opts.budget.time_limit.map(|t| Instant::now() + t),
        max_nodes: opts.budget.max_nodes,
    };
    let mut root = State::new(n);
    for (c, &v) in clique.iter().enumerate() {
        root.assign(&p, v, c);
    }
    root.used = clique.len();

    let threads = opts.threads.max(1);
    let mut local = 0;
    if threads == 1 {
        search(&p, &mut root, &shared, &mut local);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::BadParameter(format!("thread pool: {e}")))?;
        let states = frontier(&p, root, 8 * threads, &shared);
        pool.install(|| {
            states.into_par_iter().for_each(|mut st| {
                let mut local = 0;
                search(&p, &mut st, &shared, &mut local);
                shared.nodes.fetch_add(local, Ordering::Relaxed);
            })
        });
    }
    let nodes = shared.nodes.load(Ordering::SeqCst) + local;
    let best = shared.best.load(Ordering::SeqCst);
    if shared.aborted.load(Ordering::SeqCst) && best > shared.lower {
        return Err(Error::BudgetExceeded {
            lower: shared.lower,
            upper: best,
        });
    }
    let colouring = shared.best_colouring.into_inner().unwrap();
    let witness = if best == clique.len() {
        LowerBoundWitness::Clique(clique)
    } else {
        LowerBoundWitness::Exhausted {
            colours: best - 1,
            nodes,
        }
    };
    finish(best, &colouring, witness, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, kneser, mycielski_graph, schrijver};
    use crate::label::Label;
    use proptest::prelude::*;

    fn chi(g: &Graph) -> usize {
        chromatic_number(g, &SolverOptions::default()).unwrap().chi
    }

    /// Brute force: smallest k admitting a proper k-colouring.
    fn chi_brute(g: &Graph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        let edges: Vec<_> = g.edges().collect();
        for k in 1..=n {
            let mut col = vec![0usize; n];
            loop {
                if edges.iter().all(|&(a, b)| col[a] != col[b]) {
                    return k;
                }
                let mut i = 0;
                while i < n && col[i] == k - 1 {
                    col[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                col[i] += 1;
            }
        }
        unreachable!()
    }

    #[test]
    fn known_values() {
        assert_eq!(chi(&cycle(5).unwrap()), 3);
        assert_eq!(chi(&cycle(6).unwrap()), 2);
        assert_eq!(chi(&complete(9)), 9);
        assert_eq!(chi(&mycielski_graph(4).unwrap()), 4);
        assert_eq!(chi(&kneser(5, 2).unwrap()), 3);
        assert_eq!(chi(&schrijver(6, 2).unwrap()), 4);
    }

    #[test]
    fn exhausted_witness_for_grotzsch() {
        let cert =
            chromatic_number(&mycielski_graph(4).unwrap(), &SolverOptions::default()).unwrap();
        assert!(matches!(
            cert.witness,
            LowerBoundWitness::Exhausted { colours: 3, .. }
        ));
    }

    #[test]
    fn budget_exceeded_reports_bounds() {
        let g = mycielski_graph(6).unwrap();
        let opts = SolverOptions {
            budget: Budget {
                max_nodes: Some(1000),
                time_limit: None,
            },
            threads: 1,
        };
        match chromatic_number(&g, &opts) {
            Err(Error::BudgetExceeded { lower, upper }) => assert!(lower <= 6 && upper >= 6),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn threads_agree() {
        for g in [
            mycielski_graph(4).unwrap(),
            schrijver(7, 2).unwrap(),
            kneser(6, 2).unwrap(),
        ] {
            let one = chromatic_number(&g, &SolverOptions::default()).unwrap();
            let four = chromatic_number(
                &g,
                &SolverOptions {
                    threads: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(one.chi, four.chi);
            assert!(four.check(&g));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_brute_force(n in 1usize..8, bits in proptest::collection::vec(any::<bool>(), 28)) {
            let mut g = Graph::with_labels((0..n as u64).map(Label::Index)).unwrap();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] { g.add_edge(a, b).unwrap(); }
                    k += 1;
                }
            }
            let cert = chromatic_number(&g, &SolverOptions::default()).unwrap();
            prop_assert!(cert.check(&g));
            prop_assert_eq!(cert.chi, chi_brute(&g));
        }
    }
}
