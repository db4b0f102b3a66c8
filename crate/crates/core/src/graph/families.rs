//! Complete graphs, cycles, Kneser and Schrijver graphs, and the
//! generalized Mycielskian.

use super::Graph;
use crate::label::Label;
use crate::{Error, Result};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::with_labels((0..n as u64).map(Label::Index)).expect("distinct");
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// The cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameter(format!("cycle length {n} < 3")));
    }
    let mut g = Graph::with_labels((0..n as u64).map(Label::Index))?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
    }
    Ok(g)
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn k_subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len() as u32;
        for a in start..=n + 1 - need {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k as usize), &mut out);
    }
    out
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Whether `s` (sorted) is independent in the cycle `1 - 2 - ... - n - 1`.
pub fn is_cycle_independent(s: &[u32], n: u32) -> bool {
    s.windows(2).all(|w| w[1] - w[0] >= 2) && !(s.len() >= 2 && s[0] == 1 && s[s.len() - 1] == n)
}

fn check_kneser_params(n: u32, k: u32) -> Result<()> {
    if k < 1 || n <= 2 * k {
        return Err(Error::BadParameter(format!(
            "need k >= 1 and n > 2k, got n={n}, k={k}"
        )));
    }
    Ok(())
}

fn disjointness_graph(sets: Vec<Vec<u32>>) -> Graph {
    let mut g =
        Graph::with_labels(sets.iter().cloned().map(Label::Subset)).expect("distinct subsets");
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if disjoint(&sets[a], &sets[b]) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// The Kneser graph `KG(n, k)`.
pub fn kneser(n: u32, k: u32) -> Result<Graph> {
    check_kneser_params(n, k)?;
    Ok(disjointness_graph(k_subsets(n, k)))
}

/// The Schrijver graph `SG(n, k)`: `KG(n, k)` induced on the `k`-subsets
/// that are independent in the `n`-cycle.
pub fn schrijver(n: u32, k: u32) -> Result<Graph> {
    check_kneser_params(n, k)?;
    let sets = k_subsets(n, k)
        .into_iter()
        .filter(|s| is_cycle_independent(s, n))
        .collect();
    Ok(disjointness_graph(sets))
}

/// The generalized Mycielskian `M_r(G)`.
///
/// Vertices are `z` followed by the copies `(v, i)` for `i = 1..=r` (level
/// major, then in the vertex order of `g`), labelled `Label::Apex` and
/// `v^i`. Edges: `(v,i) ~ (w,i-1)` for adjacent `v, w` and `i >= 2`; a copy
/// of `g` on level `r`; `z ~ (v,1)`.
pub fn mycielskian(g: &Graph, r: u32) -> Result<Graph> {
    if r < 1 {
        return Err(Error::BadParameter("Mycielskian needs r >= 1".into()));
    }
    let n = g.n();
    let mut labels = vec![Label::Apex];
    for i in 1..=r {
        labels.extend(g.labels().iter().map(|l| Label::level(l.clone(), i)));
    }
    let mut m = Graph::with_labels(labels)?;
    let copy = |v: usize, i: u32| 1 + (i as usize - 1) * n + v;
    for v in 0..n {
        m.add_edge(0, copy(v, 1))?;
    }
    for (v, w) in g.edges() {
        m.add_edge(copy(v, r), copy(w, r))?;
        for i in 2..=r {
            m.add_edge(copy(v, i), copy(w, i - 1))?;
            m.add_edge(copy(w, i), copy(v, i - 1))?;
        }
    }
    Ok(m)
}

/// The Mycielski graph `M_n`: `M_3 = C_5`, `M_n = M_2(M_{n-1})`.
pub fn mycielski_graph(n: u32) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "Mycielski graph M_{n} needs n >= 3"
        )));
    }
    let mut g = cycle(5)?;
    for _ in 3..n {
        g = mycielskian(&g, 2)?;
    }
    Ok(g)
}
