use std::collections::VecDeque;

use super::Graph;

/// A 2-colouring of `g` by breadth-first search, if one exists.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            let sv = side[v].unwrap();
            for w in g.neighbours(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        q.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}

/// Length of a shortest odd cycle, `None` when the graph is bipartite.
///
/// For each vertex `v`, a breadth-first search on the bipartite double cover
/// finds the shortest odd closed walk through `v`; the minimum over all `v`
/// is attained by a cycle.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; 2 * n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[2 * s] = 0;
        let mut q = VecDeque::from([2 * s]);
        while let Some(x) = q.pop_front() {
            let (v, parity) = (x / 2, x % 2);
            if best.is_some_and(|b| dist[x] + 1 >= b) {
                break;
            }
            for w in g.neighbours(v) {
                let y = 2 * w + (1 - parity);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        if dist[2 * s + 1] != usize::MAX {
            best = Some(best.map_or(dist[2 * s + 1], |b| b.min(dist[2 * s + 1])));
        }
    }
    best
}

/// A shortest path from `a` to `b` as a vertex list, if connected.
pub fn shortest_path(g: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut q = VecDeque::from([a]);
    while let Some(v) = q.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbours(v) {
            if prev[w] == usize::MAX {
                prev[w] = v;
                q.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, mycielski_graph};

    /// Shortest odd cycle by brute force over closed walks of bounded length.
    fn odd_girth_by_walks(g: &Graph) -> Option<usize> {
        let n = g.n();
        // reach[v][w] after L steps, via boolean matrix powers
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
            .collect();
        let mut cur = adj.clone();
        for len in 1..=2 * n + 1 {
            if len % 2 == 1 && (0..n).any(|v| cur[v][v]) {
                return Some(len);
            }
            let mut next = vec![vec![false; n]; n];
            for a in 0..n {
                for m in 0..n {
                    if cur[a][m] {
                        for b in 0..n {
                            next[a][b] |= adj[m][b];
                        }
                    }
                }
            }
            cur = next;
        }
        None
    }

    #[test]
    fn small_cases() {
        let c5 = cycle(5).unwrap();
        assert!(!is_bipartite(&c5));
        assert_eq!(odd_girth(&c5), Some(5));
        assert_eq!(odd_girth(&complete(9)), Some(3));
        assert_eq!(odd_girth(&cycle(6).unwrap()), None);
        assert!(is_bipartite(&cycle(8).unwrap()));
        let m4 = mycielski_graph(4).unwrap();
        assert_eq!(odd_girth(&m4), Some(5));
        assert_eq!(odd_girth(&m4), odd_girth_by_walks(&m4));
        assert_eq!(odd_girth_by_walks(&cycle(7).unwrap()), Some(7));
    }

    #[test]
    fn path_endpoints() {
        let c = cycle(7).unwrap();
        let p = shortest_path(&c, 0, 3).unwrap();
        assert_eq!(p, vec![0, 1, 2, 3]);
        assert_eq!(shortest_path(&c, 2, 2).unwrap(), vec![2]);
    }
}
