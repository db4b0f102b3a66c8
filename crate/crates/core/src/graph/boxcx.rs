//! Membership in the box complex `B(G)`; the complex itself is never built.

use std::collections::BTreeSet;

use super::Graph;

/// `CN(A)`: vertices adjacent to every member of `a`. `CN(∅) = V(G)`.
pub fn common_neighbours(g: &Graph, a: &[usize]) -> BTreeSet<usize> {
    let Some((&first, rest)) = a.split_first() else {
        return (0..g.n()).collect();
    };
    let mut cn = g.neighbour_set(first).clone();
    for &v in rest {
        cn.retain(|w| g.has_edge(v, *w));
        if cn.is_empty() {
            break;
        }
    }
    cn
}

/// Whether `A1 ⊎ A2` is a simplex of `B(G)`: `A1 ⊆ CN(A2) ≠ ∅` and
/// `A2 ⊆ CN(A1) ≠ ∅`. The empty simplex is not a member.
pub fn box_membership(g: &Graph, a1: &[usize], a2: &[usize]) -> bool {
    if a1.is_empty() && a2.is_empty() {
        return false;
    }
    let cn1 = common_neighbours(g, a1);
    let cn2 = common_neighbours(g, a2);
    !cn1.is_empty()
        && !cn2.is_empty()
        && a1.iter().all(|v| cn2.contains(v))
        && a2.iter().all(|v| cn1.contains(v))
}
