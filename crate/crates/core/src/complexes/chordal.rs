use std::collections::VecDeque;

use crate::graph::Graph;

/// Outcome of a chordality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    /// Perfect elimination ordering: each vertex is simplicial among those after it.
    Chordal { elimination_order: Vec<usize> },
    /// An induced cycle of length at least four, in cyclic order.
    NotChordal { induced_cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

/// Repeatedly removes simplicial vertices; if none is left to remove the
/// graph is not chordal and an induced cycle is extracted as a witness.
pub fn is_chordal(g: &Graph) -> Chordality {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let simplicial = (0..n).find(|&v| {
            if !alive[v] {
                return false;
            }
            let nbrs: Vec<usize> = g.neighbors(v).ones().filter(|&u| alive[u]).collect();
            g.is_clique(&nbrs)
        });
        match simplicial {
            Some(v) => {
                alive[v] = false;
                order.push(v);
            }
            None => {
                let cycle = induced_cycle(g)
                    .expect("graph without simplicial vertex has a long induced cycle");
                return Chordality::NotChordal {
                    induced_cycle: cycle,
                };
            }
        }
    }
    Chordality::Chordal {
        elimination_order: order,
    }
}

/// Finds an induced cycle of length >= 4: a vertex `v`, two non-adjacent
/// neighbours `a`, `b`, and a shortest `a`-`b` path avoiding the rest of `N[v]`.
fn induced_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.len();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors(v).ones().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let blocked = |u: usize| u == v || (g.has_edge(v, u) && u != a && u != b);
                if let Some(path) = shortest_path(g, a, b, blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(
    g: &Graph,
    from: usize,
    to: usize,
    blocked: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u).ones() {
            if prev[w] == usize::MAX && !blocked(w) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
        let k = cycle.len();
        k >= 4
            && (0..k).all(|i| {
                (0..k).all(|j| {
                    let adjacent = (i + 1) % k == j || (j + 1) % k == i;
                    i == j || g.has_edge(cycle[i], cycle[j]) == adjacent
                })
            })
    }

    fn is_peo(g: &Graph, order: &[usize]) -> bool {
        order.iter().enumerate().all(|(i, &v)| {
            let later: Vec<usize> = order[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            g.is_clique(&later)
        })
    }

    #[test]
    fn trees_are_chordal() {
        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
        match is_chordal(&tree) {
            Chordality::Chordal { elimination_order } => assert!(is_peo(&tree, &elimination_order)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn four_cycle_witness() {
        let c4 = Graph::cycle(4);
        match is_chordal(&c4) {
            Chordality::NotChordal { induced_cycle } => {
                assert_eq!(induced_cycle.len(), 4);
                assert!(is_induced_cycle(&c4, &induced_cycle));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complement_of_six_cycle_is_a_prism() {
        // The prism has square faces, e.g. 0-3-1-4.
        match is_chordal(&Graph::cycle(6).complement()) {
            Chordality::NotChordal { induced_cycle } => assert_eq!(induced_cycle.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn witnesses_on_all_small_graphs() {
        for n in 0..=6 {
            for g in Graph::all_graphs(n) {
                match is_chordal(&g) {
                    Chordality::Chordal { elimination_order } => {
                        assert!(is_peo(&g, &elimination_order))
                    }
                    Chordality::NotChordal { induced_cycle } => {
                        assert!(is_induced_cycle(&g, &induced_cycle))
                    }
                }
            }
        }
    }
}
