use std::collections::HashMap;

use super::word_name;
use crate::error::{LrbError, Result};
use crate::graph::Graph;
use crate::lrb::Lrb;

/// An element of the free partially commutative band: a vertex subset `W`
/// together with an acyclic orientation of the complement graph on `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSubgraph {
    /// Bit `v` set for `v` in `W`.
    pub support: u64,
    /// Bit `e` set when complement edge `e = (u, v)`, `u < v`, is oriented
    /// `u -> v`. Only edges inside `W` carry bits.
    pub arcs: u64,
}

struct Complement {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `edge_index[u][v]` for complement edges.
    edge_index: Vec<Vec<Option<usize>>>,
}

impl Complement {
    fn of(graph: &Graph) -> Result<Complement> {
        let n = graph.len();
        let edges = graph.complement().edges();
        if n > 63 || edges.len() > 64 {
            return Err(LrbError::TooLarge {
                what: "graph for partially commutative band".into(),
                size: n,
                cap: 63,
            });
        }
        let mut edge_index = vec![vec![None; n]; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            edge_index[u][v] = Some(i);
            edge_index[v][u] = Some(i);
        }
        Ok(Complement {
            n,
            edges,
            edge_index,
        })
    }

    /// Whether `u -> v` in the orientation `arcs` (assumes a complement edge).
    fn points(&self, arcs: u64, u: usize, v: usize) -> bool {
        let e = self.edge_index[u][v].expect("complement edge");
        let forward = arcs >> e & 1 == 1;
        if u < v {
            forward
        } else {
            !forward
        }
    }

    fn set_arc(&self, arcs: &mut u64, from: usize, to: usize) {
        let e = self.edge_index[from][to].expect("complement edge");
        if from < to {
            *arcs |= 1 << e;
        } else {
            *arcs &= !(1 << e);
        }
    }

    fn out_neighbours(&self, x: OrientedSubgraph, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| {
            v != u
                && x.support >> v & 1 == 1
                && self.edge_index[u][v].is_some()
                && self.points(x.arcs, u, v)
        })
    }

    fn reaches(&self, x: OrientedSubgraph, from: usize, to: usize) -> bool {
        let mut seen = 0u64;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for w in self.out_neighbours(x, u) {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// All acyclic orientations of the complement graph restricted to `support`,
    /// adding one vertex at a time and rejecting choices that close a cycle.
    fn orientations(&self, support: u64) -> Vec<OrientedSubgraph> {
        let verts: Vec<usize> = (0..self.n).filter(|&v| support >> v & 1 == 1).collect();
        let mut partial = vec![OrientedSubgraph {
            support: 0,
            arcs: 0,
        }];
        for &v in &verts {
            let mut next = Vec::new();
            for x in partial {
                let earlier: Vec<usize> = (0..self.n)
                    .filter(|&u| x.support >> u & 1 == 1 && self.edge_index[u][v].is_some())
                    .collect();
                for choice in 0u64..(1 << earlier.len()) {
                    let mut y = OrientedSubgraph {
                        support: x.support | 1 << v,
                        arcs: x.arcs,
                    };
                    for (i, &u) in earlier.iter().enumerate() {
                        if choice >> i & 1 == 1 {
                            self.set_arc(&mut y.arcs, u, v);
                        } else {
                            self.set_arc(&mut y.arcs, v, u);
                        }
                    }
                    // A new cycle must pass through v: some v -> w ... -> u -> v.
                    let ins: Vec<usize> = earlier
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| choice >> i & 1 == 1)
                        .map(|(_, &u)| u)
                        .collect();
                    let acyclic = ins.iter().all(|&u| !self.reaches(y, v, u));
                    if acyclic {
                        next.push(y);
                    }
                }
            }
            partial = next;
        }
        partial
    }

    fn multiply(&self, x: OrientedSubgraph, y: OrientedSubgraph) -> OrientedSubgraph {
        let support = x.support | y.support;
        let fresh = y.support & !x.support;
        let mut arcs = 0u64;
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if support >> u & 1 == 0 || support >> v & 1 == 0 {
                continue;
            }
            let (in_x_u, in_x_v) = (x.support >> u & 1 == 1, x.support >> v & 1 == 1);
            let forward = match (in_x_u, in_x_v) {
                (true, true) => x.arcs >> e & 1 == 1,
                (true, false) => true,
                (false, true) => false,
                (false, false) => {
                    debug_assert!(fresh >> u & 1 == 1 && fresh >> v & 1 == 1);
                    y.arcs >> e & 1 == 1
                }
            };
            if forward {
                arcs |= 1 << e;
            }
        }
        OrientedSubgraph { support, arcs }
    }

    /// Lexicographically least topological sort: a word representing the element.
    fn word(&self, x: OrientedSubgraph) -> Vec<usize> {
        let mut remaining = x.support;
        let mut out = Vec::new();
        while remaining != 0 {
            let next = (0..self.n)
                .find(|&v| {
                    remaining >> v & 1 == 1
                        && (0..self.n).all(|u| {
                            u == v
                                || remaining >> u & 1 == 0
                                || self.edge_index[u][v].is_none()
                                || !self.points(x.arcs, u, v)
                        })
                })
                .expect("acyclic orientation has a source");
            out.push(next);
            remaining &= !(1 << next);
        }
        out
    }
}

/// Free partially commutative left regular band of `graph`: generated by the
/// vertices, with adjacent vertices commuting.
pub fn free_partially_commutative(graph: &Graph, cap: usize) -> Result<Lrb> {
    let comp = Complement::of(graph)?;
    let n = graph.len();
    let mut elements: Vec<OrientedSubgraph> = Vec::new();
    for support in 0u64..(1 << n) {
        elements.extend(comp.orientations(support));
        if elements.len() > cap {
            return Err(LrbError::TooLarge {
                what: "free partially commutative band".into(),
                size: elements.len(),
                cap,
            });
        }
    }
    let index: HashMap<OrientedSubgraph, usize> =
        elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let names = elements
        .iter()
        .map(|&x| {
            word_name(
                &comp
                    .word(x)
                    .iter()
                    .map(|&v| graph.names()[v].as_str())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let identity = index[&OrientedSubgraph {
        support: 0,
        arcs: 0,
    }];
    Lrb::from_fn(
        elements.len(),
        identity,
        names,
        cap,
        "free partially commutative band",
        |a, b| index[&comp.multiply(elements[a], elements[b])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrb::DEFAULT_SIZE_CAP;

    #[test]
    fn complete_graph_gives_free_semilattice() {
        let b = free_partially_commutative(&Graph::complete(3), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(b.size(), 8);
        assert!((0..8).all(|x| (0..8).all(|y| b.commute(x, y))));
    }

    #[test]
    fn edgeless_graph_gives_free_band() {
        let b = free_partially_commutative(&Graph::with_vertices(3), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(b.size(), 16);
        let f3 = super::super::free_lrb(&["0", "1", "2"], DEFAULT_SIZE_CAP).unwrap();
        assert!(crate::lrb::isomorphism(&b, &f3).is_some());
    }

    #[test]
    fn four_cycle_census() {
        // 1 + 4 + 8 + 8 + 4: the complement of C4 is a perfect matching.
        let b = free_partially_commutative(&Graph::cycle(4), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(b.size(), 25);
        b.validate().unwrap();
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            free_partially_commutative(&Graph::with_vertices(4), 20),
            Err(LrbError::TooLarge { .. })
        ));
    }
}
