//! The support lattice of principal left ideals.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::lrb::{escape, Lrb};
use crate::poset::FinitePoset;

/// Lattice of principal left ideals `Ba`, ordered by inclusion, with the
/// support map `sigma(a) = Ba`.
///
/// Indices are sorted by ideal size, so `0` is the minimal ideal and the
/// last index is `B` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportLattice {
    ideals: Vec<FixedBitSet>,
    sigma: Vec<usize>,
    meet: Vec<usize>,
    reps: Vec<usize>,
    poset: FinitePoset,
}

impl SupportLattice {
    pub fn of(b: &Lrb) -> SupportLattice {
        let n = b.size();
        let mut by_ideal: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for a in 0..n {
            let mut ideal = FixedBitSet::with_capacity(n);
            for x in 0..n {
                ideal.insert(b.mul(x, a));
            }
            by_ideal.entry(ideal).or_default().push(a);
        }
        let mut classes: Vec<(FixedBitSet, Vec<usize>)> = by_ideal.into_iter().collect();
        classes.sort_by(|p, q| {
            let key = |s: &FixedBitSet| (s.count_ones(..), s.ones().collect::<Vec<_>>());
            key(&p.0).cmp(&key(&q.0))
        });
        let count = classes.len();
        let mut sigma = vec![0; n];
        let mut reps = Vec::with_capacity(count);
        let mut ideals = Vec::with_capacity(count);
        for (idx, (ideal, members)) in classes.into_iter().enumerate() {
            for &m in &members {
                sigma[m] = idx;
            }
            reps.push(*members.iter().min().expect("nonempty class"));
            ideals.push(ideal);
        }
        let poset = FinitePoset::from_relation(count, |x, y| ideals[x].is_subset(&ideals[y]));
        let mut meet = vec![0; count * count];
        for x in 0..count {
            for y in 0..count {
                meet[x * count + y] = sigma[b.mul(reps[x], reps[y])];
            }
        }
        SupportLattice {
            ideals,
            sigma,
            meet,
            reps,
            poset,
        }
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn sigma(&self, a: usize) -> usize {
        self.sigma[a]
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// The left ideal `X` denotes, as a set of elements.
    pub fn witness(&self, x: usize) -> &FixedBitSet {
        &self.ideals[x]
    }

    /// Least-index element with support `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.reps[x]
    }

    /// The fibre `L_X = sigma^{-1}(X)`.
    pub fn fibre(&self, x: usize) -> Vec<usize> {
        (0..self.sigma.len())
            .filter(|&a| self.sigma[a] == x)
            .collect()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Length of the longest chain in the lattice.
    pub fn chain_length(&self) -> usize {
        self.poset.longest_chain_length()
    }

    /// Pairs `(X, Y)` with `X < Y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y))
            .collect()
    }

    /// Human label for a lattice element: the ideal generated by its representative.
    pub fn label(&self, b: &Lrb, x: usize) -> String {
        format!("B·{}", b.name(self.reps[x]))
    }

    /// Graphviz export of the lattice Hasse diagram, marking top and bottom.
    pub fn hasse_dot(&self, b: &Lrb) -> String {
        let mut out = String::from("digraph support_lattice {\n  rankdir=BT;\n");
        for x in 0..self.len() {
            let mut label = self.label(b, x);
            if x == self.top() {
                label.push_str(" [top]");
            }
            if x == self.bottom() {
                label.push_str(" [bottom]");
            }
            out.push_str(&format!("  x{x} [label=\"{}\"];\n", escape(&label)));
        }
        for &(x, y) in self.poset.hasse() {
            out.push_str(&format!("  x{x} -> x{y};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Length of the longest chain in the support lattice.
pub fn lambda_chain_length(lattice: &SupportLattice) -> usize {
    lattice.chain_length()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_band() -> Lrb {
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        Lrb::new(&t, 0, Some(vec!["0".into(), "+".into(), "-".into()])).unwrap()
    }

    #[test]
    fn sign_band_lattice() {
        let b = sign_band();
        let l = b.support_lattice();
        assert_eq!(l.len(), 2);
        assert_eq!(l.sigma(0), l.top());
        assert_eq!(l.sigma(1), l.bottom());
        assert_eq!(l.sigma(2), l.bottom());
        assert_eq!(lambda_chain_length(&l), 1);
        assert_eq!(l.fibre(l.bottom()), vec![1, 2]);
    }

    #[test]
    fn support_map_laws() {
        let b = sign_band();
        let l = b.support_lattice();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(l.sigma(b.mul(x, y)), l.meet(l.sigma(x), l.sigma(y)));
                assert_eq!(b.mul(x, y) == x, l.leq(l.sigma(x), l.sigma(y)));
            }
        }
    }
}
