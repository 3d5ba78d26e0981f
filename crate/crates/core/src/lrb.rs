//! Finite left regular bands given by Cayley tables.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{LrbError, Result};
use crate::graph::Graph;
use crate::lattice::SupportLattice;
use crate::poset::FinitePoset;

/// Default upper bound on the number of elements of a monoid.
pub const DEFAULT_SIZE_CAP: usize = 5000;

/// A finite left regular band: a monoid with `xx = x` and `xyx = xy`.
///
/// Elements are the dense indices `0..size`; `table[x * size + y]` is the
/// product `xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lrb {
    size: usize,
    identity: usize,
    table: Vec<usize>,
    names: Vec<String>,
}

/// Checks every axiom of a left regular band and returns the monoid.
pub fn validate_lrb(table: &[Vec<usize>], identity: usize) -> Result<Lrb> {
    Lrb::new(table, identity, None)
}

impl Lrb {
    pub fn new(table: &[Vec<usize>], identity: usize, names: Option<Vec<String>>) -> Result<Lrb> {
        let size = table.len();
        if size == 0 {
            return Err(LrbError::MalformedTable("empty table".into()));
        }
        if identity >= size {
            return Err(LrbError::MalformedTable(format!(
                "identity {identity} out of range"
            )));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (x, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(LrbError::MalformedTable(format!(
                    "row {x} has length {}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= size) {
                return Err(LrbError::MalformedTable(format!("entry {bad} in row {x}")));
            }
            flat.extend_from_slice(row);
        }
        let b = Lrb::from_flat(size, identity, flat, names)?;
        b.check_associative()?;
        Ok(b)
    }

    /// Builds a monoid from a flat table, checking every axiom except
    /// associativity (quadratic checks only). Used by the constructions,
    /// whose products are associative by construction.
    pub(crate) fn from_flat(
        size: usize,
        identity: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Lrb> {
        let names = match names {
            Some(n) if n.len() == size => n,
            Some(n) => {
                return Err(LrbError::MalformedTable(format!(
                    "{} names for {size} elements",
                    n.len()
                )))
            }
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(LrbError::InvalidInput(format!(
                "duplicate element name {:?}",
                w[0]
            )));
        }
        let b = Lrb {
            size,
            identity,
            table,
            names,
        };
        b.check_quadratic_axioms()?;
        Ok(b)
    }

    fn check_quadratic_axioms(&self) -> Result<()> {
        let id = self.identity;
        for x in 0..self.size {
            if self.mul(id, x) != x || self.mul(x, id) != x {
                return Err(LrbError::BadIdentity {
                    identity: id,
                    witness: x,
                });
            }
        }
        for x in 0..self.size {
            if self.mul(x, x) != x {
                return Err(LrbError::NotIdempotent { x });
            }
        }
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.mul(x, y);
                if self.mul(xy, x) != xy {
                    return Err(LrbError::NotLeftRegular { x, y });
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.mul(x, y);
                for z in 0..self.size {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(LrbError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs the full axiom check, including associativity.
    pub fn validate(&self) -> Result<()> {
        self.check_quadratic_axioms()?;
        self.check_associative()
    }

    /// Builds a monoid from a product closure on `0..size`, enforcing the size cap.
    pub(crate) fn from_fn(
        size: usize,
        identity: usize,
        names: Vec<String>,
        cap: usize,
        what: &str,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Lrb> {
        if size > cap {
            return Err(LrbError::TooLarge {
                what: what.to_string(),
                size,
                cap,
            });
        }
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(mul(x, y));
            }
        }
        Lrb::from_flat(
            size,
            identity,
            table,
            Some(distinct_identity_name(names, identity)),
        )
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// Product of a word of elements, left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// The R-order: `x <= y` iff `yx = x`. The identity is the maximum.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.mul(y, x) == x
    }

    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn support_lattice(&self) -> SupportLattice {
        SupportLattice::of(self)
    }

    pub fn r_order(&self) -> FinitePoset {
        FinitePoset::from_relation(self.size, |x, y| self.leq(x, y))
    }

    /// Rank of each element: length of the longest R-chain from it up to the identity.
    pub fn ranks(&self) -> Vec<usize> {
        let poset = self.r_order();
        let mut rank = vec![0usize; self.size];
        let mut order = poset.linear_extension();
        order.reverse();
        for &y in &order {
            for x in poset.lower_covers(y) {
                rank[x] = rank[x].max(rank[y] + 1);
            }
        }
        rank
    }

    /// Reorders the elements by (rank, name) so serialisation is reproducible.
    pub fn canonical(&self) -> Lrb {
        let rank = self.ranks();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by(|&a, &b| (rank[a], &self.names[a], a).cmp(&(rank[b], &self.names[b], b)));
        self.permuted(&order)
    }

    /// Relabels so that new element `i` is old element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Lrb {
        let mut inverse = vec![0; self.size];
        for (i, &old) in order.iter().enumerate() {
            inverse[old] = i;
        }
        let mut table = Vec::with_capacity(self.table.len());
        for &x in order {
            for &y in order {
                table.push(inverse[self.mul(x, y)]);
            }
        }
        Lrb {
            size: self.size,
            identity: inverse[self.identity],
            table,
            names: order.iter().map(|&o| self.names[o].clone()).collect(),
        }
    }

    /// Submonoid `{ab : b in B, sigma(ab) >= X}` with identity `a`, where `a`
    /// is the least-index element of support `Y`.
    pub fn interval_submonoid(
        &self,
        lattice: &SupportLattice,
        x: usize,
        y: usize,
    ) -> Result<SubmonoidMap> {
        if !lattice.leq(x, y) {
            return Err(LrbError::NotComparable { x, y });
        }
        self.interval_submonoid_at(lattice, x, lattice.representative(y))
    }

    /// Same as [`Lrb::interval_submonoid`] with an explicit local identity `a`.
    pub fn interval_submonoid_at(
        &self,
        lattice: &SupportLattice,
        x: usize,
        a: usize,
    ) -> Result<SubmonoidMap> {
        let y = lattice.sigma(a);
        if !lattice.leq(x, y) {
            return Err(LrbError::NotComparable { x, y });
        }
        let mut members: Vec<usize> = (0..self.size)
            .map(|b| self.mul(a, b))
            .filter(|&ab| lattice.leq(x, lattice.sigma(ab)))
            .collect();
        members.sort_unstable();
        members.dedup();
        self.restrict_to(&members, a)
    }

    /// Restricts to a subset closed under the product with local identity `unit`.
    pub fn restrict_to(&self, members: &[usize], unit: usize) -> Result<SubmonoidMap> {
        let index: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &p in members {
            for &q in members {
                let pq = self.mul(p, q);
                let &k = index.get(&pq).ok_or_else(|| {
                    LrbError::InvalidInput(format!(
                        "subset not closed: {}*{}",
                        self.name(p),
                        self.name(q)
                    ))
                })?;
                table.push(k);
            }
        }
        let identity = *index
            .get(&unit)
            .ok_or_else(|| LrbError::InvalidInput("local identity not in subset".into()))?;
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        let sub = Lrb::from_flat(n, identity, table, Some(names))?;
        Ok(SubmonoidMap {
            sub,
            embed: members.to_vec(),
            representative: unit,
        })
    }

    /// Closure of `gens` together with the identity under the product.
    pub fn submonoid_generated(&self, gens: &[usize]) -> Result<SubmonoidMap> {
        let mut inside = FixedBitSet::with_capacity(self.size);
        inside.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let xg = self.mul(x, g);
                if !inside.contains(xg) {
                    inside.insert(xg);
                    frontier.push(xg);
                }
            }
        }
        let members: Vec<usize> = inside.ones().collect();
        self.restrict_to(&members, self.identity)
    }

    /// Componentwise product monoid; element `(x, y)` has index `x * |other| + y`.
    pub fn direct_product(&self, other: &Lrb, cap: usize) -> Result<Lrb> {
        let n2 = other.size;
        let size = self.size * n2;
        let names = (0..size)
            .map(|i| format!("({},{})", self.names[i / n2], other.names[i % n2]))
            .collect();
        Lrb::from_fn(
            size,
            self.identity * n2 + other.identity,
            names,
            cap,
            "direct product",
            |p, q| self.mul(p / n2, q / n2) * n2 + other.mul(p % n2, q % n2),
        )
    }

    /// Every up-set `a^` is commutative. Returns a non-commuting witness otherwise.
    pub fn geometric_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.size {
            let above: Vec<usize> = (0..self.size).filter(|&b| self.leq(a, b)).collect();
            for (i, &b) in above.iter().enumerate() {
                for &c in &above[i + 1..] {
                    if !self.commute(b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_geometric(&self) -> bool {
        self.geometric_witness().is_none()
    }

    /// Every non-identity element has exactly one upper cover in the R-order.
    pub fn right_hereditary_witness(&self) -> Option<(usize, usize)> {
        let poset = self.r_order();
        (0..self.size)
            .filter(|&x| x != self.identity)
            .map(|x| (x, poset.upper_covers(x).len()))
            .find(|&(_, c)| c != 1)
    }

    pub fn is_right_hereditary(&self) -> bool {
        self.right_hereditary_witness().is_none()
    }

    /// Maximal elements of `B \ {1}` in the R-order.
    pub fn maximal_proper(&self) -> Vec<usize> {
        let poset = self.r_order();
        (0..self.size)
            .filter(|&x| x != self.identity && poset.upper_covers(x) == [self.identity])
            .collect()
    }

    /// Graph on the maximal elements of `B \ {1}` joining commuting pairs.
    /// Returns the graph and the element index of each vertex.
    pub fn commutation_graph(&self) -> Result<(Graph, Vec<usize>)> {
        if self.size == 1 {
            return Err(LrbError::TrivialMonoid);
        }
        let maxima = self.maximal_proper();
        let mut g = Graph::new(maxima.iter().map(|&m| self.names[m].clone()).collect());
        for (i, &a) in maxima.iter().enumerate() {
            for (j, &b) in maxima.iter().enumerate().skip(i + 1) {
                if self.commute(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, maxima))
    }

    /// Lifts a strictly increasing chain `X_0 < ... < X_n` of the support
    /// lattice to elements `b_0 < ... < b_n` with `sigma(b_i) = X_i`.
    pub fn lift_chain(&self, lattice: &SupportLattice, chain: &[usize]) -> Vec<usize> {
        let reps: Vec<usize> = chain.iter().map(|&x| lattice.representative(x)).collect();
        (0..chain.len())
            .map(|i| {
                reps[i..]
                    .iter()
                    .rev()
                    .fold(self.identity, |acc, &a| self.mul(acc, a))
            })
            .collect()
    }

    /// Graphviz export of the R-order Hasse diagram.
    pub fn hasse_dot(&self) -> String {
        let poset = self.r_order();
        let mut out = String::from("digraph r_order {\n  rankdir=BT;\n");
        for x in 0..self.size {
            let label = if x == self.identity {
                format!("{} (1)", self.names[x])
            } else {
                self.names[x].clone()
            };
            out.push_str(&format!("  n{x} [label=\"{}\"];\n", escape(&label)));
        }
        for &(x, y) in poset.hasse() {
            out.push_str(&format!("  n{x} -> n{y};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renames the identity when a generator already uses its name, e.g. a vertex called "1".
fn distinct_identity_name(mut names: Vec<String>, identity: usize) -> Vec<String> {
    let taken = |names: &[String], candidate: &str| {
        names
            .iter()
            .enumerate()
            .any(|(i, n)| i != identity && n == candidate)
    };
    if taken(&names, &names[identity]) {
        let mut candidate = "e".to_string();
        while taken(&names, &candidate) {
            candidate.push('\'');
        }
        names[identity] = candidate;
    }
    names
}

/// An LRB embedded in a larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmonoidMap {
    pub sub: Lrb,
    /// `embed[i]` is the ambient element for sub-element `i`.
    pub embed: Vec<usize>,
    /// Ambient element serving as the local identity.
    pub representative: usize,
}

impl SubmonoidMap {
    /// Checks that `embed` is injective, multiplicative and sends the identity to `representative`.
    pub fn check(&self, ambient: &Lrb) -> bool {
        let n = self.sub.size();
        let mut seen = self.embed.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n
            && self.embed[self.sub.identity()] == self.representative
            && (0..n).all(|p| {
                (0..n).all(|q| {
                    self.embed[self.sub.mul(p, q)] == ambient.mul(self.embed[p], self.embed[q])
                })
            })
    }
}

/// Decides whether two monoids are isomorphic, trying bijections compatible
/// with an invariant colouring. Intended for small monoids in tests.
pub fn isomorphism(a: &Lrb, b: &Lrb) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let sig = |m: &Lrb| -> Vec<(usize, usize, usize)> {
        let ranks = m.ranks();
        (0..n)
            .map(|x| {
                let below = (0..n).filter(|&y| m.leq(y, x)).count();
                let fixes = (0..n).filter(|&y| m.mul(x, y) == x).count();
                (ranks[x], below, fixes)
            })
            .collect()
    };
    let (sa, sb) = (sig(a), sig(b));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        a: &Lrb,
        b: &Lrb,
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        x: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.size();
        if x == n {
            return (0..n).all(|p| (0..n).all(|q| b.mul(map[p], map[q]) == map[a.mul(p, q)]));
        }
        for y in 0..n {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let consistent = (0..=x).all(|p| {
                let pq = a.mul(p, x);
                let qp = a.mul(x, p);
                (pq > x || b.mul(map[p], y) == map[pq]) && (qp > x || b.mul(y, map[p]) == map[qp])
            });
            if consistent && extend(a, b, sa, sb, x + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    if extend(a, b, &sa, &sb, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sign_band() -> Lrb {
        // 0 is the identity; + and - are left zeros.
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        Lrb::new(&t, 0, Some(vec!["0".into(), "+".into(), "-".into()])).unwrap()
    }

    #[test]
    fn trivial_monoid() {
        let b = validate_lrb(&[vec![0]], 0).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.r_order().len(), 1);
        assert!(b.commutation_graph().is_err());
    }

    #[test]
    fn sign_band_is_valid_and_geometric() {
        let b = sign_band();
        assert!(b.is_geometric());
        assert!(b.is_right_hereditary());
        let (g, verts) = b.commutation_graph().unwrap();
        assert_eq!(verts, vec![1, 2]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn validation_errors_name_witnesses() {
        let bad_id = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(
            validate_lrb(&bad_id, 1),
            Err(LrbError::BadIdentity { .. })
        ));
        let not_idem = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            validate_lrb(&not_idem, 0),
            Err(LrbError::NotIdempotent { x: 1 })
        );
        // Right-zero band with an identity adjoined: xy = y, so xyx = x != xy.
        let right_zero = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]];
        assert_eq!(
            validate_lrb(&right_zero, 0),
            Err(LrbError::NotLeftRegular { x: 1, y: 2 })
        );
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(
            validate_lrb(&ragged, 0),
            Err(LrbError::MalformedTable(_))
        ));
        assert!(matches!(
            validate_lrb(&[vec![0]], 3),
            Err(LrbError::MalformedTable(_))
        ));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Idempotent, identity 0, left regular but (12)3 != 1(23).
        let t = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 1],
            vec![2, 3, 2, 3],
            vec![3, 2, 3, 3],
        ];
        let err = validate_lrb(&t, 0).unwrap_err();
        assert!(matches!(
            err,
            LrbError::NotAssociative { .. } | LrbError::NotLeftRegular { .. }
        ));
    }

    #[test]
    fn zero_adjoined_to_non_lattice_is_not_geometric() {
        // {0,+,-} with a multiplicative zero z adjoined.
        let t = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 3],
            vec![2, 2, 2, 3],
            vec![3, 3, 3, 3],
        ];
        let b = validate_lrb(&t, 0).unwrap();
        let (a, x, y) = b.geometric_witness().unwrap();
        assert_eq!(a, 3);
        assert!(!b.commute(x, y));
    }

    #[test]
    fn canonical_order_is_stable() {
        let b = sign_band();
        let c = b.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(c.identity(), 0);
        assert!(isomorphism(&b, &c).is_some());
    }
}
