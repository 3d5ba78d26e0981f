//! Finite posets stored as dense up-set bitsets.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    count: usize,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<FixedBitSet>,
    /// Cover pairs `(x, y)` with `x` covered by `y`, sorted.
    hasse: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// Builds a poset from a relation `leq(x, y)`. The relation must be a
    /// partial order; this is checked in debug builds.
    pub fn from_relation(count: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up = vec![FixedBitSet::with_capacity(count); count];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..count {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        let poset = Self::from_up_sets(up);
        debug_assert!(poset.check_axioms().is_ok());
        poset
    }

    pub fn from_up_sets(up: Vec<FixedBitSet>) -> Self {
        let count = up.len();
        let mut hasse = Vec::new();
        for x in 0..count {
            // Covers of x: strict up-set minus everything strictly above it.
            let mut strict = up[x].clone();
            strict.set(x, false);
            let mut shadow = FixedBitSet::with_capacity(count);
            for z in strict.ones() {
                let mut above = up[z].clone();
                above.set(z, false);
                shadow.union_with(&above);
            }
            strict.difference_with(&shadow);
            hasse.extend(strict.ones().map(|y| (x, y)));
        }
        hasse.sort_unstable();
        FinitePoset { count, up, hasse }
    }

    /// Verifies reflexivity, antisymmetry and transitivity.
    pub fn check_axioms(&self) -> Result<(), String> {
        for x in 0..self.count {
            if !self.up[x].contains(x) {
                return Err(format!("not reflexive at {x}"));
            }
            for y in self.up[x].ones() {
                if y != x && self.up[y].contains(x) {
                    return Err(format!("not antisymmetric at ({x},{y})"));
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    return Err(format!("not transitive above ({x},{y})"));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|c| c.0 == x)
            .map(|c| c.1)
            .collect()
    }

    pub fn lower_covers(&self, y: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|c| c.1 == y)
            .map(|c| c.0)
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.count)
            .filter(|&x| self.up[x].count_ones(..) == 1)
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.count)
            .filter(|&y| (0..self.count).all(|x| x == y || !self.leq(x, y)))
            .collect()
    }

    /// Induced subposet on `elements` (in the given order).
    pub fn restrict(&self, elements: &[usize]) -> FinitePoset {
        FinitePoset::from_relation(elements.len(), |i, j| self.leq(elements[i], elements[j]))
    }

    /// Length (number of covers) of the longest chain.
    pub fn longest_chain_length(&self) -> usize {
        // Height computed over a linear extension: larger up-sets come first.
        let order = self.linear_extension();
        let mut height = vec![0usize; self.count];
        for &x in order.iter() {
            for y in self.upper_covers(x) {
                height[y] = height[y].max(height[x] + 1);
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Elements ordered so that `x < y` implies `x` precedes `y`.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.count).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(self.up[x].count_ones(..)));
        order
    }

    /// All maximal chains, each listed from bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal() {
            stack.push(m);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *stack.last().expect("nonempty chain");
        let covers = self.upper_covers(top);
        if covers.is_empty() {
            out.push(stack.clone());
            return;
        }
        for c in covers {
            stack.push(c);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    pub fn comparability_graph(&self, names: Vec<String>) -> Graph {
        let mut g = Graph::new(names);
        for x in 0..self.count {
            for y in self.up[x].ones() {
                if y != x {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Number of connected components of the Hasse diagram.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.count);
        for &(x, y) in &self.hasse {
            uf.union(x, y);
        }
        uf.count()
    }
}

/// Plain disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.sets -= 1;
        }
    }

    pub fn count(&self) -> usize {
        self.sets
    }
}
