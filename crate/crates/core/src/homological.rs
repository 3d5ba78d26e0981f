//! Ext-spaces between simple modules, the quiver, and homological dimensions,
//! all read off the order complexes `Δ(X,Y)` of interval submonoids.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{
    clique_complex, leray_number, order_complex, BettiVector, SimplicialComplex,
    DEFAULT_CLIQUE_CAP, DEFAULT_LERAY_CAP,
};
use crate::error::{LrbError, Result};
use crate::field::FieldSpec;
use crate::lattice::{lambda_chain_length, SupportLattice};
use crate::lrb::{escape, Lrb};
use crate::poset::FinitePoset;

/// Dimensions of `Ext^n(k_X, k_Y)` for all lattice pairs and `n <= max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTable {
    pub field: FieldSpec,
    pub max_degree: usize,
    /// Label of each lattice element.
    pub labels: Vec<String>,
    dims: Vec<Vec<usize>>,
}

impl ExtTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Degree-indexed dimensions for the pair `(x, y)`.
    pub fn dims(&self, x: usize, y: usize) -> &[usize] {
        &self.dims[x * self.len() + y]
    }

    pub fn get(&self, x: usize, y: usize, n: usize) -> usize {
        self.dims(x, y).get(n).copied().unwrap_or(0)
    }

    /// CSV with columns `X,Y,n,dim`, listing every nonzero entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,Y,n,dim\n");
        for x in 0..self.len() {
            for y in 0..self.len() {
                for (n, &d) in self.dims(x, y).iter().enumerate() {
                    if d != 0 {
                        out.push_str(&format!(
                            "{},{},{n},{d}\n",
                            csv_field(&self.labels[x]),
                            csv_field(&self.labels[y])
                        ));
                    }
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arrow multiplicities of the quiver on the support lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverDescription {
    pub labels: Vec<String>,
    /// `(x, y, multiplicity)` with positive multiplicity, sorted by `(x, y)`.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl QuiverDescription {
    pub fn multiplicity(&self, x: usize, y: usize) -> usize {
        self.arrows
            .iter()
            .find(|a| a.0 == x && a.1 == y)
            .map_or(0, |a| a.2)
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().map(|a| a.2).sum()
    }

    /// Graphviz export with one edge per arrow.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", escape(l)));
        }
        for &(x, y, m) in &self.arrows {
            for _ in 0..m {
                out.push_str(&format!("  v{x} -> v{y};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Homological data of one monoid, caching each `Δ(X,Y)` and its Betti
/// vectors so that several fields and queries share the work.
pub struct Analysis<'a> {
    b: &'a Lrb,
    lattice: SupportLattice,
    r_order: FinitePoset,
    deltas: Vec<OnceLock<SimplicialComplex>>,
    components: Vec<OnceLock<usize>>,
    betti: Mutex<HashMap<(usize, FieldSpec), BettiVector>>,
}

impl<'a> Analysis<'a> {
    pub fn new(b: &'a Lrb) -> Analysis<'a> {
        let lattice = b.support_lattice();
        let cells = lattice.len() * lattice.len();
        Analysis {
            b,
            r_order: b.r_order(),
            lattice,
            deltas: (0..cells).map(|_| OnceLock::new()).collect(),
            components: (0..cells).map(|_| OnceLock::new()).collect(),
            betti: Mutex::new(HashMap::new()),
        }
    }

    pub fn lrb(&self) -> &Lrb {
        self.b
    }

    pub fn lattice(&self) -> &SupportLattice {
        &self.lattice
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.lattice.len())
            .map(|x| self.lattice.label(self.b, x))
            .collect()
    }

    /// Length of the longest chain of the support lattice: the default degree bound.
    pub fn chain_bound(&self) -> usize {
        lambda_chain_length(&self.lattice)
    }

    fn cell(&self, x: usize, y: usize) -> usize {
        x * self.lattice.len() + y
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        let n = self.lattice.len();
        if x >= n || y >= n {
            return Err(LrbError::InvalidInput(format!(
                "lattice index out of range ({x}, {y})"
            )));
        }
        if !self.lattice.lt(x, y) {
            return Err(LrbError::NotStrictlyComparable { x, y });
        }
        Ok(())
    }

    /// Elements of `B[X,Y)`: the interval submonoid without its identity.
    fn half_open_interval(&self, x: usize, y: usize) -> Vec<usize> {
        let a = self.lattice.representative(y);
        let mut members: Vec<usize> = (0..self.b.size())
            .map(|c| self.b.mul(a, c))
            .filter(|&ac| ac != a && self.lattice.leq(x, self.lattice.sigma(ac)))
            .collect();
        members.sort_unstable();
        members.dedup();
        members
    }

    /// Order complex of `B[X,Y)` for `X < Y`.
    pub fn delta(&self, x: usize, y: usize) -> Result<&SimplicialComplex> {
        self.check_pair(x, y)?;
        Ok(self.deltas[self.cell(x, y)].get_or_init(|| {
            let members = self.half_open_interval(x, y);
            let names = members
                .iter()
                .map(|&m| self.b.name(m).to_string())
                .collect();
            order_complex(&self.r_order.restrict(&members), names)
        }))
    }

    /// Connected components of `Δ(X,Y)`, counted on the Hasse diagram.
    pub fn component_count(&self, x: usize, y: usize) -> Result<usize> {
        self.check_pair(x, y)?;
        Ok(*self.components[self.cell(x, y)].get_or_init(|| {
            self.r_order
                .restrict(&self.half_open_interval(x, y))
                .component_count()
        }))
    }

    /// Reduced cohomology of `Δ(X,Y)` over `field`.
    pub fn delta_betti(&self, x: usize, y: usize, field: FieldSpec) -> Result<BettiVector> {
        let key = (self.cell(x, y), field);
        if let Some(v) = self.betti.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.delta(x, y)?.reduced_betti(field);
        self.betti
            .lock()
            .expect("cache lock")
            .insert(key, v.clone());
        Ok(v)
    }

    /// `Ext^n(k_X, k_Y)` for `n = 0..=max_degree`.
    pub fn ext_dims(
        &self,
        x: usize,
        y: usize,
        field: FieldSpec,
        max_degree: usize,
    ) -> Result<Vec<usize>> {
        let n = self.lattice.len();
        if x >= n || y >= n {
            return Err(LrbError::InvalidInput(format!(
                "lattice index out of range ({x}, {y})"
            )));
        }
        let mut dims = vec![0; max_degree + 1];
        if x == y {
            dims[0] = 1;
        } else if self.lattice.lt(x, y) {
            let betti = self.delta_betti(x, y, field)?;
            for (deg, d) in dims.iter_mut().enumerate().skip(1) {
                *d = betti.get(deg as isize - 1);
            }
        }
        Ok(dims)
    }

    /// Ext table over all pairs; `max_degree` defaults to the chain bound.
    pub fn ext_table(&self, field: FieldSpec, max_degree: Option<usize>) -> Result<ExtTable> {
        let max_degree = max_degree.unwrap_or_else(|| self.chain_bound());
        let n = self.lattice.len();
        let dims = (0..n * n)
            .into_par_iter()
            .map(|c| self.ext_dims(c / n, c % n, field, max_degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtTable {
            field,
            max_degree,
            labels: self.labels(),
            dims,
        })
    }

    /// Quiver: `components(Δ(X,Y)) - 1` arrows from `X` to `Y`.
    pub fn quiver(&self) -> QuiverDescription {
        let arrows = self
            .lattice
            .strict_pairs()
            .into_iter()
            .filter_map(|(x, y)| {
                let m = self.component_count(x, y).expect("strict pair") - 1;
                (m > 0).then_some((x, y, m))
            })
            .collect();
        QuiverDescription {
            labels: self.labels(),
            arrows,
        }
    }

    /// Number of minimal relations between `X < Y`: `dim H^1(Δ(X,Y))`.
    pub fn relation_counts(&self, field: FieldSpec) -> Result<Vec<((usize, usize), usize)>> {
        self.lattice
            .strict_pairs()
            .into_par_iter()
            .map(|(x, y)| Ok(((x, y), self.delta_betti(x, y, field)?.get(1))))
            .collect()
    }

    fn dimension_over(&self, pairs: Vec<(usize, usize)>, field: FieldSpec) -> Result<usize> {
        let tops = pairs
            .into_par_iter()
            .map(|(x, y)| {
                Ok(self
                    .delta_betti(x, y, field)?
                    .top_degree()
                    .map_or(0, |d| (d + 1).max(0) as usize))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(tops.into_iter().max().unwrap_or(0))
    }

    /// Global dimension of `kB`.
    pub fn global_dimension(&self, field: FieldSpec) -> Result<usize> {
        self.dimension_over(self.lattice.strict_pairs(), field)
    }

    /// Projective dimension of the simple module `k_X`.
    pub fn proj_dimension(&self, x: usize, field: FieldSpec) -> Result<usize> {
        let pairs = self
            .lattice
            .strict_pairs()
            .into_iter()
            .filter(|&(p, _)| p == x)
            .collect();
        self.dimension_over(pairs, field)
    }

    /// Leray number of the order complex of the whole monoid under the R-order.
    pub fn leray_number(&self, field: FieldSpec) -> Result<usize> {
        let delta_b = order_complex(&self.r_order, self.b.names().to_vec());
        leray_number(&delta_b, field, DEFAULT_LERAY_CAP)
    }

    /// Global dimension against the chain bound and the Leray bound.
    pub fn bounds_report(&self, field: FieldSpec) -> Result<BoundsReport> {
        let global_dimension = self.global_dimension(field)?;
        let chain_bound = self.chain_bound();
        let (leray_bound, notice) = if self.b.size() <= DEFAULT_LERAY_CAP {
            (Some(self.leray_number(field)?), None)
        } else {
            let msg = format!(
                "Leray bound skipped: {} elements exceed the cap of {DEFAULT_LERAY_CAP}",
                self.b.size()
            );
            (None, Some(msg))
        };
        Ok(BoundsReport {
            field: field.to_string(),
            global_dimension,
            chain_bound,
            chain_bound_holds: global_dimension <= chain_bound,
            leray_bound,
            leray_bound_holds: leray_bound.map(|l| global_dimension <= l),
            notice,
        })
    }

    /// Quiver from the child counts of the tree-shaped R-order.
    pub fn right_hereditary_quiver(&self) -> Result<QuiverDescription> {
        if let Some((element, covers)) = self.b.right_hereditary_witness() {
            return Err(LrbError::NotRightHereditary { element, covers });
        }
        let arrows = self
            .lattice
            .strict_pairs()
            .into_iter()
            .filter_map(|(x, y)| {
                let e = self.lattice.representative(y);
                let children = self
                    .r_order
                    .lower_covers(e)
                    .into_iter()
                    .filter(|&c| self.lattice.leq(x, self.lattice.sigma(c)))
                    .count();
                let m = children.saturating_sub(1);
                (m > 0).then_some((x, y, m))
            })
            .collect();
        Ok(QuiverDescription {
            labels: self.labels(),
            arrows,
        })
    }

    /// Compares the cohomology of `Δ(0,1)` with that of the clique complex of
    /// the commutation graph.
    pub fn geometric_commutation_check(&self, field: FieldSpec) -> Result<GeometricReport> {
        if let Some((a, b, c)) = self.b.geometric_witness() {
            return Err(LrbError::NotGeometric { a, b, c });
        }
        let (graph, _) = self.b.commutation_graph()?;
        let delta = self.delta_betti(self.lattice.bottom(), self.lattice.top(), field)?;
        let clique = clique_complex(&graph, DEFAULT_CLIQUE_CAP)?.reduced_betti(field);
        Ok(GeometricReport {
            agree: delta == clique,
            delta_betti: delta.trimmed().to_vec(),
            clique_betti: clique.trimmed().to_vec(),
        })
    }
}

/// Global dimension with its two upper bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub field: String,
    pub global_dimension: usize,
    pub chain_bound: usize,
    pub chain_bound_holds: bool,
    pub leray_bound: Option<usize>,
    pub leray_bound_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

/// Betti vectors (from degree -1) of `Δ(0,1)` and of the commutation clique complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricReport {
    pub delta_betti: Vec<usize>,
    pub clique_betti: Vec<usize>,
    pub agree: bool,
}

pub fn delta_complex(b: &Lrb, x: usize, y: usize) -> Result<SimplicialComplex> {
    Analysis::new(b).delta(x, y).cloned()
}

pub fn ext_dims(
    b: &Lrb,
    x: usize,
    y: usize,
    field: FieldSpec,
    max_degree: Option<usize>,
) -> Result<Vec<usize>> {
    let a = Analysis::new(b);
    let max_degree = max_degree.unwrap_or_else(|| a.chain_bound());
    a.ext_dims(x, y, field, max_degree)
}

pub fn quiver(b: &Lrb) -> QuiverDescription {
    Analysis::new(b).quiver()
}

pub fn relation_counts(b: &Lrb, field: FieldSpec) -> Result<Vec<((usize, usize), usize)>> {
    Analysis::new(b).relation_counts(field)
}

pub fn global_dimension(b: &Lrb, field: FieldSpec) -> Result<usize> {
    Analysis::new(b).global_dimension(field)
}

pub fn proj_dimension(b: &Lrb, x: usize, field: FieldSpec) -> Result<usize> {
    Analysis::new(b).proj_dimension(x, field)
}

pub fn bounds_report(b: &Lrb, field: FieldSpec) -> Result<BoundsReport> {
    Analysis::new(b).bounds_report(field)
}

pub fn right_hereditary_quiver(b: &Lrb) -> Result<QuiverDescription> {
    Analysis::new(b).right_hereditary_quiver()
}

pub fn geometric_commutation_check(b: &Lrb, field: FieldSpec) -> Result<GeometricReport> {
    Analysis::new(b).geometric_commutation_check(field)
}
