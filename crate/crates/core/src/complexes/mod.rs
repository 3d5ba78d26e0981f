//! Simplicial complexes, their reduced cohomology over exact fields, clique
//! complexes, chordality and Leray numbers.

mod chordal;
mod leray;

pub use chordal::{is_chordal, Chordality};
pub use leray::{leray_number, leray_number_exhaustive, DEFAULT_LERAY_CAP};

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{LrbError, Result};
use crate::field::FieldSpec;
use crate::graph::Graph;
use crate::linalg::SparseIntMatrix;
use crate::poset::FinitePoset;

/// Default cap on the number of maximal cliques enumerated.
pub const DEFAULT_CLIQUE_CAP: usize = 200_000;

/// A finite abstract simplicial complex given by its facets.
///
/// Every listed vertex is a 0-simplex. A complex with no vertices is the
/// complex whose only face is the empty simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating faces; non-maximal faces are dropped.
    pub fn new(vertices: Vec<String>, faces: Vec<Vec<usize>>) -> Self {
        let n = vertices.len();
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        let mut covered = vec![false; n];
        for f in &faces {
            for &v in f {
                assert!(v < n, "face vertex {v} out of range");
                covered[v] = true;
            }
        }
        faces.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
        // Larger faces first so containment only needs checking against kept ones.
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        let mut kept_sets: Vec<FixedBitSet> = Vec::new();
        for f in faces {
            let mut set = FixedBitSet::with_capacity(n);
            set.extend(f.iter().copied());
            if kept_sets.iter().all(|k| !set.is_subset(k)) {
                kept_sets.push(set);
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex {
            vertices,
            facets: kept,
        }
    }

    pub fn with_indices(n: usize, faces: Vec<Vec<usize>>) -> Self {
        SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), faces)
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::with_indices(n, vec![(0..n).collect()])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Dimension, with `-1` for the complex with no vertices.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() <= 1
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        face.is_empty()
            || self
                .facets
                .iter()
                .any(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
    }

    /// Simplices of dimension `dim`, sorted lexicographically.
    pub fn simplices(&self, dim: usize) -> Vec<Vec<usize>> {
        let k = dim + 1;
        let mut out: HashSet<Vec<usize>> = HashSet::new();
        for f in self.facets.iter().filter(|f| f.len() >= k) {
            for_each_subset(f, k, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        let mut out: Vec<_> = out.into_iter().collect();
        out.sort();
        out
    }

    /// Face numbers `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        (0..=d.max(-1))
            .map(|i| self.simplices(i as usize).len())
            .collect()
    }

    /// Induced subcomplex on the vertices in `subset`, relabelled in increasing order.
    pub fn induced(&self, subset: &[usize]) -> SimplicialComplex {
        let mut position = vec![usize::MAX; self.vertices.len()];
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            position[v] = i;
        }
        let faces = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .filter(|&&v| position[v] != usize::MAX)
                    .map(|&v| position[v])
                    .collect()
            })
            .collect();
        SimplicialComplex::new(
            sorted.iter().map(|&v| self.vertices[v].clone()).collect(),
            faces,
        )
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::new(self.vertices.clone());
        for f in &self.facets {
            for (i, &u) in f.iter().enumerate() {
                for &v in &f[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// True when the complex equals the clique complex of its 1-skeleton.
    pub fn is_flag(&self) -> bool {
        match clique_complex(&self.one_skeleton(), DEFAULT_CLIQUE_CAP) {
            Ok(c) => c.facets == self.facets,
            Err(_) => false,
        }
    }

    /// True when some vertex lies in every facet (the complex is a cone).
    pub fn is_cone(&self) -> bool {
        match self.facets.split_first() {
            Some((first, rest)) if !first.is_empty() => first
                .iter()
                .any(|v| rest.iter().all(|f| f.binary_search(v).is_ok())),
            _ => false,
        }
    }

    /// Boundary map `C_k -> C_{k-1}` as rows indexed by `k`-simplices; `k = 0`
    /// maps every vertex onto the empty simplex.
    pub fn boundary_matrix(&self, k: usize) -> SparseIntMatrix {
        let cells = self.simplices(k);
        if k == 0 {
            let mut m = SparseIntMatrix::new(1);
            for _ in &cells {
                m.push_row(vec![(0, 1)]);
            }
            return m;
        }
        let faces = self.simplices(k - 1);
        let index: HashMap<&[usize], usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let mut m = SparseIntMatrix::new(faces.len());
        let mut face = Vec::with_capacity(k);
        for cell in &cells {
            let mut row = Vec::with_capacity(k + 1);
            for drop in 0..=k {
                face.clear();
                face.extend(
                    cell.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v),
                );
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                row.push((index[face.as_slice()], sign));
            }
            m.push_row(row);
        }
        m
    }

    /// Reduced cohomology dimensions over `field`, from degree `-1` upward.
    pub fn reduced_betti(&self, field: FieldSpec) -> BettiVector {
        let d = self.dimension();
        if d < 0 {
            return BettiVector {
                field,
                dims: vec![1],
            };
        }
        let d = d as usize;
        let counts: Vec<usize> = (0..=d).map(|k| self.simplices(k).len()).collect();
        // ranks[k] = rank of the boundary map out of C_k, k = 0..=d.
        let ranks: Vec<usize> = (0..=d)
            .map(|k| self.boundary_matrix(k).rank(field))
            .collect();
        let mut dims = Vec::with_capacity(d + 2);
        // Degree -1: the empty simplex modulo the image of C_0.
        dims.push(1 - ranks[0]);
        for k in 0..=d {
            let next = if k < d { ranks[k + 1] } else { 0 };
            dims.push(counts[k] - ranks[k] - next);
        }
        BettiVector { field, dims }
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let index: HashMap<&str, usize> = json
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != json.vertices.len() {
            return Err(LrbError::InvalidInput("duplicate vertex names".into()));
        }
        let mut faces = Vec::new();
        for f in &json.facets {
            let face = f
                .iter()
                .map(|v| {
                    index
                        .get(v.as_str())
                        .copied()
                        .ok_or_else(|| LrbError::InvalidInput(format!("unknown vertex {v:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            faces.push(face);
        }
        Ok(SimplicialComplex::new(json.vertices.clone(), faces))
    }
}

fn for_each_subset(set: &[usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(
        set: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - acc.len() {
                break;
            }
            acc.push(set[i]);
            go(set, k, i + 1, acc, visit);
            acc.pop();
        }
    }
    go(set, k, 0, &mut Vec::with_capacity(k), visit);
}

/// `{"vertices": [...], "facets": [[...]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Dimensions of reduced cohomology, `dims[0]` being degree `-1`.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
}

impl PartialEq for BettiVector {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.trimmed() == other.trimmed()
    }
}

impl BettiVector {
    /// Dimension of the reduced cohomology in degree `degree >= -1`.
    pub fn get(&self, degree: isize) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.dims.get(i).copied())
            .unwrap_or(0)
    }

    /// Dimensions without trailing zeros.
    pub fn trimmed(&self) -> &[usize] {
        let end = self.dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
        &self.dims[..end]
    }

    /// Highest degree with nonzero reduced cohomology.
    pub fn top_degree(&self) -> Option<isize> {
        self.dims
            .iter()
            .rposition(|&d| d != 0)
            .map(|i| i as isize - 1)
    }

    pub fn is_acyclic(&self) -> bool {
        self.trimmed().is_empty()
    }

    /// Alternating sum over degrees `-1, 0, 1, ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if (i as isize - 1) % 2 == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// CSV with header `degree,dimension`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dimension\n");
        for (i, d) in self.dims.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i as isize - 1, d));
        }
        out
    }
}

/// Order complex: vertices are the poset elements, facets its maximal chains.
pub fn order_complex(poset: &FinitePoset, names: Vec<String>) -> SimplicialComplex {
    assert_eq!(poset.len(), names.len());
    SimplicialComplex::new(names, poset.maximal_chains())
}

/// Clique complex of a graph, facets found by Bron–Kerbosch with pivoting.
pub fn clique_complex(graph: &Graph, cap: usize) -> Result<SimplicialComplex> {
    let n = graph.len();
    let mut cliques = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    bron_kerbosch(graph, &mut Vec::new(), p, x, &mut cliques, cap)?;
    Ok(SimplicialComplex::new(graph.names().to_vec(), cliques))
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if p.is_clear() && x.is_clear() {
        if !r.is_empty() {
            if out.len() >= cap {
                return Err(LrbError::TooManyCliques { cap });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| g.neighbors(u).intersection(&p).count())
        .expect("p or x nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.neighbors(pivot));
    for v in candidates.ones().collect::<Vec<_>>() {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(g.neighbors(v));
        let mut nx = x.clone();
        nx.intersect_with(g.neighbors(v));
        bron_kerbosch(g, r, np, nx, out, cap)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

/// Cross-cut complex on the maximal elements of `poset`: a set of maximal
/// elements is a simplex when it has a common lower bound. Requires every
/// subset with a common lower bound to have a meet.
pub fn cross_cut_complex(poset: &FinitePoset, names: &[String]) -> Result<SimplicialComplex> {
    let n = poset.len();
    // Pairwise meets suffice: meets of larger sets follow by induction.
    for a in 0..n {
        for b in (a + 1)..n {
            let lower: Vec<usize> = (0..n)
                .filter(|&z| poset.leq(z, a) && poset.leq(z, b))
                .collect();
            if lower.is_empty() {
                continue;
            }
            let has_meet = lower
                .iter()
                .any(|&m| lower.iter().all(|&z| poset.leq(z, m)));
            if !has_meet {
                return Err(LrbError::MeetHypothesisFails {
                    witness: vec![a, b],
                });
            }
        }
    }
    let maxima = poset.maximal();
    let faces: BTreeSet<Vec<usize>> = (0..n)
        .map(|z| {
            (0..maxima.len())
                .filter(|&i| poset.leq(z, maxima[i]))
                .collect()
        })
        .collect();
    let names = maxima.iter().map(|&m| names[m].clone()).collect();
    Ok(SimplicialComplex::new(names, faces.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_complex(n: usize) -> SimplicialComplex {
        SimplicialComplex::with_indices(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
    }

    #[test]
    fn empty_complex_has_augmentation_class() {
        let k = SimplicialComplex::with_indices(0, vec![]);
        let b = k.reduced_betti(FieldSpec::Rationals);
        assert_eq!(b.get(-1), 1);
        assert_eq!(b.top_degree(), Some(-1));
    }

    #[test]
    fn two_points_and_twelve_gon() {
        let pts = SimplicialComplex::with_indices(2, vec![]);
        let b = pts.reduced_betti(FieldSpec::Rationals);
        assert_eq!((b.get(-1), b.get(0)), (0, 1));
        let gon = cycle_complex(12);
        let b = gon.reduced_betti(FieldSpec::Rationals);
        assert_eq!((b.get(0), b.get(1)), (0, 1));
    }

    #[test]
    fn order_complex_examples() {
        let anti = FinitePoset::from_relation(2, |x, y| x == y);
        let k = order_complex(&anti, vec!["a".into(), "b".into()]);
        assert_eq!(k.facets(), &[vec![0], vec![1]]);
        let chain = FinitePoset::from_relation(4, |x, y| x <= y);
        let k = order_complex(&chain, (0..4).map(|i| i.to_string()).collect());
        assert!(k.is_simplex());
        assert_eq!(k.dimension(), 3);
    }

    #[test]
    fn clique_complex_examples() {
        let c4 = clique_complex(&Graph::cycle(4), DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(c4.facets().len(), 4);
        assert_eq!(c4.dimension(), 1);
        let k5 = clique_complex(&Graph::complete(5), DEFAULT_CLIQUE_CAP).unwrap();
        assert!(k5.is_simplex());
        assert_eq!(k5.dimension(), 4);
        assert!(matches!(
            clique_complex(&Graph::with_vertices(5), 3),
            Err(LrbError::TooManyCliques { cap: 3 })
        ));
    }

    #[test]
    fn comparability_graph_clique_complex_is_order_complex() {
        // Divisors of 12.
        let elems = [1usize, 2, 3, 4, 6, 12];
        let p = FinitePoset::from_relation(6, |i, j| elems[j].is_multiple_of(elems[i]));
        let names: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
        let g = p.comparability_graph(names.clone());
        assert_eq!(
            clique_complex(&g, DEFAULT_CLIQUE_CAP).unwrap(),
            order_complex(&p, names)
        );
    }

    #[test]
    fn cross_cut_examples() {
        let chain = FinitePoset::from_relation(3, |x, y| x <= y);
        let names: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let k = cross_cut_complex(&chain, &names).unwrap();
        assert_eq!(k.vertex_count(), 1);
        let anti = FinitePoset::from_relation(2, |x, y| x == y);
        let k = cross_cut_complex(&anti, &names[..2]).unwrap();
        assert_eq!(k.facets(), &[vec![0], vec![1]]);
        // Two maxima above two incomparable minima: no meet.
        let bowtie = FinitePoset::from_relation(4, |x, y| x == y || (x < 2 && y >= 2));
        let names: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        assert!(matches!(
            cross_cut_complex(&bowtie, &names),
            Err(LrbError::MeetHypothesisFails { .. })
        ));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = SimplicialComplex::with_indices(5, vec![vec![0, 1, 2, 3], vec![2, 3, 4]]);
        for d in 1..=3 {
            assert!(k
                .boundary_matrix(d)
                .compose(&k.boundary_matrix(d - 1))
                .is_zero());
        }
    }

    #[test]
    fn real_projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2.
        let faces = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 3, 5],
            vec![2, 4, 5],
        ];
        let k = SimplicialComplex::with_indices(6, faces);
        assert!(k.reduced_betti(FieldSpec::Rationals).is_acyclic());
        let b2 = k.reduced_betti(FieldSpec::Prime(2));
        assert_eq!((b2.get(1), b2.get(2)), (1, 1));
    }

    #[test]
    fn json_round_trip() {
        let k = cycle_complex(5);
        assert_eq!(SimplicialComplex::from_json(&k.to_json()).unwrap(), k);
    }
}
