use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::word_name;
use crate::error::{LrbError, Result};
use crate::lrb::Lrb;

/// A finite quiver with a total order on its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    /// `(source, target, label)`.
    arrows: Vec<(usize, usize, String)>,
    /// Vertices listed from least to greatest.
    order: Vec<usize>,
}

/// Serialized quiver: arrows are `[source, target, label]` by vertex name and
/// `order` lists vertex names from least to greatest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<[String; 3]>,
    pub order: Vec<String>,
}

impl Quiver {
    /// Checks that the quiver is acyclic and that every arrow goes up in `order`.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(usize, usize, String)>,
        order: Vec<usize>,
    ) -> Result<Quiver> {
        let n = vertices.len();
        if n == 0 {
            return Err(LrbError::InvalidInput("quiver has no vertices".into()));
        }
        if arrows.iter().any(|&(s, t, _)| s >= n || t >= n) {
            return Err(LrbError::InvalidInput("arrow endpoint out of range".into()));
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(LrbError::InvalidInput(
                "order is not a permutation of the vertices".into(),
            ));
        }
        // Kahn's algorithm.
        let mut indegree = vec![0; n];
        for &(_, t, _) in &arrows {
            indegree[t] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(s, t, _) in &arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        if seen < n {
            return Err(LrbError::NotAcyclic);
        }
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        if let Some((s, t, label)) = arrows.iter().find(|&&(s, t, _)| rank[s] >= rank[t]) {
            return Err(LrbError::BadOrder {
                arrow: format!("{label}: {} -> {}", vertices[*s], vertices[*t]),
            });
        }
        Ok(Quiver {
            vertices,
            arrows,
            order,
        })
    }

    /// The linear quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn linear(n: usize) -> Result<Quiver> {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (i - 1, i, format!("a{i}"))).collect();
        Quiver::new(vertices, arrows, (0..n).collect())
    }

    pub fn from_json(json: &QuiverJson) -> Result<Quiver> {
        let lookup = |name: &str| {
            json.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| LrbError::InvalidInput(format!("unknown vertex {name:?}")))
        };
        let arrows = json
            .arrows
            .iter()
            .map(|[s, t, label]| Ok((lookup(s)?, lookup(t)?, label.clone())))
            .collect::<Result<Vec<_>>>()?;
        let order = json
            .order
            .iter()
            .map(|v| lookup(v))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(json.vertices.clone(), arrows, order)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(s, t, l)| {
                    [
                        self.vertices[*s].clone(),
                        self.vertices[*t].clone(),
                        l.clone(),
                    ]
                })
                .collect(),
            order: self
                .order
                .iter()
                .map(|&v| self.vertices[v].clone())
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize, String)] {
        &self.arrows
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// A path of a quiver; `arrows` is empty for a stationary path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverPath {
    pub source: usize,
    pub arrows: Vec<usize>,
    pub target: usize,
}

impl QuiverPath {
    /// Vertices visited, from source to target.
    pub fn vertex_sequence(&self, quiver: &Quiver) -> Vec<usize> {
        let mut seq = vec![self.source];
        seq.extend(self.arrows.iter().map(|&a| quiver.arrows[a].1));
        seq
    }

    /// The path made of arrows `from..` (a stationary path at the target when
    /// `from` is the length).
    pub fn suffix(&self, quiver: &Quiver, from: usize) -> QuiverPath {
        let source = if from < self.arrows.len() {
            quiver.arrows[self.arrows[from]].0
        } else {
            self.target
        };
        QuiverPath {
            source,
            arrows: self.arrows[from..].to_vec(),
            target: self.target,
        }
    }
}

/// The left regular band of paths of an ordered acyclic quiver.
#[derive(Debug, Clone)]
pub struct QuiverLrb {
    pub lrb: Lrb,
    pub quiver: Quiver,
    /// Element `i` of `lrb` is the path `paths[i]`.
    pub paths: Vec<QuiverPath>,
    rank: Vec<usize>,
    index: HashMap<QuiverPath, usize>,
}

impl QuiverLrb {
    /// Position of a vertex in the order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn path_index(&self, path: &QuiverPath) -> Option<usize> {
        self.index.get(path).copied()
    }

    /// Product of two paths in the path algebra: the concatenation, or `None`
    /// when the paths do not meet.
    pub fn path_product(&self, x: usize, y: usize) -> Option<usize> {
        let (p, q) = (&self.paths[x], &self.paths[y]);
        if p.target != q.source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        self.path_index(&QuiverPath {
            source: p.source,
            arrows,
            target: q.target,
        })
    }

    /// Expansion of an element in the path basis: the stationary paths at
    /// every vertex at or above its target, plus all its nonempty suffixes.
    pub fn ell(&self, x: usize) -> Vec<usize> {
        let p = &self.paths[x];
        let mut out: Vec<usize> = (0..self.quiver.vertices.len())
            .filter(|&u| self.rank[u] >= self.rank[p.target])
            .map(|u| {
                self.index[&QuiverPath {
                    source: u,
                    arrows: Vec::new(),
                    target: u,
                }]
            })
            .collect();
        out.extend((0..p.arrows.len()).map(|i| self.index[&p.suffix(&self.quiver, i)]));
        out
    }
}

fn product(quiver: &Quiver, rank: &[usize], a: &QuiverPath, b: &QuiverPath) -> QuiverPath {
    let ta = a.target;
    if rank[ta] >= rank[b.target] {
        return a.clone();
    }
    let seq = b.vertex_sequence(quiver);
    if let Some(r) = seq.iter().position(|&v| v == ta) {
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows[r..]);
        return QuiverPath {
            source: a.source,
            arrows,
            target: b.target,
        };
    }
    let k = seq
        .iter()
        .position(|&v| rank[ta] < rank[v])
        .expect("target of b lies above");
    b.suffix(quiver, k)
}

/// Builds the left regular band whose elements are the paths of `quiver`.
pub fn quiver_lrb(quiver: &Quiver, cap: usize) -> Result<QuiverLrb> {
    let n = quiver.vertices.len();
    let mut paths: Vec<QuiverPath> = quiver
        .order
        .iter()
        .map(|&v| QuiverPath {
            source: v,
            arrows: Vec::new(),
            target: v,
        })
        .collect();
    let mut i = 0;
    while i < paths.len() {
        for (a, &(s, t, _)) in quiver.arrows.iter().enumerate() {
            if s == paths[i].target {
                let mut p = paths[i].clone();
                p.arrows.push(a);
                p.target = t;
                paths.push(p);
                if paths.len() > cap {
                    return Err(LrbError::TooLarge {
                        what: "quiver band".into(),
                        size: paths.len(),
                        cap,
                    });
                }
            }
        }
        i += 1;
    }
    let mut rank = vec![0; n];
    for (i, &v) in quiver.order.iter().enumerate() {
        rank[v] = i;
    }
    let index: HashMap<QuiverPath, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let names = paths
        .iter()
        .map(|p| {
            if p.arrows.is_empty() {
                format!("e{}", quiver.vertices[p.source])
            } else {
                word_name(
                    &p.arrows
                        .iter()
                        .map(|&a| quiver.arrows[a].2.as_str())
                        .collect::<Vec<_>>(),
                )
            }
        })
        .collect();
    // The stationary path at the least vertex comes first.
    let lrb = Lrb::from_fn(paths.len(), 0, names, cap, "quiver band", |x, y| {
        index[&product(quiver, &rank, &paths[x], &paths[y])]
    })?;
    Ok(QuiverLrb {
        lrb,
        quiver: quiver.clone(),
        paths,
        rank,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrb::DEFAULT_SIZE_CAP;

    #[test]
    fn linear_quivers() {
        assert_eq!(
            quiver_lrb(&Quiver::linear(1).unwrap(), 10)
                .unwrap()
                .lrb
                .size(),
            1
        );
        let a2 = quiver_lrb(&Quiver::linear(2).unwrap(), 10).unwrap();
        assert_eq!(a2.lrb.size(), 3);
        let a3 = quiver_lrb(&Quiver::linear(3).unwrap(), 10).unwrap();
        assert_eq!(a3.lrb.size(), 6);
        a3.lrb.validate().unwrap();
        // Support lattice is the vertex order reversed: a chain.
        let lattice = a3.lrb.support_lattice();
        assert_eq!(lattice.len(), 3);
        assert_eq!(lattice.chain_length(), 2);
    }

    #[test]
    fn jump_to_suffix() {
        // 1 -> 3 -> 4 and an isolated-in-path vertex 2 between them in the order.
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![(0, 2, "b1".into()), (2, 3, "b2".into()), (0, 1, "c".into())],
            vec![0, 1, 2, 3],
        )
        .unwrap();
        let b = quiver_lrb(&q, DEFAULT_SIZE_CAP).unwrap();
        b.lrb.validate().unwrap();
        let e = |n: &str| b.lrb.element(n).unwrap();
        // t(c) = 2 lies strictly between s(b1) = 1 and s(b2) = 3.
        assert_eq!(b.lrb.mul(e("c"), e("b1.b2")), e("b2"));
        assert_eq!(b.lrb.mul(e("e3"), e("b1.b2")), e("b2"));
        assert_eq!(b.lrb.mul(e("b1"), e("b1.b2")), e("b1.b2"));
        assert_eq!(b.lrb.mul(e("b2"), e("c")), e("b2"));
    }

    #[test]
    fn order_errors() {
        let v = vec!["1".to_string(), "2".to_string()];
        let bad = Quiver::new(v.clone(), vec![(0, 1, "a".into())], vec![1, 0]);
        assert!(matches!(bad, Err(LrbError::BadOrder { .. })));
        let cyclic = Quiver::new(v, vec![(0, 1, "a".into()), (1, 0, "b".into())], vec![0, 1]);
        assert_eq!(cyclic, Err(LrbError::NotAcyclic));
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::linear(3).unwrap();
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }
}
