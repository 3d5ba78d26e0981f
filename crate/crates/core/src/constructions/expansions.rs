use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::word_name;
use crate::error::{LrbError, Result};
use crate::lrb::Lrb;

/// A finite lattice given by its order and meet table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    top: usize,
}

/// Serialized lattice: `leq` lists pairs `[x, y]` with `x <= y` (closed
/// reflexively and transitively on load). `meet` is computed when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Checks that `leq` (after closure) is a partial order with a top and
    /// that `meet` computes greatest lower bounds.
    pub fn new(
        names: Vec<String>,
        leq_pairs: &[(usize, usize)],
        meet: Vec<Vec<usize>>,
    ) -> Result<FiniteLattice> {
        let n = names.len();
        if n == 0 {
            return Err(LrbError::InvalidInput("empty lattice".into()));
        }
        if meet.len() != n
            || meet
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
        {
            return Err(LrbError::InvalidInput(
                "meet table has the wrong shape".into(),
            ));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in leq_pairs {
            if x >= n || y >= n {
                return Err(LrbError::InvalidInput(format!(
                    "order pair ({x},{y}) out of range"
                )));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..x {
                if leq[x][y] && leq[y][x] {
                    return Err(LrbError::InvalidInput(format!(
                        "order has a cycle through {x} and {y}"
                    )));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let m = meet[x][y];
                let glb = leq[m][x]
                    && leq[m][y]
                    && (0..n).all(|z| !(leq[z][x] && leq[z][y]) || leq[z][m]);
                if !glb {
                    return Err(LrbError::InvalidInput(format!(
                        "meet of {x} and {y} is not {m}"
                    )));
                }
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x][t]))
            .ok_or_else(|| LrbError::InvalidInput("lattice has no top".into()))?;
        Ok(FiniteLattice {
            names,
            leq,
            meet,
            top,
        })
    }

    /// Builds a lattice from an order relation alone, computing meets.
    pub fn from_order(
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FiniteLattice> {
        let n = names.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| leq(x, y))
            .collect();
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| leq(z, x) && leq(z, y)).collect();
                meet[x][y] = *lower
                    .iter()
                    .find(|&&m| lower.iter().all(|&z| leq(z, m)))
                    .ok_or_else(|| LrbError::InvalidInput(format!("{x} and {y} have no meet")))?;
            }
        }
        FiniteLattice::new(names, &pairs, meet)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<FiniteLattice> {
        FiniteLattice::from_order((0..n).map(|i| i.to_string()).collect(), |x, y| x <= y)
    }

    /// Subsets of `letters` ordered by reverse inclusion, so meet is union and
    /// the empty set is the top.
    pub fn free_semilattice<S: AsRef<str>>(letters: &[S]) -> Result<FiniteLattice> {
        FiniteLattice::from_masks(letters, 1 << letters.len(), |m| m)
    }

    /// The quotient of the free semilattice on `n` letters identifying every
    /// subset of size `n - 1` with the full set.
    pub fn brown_quotient<S: AsRef<str>>(letters: &[S]) -> Result<FiniteLattice> {
        let n = letters.len();
        let full = (1usize << n) - 1;
        let collapse = move |m: usize| {
            if m.count_ones() as usize + 1 >= n {
                full
            } else {
                m
            }
        };
        FiniteLattice::from_masks(letters, 1 << n, collapse)
    }

    fn from_masks<S: AsRef<str>>(
        letters: &[S],
        count: usize,
        class: impl Fn(usize) -> usize,
    ) -> Result<FiniteLattice> {
        if letters.len() > 12 {
            return Err(LrbError::TooLarge {
                what: "subset lattice".into(),
                size: count,
                cap: 1 << 12,
            });
        }
        let mut masks: Vec<usize> = (0..count).map(&class).collect();
        masks.sort_unstable();
        masks.dedup();
        let names = masks
            .iter()
            .map(|&m| {
                let parts: Vec<&str> = (0..letters.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| letters[i].as_ref())
                    .collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        FiniteLattice::from_order(names, |x, y| masks[x] & masks[y] == masks[y])
    }

    pub fn from_json(json: &LatticeJson) -> Result<FiniteLattice> {
        let names = match &json.names {
            Some(n) if n.len() == json.size => n.clone(),
            Some(_) => {
                return Err(LrbError::InvalidInput(
                    "lattice names do not match size".into(),
                ))
            }
            None => (0..json.size).map(|i| i.to_string()).collect(),
        };
        let pairs: Vec<(usize, usize)> = json.leq.iter().map(|p| (p[0], p[1])).collect();
        if let Some(meet) = &json.meet {
            return FiniteLattice::new(names, &pairs, meet.clone());
        }
        let n = json.size;
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
            return Err(LrbError::InvalidInput(format!(
                "order pair ({x}, {y}) out of range"
            )));
        }
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in &pairs {
            leq[x][y] = true;
        }
        for k in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if leq[x][k] && leq[k][y] {
                        leq[x][y] = true;
                    }
                }
            }
        }
        FiniteLattice::from_order(names, |x, y| leq[x][y])
    }

    /// Serializes with the cover relation as the order pairs.
    pub fn to_json(&self) -> LatticeJson {
        let n = self.len();
        let leq = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)))
            .map(|(x, y)| [x, y])
            .collect();
        LatticeJson {
            size: n,
            leq,
            meet: Some(self.meet.clone()),
            names: Some(self.names.clone()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

/// A left regular band built over a lattice, with its support map into it.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub lrb: Lrb,
    /// Lattice value of each element.
    pub support: Vec<usize>,
}

/// Karnofsky-Rhodes expansion: reduced words over the generators, where each
/// letter strictly lowers the running meet.
pub fn karnofsky_rhodes<S: AsRef<str>>(
    lattice: &FiniteLattice,
    gens: &[(S, usize)],
    cap: usize,
) -> Result<Expansion> {
    if gens.iter().any(|(_, v)| *v >= lattice.len()) {
        return Err(LrbError::InvalidInput(
            "generator value out of range".into(),
        ));
    }
    let mut reached = vec![false; lattice.len()];
    reached[lattice.top()] = true;
    let mut frontier = vec![lattice.top()];
    while let Some(x) = frontier.pop() {
        for (_, g) in gens {
            let m = lattice.meet(x, *g);
            if !reached[m] {
                reached[m] = true;
                frontier.push(m);
            }
        }
    }
    if reached.contains(&false) {
        return Err(LrbError::NotGenerating);
    }
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut support = vec![lattice.top()];
    let mut i = 0;
    while i < words.len() {
        for (a, (_, g)) in gens.iter().enumerate() {
            let m = lattice.meet(support[i], *g);
            if m != support[i] {
                let mut w = words[i].clone();
                w.push(a);
                words.push(w);
                support.push(m);
                if words.len() > cap {
                    return Err(LrbError::TooLarge {
                        what: "Karnofsky-Rhodes expansion".into(),
                        size: words.len(),
                        cap,
                    });
                }
            }
        }
        i += 1;
    }
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let names = words
        .iter()
        .map(|w| word_name(&w.iter().map(|&a| gens[a].0.as_ref()).collect::<Vec<_>>()))
        .collect();
    let lrb = Lrb::from_fn(
        words.len(),
        0,
        names,
        cap,
        "Karnofsky-Rhodes expansion",
        |x, y| {
            let mut w = words[x].clone();
            let mut value = support[x];
            for &a in &words[y] {
                let m = lattice.meet(value, gens[a].1);
                if m != value {
                    w.push(a);
                    value = m;
                }
            }
            index[w.as_slice()]
        },
    )?;
    Ok(Expansion { lrb, support })
}

/// Rhodes expansion: chains of the lattice through the top, multiplied by
/// `X . Y = X ∪ (min X) Y`.
pub fn rhodes_expansion(lattice: &FiniteLattice, cap: usize) -> Result<Expansion> {
    let mut chains: Vec<Vec<usize>> = vec![vec![lattice.top()]];
    let mut i = 0;
    while i < chains.len() {
        let last = *chains[i].last().expect("chains are nonempty");
        for y in 0..lattice.len() {
            if lattice.lt(y, last) {
                let mut c = chains[i].clone();
                c.push(y);
                chains.push(c);
                if chains.len() > cap {
                    return Err(LrbError::TooLarge {
                        what: "Rhodes expansion".into(),
                        size: chains.len(),
                        cap,
                    });
                }
            }
        }
        i += 1;
    }
    let index: HashMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let names = chains
        .iter()
        .map(|c| {
            c.iter()
                .map(|&x| lattice.names()[x].as_str())
                .collect::<Vec<_>>()
                .join(">")
        })
        .collect();
    let support = chains
        .iter()
        .map(|c| *c.last().expect("chains are nonempty"))
        .collect();
    let lrb = Lrb::from_fn(chains.len(), 0, names, cap, "Rhodes expansion", |x, y| {
        let mut c = chains[x].clone();
        let low = *c.last().expect("chains are nonempty");
        for &v in &chains[y] {
            let m = lattice.meet(low, v);
            if Some(&m) != c.last() {
                c.push(m);
            }
        }
        index[c.as_slice()]
    })?;
    Ok(Expansion { lrb, support })
}
