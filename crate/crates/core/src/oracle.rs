//! Independent route to Ext: the monoid algebra `kB` over an exact field, its
//! complete system of primitive idempotents, and the normalized bar complex.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::QuiverLrb;
use crate::error::{LrbError, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::homological::Analysis;
use crate::lattice::SupportLattice;
use crate::linalg::{ExactMatrix, SparseIntMatrix};
use crate::lrb::Lrb;

/// Default cap on the number of nonzero entries of one bar coboundary matrix.
pub const DEFAULT_BAR_BUDGET: usize = 2_000_000;

/// An element of `kB`: one coefficient per monoid element.
#[derive(Debug, Clone)]
pub struct AlgebraElement<F: Field> {
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for AlgebraElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero(field: &F, size: usize) -> Self {
        AlgebraElement {
            coeffs: vec![field.zero(); size],
        }
    }

    pub fn basis(field: &F, size: usize, x: usize) -> Self {
        let mut e = Self::zero(field, size);
        e.coeffs[x] = field.one();
        e
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn support(&self, field: &F) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !field.is_zero(&self.coeffs[i]))
            .collect()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    /// Product in `kB`, the bilinear extension of the Cayley table.
    pub fn mul(&self, field: &F, b: &Lrb, other: &Self) -> Self {
        let mut out = Self::zero(field, b.size());
        let right = other.support(field);
        for x in self.support(field) {
            for &y in &right {
                let xy = b.mul(x, y);
                out.coeffs[xy] = field.add(
                    &out.coeffs[xy],
                    &field.mul(&self.coeffs[x], &other.coeffs[y]),
                );
            }
        }
        out
    }

    /// Left multiplication by a monoid element.
    pub fn left_mul(&self, field: &F, b: &Lrb, a: usize) -> Self {
        let mut out = Self::zero(field, b.size());
        for y in self.support(field) {
            let ay = b.mul(a, y);
            out.coeffs[ay] = field.add(&out.coeffs[ay], &self.coeffs[y]);
        }
        out
    }

    /// Human-readable form such as `1 - a - b + ba`.
    pub fn display(&self, field: &F, b: &Lrb) -> String
    where
        F::Elem: std::fmt::Display,
    {
        let one = field.one();
        let minus_one = field.neg(&one);
        let mut out = String::new();
        for x in self.support(field) {
            let c = &self.coeffs[x];
            let (sign, term) = if *c == one {
                ("+", b.name(x).to_string())
            } else if *c == minus_one {
                ("-", b.name(x).to_string())
            } else {
                ("+", format!("{c}*{}", b.name(x)))
            };
            match (out.is_empty(), sign) {
                (true, "-") => out.push('-'),
                (true, _) => {}
                (false, s) => out.push_str(&format!(" {s} ")),
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Representatives `f_X` and the orthogonal idempotents `e_X`, indexed by the
/// support lattice.
#[derive(Debug, Clone)]
pub struct IdempotentSystem<F: Field> {
    pub representatives: Vec<usize>,
    pub idempotents: Vec<AlgebraElement<F>>,
}

/// Computes `e_X = f_X (1 - Σ_{Y<X} e_Y)` from the bottom of the lattice up,
/// with `f_X` the least-index element of support `X`, and verifies the result.
pub fn idempotents<F: Field>(b: &Lrb, field: &F) -> Result<IdempotentSystem<F>> {
    let lattice = b.support_lattice();
    let reps: Vec<usize> = (0..lattice.len())
        .map(|x| lattice.representative(x))
        .collect();
    idempotents_with(b, &lattice, field, &reps)
}

/// As [`idempotents`] with caller-chosen representatives.
pub fn idempotents_with<F: Field>(
    b: &Lrb,
    lattice: &SupportLattice,
    field: &F,
    representatives: &[usize],
) -> Result<IdempotentSystem<F>> {
    let n = b.size();
    let count = lattice.len();
    if representatives.len() != count
        || representatives
            .iter()
            .enumerate()
            .any(|(x, &f)| f >= n || lattice.sigma(f) != x)
    {
        return Err(LrbError::InvalidInput(
            "representatives do not match the support lattice".into(),
        ));
    }
    let order = lattice.poset().linear_extension();
    let mut e: Vec<Option<AlgebraElement<F>>> = vec![None; count];
    for &x in &order {
        let mut rest = AlgebraElement::basis(field, n, b.identity());
        for y in 0..count {
            if lattice.lt(y, x) {
                let ey = e[y].as_ref().expect("lower idempotents come first");
                rest = rest.sub(field, ey);
            }
        }
        e[x] = Some(rest.left_mul(field, b, representatives[x]));
    }
    let system = IdempotentSystem {
        representatives: representatives.to_vec(),
        idempotents: e
            .into_iter()
            .map(|v| v.expect("every lattice element visited"))
            .collect(),
    };
    verify_idempotents(b, lattice, field, &system)?;
    Ok(system)
}

fn verify_idempotents<F: Field>(
    b: &Lrb,
    lattice: &SupportLattice,
    field: &F,
    system: &IdempotentSystem<F>,
) -> Result<()> {
    let n = b.size();
    let e = &system.idempotents;
    let fail = |msg: String| Err(LrbError::VerificationFailed(msg));
    let mut sum = AlgebraElement::zero(field, n);
    for (x, ex) in e.iter().enumerate() {
        sum = sum.add(field, ex);
        for (y, ey) in e.iter().enumerate() {
            let prod = ex.mul(field, b, ey);
            if x == y && prod != *ex {
                return fail(format!("e_{x} is not idempotent"));
            }
            if x != y && !prod.is_zero(field) {
                return fail(format!("e_{x} e_{y} != 0"));
            }
        }
        for a in 0..n {
            if !lattice.leq(x, lattice.sigma(a)) && !ex.left_mul(field, b, a).is_zero(field) {
                return fail(format!("{} e_{x} != 0", b.name(a)));
            }
        }
    }
    if sum != AlgebraElement::basis(field, n, b.identity()) {
        return fail("the idempotents do not sum to 1".into());
    }
    Ok(())
}

/// Outcome of the check that `{b e_σ(b)}` is a basis of idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCheck {
    pub unitriangular: bool,
    pub all_idempotent: bool,
    pub rank: usize,
    pub size: usize,
    /// First offending element, by name.
    pub witness: Option<String>,
}

impl BasisCheck {
    pub fn passed(&self) -> bool {
        self.unitriangular && self.all_idempotent && self.rank == self.size
    }
}

pub fn idempotent_basis_check<F: Field>(
    b: &Lrb,
    field: &F,
    system: &IdempotentSystem<F>,
) -> BasisCheck {
    let lattice = b.support_lattice();
    let n = b.size();
    let mut witness = None;
    let mut unitriangular = true;
    let mut all_idempotent = true;
    let mut rows = Vec::with_capacity(n);
    for x in 0..n {
        let v = system.idempotents[lattice.sigma(x)].left_mul(field, b, x);
        let triangular =
            v.coeffs[x] == field.one() && v.support(field).iter().all(|&c| b.leq(c, x));
        if !triangular {
            unitriangular = false;
            witness.get_or_insert_with(|| b.name(x).to_string());
        }
        if v.mul(field, b, &v) != v {
            all_idempotent = false;
            witness.get_or_insert_with(|| b.name(x).to_string());
        }
        rows.push(v.coeffs);
    }
    let rank = ExactMatrix::from_rows(field.clone(), rows).rank();
    BasisCheck {
        unitriangular,
        all_idempotent,
        rank,
        size: n,
        witness,
    }
}

/// Sizes of the support fibres and whether `b ↦ b e_X` intertwines the
/// Schützenberger action with left multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchutzenbergerReport {
    pub fibre_sizes: Vec<usize>,
    pub size: usize,
    pub intertwines: bool,
    pub witness: Option<(String, String)>,
}

impl SchutzenbergerReport {
    pub fn passed(&self) -> bool {
        self.fibre_sizes.iter().sum::<usize>() == self.size && self.intertwines
    }
}

pub fn schutzenberger_check<F: Field>(
    b: &Lrb,
    field: &F,
    system: &IdempotentSystem<F>,
) -> SchutzenbergerReport {
    let lattice = b.support_lattice();
    let n = b.size();
    let fibre_sizes: Vec<usize> = (0..lattice.len()).map(|x| lattice.fibre(x).len()).collect();
    let mut witness = None;
    'outer: for x in 0..lattice.len() {
        let ex = &system.idempotents[x];
        for member in lattice.fibre(x) {
            let image = ex.left_mul(field, b, member);
            for a in 0..n {
                let lhs = image.left_mul(field, b, a);
                let rhs = if lattice.leq(x, lattice.sigma(a)) {
                    ex.left_mul(field, b, b.mul(a, member))
                } else {
                    AlgebraElement::zero(field, n)
                };
                if lhs != rhs {
                    witness = Some((b.name(a).to_string(), b.name(member).to_string()));
                    break 'outer;
                }
            }
        }
    }
    SchutzenbergerReport {
        fibre_sizes,
        size: n,
        intertwines: witness.is_none(),
        witness,
    }
}

/// The normalized bar cochain complex of `B_{≥X}` with coefficients in `k_Y`.
pub struct BarComplex {
    /// Non-identity elements of `B_{≥X}`; cells of degree `n` are `n`-tuples of them.
    pub letters: Vec<usize>,
    /// Whether each letter acts as the identity on `k_Y`.
    acts: Vec<bool>,
    /// Product table on letter positions.
    table: Vec<usize>,
}

impl BarComplex {
    pub fn new(b: &Lrb, lattice: &SupportLattice, x: usize, y: usize) -> Result<BarComplex> {
        let letters: Vec<usize> = (0..b.size())
            .filter(|&s| s != b.identity() && lattice.leq(x, lattice.sigma(s)))
            .collect();
        let pos: HashMap<usize, usize> = letters.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let m = letters.len();
        let mut table = Vec::with_capacity(m * m);
        for &s in &letters {
            for &t in &letters {
                let st = b.mul(s, t);
                let &p = pos.get(&st).ok_or_else(|| {
                    LrbError::VerificationFailed(format!(
                        "{} {} is the identity",
                        b.name(s),
                        b.name(t)
                    ))
                })?;
                table.push(p);
            }
        }
        let acts = letters
            .iter()
            .map(|&s| lattice.leq(y, lattice.sigma(s)))
            .collect();
        Ok(BarComplex {
            letters,
            acts,
            table,
        })
    }

    /// Number of cells in degree `n`.
    pub fn cells(&self, n: usize) -> Option<usize> {
        self.letters.len().checked_pow(n as u32)
    }

    /// Nonzero entries of the coboundary out of degree `n`.
    pub fn coboundary_nnz(&self, n: usize) -> Option<usize> {
        self.cells(n + 1)?.checked_mul(n + 2)
    }

    /// Coboundary `δ^n`, one row per cell of degree `n + 1`.
    pub fn coboundary(&self, n: usize) -> SparseIntMatrix {
        let m = self.letters.len();
        let cols = self.cells(n).expect("degree within budget");
        let rows = self.cells(n + 1).expect("degree within budget");
        let mut out = SparseIntMatrix::new(cols);
        let mut cell = vec![0usize; n + 1];
        let encode =
            |digits: &mut dyn Iterator<Item = usize>| digits.fold(0usize, |acc, d| acc * m + d);
        for r in 0..rows {
            let mut k = r;
            for i in (0..=n).rev() {
                cell[i] = k % m;
                k /= m;
            }
            let mut entries = Vec::with_capacity(n + 2);
            if self.acts[cell[0]] {
                entries.push((encode(&mut cell[1..].iter().copied()), 1));
            }
            for i in 1..=n {
                let merged = self.table[cell[i - 1] * m + cell[i]];
                let mut digits = cell[..i - 1]
                    .iter()
                    .copied()
                    .chain(std::iter::once(merged))
                    .chain(cell[i + 1..].iter().copied());
                entries.push((
                    encode(&mut digits),
                    if i.is_multiple_of(2) { 1 } else { -1 },
                ));
            }
            let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
            entries.push((encode(&mut cell[..n].iter().copied()), sign));
            out.push_row(entries);
        }
        out
    }
}

/// Bar-complex cohomology of one pair, possibly truncated by the budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarExt {
    /// `dims[n] = dim Ext^n` for `n <= reached`.
    pub dims: Vec<usize>,
    /// Highest degree computed.
    pub reached: usize,
    pub truncated: bool,
    pub letters: usize,
}

/// `Ext^n(k_X, k_Y)` from the bar complex for `n <= max_degree`, stopping
/// early (and flagging truncation) when a coboundary would exceed `budget`
/// nonzero entries. Errors if not even degree 0 fits.
pub fn bar_ext_within(
    b: &Lrb,
    lattice: &SupportLattice,
    x: usize,
    y: usize,
    field: FieldSpec,
    max_degree: usize,
    budget: usize,
) -> Result<BarExt> {
    let count = lattice.len();
    if x >= count || y >= count {
        return Err(LrbError::InvalidInput(format!(
            "lattice index out of range ({x}, {y})"
        )));
    }
    let complex = BarComplex::new(b, lattice, x, y)?;
    let letters = complex.letters.len();
    if !lattice.leq(x, y) {
        return Ok(BarExt {
            dims: vec![0; max_degree + 1],
            reached: max_degree,
            truncated: false,
            letters,
        });
    }
    let fits = |n: usize| complex.coboundary_nnz(n).is_some_and(|nnz| nnz <= budget);
    if !fits(0) {
        return Err(LrbError::TooLarge {
            what: "bar coboundary in degree 0".into(),
            size: letters,
            cap: budget,
        });
    }
    let reached = (0..=max_degree)
        .take_while(|&n| fits(n))
        .last()
        .unwrap_or(0);
    let mut dims = Vec::with_capacity(reached + 1);
    let mut previous_rank = 0;
    let mut previous: Option<SparseIntMatrix> = None;
    for n in 0..=reached {
        let delta = complex.coboundary(n);
        if let Some(prev) = &previous {
            if !delta.compose(prev).is_zero() {
                return Err(LrbError::VerificationFailed(format!(
                    "bar coboundary squares to nonzero in degree {n}"
                )));
            }
        }
        let cells = complex.cells(n).expect("fits");
        // delta^n vanishes on the image of delta^(n-1), which bounds its rank.
        let rank = delta.rank_at_most(field, cells - previous_rank);
        dims.push(cells - rank - previous_rank);
        previous_rank = rank;
        previous = Some(delta);
    }
    Ok(BarExt {
        dims,
        reached,
        truncated: reached < max_degree,
        letters,
    })
}

/// Strict version of [`bar_ext_within`]: errors with the first degree over budget.
pub fn bar_ext(
    b: &Lrb,
    x: usize,
    y: usize,
    field: FieldSpec,
    max_degree: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    let lattice = b.support_lattice();
    let r = bar_ext_within(b, &lattice, x, y, field, max_degree, budget)?;
    if r.truncated {
        return Err(LrbError::TooLarge {
            what: format!("bar coboundary in degree {}", r.reached + 1),
            size: r.letters,
            cap: budget,
        });
    }
    Ok(r.dims)
}

/// Per-pair comparison of the two routes to Ext.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub x: String,
    pub y: String,
    pub letters: usize,
    pub bar: Vec<usize>,
    pub simplicial: Vec<usize>,
    pub truncated: bool,
    pub agree: bool,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub field: String,
    pub max_degree: usize,
    pub budget: usize,
    pub pairs: Vec<PairReport>,
    pub mismatches: usize,
    pub truncated: usize,
    pub skipped: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares bar-complex Ext with the order-complex formula on every pair
/// `X <= Y`, smallest `B_{≥X}` first. Degrees beyond the budget are dropped
/// from the comparison and counted as truncated.
pub fn oracle_crosscheck(
    b: &Lrb,
    field: FieldSpec,
    max_degree: usize,
    budget: usize,
) -> Result<OracleReport> {
    let analysis = Analysis::new(b);
    let lattice = analysis.lattice();
    let labels = analysis.labels();
    let above = |x: usize| {
        (0..b.size())
            .filter(|&s| lattice.leq(x, lattice.sigma(s)))
            .count()
    };
    let mut pairs: Vec<(usize, usize)> = (0..lattice.len())
        .flat_map(|x| (0..lattice.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| lattice.leq(x, y))
        .collect();
    pairs.sort_by_key(|&(x, y)| (above(x), x, y));
    let results: Vec<Result<std::result::Result<PairReport, String>>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let start = Instant::now();
            let bar = match bar_ext_within(b, lattice, x, y, field, max_degree, budget) {
                Ok(r) => r,
                Err(e) if e.is_resource_cap() => {
                    return Ok(Err(format!("{} -> {}: {e}", labels[x], labels[y])))
                }
                Err(e) => return Err(e),
            };
            let simplicial = analysis.ext_dims(x, y, field, bar.reached)?;
            Ok(Ok(PairReport {
                x: labels[x].clone(),
                y: labels[y].clone(),
                letters: bar.letters,
                agree: bar.dims == simplicial,
                bar: bar.dims,
                simplicial,
                truncated: bar.truncated,
                millis: start.elapsed().as_millis(),
            }))
        })
        .collect();
    let mut report = OracleReport {
        field: field.to_string(),
        max_degree,
        budget,
        pairs: Vec::new(),
        mismatches: 0,
        truncated: 0,
        skipped: Vec::new(),
    };
    for r in results {
        match r? {
            Ok(p) => {
                report.mismatches += usize::from(!p.agree);
                report.truncated += usize::from(p.truncated);
                report.pairs.push(p);
            }
            Err(notice) => report.skipped.push(notice),
        }
    }
    Ok(report)
}

/// Runs [`idempotents`] and both basis checks over the field named by `spec`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    pub field: String,
    pub idempotents: Vec<String>,
    pub basis: BasisCheck,
    pub schutzenberger: SchutzenbergerReport,
}

impl IdempotentReport {
    pub fn passed(&self) -> bool {
        self.basis.passed() && self.schutzenberger.passed()
    }
}

pub fn idempotent_report(b: &Lrb, spec: FieldSpec) -> Result<IdempotentReport> {
    fn run<F: Field>(b: &Lrb, field: &F) -> Result<IdempotentReport>
    where
        F::Elem: std::fmt::Display,
    {
        let system = idempotents(b, field)?;
        Ok(IdempotentReport {
            field: field.spec().to_string(),
            idempotents: system
                .idempotents
                .iter()
                .map(|e| e.display(field, b))
                .collect(),
            basis: idempotent_basis_check(b, field, &system),
            schutzenberger: schutzenberger_check(b, field, &system),
        })
    }
    match spec {
        FieldSpec::Rationals => run(b, &Rationals),
        FieldSpec::Prime(p) => run(b, &PrimeField::new(p)?),
    }
}

/// Checks that the path-basis expansions `ℓ(p)` of a quiver band are linearly
/// independent and multiply like the band.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverAlgebraCheck {
    pub paths: usize,
    pub rank: usize,
    pub multiplicative: bool,
}

pub fn quiver_algebra_check(q: &QuiverLrb, field: FieldSpec) -> QuiverAlgebraCheck {
    let n = q.paths.len();
    let ell: Vec<Vec<usize>> = (0..n).map(|x| q.ell(x)).collect();
    let mut m = SparseIntMatrix::new(n);
    for row in &ell {
        m.push_row(row.iter().map(|&c| (c, 1)).collect());
    }
    let multiplicative = (0..n).all(|x| {
        (0..n).all(|y| {
            let mut prod: HashMap<usize, i64> = HashMap::new();
            for &p in &ell[x] {
                for &r in &ell[y] {
                    if let Some(pr) = q.path_product(p, r) {
                        *prod.entry(pr).or_insert(0) += 1;
                    }
                }
            }
            prod.retain(|_, v| *v != 0);
            let expected: HashMap<usize, i64> =
                ell[q.lrb.mul(x, y)].iter().map(|&c| (c, 1)).collect();
            prod == expected
        })
    });
    QuiverAlgebraCheck {
        paths: n,
        rank: m.rank(field),
        multiplicative,
    }
}
