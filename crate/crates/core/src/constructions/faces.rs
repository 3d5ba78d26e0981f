use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LrbError, Result};
use crate::field::{parse_rational, rational_to_string};
use crate::lrb::Lrb;

/// Default cap on the number of hyperplanes enumerated by
/// [`real_face_monoid_from_normals`] (`3^n` candidate sign vectors).
pub const DEFAULT_HYPERPLANE_CAP: usize = 10;

/// One entry of a sign vector. `I` and `J` only occur for complex arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
    I,
    J,
}

impl Sign {
    pub const REAL: [Sign; 3] = [Sign::Zero, Sign::Plus, Sign::Minus];
    pub const COMPLEX: [Sign; 5] = [Sign::Zero, Sign::Plus, Sign::Minus, Sign::I, Sign::J];

    /// Product in the five-element sign monoid; restricted to `{0,+,-}` it is
    /// the usual left-priority composition.
    pub fn compose(self, other: Sign) -> Sign {
        match self {
            Sign::Zero => other,
            Sign::I | Sign::J => self,
            Sign::Plus | Sign::Minus => match other {
                Sign::I | Sign::J => other,
                _ => self,
            },
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Sign::Zero | Sign::Plus | Sign::Minus)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::I => 'i',
            Sign::J => 'j',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            'i' => Some(Sign::I),
            'j' => Some(Sign::J),
            _ => None,
        }
    }
}

/// A covector: one sign per hyperplane (or coordinate).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn zero(n: usize) -> SignVector {
        SignVector(vec![Sign::Zero; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|s| s.is_real())
    }

    pub fn compose(&self, other: &SignVector) -> SignVector {
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.compose(b))
                .collect(),
        )
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// Parses strings such as `+-0`, `(+,-,0)` or `+ - 0`.
impl FromStr for SignVector {
    type Err = LrbError;

    fn from_str(s: &str) -> Result<SignVector> {
        let mut signs = Vec::new();
        for c in s.chars() {
            if matches!(c, '(' | ')' | ',' | ' ') {
                continue;
            }
            signs.push(
                Sign::from_char(c)
                    .ok_or_else(|| LrbError::InvalidInput(format!("bad sign {c:?} in {s:?}")))?,
            );
        }
        if signs.is_empty() {
            return Err(LrbError::InvalidInput(format!("empty sign vector {s:?}")));
        }
        Ok(SignVector(signs))
    }
}

/// Face monoid on an explicit list of covectors, closed under composition.
pub fn face_monoid_from_covectors(covectors: &[SignVector]) -> Result<Lrb> {
    let n = covectors
        .first()
        .map(SignVector::len)
        .ok_or(LrbError::MissingIdentity)?;
    if covectors.iter().any(|v| v.len() != n) {
        return Err(LrbError::InvalidInput(
            "sign vectors of different lengths".into(),
        ));
    }
    let index: HashMap<&SignVector, usize> =
        covectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    if index.len() != covectors.len() {
        return Err(LrbError::InvalidInput("repeated sign vector".into()));
    }
    let identity = *index
        .get(&SignVector::zero(n))
        .ok_or(LrbError::MissingIdentity)?;
    let size = covectors.len();
    let mut table = Vec::with_capacity(size * size);
    for x in covectors {
        for y in covectors {
            let xy = x.compose(y);
            match index.get(&xy) {
                Some(&i) => table.push(i),
                None => {
                    return Err(LrbError::NotClosed {
                        left: x.to_string(),
                        right: y.to_string(),
                    })
                }
            }
        }
    }
    let names = covectors.iter().map(SignVector::to_string).collect();
    Lrb::from_flat(size, identity, table, Some(names))
}

/// As [`face_monoid_from_covectors`], rejecting the complex signs `i`, `j`.
pub fn real_face_monoid_from_covectors(covectors: &[SignVector]) -> Result<Lrb> {
    if let Some(v) = covectors.iter().find(|v| !v.is_real()) {
        return Err(LrbError::InvalidInput(format!(
            "{v} is not a real sign vector"
        )));
    }
    face_monoid_from_covectors(covectors)
}

/// The monoid of all `5^n` complex sign vectors of length `n`.
pub fn complex_sign_monoid(n: usize, cap: usize) -> Result<Lrb> {
    if n == 0 {
        return Err(LrbError::InvalidInput(
            "need at least one coordinate".into(),
        ));
    }
    let size = 5usize.checked_pow(n as u32).filter(|&s| s <= cap);
    let size = size.ok_or(LrbError::TooLarge {
        what: "complex sign monoid".into(),
        size: 5usize.saturating_pow(n as u32),
        cap,
    })?;
    let vectors: Vec<SignVector> = (0..size)
        .map(|mut k| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(Sign::COMPLEX[k % 5]);
                k /= 5;
            }
            v.reverse();
            SignVector(v)
        })
        .collect();
    face_monoid_from_covectors(&vectors)
}

/// Linear homogeneous constraint `coeffs . x > 0` (strict) or `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Constraint {
    coeffs: Vec<BigInt>,
    strict: bool,
}

impl Constraint {
    fn normalised(mut self) -> Constraint {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
        self
    }
}

/// Decides whether a homogeneous system of strict and non-strict linear
/// inequalities has a rational solution, by Fourier-Motzkin elimination.
fn feasible(mut system: Vec<Constraint>, dim: usize) -> bool {
    for k in 0..dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for c in system {
            if c.coeffs[k].is_positive() {
                pos.push(c);
            } else if c.coeffs[k].is_negative() {
                neg.push(c);
            } else {
                next.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = &p.coeffs[k];
                let b = -&q.coeffs[k];
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                next.push(
                    Constraint {
                        coeffs,
                        strict: p.strict || q.strict,
                    }
                    .normalised(),
                );
            }
        }
        next.sort_by(|x, y| x.coeffs.cmp(&y.coeffs).then(y.strict.cmp(&x.strict)));
        next.dedup_by(|later, earlier| later.coeffs == earlier.coeffs);
        system = next;
    }
    // Only constant constraints 0 > 0 or 0 >= 0 remain.
    !system.iter().any(|c| c.strict)
}

fn integral_normals(normals: &[Vec<BigRational>]) -> Result<(usize, Vec<Vec<BigInt>>)> {
    let dim = normals
        .first()
        .map(Vec::len)
        .ok_or_else(|| LrbError::InvalidInput("no normals".into()))?;
    let mut out = Vec::with_capacity(normals.len());
    for h in normals {
        if h.len() != dim {
            return Err(LrbError::InvalidInput(
                "normals of different dimensions".into(),
            ));
        }
        if h.iter().all(Zero::is_zero) {
            return Err(LrbError::InvalidInput("zero normal vector".into()));
        }
        let lcm = h.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        out.push(h.iter().map(|r| r.numer() * (&lcm / r.denom())).collect());
    }
    Ok((dim, out))
}

/// All sign vectors realised by points of the central arrangement with the
/// given normals, in lexicographic order of `0 < + < -`.
pub fn arrangement_covectors(normals: &[Vec<BigRational>], cap: usize) -> Result<Vec<SignVector>> {
    let n = normals.len();
    if n > cap {
        return Err(LrbError::TooManyHyperplanes {
            hyperplanes: n,
            cap,
        });
    }
    let (dim, ints) = integral_normals(normals)?;
    let total = 3usize.pow(n as u32);
    let mut out = Vec::new();
    for mut k in 0..total {
        let mut signs = vec![Sign::Zero; n];
        for i in (0..n).rev() {
            signs[i] = Sign::REAL[k % 3];
            k /= 3;
        }
        let mut system = Vec::new();
        for (h, &s) in ints.iter().zip(&signs) {
            let neg = || h.iter().map(|c| -c).collect::<Vec<_>>();
            match s {
                Sign::Plus => system.push(Constraint {
                    coeffs: h.clone(),
                    strict: true,
                }),
                Sign::Minus => system.push(Constraint {
                    coeffs: neg(),
                    strict: true,
                }),
                _ => {
                    system.push(Constraint {
                        coeffs: h.clone(),
                        strict: false,
                    });
                    system.push(Constraint {
                        coeffs: neg(),
                        strict: false,
                    });
                }
            }
        }
        if feasible(system, dim) {
            out.push(SignVector(signs));
        }
    }
    Ok(out)
}

/// Face monoid of the central real arrangement with the given normals.
pub fn real_face_monoid_from_normals(normals: &[Vec<BigRational>], cap: usize) -> Result<Lrb> {
    face_monoid_from_covectors(&arrangement_covectors(normals, cap)?)
}

/// Serialized arrangement: ambient dimension and normals as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub dim: usize,
    pub normals: Vec<Vec<String>>,
}

impl ArrangementJson {
    pub fn from_normals(normals: &[Vec<BigRational>]) -> ArrangementJson {
        ArrangementJson {
            dim: normals.first().map_or(0, Vec::len),
            normals: normals
                .iter()
                .map(|h| h.iter().map(rational_to_string).collect())
                .collect(),
        }
    }

    pub fn normals(&self) -> Result<Vec<Vec<BigRational>>> {
        let mut out = Vec::with_capacity(self.normals.len());
        for h in &self.normals {
            if h.len() != self.dim {
                return Err(LrbError::InvalidInput(format!(
                    "normal of length {} in dimension {}",
                    h.len(),
                    self.dim
                )));
            }
            out.push(
                h.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(out)
    }
}
