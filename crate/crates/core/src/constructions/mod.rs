//! Families of left regular bands with named elements.

mod expansions;
mod faces;
mod free;
mod partially_commutative;
mod quiver;

pub use expansions::{karnofsky_rhodes, rhodes_expansion, Expansion, FiniteLattice, LatticeJson};
pub use faces::{
    arrangement_covectors, complex_sign_monoid, face_monoid_from_covectors,
    real_face_monoid_from_covectors, real_face_monoid_from_normals, ArrangementJson, Sign,
    SignVector, DEFAULT_HYPERPLANE_CAP,
};
pub use free::free_lrb;
pub use partially_commutative::{free_partially_commutative, OrientedSubgraph};
pub use quiver::{quiver_lrb, Quiver, QuiverJson, QuiverLrb, QuiverPath};

use crate::error::Result;
use crate::lrb::{Lrb, SubmonoidMap};

pub fn direct_product(b1: &Lrb, b2: &Lrb, cap: usize) -> Result<Lrb> {
    b1.direct_product(b2, cap)
}

pub fn submonoid_generated(b: &Lrb, gens: &[usize]) -> Result<SubmonoidMap> {
    b.submonoid_generated(gens)
}

/// Joins letters into an element name: plain concatenation for one-character
/// letters, dot separated otherwise. The empty word is `1`.
pub(crate) fn word_name<S: AsRef<str>>(letters: &[S]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let short = letters.iter().all(|l| l.as_ref().chars().count() == 1);
    let parts: Vec<&str> = letters.iter().map(|l| l.as_ref()).collect();
    parts.join(if short { "" } else { "." })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_generated_submonoids() {
        let s =
            real_face_monoid_from_covectors(&["0", "+", "-"].map(|v| v.parse().unwrap())).unwrap();
        let sq = direct_product(&s, &s, 100).unwrap();
        assert_eq!(sq.size(), 9);
        sq.validate().unwrap();
        let pp = sq.element("(+,+)").unwrap();
        let mm = sq.element("(-,-)").unwrap();
        let sub = submonoid_generated(&sq, &[pp, mm]).unwrap();
        let mut names: Vec<&str> = sub.sub.names().iter().map(String::as_str).collect();
        names.sort();
        assert_eq!(names, vec!["(+,+)", "(-,-)", "(0,0)"]);
        assert!(sub.check(&sq));
        let all: Vec<usize> = (0..sq.size()).collect();
        assert_eq!(submonoid_generated(&sq, &all).unwrap().sub.size(), 9);
    }
}
