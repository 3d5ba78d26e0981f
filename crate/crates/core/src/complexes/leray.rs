use rayon::prelude::*;

use super::{is_chordal, SimplicialComplex};
use crate::error::{LrbError, Result};
use crate::field::FieldSpec;

/// Default vertex cap for the exhaustive Leray computation.
pub const DEFAULT_LERAY_CAP: usize = 16;

/// Leray number over `field`: the least `d` such that every induced
/// subcomplex has vanishing reduced cohomology in all degrees `>= d`.
///
/// Simplices return 0 and flag complexes with a chordal 1-skeleton return 1
/// without enumeration; everything else goes through
/// [`leray_number_exhaustive`].
pub fn leray_number(k: &SimplicialComplex, field: FieldSpec, cap: usize) -> Result<usize> {
    if k.vertex_count() > cap {
        return Err(LrbError::TooManyVertices {
            vertices: k.vertex_count(),
            cap,
        });
    }
    if k.is_simplex() {
        return Ok(0);
    }
    if k.is_flag() && is_chordal(&k.one_skeleton()).is_chordal() {
        return Ok(1);
    }
    leray_number_exhaustive(k, field, cap)
}

/// Leray number by enumerating every induced subcomplex.
pub fn leray_number_exhaustive(
    k: &SimplicialComplex,
    field: FieldSpec,
    cap: usize,
) -> Result<usize> {
    let n = k.vertex_count();
    if n > cap {
        return Err(LrbError::TooManyVertices { vertices: n, cap });
    }
    let masks: u64 = 1 << n;
    let worst = (1..masks)
        .into_par_iter()
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let sub = k.induced(&subset);
            if sub.is_simplex() || sub.is_cone() {
                return 0;
            }
            match sub.reduced_betti(field).top_degree() {
                Some(d) if d >= 0 => d as usize + 1,
                _ => 0,
            }
        })
        .max()
        .unwrap_or(0);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::clique_complex;
    use crate::complexes::DEFAULT_CLIQUE_CAP;
    use crate::graph::Graph;

    fn cliq(g: &Graph) -> SimplicialComplex {
        clique_complex(g, DEFAULT_CLIQUE_CAP).unwrap()
    }

    #[test]
    fn simplex_has_leray_zero() {
        let s = SimplicialComplex::simplex(5);
        assert_eq!(leray_number(&s, FieldSpec::Rationals, 16).unwrap(), 0);
        assert_eq!(
            leray_number_exhaustive(&s, FieldSpec::Rationals, 16).unwrap(),
            0
        );
    }

    #[test]
    fn four_cycle_has_leray_two() {
        let k = cliq(&Graph::cycle(4));
        assert_eq!(leray_number(&k, FieldSpec::Rationals, 16).unwrap(), 2);
    }

    #[test]
    fn complement_of_six_cycle() {
        // floor((6 - 2) / 3) + 1 = 2
        let k = cliq(&Graph::cycle(6).complement());
        assert_eq!(
            leray_number_exhaustive(&k, FieldSpec::Rationals, 16).unwrap(),
            2
        );
        assert_eq!(leray_number(&k, FieldSpec::Rationals, 16).unwrap(), 2);
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let k = SimplicialComplex::with_indices(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(!k.is_flag());
        assert_eq!(leray_number(&k, FieldSpec::Rationals, 16).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let k = SimplicialComplex::with_indices(17, vec![]);
        assert!(matches!(
            leray_number(&k, FieldSpec::Rationals, 16),
            Err(LrbError::TooManyVertices {
                vertices: 17,
                cap: 16
            })
        ));
    }
}
