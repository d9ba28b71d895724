use serde::Serialize;

use super::eigen::Refinement;
use crate::error::{check_size, Result};
use crate::schubert::{closed_cell_member, open_cell_member, subquotient_cell_test, FlagOverRing};
use crate::weyl::{all_permutations, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellQuery {
    pub w: Permutation,
    pub closed: bool,
    pub open: bool,
    pub subquotient: bool,
}

/// Position of `hodge` relative to the refinement flag, for every `w`.
///
/// The refinement basis plays the role of the reference basis `(e_i)`, so the
/// flag tested is the one with matrix `B^{-1} H`.
pub fn flag_position_of_refinement(refinement: &Refinement, hodge: &FlagOverRing) -> Result<Vec<CellQuery>> {
    let n = refinement.n();
    check_size(n, hodge.n())?;
    let relative = FlagOverRing::new(refinement.basis.inverse()?.mul(hodge.matrix())?)?;
    all_permutations(n)
        .into_iter()
        .map(|w| {
            Ok(CellQuery {
                closed: closed_cell_member(&relative, &w)?,
                open: open_cell_member(&relative, &w)?,
                subquotient: subquotient_cell_test(&relative, &w)?,
                w,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::{refinement_from_eigenvalues, ArtinMatrix, TruncatedAlgebra};

    #[test]
    fn refinement_against_itself_is_the_identity_cell() {
        let a = TruncatedAlgebra::dual();
        let e = |s: &str| a.parse_elem(s).unwrap();
        let f = ArtinMatrix::from_rows(&a, vec![vec![e("0"), e("0")], vec![e("e"), e("1")]]).unwrap();
        let r = refinement_from_eigenvalues(&f, &[e("0"), e("1")]).unwrap();
        let hodge = FlagOverRing::new(r.basis.clone()).unwrap();
        let cells = flag_position_of_refinement(&r, &hodge).unwrap();
        let open: Vec<_> = cells.iter().filter(|c| c.open).map(|c| c.w.to_string()).collect();
        assert_eq!(open, vec!["1,2"]);
        assert!(cells.iter().all(|c| c.closed));
        assert!(cells.iter().all(|c| c.open == c.subquotient));
    }

    #[test]
    fn transverse_flags_meet_in_the_big_cell() {
        let q = TruncatedAlgebra::rationals();
        let c = |x: i64| q.constant(crate::rational::q(x));
        let f = ArtinMatrix::diagonal(&q, &[c(1), c(2), c(3)]);
        let r = refinement_from_eigenvalues(&f, &[c(1), c(2), c(3)]).unwrap();
        let h = ArtinMatrix::from_rows(
            &q,
            vec![
                vec![c(1), c(1), c(1)],
                vec![c(2), c(3), c(0)],
                vec![c(1), c(5), c(2)],
            ],
        )
        .unwrap();
        let cells = flag_position_of_refinement(&r, &FlagOverRing::new(h).unwrap()).unwrap();
        let open: Vec<_> = cells.iter().filter(|c| c.open).map(|c| c.w.to_string()).collect();
        assert_eq!(open, vec!["3,2,1"]);
    }
}
