//! Schubert cells and varieties of the type A flag variety.
//!
//! A flag is given by an invertible matrix over a [`TruncatedAlgebra`]; step
//! `k` is spanned by the first `k` columns, measured against the standard
//! flag `Fil_p = span(e_1, …, e_p)`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin::{ArtinMatrix, TruncatedAlgebra};
use crate::error::{check_size, Error, Result};
use crate::linalg::{span_basis, span_dim, QMatrix};
use crate::rational::Q;
use crate::weyl::{all_permutations, bruhat_leq, Permutation};

pub const DEFAULT_ORACLE_BOUND: usize = 5;

#[derive(Clone, Debug)]
pub struct FlagOverRing {
    matrix: ArtinMatrix,
}

impl FlagOverRing {
    pub fn new(matrix: ArtinMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(FlagOverRing { matrix })
    }

    /// The torus-fixed flag `ẇB`.
    pub fn from_permutation(alg: &TruncatedAlgebra, w: &Permutation) -> Self {
        let n = w.n();
        let matrix = ArtinMatrix::from_fn(alg, n, n, |i, j| {
            if i + 1 == w.apply(j + 1) {
                alg.one()
            } else {
                alg.zero()
            }
        });
        FlagOverRing { matrix }
    }

    pub fn matrix(&self) -> &ArtinMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        self.matrix.algebra()
    }
}

/// Upper bound on `rank(rows p+1..n, cols 1..q)` for points of the closed
/// cell of `w`.
pub fn rank_bound(w: &Permutation, p: usize, q: usize) -> usize {
    (1..=q).filter(|&k| w.apply(k) > p).count()
}

/// True iff every `(r+1)`-minor of every southwest block `rows > p, cols ≤ q`
/// vanishes, `r = rank_bound(w, p, q)`. These minors generate the ideal of
/// the Schubert variety, so this is membership in the closed cell as a scheme.
pub fn closed_cell_member(flag: &FlagOverRing, w: &Permutation) -> Result<bool> {
    let n = flag.n();
    check_size(n, w.n())?;
    let a = &flag.matrix;
    for p in 1..n {
        for q in 1..n {
            let r = rank_bound(w, p, q);
            let size = r + 1;
            if size > n - p || size > q {
                continue;
            }
            let rows: Vec<usize> = (p..n).collect();
            let cols: Vec<usize> = (0..q).collect();
            for rs in subsets(&rows, size) {
                for cs in subsets(&cols, size) {
                    let minor = ArtinMatrix::from_fn(a.algebra(), size, size, |i, j| {
                        a[(rs[i], cs[j])].clone()
                    });
                    if !minor.determinant()?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// True iff the flag has a basis `b_j = Σ_{i ≤ w(j)} r_ij e_i` with every
/// `r_{w(j),j}` a unit.
///
/// Columns are independent: `b_j = a_j + Σ_{k<j} c_k a_k` after rescaling by
/// the unit coefficient of `a_j`, so each column is an affine problem over `Q`.
pub fn open_cell_member(flag: &FlagOverRing, w: &Permutation) -> Result<bool> {
    let n = flag.n();
    check_size(n, w.n())?;
    let alg = flag.algebra();
    let d = alg.dim();
    let reg = flag.matrix.regular_representation();
    for j in 0..n {
        let wj = w.apply(j + 1);
        // Unknowns: the coefficients of c_k, k < j, flattened.
        let low: Vec<usize> = (wj * d..n * d).collect();
        let m = submatrix(&reg, &low, j * d);
        let rhs: Vec<Q> = low.iter().map(|&row| -reg[(row, j * d)].clone()).collect();
        let Some(x0) = m.solve(&rhs) else {
            return Ok(false);
        };
        // Residue of the entry in row w(j) is affine in the unknowns.
        let pivot_row = (wj - 1) * d;
        let residue = |x: &[Q], with_const: bool| -> Q {
            let mut s = if with_const {
                reg[(pivot_row, j * d)].clone()
            } else {
                Q::zero()
            };
            for (c, xc) in x.iter().enumerate() {
                if !xc.is_zero() {
                    s += &reg[(pivot_row, c)] * xc;
                }
            }
            s
        };
        let unit = !residue(&x0, true).is_zero()
            || m.kernel().iter().any(|k| !residue(k, false).is_zero());
        if !unit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `(F_j ∩ Fil_{w(j)}) / (F_j ∩ Fil_{w(j)-1})` is free of rank one
/// for every `j`.
pub fn subquotient_cell_test(flag: &FlagOverRing, w: &Permutation) -> Result<bool> {
    let n = flag.n();
    check_size(n, w.n())?;
    let alg = flag.algebra();
    let d = alg.dim();
    let reg = flag.matrix.regular_representation();
    let mult: Vec<QMatrix> = (1..d)
        .map(|k| {
            let block = alg.monomial(k).regular_representation();
            let mut big = QMatrix::zeros(n * d, n * d);
            for i in 0..n {
                for a in 0..d {
                    for b in 0..d {
                        big[(i * d + a, i * d + b)] = block[(a, b)].clone();
                    }
                }
            }
            big
        })
        .collect();
    for j in 1..=n {
        let wj = w.apply(j);
        let x = step_meet_fil(&reg, n, d, j, wj);
        let y = step_meet_fil(&reg, n, d, j, wj - 1);
        let (dx, dy) = (x.len(), y.len());
        if dx - dy != d {
            return Ok(false);
        }
        let mut gens = y;
        for m in &mult {
            gens.extend(x.iter().map(|v| m.mul_vec(v)));
        }
        if dx - span_dim(n * d, &gens) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A `Q`-basis of `F_j ∩ Fil_p` inside `Q^{n·d}`.
fn step_meet_fil(reg: &QMatrix, n: usize, d: usize, j: usize, p: usize) -> Vec<Vec<Q>> {
    let cols = j * d;
    let below: Vec<usize> = (p * d..n * d).collect();
    let kernel = submatrix(reg, &below, cols).kernel();
    let images: Vec<Vec<Q>> = kernel
        .iter()
        .map(|k| {
            (0..n * d)
                .map(|row| {
                    (0..cols)
                        .filter(|&c| !k[c].is_zero())
                        .fold(Q::zero(), |acc, c| acc + &reg[(row, c)] * &k[c])
                })
                .collect()
        })
        .collect();
    span_basis(n * d, &images)
}

fn submatrix(m: &QMatrix, rows: &[usize], cols: usize) -> QMatrix {
    let mut out = QMatrix::zeros(rows.len(), cols);
    for (i, &r) in rows.iter().enumerate() {
        for c in 0..cols {
            out[(i, c)] = m[(r, c)].clone();
        }
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the Zariski tangent space of the Schubert variety of `w` at
/// the fixed point of `tau`: the number of transpositions `t` with `t·tau ⪯ w`.
pub fn schubert_tangent_dim(w: &Permutation, tau: &Permutation) -> Result<usize> {
    if !bruhat_leq(tau, w)? {
        return Err(Error::Precondition(format!("{tau} is not below {w} in Bruhat order")));
    }
    let n = w.n();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if bruhat_leq(&tau.left_transpose(i, j), w)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Tangent dimension computed from the Jacobian of the rank-condition minors
/// in the chart `g = τ̇·u`, `u` lower unitriangular, at `u = 1`.
pub fn jacobian_oracle_tangent_dim(w: &Permutation, tau: &Permutation, bound: usize) -> Result<usize> {
    let n = w.n();
    check_size(n, tau.n())?;
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "oracle n",
            value: n,
            bound,
        });
    }
    if !bruhat_leq(tau, w)? {
        return Err(Error::Precondition(format!("{tau} is not below {w} in Bruhat order")));
    }
    let coords: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..r).map(move |c| (r, c))).collect();
    // Base point τ̇ and the derivative of g = τ̇(1 + x E_rc) in direction (r, c),
    // which is the unit vector at (τ(r), c).
    let base = |i: usize, j: usize| i64::from(tau.apply(j + 1) == i + 1);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for p in 1..n {
        for q in 1..n {
            let size = rank_bound(w, p, q) + 1;
            if size > n - p || size > q {
                continue;
            }
            let rr: Vec<usize> = (p..n).collect();
            let cc: Vec<usize> = (0..q).collect();
            for rs in subsets(&rr, size) {
                for cs in subsets(&cc, size) {
                    let mut grad = Vec::with_capacity(coords.len());
                    for &(r, c) in &coords {
                        let hot = (tau.apply(r + 1) - 1, c);
                        let entry = |i: usize, j: usize| Dual {
                            re: base(rs[i], cs[j]),
                            eps: i64::from((rs[i], cs[j]) == hot),
                        };
                        let det = leibniz(size, &entry);
                        debug_assert_eq!(det.re, 0, "fixed point off the variety");
                        grad.push(Q::from_integer(det.eps.into()));
                    }
                    if grad.iter().any(|g| !g.is_zero()) {
                        rows.push(grad);
                    }
                }
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { QMatrix::from_rows(rows).rank() };
    Ok(coords.len() - rank)
}

#[derive(Clone, Copy)]
struct Dual {
    re: i64,
    eps: i64,
}

fn leibniz(size: usize, entry: &dyn Fn(usize, usize) -> Dual) -> Dual {
    let mut total = Dual { re: 0, eps: 0 };
    for sigma in all_permutations(size) {
        let mut prod = Dual { re: 1, eps: 0 };
        for i in 0..size {
            let e = entry(i, sigma.apply(i + 1) - 1);
            prod = Dual {
                re: prod.re * e.re,
                eps: prod.re * e.eps + prod.eps * e.re,
            };
        }
        let sign = if sigma.length() % 2 == 0 { 1 } else { -1 };
        total.re += sign * prod.re;
        total.eps += sign * prod.eps;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentRow {
    pub w: Permutation,
    pub tau: Permutation,
    pub length: usize,
    pub dim: usize,
}

/// All pairs `tau ⪯ w` in `S_n` with their tangent dimensions, `w` major.
pub fn tangent_table(n: usize, oracle: bool) -> Result<Vec<TangentRow>> {
    let perms = all_permutations(n);
    let pairs: Vec<(Permutation, Permutation)> = perms
        .iter()
        .flat_map(|w| perms.iter().map(move |t| (w.clone(), t.clone())))
        .filter(|(w, t)| bruhat_leq(t, w).unwrap_or(false))
        .collect();
    pairs
        .into_par_iter()
        .map(|(w, tau)| {
            let dim = if oracle {
                jacobian_oracle_tangent_dim(&w, &tau, n.max(DEFAULT_ORACLE_BOUND))?
            } else {
                schubert_tangent_dim(&w, &tau)?
            };
            Ok(TangentRow {
                length: w.length(),
                w,
                tau,
                dim,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn tangent_at_the_singular_point_of_3412() {
        assert_eq!(schubert_tangent_dim(&p("3,4,1,2"), &p("1,2,3,4")).unwrap(), 5);
        assert_eq!(
            jacobian_oracle_tangent_dim(&p("3,4,1,2"), &p("1,2,3,4"), DEFAULT_ORACLE_BOUND).unwrap(),
            5
        );
        assert_eq!(schubert_tangent_dim(&p("1,3,2"), &p("3,1,2")).unwrap_err().kind(), "precondition");
    }

    #[test]
    fn oracle_trivial_cases() {
        for n in 1..=4 {
            let w0 = Permutation::longest(n);
            for tau in all_permutations(n) {
                let d = jacobian_oracle_tangent_dim(&w0, &tau, DEFAULT_ORACLE_BOUND).unwrap();
                assert_eq!(d, n * (n - 1) / 2);
            }
            let id = Permutation::identity(n);
            assert_eq!(jacobian_oracle_tangent_dim(&id, &id, DEFAULT_ORACLE_BOUND).unwrap(), 0);
        }
        assert_eq!(
            jacobian_oracle_tangent_dim(&Permutation::identity(6), &Permutation::identity(6), 5)
                .unwrap_err()
                .kind(),
            "bound_exceeded"
        );
    }

    #[test]
    fn table_agrees_with_oracle_for_small_n() {
        for n in 1..=3 {
            let fast = tangent_table(n, false).unwrap();
            let slow = tangent_table(n, true).unwrap();
            assert_eq!(fast, slow);
            for row in &fast {
                assert!(row.dim >= row.length);
                if row.w == row.tau {
                    assert_eq!(row.dim, row.length);
                }
            }
        }
    }

    #[test]
    fn identity_flag_cells() {
        let q = TruncatedAlgebra::rationals();
        let id = FlagOverRing::from_permutation(&q, &Permutation::identity(2));
        let s1 = Permutation::simple(2, 1);
        assert!(open_cell_member(&id, &Permutation::identity(2)).unwrap());
        assert!(!open_cell_member(&id, &s1).unwrap());
        assert!(closed_cell_member(&id, &s1).unwrap());
        assert!(subquotient_cell_test(&id, &Permutation::identity(2)).unwrap());
        assert!(!subquotient_cell_test(&id, &s1).unwrap());
    }

    #[test]
    fn fixed_points_lie_in_cells_below() {
        let q = TruncatedAlgebra::rationals();
        for n in 1..=3 {
            for v in all_permutations(n) {
                let flag = FlagOverRing::from_permutation(&q, &v);
                for w in all_permutations(n) {
                    assert_eq!(closed_cell_member(&flag, &w).unwrap(), bruhat_leq(&v, &w).unwrap());
                    assert_eq!(open_cell_member(&flag, &w).unwrap(), v == w);
                    assert_eq!(subquotient_cell_test(&flag, &w).unwrap(), v == w);
                }
            }
        }
    }

    #[test]
    fn dual_number_flag() {
        // Columns e_2 + εe_3, e_1, e_3.
        let a = TruncatedAlgebra::dual();
        let e = |s: &str| a.parse_elem(s).unwrap();
        let m = ArtinMatrix::from_rows(
            &a,
            vec![
                vec![e("0"), e("1"), e("0")],
                vec![e("1"), e("0"), e("0")],
                vec![e("e"), e("0"), e("1")],
            ],
        )
        .unwrap();
        let flag = FlagOverRing::new(m).unwrap();
        let open: Vec<String> = all_permutations(3)
            .into_iter()
            .filter(|w| open_cell_member(&flag, w).unwrap())
            .map(|w| w.to_string())
            .collect();
        let closed: Vec<String> = all_permutations(3)
            .into_iter()
            .filter(|w| closed_cell_member(&flag, w).unwrap())
            .map(|w| w.to_string())
            .collect();
        // The line is residually in Fil_2 but its e_3 coordinate is the
        // non-unit ε, so no open cell contains it.
        assert!(open.is_empty());
        assert_eq!(closed, vec!["3,1,2", "3,2,1"]);
        for w in all_permutations(3) {
            assert_eq!(
                subquotient_cell_test(&flag, &w).unwrap(),
                open_cell_member(&flag, &w).unwrap()
            );
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let q = TruncatedAlgebra::rationals();
        let m = ArtinMatrix::zeros(&q, 2, 2);
        assert_eq!(FlagOverRing::new(m).unwrap_err().kind(), "not_invertible");
    }
}
