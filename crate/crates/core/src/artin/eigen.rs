//! Eigen-decompositions over local artinian algebras.
//!
//! If `(f - λ_1)···(f - λ_m) = 0` and the differences `λ_i - λ_j` are units,
//! the module splits as the direct sum of the `ker(f - λ_i)`. The projectors
//! come from polynomials `P_i` with `Σ_i P_i(t) ∏_{j≠i}(t - λ_j) = 1`, built
//! inductively on `m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebra::{Elem, TruncatedAlgebra};
use super::matrix::{flatten, module_span, solve, ArtinMatrix, ArtinVector};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::span_dim;
use crate::rational::Q;

fn check_unit_differences(lams: &[Elem]) -> Result<()> {
    for (i, a) in lams.iter().enumerate() {
        for b in &lams[i + 1..] {
            let d = a - b;
            if !d.is_unit() {
                return Err(Error::NotUnit(format!("difference of eigenvalues {a} and {b}")));
            }
        }
    }
    Ok(())
}

/// Polynomials `P_1..P_m` with `Σ P_i(t) ∏_{j≠i}(t - λ_j) = 1`.
///
/// Inductive step: with `l = ∏_{i<m}(λ_m - λ_i)` and
/// `∏_{i<m}(t - λ_i) = Q(t)(t - λ_m) + l`, replace `P_i` by `-l^{-1} P_i Q`
/// for `i < m` and set `P_m = l^{-1}`.
pub fn bezout_chain(lams: &[Elem]) -> Result<Vec<Poly>> {
    let Some(first) = lams.first() else {
        return Ok(Vec::new());
    };
    let alg = first.algebra().clone();
    check_unit_differences(lams)?;
    let mut ps = vec![Poly::constant(alg.one())];
    for m in 1..lams.len() {
        let lm = &lams[m];
        let prod = Poly::from_roots(&alg, &lams[..m]);
        let (quot, rem) = prod.div_linear(lm);
        let l = lams[..m].iter().fold(alg.one(), |acc, li| &acc * &(lm - li));
        debug_assert_eq!(rem, l);
        let l_inv = l.inverse()?;
        let factor = quot.scale(&-&l_inv);
        ps = ps.iter().map(|p| p.mul(&factor)).collect();
        ps.push(Poly::constant(l_inv));
    }
    Ok(ps)
}

/// `Σ_i P_i(t) ∏_{j≠i}(t - λ_j)`; equals `1` for a valid Bézout chain.
pub fn bezout_sum(lams: &[Elem], ps: &[Poly]) -> Poly {
    let alg = lams[0].algebra().clone();
    ps.iter()
        .enumerate()
        .fold(Poly::zero(&alg), |acc, (i, p)| {
            let others: Vec<Elem> = lams
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, l)| l.clone())
                .collect();
            acc.add(&p.mul(&Poly::from_roots(&alg, &others)))
        })
}

/// `∏_{j≠i}(f - λ_j) · P_i(f)`: the projector onto `ker(f - λ_i)`.
fn projector(f: &ArtinMatrix, lams: &[Elem], ps: &[Poly], i: usize) -> Result<ArtinMatrix> {
    let mut e = ps[i].eval_matrix(f)?;
    for (j, lj) in lams.iter().enumerate() {
        if j != i {
            e = f.shift(lj).mul(&e)?;
        }
    }
    Ok(e)
}

fn product_vanishes(f: &ArtinMatrix, lams: &[Elem]) -> Result<bool> {
    let n = f.rows();
    let mut acc = ArtinMatrix::identity(f.algebra(), n);
    for l in lams {
        acc = f.shift(l).mul(&acc)?;
    }
    Ok(acc.is_zero())
}

fn check_square(f: &ArtinMatrix) -> Result<()> {
    if f.is_square() {
        Ok(())
    } else {
        Err(Error::Precondition("endomorphism must be a square matrix".into()))
    }
}

/// One summand `ker(f - λ)` of an eigen-decomposition.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub eigenvalue: Elem,
    /// A minimal set of generators over the algebra.
    pub generators: Vec<ArtinVector>,
    /// Dimension over `Q`.
    pub q_dim: usize,
}

/// Splits `A^n` into the eigenspaces of `f` for `λ_1..λ_m`.
pub fn eigen_decompose(f: &ArtinMatrix, lams: &[Elem]) -> Result<Vec<Eigenspace>> {
    check_square(f)?;
    check_unit_differences(lams)?;
    if !product_vanishes(f, lams)? {
        return Err(Error::Precondition(
            "(f - λ_1)···(f - λ_m) is not zero".into(),
        ));
    }
    let ps = bezout_chain(lams)?;
    let alg = f.algebra();
    let n = f.rows();
    lams.iter()
        .enumerate()
        .map(|(i, lam)| {
            let e = projector(f, lams, &ps, i)?;
            let gens = minimal_generators(alg, n, e.columns());
            let q_dim = span_dim(n * alg.dim(), &module_span(alg, &gens));
            Ok(Eigenspace {
                eigenvalue: lam.clone(),
                generators: gens,
                q_dim,
            })
        })
        .collect()
}

/// Components `v_i = ∏_{j≠i}(f - λ_j) P_i(f) v` of `v`; they sum to `v`.
pub fn project(f: &ArtinMatrix, lams: &[Elem], v: &[Elem]) -> Result<Vec<ArtinVector>> {
    check_square(f)?;
    let ps = bezout_chain(lams)?;
    (0..lams.len())
        .map(|i| projector(f, lams, &ps, i)?.mul_vec(v))
        .collect()
}

/// Drops generators that are redundant modulo `m·M` (Nakayama).
fn minimal_generators(alg: &TruncatedAlgebra, n: usize, gens: Vec<ArtinVector>) -> Vec<ArtinVector> {
    let len = n * alg.dim();
    let m_times: Vec<Vec<Q>> = gens
        .iter()
        .flat_map(|g| {
            (1..alg.dim()).map(move |k| {
                let mono = alg.monomial(k);
                flatten(&g.iter().map(|x| &mono * x).collect::<Vec<_>>())
            })
        })
        .collect();
    let mut kept: Vec<ArtinVector> = Vec::new();
    let mut span = m_times;
    let mut dim = span_dim(len, &span);
    for g in gens {
        let mut trial = span.clone();
        trial.push(flatten(&g));
        let d = span_dim(len, &trial);
        if d > dim {
            dim = d;
            span = trial;
            kept.push(g);
        }
    }
    kept
}

fn residual_eigenvector(f: &ArtinMatrix, lam: &Q) -> Result<Vec<Q>> {
    let n = f.rows();
    let mut m = f.residue();
    for i in 0..n {
        m[(i, i)] -= lam;
    }
    let ker = m.kernel();
    match ker.len() {
        1 => Ok(ker.into_iter().next().unwrap()),
        0 => Err(Error::Precondition(format!("{lam} is not a residual eigenvalue"))),
        _ => Err(Error::Precondition(format!(
            "residual eigenvalue {lam} is not simple"
        ))),
    }
}

fn check_residually_distinct(lams: &[Elem]) -> Result<()> {
    for (i, a) in lams.iter().enumerate() {
        for b in &lams[i + 1..] {
            if a.residue() == b.residue() {
                return Err(Error::Precondition(format!(
                    "eigenvalues {a} and {b} are not residually distinct"
                )));
            }
        }
    }
    Ok(())
}

/// An invertible matrix whose `i`-th column generates `ker(f - λ_i)`.
///
/// Each residual eigenvector is lifted to a constant vector and pushed into
/// the `i`-th eigenspace by the projector, which keeps its residue.
pub fn eigen_basis(f: &ArtinMatrix, lams: &[Elem]) -> Result<ArtinMatrix> {
    check_square(f)?;
    let n = f.rows();
    if lams.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lams.len(),
        });
    }
    check_residually_distinct(lams)?;
    let alg = f.algebra();
    if f.char_poly()? != Poly::from_roots(alg, lams) {
        return Err(Error::Precondition(
            "characteristic polynomial is not the product of (t - λ_i)".into(),
        ));
    }
    let ps = bezout_chain(lams)?;
    let columns = lams
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            let v: ArtinVector = residual_eigenvector(f, lam.residue())?
                .into_iter()
                .map(|x| alg.constant(x))
                .collect();
            projector(f, lams, &ps, i)?.mul_vec(&v)
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = ArtinMatrix::from_columns(alg, &columns)?;
    debug_assert!(basis.is_invertible());
    Ok(basis)
}

/// Eigenvalues of `f` when its residual characteristic polynomial splits over
/// `Q` with simple roots: residual roots by the rational root test, lifted by
/// Newton iteration on the characteristic polynomial. Sorted by residue.
pub fn eigenvalues(f: &ArtinMatrix) -> Result<Vec<Elem>> {
    check_square(f)?;
    let alg = f.algebra();
    let cp = f.char_poly()?;
    let residual: Vec<Q> = cp.coeffs().iter().map(|c| c.residue().clone()).collect();
    let mut roots = rational_roots(&residual)?;
    roots.sort();
    roots.dedup();
    if roots.len() != f.rows() {
        return Err(Error::Precondition(
            "residual characteristic polynomial does not split into distinct rational roots".into(),
        ));
    }
    let deriv = cp.derivative();
    roots
        .into_iter()
        .map(|r| {
            let mut lam = alg.constant(r);
            for _ in 0..alg.nilpotency_index() {
                let step = &cp.eval(&lam) * &deriv.eval(&lam).inverse()?;
                if step.is_zero() {
                    break;
                }
                lam = &lam - &step;
            }
            debug_assert!(cp.eval(&lam).is_zero());
            Ok(lam)
        })
        .collect()
}

/// Distinct rational roots of a polynomial with rational coefficients
/// (lowest degree first).
fn rational_roots(coeffs: &[Q]) -> Result<Vec<Q>> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.is_empty() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    if ints[0].is_zero() {
        roots.push(Q::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() == 1 {
        return Ok(roots);
    }
    let too_big = || Error::Precondition("coefficients too large for the rational root search".into());
    let a0 = ints[0].abs().to_u64().ok_or_else(too_big)?;
    let an = ints.last().unwrap().abs().to_u64().ok_or_else(too_big)?;
    let eval = |x: &Q| {
        ints.iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
    };
    for p in divisors(a0) {
        for qd in divisors(an) {
            for sign in [1i64, -1] {
                let cand = Q::new(BigInt::from(p) * sign, BigInt::from(qd));
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            if d * d != x {
                out.push(x / d);
            }
        }
        d += 1;
    }
    out
}

/// An `f`-stable complete flag given by an ordered eigenbasis.
#[derive(Clone, Debug)]
pub struct Refinement {
    /// Step `i` of the flag is spanned by the first `i` columns.
    pub basis: ArtinMatrix,
    pub eigenvalues: Vec<Elem>,
}

impl Refinement {
    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    /// Whether `f` maps every step of the flag into itself.
    pub fn is_stable_under(&self, f: &ArtinMatrix) -> Result<bool> {
        is_stable_flag(f, &self.basis)
    }

    pub fn same_flag_as(&self, other: &ArtinMatrix) -> Result<bool> {
        flags_equal(&self.basis, other)
    }
}

/// The refinement attached to an ordering of the eigenvalues: the flag of
/// prefixes of the eigenbasis in that order.
pub fn refinement_from_eigenvalues(f: &ArtinMatrix, ordered_lams: &[Elem]) -> Result<Refinement> {
    let basis = eigen_basis(f, ordered_lams)?;
    Ok(Refinement {
        basis,
        eigenvalues: ordered_lams.to_vec(),
    })
}

/// Two bases span the same complete flag iff `B^{-1} C` is upper triangular.
pub fn flags_equal(b: &ArtinMatrix, c: &ArtinMatrix) -> Result<bool> {
    let t = b.inverse()?.mul(c)?;
    Ok((0..t.rows()).all(|i| (0..i).all(|j| t[(i, j)].is_zero())))
}

/// Whether `v` lies in the submodule spanned by the given columns.
pub fn in_span(columns: &[ArtinVector], v: &[Elem]) -> Result<bool> {
    let Some(first) = columns.first() else {
        return Ok(v.iter().all(Elem::is_zero));
    };
    let alg = first[0].algebra().clone();
    let m = ArtinMatrix::from_columns(&alg, columns)?;
    Ok(solve(&m, v)?.is_some())
}

/// `f(F_k) ⊆ F_k` for every step `F_k` spanned by the first `k` columns of `basis`.
pub fn is_stable_flag(f: &ArtinMatrix, basis: &ArtinMatrix) -> Result<bool> {
    let cols = basis.columns();
    for k in 0..cols.len() {
        let image = f.mul_vec(&cols[k])?;
        if !in_span(&cols[..=k], &image)? {
            return Ok(false);
        }
    }
    Ok(true)
}
