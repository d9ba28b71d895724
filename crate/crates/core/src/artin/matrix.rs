use std::fmt;

use num_traits::Zero;

use super::algebra::{Elem, TruncatedAlgebra};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{q, Q};

/// A matrix with entries in a [`TruncatedAlgebra`].
#[derive(Clone, PartialEq, Eq)]
pub struct ArtinMatrix {
    alg: TruncatedAlgebra,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// A column vector over the algebra.
pub type ArtinVector = Vec<Elem>;

impl ArtinMatrix {
    pub fn zeros(alg: &TruncatedAlgebra, rows: usize, cols: usize) -> Self {
        ArtinMatrix {
            alg: alg.clone(),
            rows,
            cols,
            data: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &TruncatedAlgebra, n: usize) -> Self {
        Self::diagonal(alg, &vec![alg.one(); n])
    }

    pub fn diagonal(alg: &TruncatedAlgebra, diag: &[Elem]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(alg, n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn from_fn(
        alg: &TruncatedAlgebra,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ArtinMatrix {
            alg: alg.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(alg: &TruncatedAlgebra, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|x| !x.algebra().same(alg)) {
            return Err(Error::Precondition("entries from a different algebra".into()));
        }
        Ok(ArtinMatrix {
            alg: alg.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(alg: &TruncatedAlgebra, columns: &[ArtinVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Precondition("columns of unequal length".into()));
        }
        Ok(Self::from_fn(alg, rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Embeds a rational matrix as constants.
    pub fn from_rational(alg: &TruncatedAlgebra, m: &QMatrix) -> Self {
        Self::from_fn(alg, m.rows(), m.cols(), |i, j| alg.constant(m[(i, j)].clone()))
    }

    /// Parses a JSON nested array of element strings.
    pub fn from_json(alg: &TruncatedAlgebra, value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("matrix must be a JSON array of arrays of strings or numbers".into());
        let rows = value.as_array().ok_or_else(bad)?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => alg.parse_elem(s),
                        serde_json::Value::Number(num) => alg.parse_elem(&num.to_string()),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(alg, rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols)
                            .map(|j| serde_json::Value::String(self[(i, j)].to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> ArtinVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<ArtinVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> ArtinMatrix {
        Self::from_fn(&self.alg, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise residue modulo the maximal ideal.
    pub fn residue(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].residue().clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &ArtinMatrix) -> Result<ArtinMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(&self.alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<ArtinVector> {
        if self.cols != v.len() {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.alg.zero(), |acc, k| &acc + &(&self[(i, k)] * &v[k]))
            })
            .collect())
    }

    pub fn add(&self, other: &ArtinMatrix) -> Result<ArtinMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ArtinMatrix) -> Result<ArtinMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ArtinMatrix, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<ArtinMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, x: &Elem) -> ArtinMatrix {
        ArtinMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * x).collect(),
        }
    }

    /// `self - λ·I`.
    pub fn shift(&self, lam: &Elem) -> ArtinMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - lam;
        }
        m
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows.min(self.cols)).fold(self.alg.zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    /// The `Q`-linear map `Q^{cols·d} → Q^{rows·d}` given by the matrix, with
    /// coordinate `(i, b)` at index `i·d + b`.
    pub fn regular_representation(&self) -> QMatrix {
        let d = self.alg.dim();
        let mut out = QMatrix::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let block = x.regular_representation();
                for a in 0..d {
                    for b in 0..d {
                        out[(i * d + a, j * d + b)] = block[(a, b)].clone();
                    }
                }
            }
        }
        out
    }

    /// Characteristic polynomial `det(t·I - self)` by the Faddeev–LeVerrier
    /// recursion, valid over any commutative `Q`-algebra.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Precondition("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![self.alg.zero(); n + 1];
        coeffs[n] = self.alg.one();
        let mut m = Self::zeros(&self.alg, n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul(&m)?;
            for i in 0..n {
                next[(i, i)] = &next[(i, i)] + &coeffs[n - k + 1];
            }
            m = next;
            let tr = self.mul(&m)?.trace();
            coeffs[n - k] = tr.scale(&-(q(k as i64).recip()));
        }
        Ok(Poly::new(&self.alg, coeffs))
    }

    pub fn determinant(&self) -> Result<Elem> {
        let cp = self.char_poly()?;
        let c0 = cp.coeff(0);
        Ok(if self.rows % 2 == 0 { c0 } else { -&c0 })
    }

    /// Invertible iff the residue matrix is invertible.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.residue().determinant().is_zero()
    }

    /// Gauss–Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<ArtinMatrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(&self.alg, n);
        for c in 0..n {
            let p = (c..n).find(|&i| a[(i, c)].is_unit()).ok_or(Error::NotInvertible)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pinv = a[(c, c)].inverse()?;
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone();
                a.axpy_row(i, c, &factor);
                inv.axpy_row(i, c, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, x: &Elem) {
        for j in 0..self.cols {
            self[(r, j)] = &self[(r, j)] * x;
        }
    }

    /// row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &Elem) {
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] = &self[(target, j)] - &delta;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ArtinMatrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ArtinMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ArtinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ArtinMatrix over {} [", self.alg)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Flattens a vector over the algebra into `Q^{n·d}`.
pub fn flatten(v: &[Elem]) -> Vec<Q> {
    v.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
}

/// Inverse of [`flatten`].
pub fn unflatten(alg: &TruncatedAlgebra, coords: &[Q]) -> ArtinVector {
    coords
        .chunks(alg.dim())
        .map(|c| alg.from_coeffs(c.to_vec()).expect("chunk of algebra dimension"))
        .collect()
}

/// The `Q`-span of the `A`-module generated by `gens`, as flattened vectors.
pub fn module_span(alg: &TruncatedAlgebra, gens: &[ArtinVector]) -> Vec<Vec<Q>> {
    gens.iter()
        .flat_map(|g| {
            (0..alg.dim()).map(move |k| {
                let m = alg.monomial(k);
                flatten(&g.iter().map(|x| &m * x).collect::<Vec<_>>())
            })
        })
        .collect()
}

/// Solves `M x = b` over the algebra; `None` when no solution exists.
pub fn solve(m: &ArtinMatrix, b: &[Elem]) -> Result<Option<ArtinVector>> {
    if b.len() != m.rows() {
        return Err(Error::SizeMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let reg = m.regular_representation();
    Ok(reg.solve(&flatten(b)).map(|x| unflatten(m.algebra(), &x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_matrix(rows: &[&[&str]]) -> ArtinMatrix {
        let a = TruncatedAlgebra::dual();
        ArtinMatrix::from_rows(
            &a,
            rows.iter()
                .map(|r| r.iter().map(|s| a.parse_elem(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let m = dual_matrix(&[&["1 + e", "2"], &["e", "3"]]);
        // (1+e)*3 - 2e = 3 + e
        assert_eq!(m.determinant().unwrap(), m.algebra().parse_elem("3 + e").unwrap());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ArtinMatrix::identity(m.algebra(), 2));
        let unipotent = dual_matrix(&[&["1", "e"], &["1", "1 + e"]]);
        assert!(unipotent.is_invertible());
        assert!(!dual_matrix(&[&["e", "1"], &["0", "e"]]).is_invertible());
        let nil = dual_matrix(&[&["e", "0"], &["0", "1"]]);
        assert!(!nil.is_invertible());
        assert!(matches!(nil.inverse(), Err(Error::NotInvertible)));
        assert_eq!(nil.determinant().unwrap(), nil.algebra().parse_elem("e").unwrap());
    }

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        let m = dual_matrix(&[&["1 + e", "2", "0"], &["e", "3", "1"], &["1", "-e", "2"]]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp.degree(), Some(3));
        assert!(cp.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn regular_representation_matches_product() {
        let m = dual_matrix(&[&["1 + e", "2"], &["e", "3 - 2*e"]]);
        let a = m.algebra().clone();
        let v = vec![a.parse_elem("1/2 + e").unwrap(), a.parse_elem("-1").unwrap()];
        let direct = flatten(&m.mul_vec(&v).unwrap());
        assert_eq!(m.regular_representation().mul_vec(&flatten(&v)), direct);
        let x = solve(&m, &m.mul_vec(&v).unwrap()).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), m.mul_vec(&v).unwrap());
    }

    #[test]
    fn solve_detects_inconsistency() {
        // e * x = 1 has no solution.
        let m = dual_matrix(&[&["e"]]);
        let one = m.algebra().one();
        assert!(solve(&m, &[one]).unwrap().is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = dual_matrix(&[&["1 + e", "2"], &["e", "3"]]);
        let back = ArtinMatrix::from_json(m.algebra(), &m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
