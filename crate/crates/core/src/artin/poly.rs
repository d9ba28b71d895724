use std::fmt;

use super::algebra::{Elem, TruncatedAlgebra};
use super::matrix::ArtinMatrix;
use crate::error::Result;

/// A polynomial in one variable with coefficients in a [`TruncatedAlgebra`],
/// stored lowest degree first with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    alg: TruncatedAlgebra,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(alg: &TruncatedAlgebra, coeffs: Vec<Elem>) -> Self {
        let mut p = Poly {
            alg: alg.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(alg: &TruncatedAlgebra) -> Self {
        Self::new(alg, Vec::new())
    }

    pub fn constant(c: Elem) -> Self {
        let alg = c.algebra().clone();
        Self::new(&alg, vec![c])
    }

    /// `t - root`.
    pub fn linear(root: &Elem) -> Self {
        let alg = root.algebra().clone();
        Self::new(&alg, vec![-root, alg.one()])
    }

    /// `∏ (t - root_i)`.
    pub fn from_roots(alg: &TruncatedAlgebra, roots: &[Elem]) -> Self {
        roots
            .iter()
            .fold(Self::constant(alg.one()), |acc, r| acc.mul(&Self::linear(r)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Elem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.alg.zero())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.alg, (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.alg, (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.alg);
        }
        let mut out = vec![self.alg.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] = &out[a + b] + &(x * y);
            }
        }
        Poly::new(&self.alg, out)
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(&self.alg, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Synthetic division by `t - root`: returns `(q, r)` with `self = q·(t - root) + r`.
    pub fn div_linear(&self, root: &Elem) -> (Poly, Elem) {
        let Some(deg) = self.degree() else {
            return (Poly::zero(&self.alg), self.alg.zero());
        };
        let mut quot = vec![self.alg.zero(); deg];
        let mut carry = self.alg.zero();
        for k in (0..=deg).rev() {
            let cur = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                return (Poly::new(&self.alg, quot), cur);
            }
            quot[k - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.alg.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, f: &ArtinMatrix) -> Result<ArtinMatrix> {
        let n = f.rows();
        let mut acc = ArtinMatrix::zeros(&self.alg, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f)?;
            for i in 0..n {
                acc[(i, i)] = &acc[(i, i)] + c;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            &self.alg,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&crate::rational::q(k as i64)))
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_linear_factor() {
        let a = TruncatedAlgebra::truncated(3);
        let r1 = a.parse_elem("1 + e").unwrap();
        let r2 = a.parse_elem("-2 + e^2").unwrap();
        let p = Poly::from_roots(&a, &[r1.clone(), r2.clone()]);
        let (quot, rem) = p.div_linear(&r2);
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::linear(&r1));
        let (q2, rem2) = quot.div_linear(&r2);
        assert_eq!(rem2, &r2 - &r1);
        assert_eq!(q2, Poly::constant(a.one()));
        assert!(p.eval(&r1).is_zero());
    }

    #[test]
    fn derivative_of_product() {
        let a = TruncatedAlgebra::dual();
        let r = a.parse_elem("3 + e").unwrap();
        let sq = Poly::from_roots(&a, &[r.clone(), r.clone()]);
        assert!(sq.derivative().eval(&r).is_zero());
    }
}
