use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{format_q, parse_q, Q};

/// `Q[x_1, ..., x_g] / (x_1^{m_1}, ..., x_g^{m_g})`, a local artinian
/// `Q`-algebra with the monomial basis. The maximal ideal is spanned by the
/// non-constant monomials.
#[derive(Clone)]
pub struct TruncatedAlgebra(Arc<Inner>);

struct Inner {
    names: Vec<String>,
    truncation: Vec<u32>,
    basis: Vec<Vec<u32>>,
    // mult[a][b] = index of basis[a] * basis[b], or None when it vanishes
    mult: Vec<Vec<Option<usize>>>,
}

impl TruncatedAlgebra {
    /// Builds the algebra with generators `names[g]` subject to `names[g]^truncation[g] = 0`.
    pub fn new(names: Vec<String>, truncation: Vec<u32>) -> Result<Self> {
        if names.len() != truncation.len() {
            return Err(Error::Precondition("one truncation exponent per generator".into()));
        }
        if truncation.iter().any(|&m| m == 0) {
            return Err(Error::Precondition("truncation exponents must be positive".into()));
        }
        for (k, name) in names.iter().enumerate() {
            let ok = !name.is_empty()
                && name.chars().all(|c| c.is_ascii_alphabetic() || c == '_')
                && !names[..k].contains(name);
            if !ok {
                return Err(Error::Precondition(format!("bad generator name {name:?}")));
            }
        }
        let mut basis: Vec<Vec<u32>> = vec![Vec::new()];
        for &m in &truncation {
            basis = basis
                .into_iter()
                .flat_map(|mono| {
                    (0..m).map(move |e| {
                        let mut next = mono.clone();
                        next.push(e);
                        next
                    })
                })
                .collect();
        }
        // Graded order: constants first, then by total degree, then lexicographic.
        basis.sort_by_key(|mono| (mono.iter().sum::<u32>(), mono.clone()));
        let index = |mono: &[u32]| basis.iter().position(|b| b == mono);
        let mult = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        if prod.iter().zip(&truncation).any(|(e, m)| e >= m) {
                            None
                        } else {
                            index(&prod)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedAlgebra(Arc::new(Inner {
            names,
            truncation,
            basis,
            mult,
        })))
    }

    /// The base field `Q` itself.
    pub fn rationals() -> Self {
        Self::new(Vec::new(), Vec::new()).expect("valid")
    }

    /// `Q[e]/(e^m)`.
    pub fn truncated(m: u32) -> Self {
        Self::new(vec!["e".into()], vec![m]).expect("valid")
    }

    /// Dual numbers `Q[e]/(e^2)`.
    pub fn dual() -> Self {
        Self::truncated(2)
    }

    /// Parses `"e^2"`, `"e^3,f^2"`; `"Q"` or the empty string give the rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "Q" {
            return Ok(Self::rationals());
        }
        let mut names = Vec::new();
        let mut trunc = Vec::new();
        for part in s.split(',') {
            let (name, exp) = part
                .trim()
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected generator^exponent, got {part:?}")))?;
            names.push(name.trim().to_string());
            trunc.push(
                exp.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?,
            );
        }
        Self::new(names, trunc)
    }

    /// Dimension over `Q`.
    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.0.names
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.0.basis
    }

    /// Smallest `N` with `m^N = 0` for the maximal ideal `m`.
    pub fn nilpotency_index(&self) -> u32 {
        self.0.truncation.iter().map(|m| m - 1).sum::<u32>() + 1
    }

    pub fn zero(&self) -> Elem {
        Elem {
            alg: self.clone(),
            c: vec![Q::zero(); self.dim()],
        }
    }

    pub fn one(&self) -> Elem {
        self.constant(Q::one())
    }

    pub fn constant(&self, x: Q) -> Elem {
        let mut e = self.zero();
        e.c[0] = x;
        e
    }

    pub fn from_coeffs(&self, c: Vec<Q>) -> Result<Elem> {
        if c.len() != self.dim() {
            return Err(Error::SizeMismatch {
                expected: self.dim(),
                found: c.len(),
            });
        }
        Ok(Elem {
            alg: self.clone(),
            c,
        })
    }

    /// The basis monomial with index `k`.
    pub fn monomial(&self, k: usize) -> Elem {
        let mut e = self.zero();
        e.c[k] = Q::one();
        e
    }

    /// The `g`-th generator as an element (zero if its truncation is 1).
    pub fn generator(&self, g: usize) -> Elem {
        let mut mono = vec![0; self.0.names.len()];
        mono[g] = 1;
        match self.0.basis.iter().position(|b| *b == mono) {
            Some(k) => self.monomial(k),
            None => self.zero(),
        }
    }

    fn monomial_name(&self, k: usize) -> String {
        let parts: Vec<String> = self.0.basis[k]
            .iter()
            .zip(&self.0.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, name)| if *e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        parts.join("*")
    }

    /// Parses `"3/2 + 1/4*e + 0*e^2"`, `"1 - e"`, `"-e*f"`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let bad = || Error::Parse(format!("malformed algebra element {s:?}"));
        let mut out = self.zero();
        // Split into signed terms, keeping the sign of binary +/- operators.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for ch in s.chars() {
            let prev_is_operand = !cur.trim().is_empty() && !cur.trim_end().ends_with(['*', '^', '/']);
            match ch {
                '+' | '-' if prev_is_operand => {
                    terms.push((negative, std::mem::take(&mut cur)));
                    negative = ch == '-';
                }
                '-' if cur.trim().is_empty() => negative = !negative,
                '+' if cur.trim().is_empty() => {}
                _ => cur.push(ch),
            }
        }
        terms.push((negative, cur));
        for (neg, term) in terms {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let mut coeff = Q::one();
            let mut mono = vec![0u32; self.0.names.len()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_q(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                let g = self.0.names.iter().position(|x| x == name).ok_or_else(bad)?;
                mono[g] += exp;
            }
            if neg {
                coeff = -coeff;
            }
            if mono.iter().zip(&self.0.truncation).any(|(e, m)| e >= m) {
                continue;
            }
            let k = self.0.basis.iter().position(|b| *b == mono).ok_or_else(bad)?;
            out.c[k] += coeff;
        }
        Ok(out)
    }

    /// Whether two handles describe the same algebra.
    pub fn same(&self, other: &TruncatedAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.names == other.0.names && self.0.truncation == other.0.truncation)
    }
}

impl fmt::Debug for TruncatedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedAlgebra({self})")
    }
}

impl fmt::Display for TruncatedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.names.is_empty() {
            return f.write_str("Q");
        }
        let parts: Vec<String> = self
            .0
            .names
            .iter()
            .zip(&self.0.truncation)
            .map(|(n, m)| format!("{n}^{m}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl PartialEq for TruncatedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for TruncatedAlgebra {}

/// An element of a [`TruncatedAlgebra`], stored as coordinates in the monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    alg: TruncatedAlgebra,
    c: Vec<Q>,
}

impl Elem {
    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    /// Image in the residue field `Q`.
    pub fn residue(&self) -> &Q {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Units are exactly the elements with non-zero constant term.
    pub fn is_unit(&self) -> bool {
        !self.c[0].is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.c[0].is_zero()
    }

    pub fn scale(&self, x: &Q) -> Elem {
        Elem {
            alg: self.alg.clone(),
            c: self.c.iter().map(|a| a * x).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Elem {
        (0..k).fold(self.alg.one(), |acc, _| &acc * self)
    }

    /// Inverse of a unit: `u = c(1 + n)` with `n` nilpotent, so `u^{-1} = c^{-1} Σ (-n)^k`.
    pub fn inverse(&self) -> Result<Elem> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let c0 = self.c[0].clone();
        let nil = (self - &self.alg.constant(c0.clone())).scale(&c0.recip());
        let neg = -&nil;
        let mut term = self.alg.one();
        let mut sum = self.alg.one();
        for _ in 1..self.alg.nilpotency_index() {
            term = &term * &neg;
            sum = &sum + &term;
        }
        Ok(sum.scale(&c0.recip()))
    }

    /// Matrix of multiplication by `self` in the monomial basis.
    pub fn regular_representation(&self) -> QMatrix {
        let d = self.alg.dim();
        let mut m = QMatrix::zeros(d, d);
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for b in 0..d {
                if let Some(k) = self.alg.0.mult[a][b] {
                    m[(k, b)] += x;
                }
            }
        }
        m
    }

    fn check_same(&self, other: &Elem) {
        assert!(self.alg.same(&other.alg), "elements of different algebras");
    }
}

impl<'a> std::ops::Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.check_same(rhs);
        Elem {
            alg: self.alg.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> std::ops::Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.check_same(rhs);
        Elem {
            alg: self.alg.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> std::ops::Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.check_same(rhs);
        let mut out = self.alg.zero();
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.alg.0.mult[a][b] {
                    out.c[k] += x * y;
                }
            }
        }
        out
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem {
            alg: self.alg.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Elem {
    /// Every basis coefficient is printed, constant term first:
    /// `3/2 + 1/4*e + 0*e^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .map(|(k, x)| {
                if k == 0 {
                    format_q(x)
                } else {
                    format!("{}*{}", format_q(x), self.alg.monomial_name(k))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}
