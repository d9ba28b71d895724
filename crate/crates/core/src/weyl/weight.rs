use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::perm::{MultiPermutation, Permutation, Root};
use crate::error::{check_size, Error, Result};
use crate::rational::{format_q, parse_q, q, q_frac, Q};

/// An element of `(Q^n)^Σ`, indexed `[tau][i]` with `i` 0-based in storage.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    entries: Vec<Vec<Q>>,
}

impl WeightVector {
    pub fn new(entries: Vec<Vec<Q>>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::Precondition("a weight needs sigma >= 1".into()));
        };
        let n = first.len();
        for row in &entries {
            check_size(n, row.len())?;
        }
        Ok(WeightVector { entries })
    }

    pub fn from_integers(entries: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|row| row.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize, sigma: usize) -> Self {
        WeightVector {
            entries: vec![vec![Q::zero(); n]; sigma],
        }
    }

    pub fn n(&self) -> usize {
        self.entries[0].len()
    }

    pub fn sigma(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Q>] {
        &self.entries
    }

    pub fn component(&self, tau: usize) -> &[Q] {
        &self.entries[tau]
    }

    /// Entry `(tau, i)` with `i` 1-based.
    pub fn get(&self, tau: usize, i: usize) -> &Q {
        &self.entries[tau][i - 1]
    }

    pub fn set(&mut self, tau: usize, i: usize, value: Q) {
        self.entries[tau][i - 1] = value;
    }

    fn check_shape(&self, other: &WeightVector) -> Result<()> {
        check_size(self.sigma(), other.sigma())?;
        check_size(self.n(), other.n())
    }

    pub fn add(&self, other: &WeightVector) -> Result<WeightVector> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &WeightVector) -> Result<WeightVector> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &WeightVector, f: impl Fn(&Q, &Q) -> Q) -> WeightVector {
        WeightVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_integer())
    }

    /// Plain (linear) action: `(w λ)_i = λ_{w^{-1}(i)}`.
    pub fn permuted(&self, w: &MultiPermutation) -> Result<WeightVector> {
        check_size(self.sigma(), w.sigma())?;
        check_size(self.n(), w.n())?;
        let entries = self
            .entries
            .iter()
            .zip(w.components())
            .map(|(row, wt)| {
                let inv = wt.inverse();
                (1..=row.len()).map(|i| row[inv.apply(i) - 1].clone()).collect()
            })
            .collect();
        Ok(WeightVector { entries })
    }

    /// Parses `"1/2,-1/2;0,3"`: components separated by `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .split(';')
            .map(|row| row.split(',').map(parse_q).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(format_q).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(format_q).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        WeightVector::new(entries).map_err(serde::de::Error::custom)
    }
}

/// The special weight `ϖ`, with entry `(n+1)/2 - i` at every `(tau, i)`.
pub fn special_weight(n: usize, sigma: usize) -> WeightVector {
    let row: Vec<Q> = (1..=n)
        .map(|i| q_frac(n as i64 + 1, 2) - q(i as i64))
        .collect();
    WeightVector {
        entries: vec![row; sigma],
    }
}

/// Dot action via the shifted linear action `w(λ + ϖ) - ϖ`.
pub fn dot_action_shifted(w: &MultiPermutation, lam: &WeightVector) -> Result<WeightVector> {
    let rho = special_weight(lam.n(), lam.sigma());
    lam.add(&rho)?.permuted(w)?.sub(&rho)
}

/// Dot action by its closed form `(w·λ)_{τ,i} = λ_{τ,w_τ^{-1}(i)} + i - w_τ^{-1}(i)`.
pub fn dot_action(w: &MultiPermutation, lam: &WeightVector) -> Result<WeightVector> {
    check_size(lam.sigma(), w.sigma())?;
    check_size(lam.n(), w.n())?;
    let entries: Vec<Vec<Q>> = lam
        .entries
        .iter()
        .zip(w.components())
        .map(|(row, wt)| dot_row(wt, row))
        .collect();
    let out = WeightVector { entries };
    debug_assert_eq!(Ok(&out), dot_action_shifted(w, lam).as_ref());
    Ok(out)
}

fn dot_row(w: &Permutation, row: &[Q]) -> Vec<Q> {
    let inv = w.inverse();
    (1..=row.len())
        .map(|i| {
            let k = inv.apply(i);
            &row[k - 1] + q(i as i64 - k as i64)
        })
        .collect()
}

/// Dot action of the single reflection `s_α` (acting only on component `α.tau`).
pub fn reflect_dot(root: Root, lam: &WeightVector) -> WeightVector {
    let t = Permutation::transposition(lam.n(), root.i, root.j);
    let mut out = lam.clone();
    out.entries[root.tau] = dot_row(&t, &lam.entries[root.tau]);
    out
}

/// `μ ≤ λ` iff `λ - μ` is a non-negative integer combination of simple roots:
/// for each `tau`, every prefix sum of `(λ - μ)_τ` is a non-negative integer
/// and the full sum vanishes.
pub fn weight_leq(mu: &WeightVector, lam: &WeightVector) -> Result<bool> {
    let diff = lam.sub(mu)?;
    for row in &diff.entries {
        let mut acc = Q::zero();
        for x in row {
            acc += x;
            if !acc.is_integer() || acc.is_negative() {
                return Ok(false);
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn weight_lt(mu: &WeightVector, lam: &WeightVector) -> Result<bool> {
    Ok(mu != lam && weight_leq(mu, lam)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::all_permutations;

    fn wv(s: &str) -> WeightVector {
        WeightVector::parse(s).unwrap()
    }

    #[test]
    fn special_weight_values() {
        assert_eq!(special_weight(2, 1), wv("1/2,-1/2"));
        assert_eq!(special_weight(3, 1), wv("1,0,-1"));
        assert_eq!(special_weight(2, 2), wv("1/2,-1/2;1/2,-1/2"));
    }

    #[test]
    fn dot_action_examples() {
        let lam = wv("3,-1/2,7");
        let id = MultiPermutation::identity(3, 1);
        assert_eq!(dot_action(&id, &lam).unwrap(), lam);
        let s1 = MultiPermutation::from(Permutation::simple(2, 1));
        assert_eq!(dot_action(&s1, &wv("0,0")).unwrap(), wv("-1,1"));
        assert_eq!(dot_action_shifted(&s1, &wv("0,0")).unwrap(), wv("-1,1"));
        let w0 = MultiPermutation::longest(3, 1);
        let twice = dot_action(&w0, &dot_action(&w0, &lam).unwrap()).unwrap();
        assert_eq!(twice, lam);
    }

    #[test]
    fn dot_action_is_a_group_action_n3() {
        let lam = wv("2/3,-5,1;0,1/2,4");
        let perms = all_permutations(3);
        for a in &perms {
            for b in &perms {
                for c in &perms {
                    let u = MultiPermutation::new(vec![a.clone(), b.clone()]).unwrap();
                    let v = MultiPermutation::new(vec![c.clone(), a.clone()]).unwrap();
                    let uv = u.compose(&v).unwrap();
                    let lhs = dot_action(&uv, &lam).unwrap();
                    let rhs = dot_action(&u, &dot_action(&v, &lam).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn reflect_dot_matches_dot_action() {
        let lam = wv("1,2,3,4;5,-6,7,8");
        let r = Root::new(1, 2, 4).unwrap();
        let w = MultiPermutation::new(vec![
            Permutation::identity(4),
            Permutation::transposition(4, 2, 4),
        ])
        .unwrap();
        assert_eq!(reflect_dot(r, &lam), dot_action(&w, &lam).unwrap());
        assert_eq!(reflect_dot(r.negate(), &lam), reflect_dot(r, &lam));
    }

    #[test]
    fn weight_order_examples() {
        let lam = wv("1,0");
        assert!(weight_leq(&lam, &lam).unwrap());
        assert!(!weight_lt(&lam, &lam).unwrap());
        assert!(weight_leq(&wv("-1,2"), &wv("1,0")).unwrap());
        assert!(!weight_leq(&wv("1,0"), &wv("0,1")).unwrap());
        assert!(!weight_leq(&wv("1/2,0"), &wv("1,-1/2")).unwrap());
    }

    #[test]
    fn serde_uses_rational_strings() {
        let w = wv("1/2,-1/2;3,0");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"[["1/2","-1/2"],["3","0"]]"#);
        assert_eq!(serde_json::from_str::<WeightVector>(&json).unwrap(), w);
    }
}
