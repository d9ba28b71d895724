use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_size, Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation: position `j` holds `w(j)`.
///
/// The matrix of `w` has a 1 at `(i, j)` exactly when `i = w(j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// The transposition exchanging `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// Simple reflection `s_i = t_{i,i+1}`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_size(self.n(), other.n())?;
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x - 1] = j + 1;
        }
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// Left multiplication by the transposition `t_{ij}`: swaps the values `i` and `j`.
    pub fn left_transpose(&self, i: usize, j: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&x| if x == i { j } else if x == j { i } else { x })
            .collect();
        Permutation { images }
    }

    /// Right multiplication by `t_{ij}`: swaps the positions `i` and `j`.
    pub fn right_transpose(&self, i: usize, j: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// Cycles of the permutation, each sorted, in order of their least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            cycle.sort_unstable();
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("malformed permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All permutations of `{1..n}` in lexicographic order of their one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
    out
}

/// An element of the product `(S_n)^Σ`, one component per embedding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Permutation>", into = "Vec<Permutation>")]
pub struct MultiPermutation {
    components: Vec<Permutation>,
}

impl MultiPermutation {
    pub fn new(components: Vec<Permutation>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Precondition("a multipermutation needs sigma >= 1".into()));
        };
        let n = first.n();
        for c in &components {
            check_size(n, c.n())?;
        }
        Ok(MultiPermutation { components })
    }

    pub fn identity(n: usize, sigma: usize) -> Self {
        MultiPermutation {
            components: vec![Permutation::identity(n); sigma],
        }
    }

    pub fn longest(n: usize, sigma: usize) -> Self {
        MultiPermutation {
            components: vec![Permutation::longest(n); sigma],
        }
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn sigma(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    pub fn component(&self, tau: usize) -> &Permutation {
        &self.components[tau]
    }

    pub fn length(&self) -> usize {
        self.components.iter().map(Permutation::length).sum()
    }

    pub fn compose(&self, other: &MultiPermutation) -> Result<MultiPermutation> {
        check_size(self.sigma(), other.sigma())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPermutation { components })
    }

    pub fn inverse(&self) -> MultiPermutation {
        MultiPermutation {
            components: self.components.iter().map(Permutation::inverse).collect(),
        }
    }

    /// Parses `"3,1,2;2,1,3"`: components separated by `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let components = s
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        Self::new(components)
    }
}

impl From<Permutation> for MultiPermutation {
    fn from(p: Permutation) -> Self {
        MultiPermutation {
            components: vec![p],
        }
    }
}

impl TryFrom<Vec<Permutation>> for MultiPermutation {
    type Error = Error;
    fn try_from(v: Vec<Permutation>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<MultiPermutation> for Vec<Permutation> {
    fn from(m: MultiPermutation) -> Self {
        m.components
    }
}

impl fmt::Display for MultiPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

impl fmt::Debug for MultiPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.components)
    }
}

/// A root `e_i - e_j` of the `tau`-th copy of the type-A root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub tau: usize,
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(tau: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Error::Precondition(format!("({i}, {j}) is not a root")));
        }
        Ok(Root { tau, i, j })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn negate(self) -> Root {
        Root {
            tau: self.tau,
            i: self.j,
            j: self.i,
        }
    }

    /// Coordinates of `e_i - e_j` in `Z^n`.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        v[self.i - 1] += 1;
        v[self.j - 1] -= 1;
        v
    }

    /// All positive roots `e_i - e_j`, `i < j`, of one copy of `A_{n-1}`.
    pub fn positive_roots(tau: usize, n: usize) -> impl Iterator<Item = Root> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Root { tau, i, j }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("2,1,3").compose(&p("1,3,2")).unwrap(), p("2,3,1"));
        let w = p("3,1,4,2");
        assert_eq!(Permutation::identity(4).compose(&w).unwrap(), w);
        assert!(w.compose(&w.inverse()).unwrap().is_identity());
        assert!(matches!(
            w.compose(&p("1,2,3")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(Permutation::longest(5).length(), 10);
        assert_eq!(p("4,2,3,1").length(), 5);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn left_transposition_swaps_values() {
        let w = p("3,1,2");
        let t = Permutation::transposition(3, 1, 3);
        assert_eq!(w.left_transpose(1, 3), t.compose(&w).unwrap());
        assert_eq!(w.right_transpose(1, 3), w.compose(&t).unwrap());
    }

    #[test]
    fn enumeration_is_complete() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        let set: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn multipermutation_serde() {
        let m = MultiPermutation::parse("3,1,2;2,1,3").unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"["3,1,2","2,1,3"]"#);
        let back: MultiPermutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(MultiPermutation::parse("1,2;1,2,3").is_err());
    }
}
