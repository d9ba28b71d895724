//! Good pairs of permutations.
//!
//! A pair `w1 ⪯ w2` is good when `w2` is reached from `w1` by left
//! multiplication with transpositions, each supported inside a single orbit
//! of `w1 w2^{-1}`, and each step going strictly up in the Bruhat order.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::weyl::{all_permutations, bruhat_leq, bruhat_lt, MultiPermutation, Permutation, Root};

pub const DEFAULT_CENSUS_BOUND: usize = 5;

/// Orbits of `p` on `{1..n}`, i.e. its cycles.
pub fn orbits(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles()
}

/// Witness of goodness: `end = s_{α_r} ... s_{α_1} start`, steps listed in
/// the order they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPairCertificate {
    pub start: MultiPermutation,
    pub end: MultiPermutation,
    pub steps: Vec<Root>,
}

impl GoodPairCertificate {
    /// Applies the steps to `start`, checking that every step goes strictly up.
    pub fn replay(&self) -> Result<MultiPermutation> {
        let mut cur: Vec<Permutation> = self.start.components().to_vec();
        for step in &self.steps {
            let v = cur
                .get(step.tau)
                .ok_or_else(|| Error::Precondition(format!("step {step:?} has no component")))?;
            let next = v.left_transpose(step.i, step.j);
            if !bruhat_lt(v, &next)? {
                return Err(Error::Precondition(format!(
                    "step {step:?} does not increase {v} in the Bruhat order"
                )));
            }
            cur[step.tau] = next;
        }
        MultiPermutation::new(cur)
    }

    /// Full check: replay reaches `end`, steps strictly increase, and each
    /// step stays within one orbit of `start_τ end_τ^{-1}`.
    pub fn verify(&self) -> Result<()> {
        let reached = self.replay()?;
        if reached != self.end {
            return Err(Error::Precondition(format!(
                "certificate replays to {reached}, expected {}",
                self.end
            )));
        }
        let ratio = self.start.compose(&self.end.inverse())?;
        for step in &self.steps {
            let orbits = orbits(ratio.component(step.tau));
            if !orbits
                .iter()
                .any(|o| o.contains(&step.i) && o.contains(&step.j))
            {
                return Err(Error::Precondition(format!(
                    "step {step:?} leaves the orbits of {}",
                    ratio.component(step.tau)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPairOutcome {
    pub good: bool,
    pub certificate: Option<GoodPairCertificate>,
}

/// Decides whether `(w1, w2)` is a good pair by breadth-first search from `w1`.
///
/// Errors if `w1 ⋠ w2`.
pub fn is_good_pair(w1: &Permutation, w2: &Permutation) -> Result<GoodPairOutcome> {
    let steps = good_chain(w1, w2, 0)?;
    Ok(match steps {
        Some(steps) => GoodPairOutcome {
            good: true,
            certificate: Some(GoodPairCertificate {
                start: w1.clone().into(),
                end: w2.clone().into(),
                steps,
            }),
        },
        None => GoodPairOutcome {
            good: false,
            certificate: None,
        },
    })
}

fn good_chain(w1: &Permutation, w2: &Permutation, tau: usize) -> Result<Option<Vec<Root>>> {
    if !bruhat_leq(w1, w2)? {
        return Err(Error::Precondition(format!("{w1} is not Bruhat-below {w2}")));
    }
    // The allowed transpositions are fixed once by the orbits of the original pair.
    let ratio = w1.compose(&w2.inverse())?;
    let allowed: Vec<(usize, usize)> = orbits(&ratio)
        .iter()
        .flat_map(|o| {
            o.iter()
                .enumerate()
                .flat_map(move |(a, &i)| o[a + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let max_depth = w2.length() - w1.length();

    let mut parent: HashMap<Permutation, Option<(Permutation, (usize, usize))>> = HashMap::new();
    parent.insert(w1.clone(), None);
    let mut queue = VecDeque::from([(w1.clone(), 0usize)]);
    let mut found = w1 == w2;
    while let Some((v, depth)) = queue.pop_front() {
        if found || depth == max_depth {
            break;
        }
        let lv = v.length();
        for &(i, j) in &allowed {
            let next = v.left_transpose(i, j);
            if next.length() <= lv || parent.contains_key(&next) || !bruhat_leq(&next, w2)? {
                continue;
            }
            parent.insert(next.clone(), Some((v.clone(), (i, j))));
            if &next == w2 {
                found = true;
                break;
            }
            queue.push_back((next, depth + 1));
        }
    }
    if !found {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut cur = w2.clone();
    while let Some(Some((prev, (i, j)))) = parent.get(&cur) {
        steps.push(Root { tau, i: *i, j: *j });
        cur = prev.clone();
    }
    steps.reverse();
    Ok(Some(steps))
}

/// Componentwise good-pair test on `(S_n)^Σ`; the certificate concatenates
/// the per-component chains, tagged by component.
pub fn is_good_pair_multi(
    w1: &MultiPermutation,
    w2: &MultiPermutation,
) -> Result<GoodPairOutcome> {
    check_size(w1.sigma(), w2.sigma())?;
    check_size(w1.n(), w2.n())?;
    let mut steps = Vec::new();
    let mut good = true;
    for tau in 0..w1.sigma() {
        match good_chain(w1.component(tau), w2.component(tau), tau)? {
            Some(chain) => steps.extend(chain),
            None => good = false,
        }
    }
    Ok(GoodPairOutcome {
        good,
        certificate: good.then(|| GoodPairCertificate {
            start: w1.clone(),
            end: w2.clone(),
            steps,
        }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPair {
    pub w1: String,
    pub w2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub sigma: usize,
    pub comparable_pairs: u64,
    pub good: u64,
    pub bad: u64,
    pub bad_pairs: Vec<BadPair>,
}

/// Goodness of every comparable pair of `S_n`, in lexicographic order of
/// `(w1, w2)`. Every certificate found is verified before it is counted.
pub fn single_census(n: usize) -> Result<Vec<(Permutation, Permutation, bool)>> {
    let perms = all_permutations(n);
    let rows: Vec<Vec<(Permutation, Permutation, bool)>> = perms
        .par_iter()
        .map(|w1| {
            let mut row = Vec::new();
            for w2 in &perms {
                if !bruhat_leq(w1, w2)? {
                    continue;
                }
                let outcome = is_good_pair(w1, w2)?;
                if let Some(cert) = &outcome.certificate {
                    cert.verify()?;
                    debug_assert!(cert.steps.len() <= w2.length() - w1.length());
                }
                row.push((w1.clone(), w2.clone(), outcome.good));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Census of good and bad pairs among Bruhat-comparable pairs of `(S_n)^Σ`.
pub fn census(n: usize, sigma: usize, bound: usize) -> Result<CensusReport> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound,
        });
    }
    if n == 0 || sigma == 0 {
        return Err(Error::Precondition("census needs n >= 1 and sigma >= 1".into()));
    }
    let table = single_census(n)?;
    let total = table.len() as u64;
    let good_single = table.iter().filter(|(_, _, g)| *g).count() as u64;
    let comparable_pairs = total.pow(sigma as u32);
    let good = good_single.pow(sigma as u32);

    // Multi-pairs are tuples of comparable single pairs; bad iff some component is bad.
    let mut bad_pairs = Vec::new();
    if good < comparable_pairs {
        let m = table.len() as u64;
        for code in 0..comparable_pairs {
            // Mixed-radix decoding, last component fastest.
            let idx: Vec<usize> = (0..sigma)
                .map(|t| ((code / m.pow((sigma - 1 - t) as u32)) % m) as usize)
                .collect();
            if idx.iter().all(|&k| table[k].2) {
                continue;
            }
            let w1: Vec<String> = idx.iter().map(|&k| table[k].0.to_string()).collect();
            let w2: Vec<String> = idx.iter().map(|&k| table[k].1.to_string()).collect();
            bad_pairs.push(BadPair {
                w1: w1.join(";"),
                w2: w2.join(";"),
            });
        }
    }
    Ok(CensusReport {
        n,
        sigma,
        comparable_pairs,
        good,
        bad: comparable_pairs - good,
        bad_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&Permutation::identity(3)), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(orbits(&p("2,3,1")), vec![vec![1, 2, 3]]);
        assert_eq!(orbits(&p("4,3,2,1")), vec![vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn trivial_pair_has_empty_chain() {
        let w = p("3,1,2");
        let out = is_good_pair(&w, &w).unwrap();
        assert!(out.good);
        assert!(out.certificate.unwrap().steps.is_empty());
    }

    #[test]
    fn the_bad_pair_of_s4() {
        let out = is_good_pair(&p("1,3,2,4"), &p("4,2,3,1")).unwrap();
        assert!(!out.good);
        assert!(out.certificate.is_none());
    }

    #[test]
    fn incomparable_pair_is_an_error() {
        assert!(matches!(
            is_good_pair(&p("2,1,3"), &p("1,3,2")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn all_comparable_pairs_of_s3_are_good() {
        let table = single_census(3).unwrap();
        assert_eq!(table.len(), 19);
        assert!(table.iter().all(|(_, _, g)| *g));
    }

    #[test]
    fn certificates_replay() {
        let out = is_good_pair(&p("1,2,3,4"), &p("4,3,2,1")).unwrap();
        let cert = out.certificate.unwrap();
        cert.verify().unwrap();
        assert!(cert.steps.len() <= 6);
    }

    #[test]
    fn multi_examples() {
        let a = MultiPermutation::parse("1,3,2,4;1,2,3,4").unwrap();
        let b = MultiPermutation::parse("4,2,3,1;2,1,3,4").unwrap();
        assert!(!is_good_pair_multi(&a, &b).unwrap().good);
        assert!(is_good_pair_multi(&a, &a).unwrap().good);

        let c = MultiPermutation::parse("1,2,3;2,1,3").unwrap();
        let d = MultiPermutation::parse("3,2,1;2,3,1").unwrap();
        let out = is_good_pair_multi(&c, &d).unwrap();
        assert!(out.good);
        let cert = out.certificate.unwrap();
        cert.verify().unwrap();
        assert!(cert.steps.iter().any(|r| r.tau == 1));
    }

    #[test]
    fn census_small() {
        let r2 = census(2, 1, DEFAULT_CENSUS_BOUND).unwrap();
        assert_eq!((r2.comparable_pairs, r2.bad), (3, 0));
        let r3 = census(3, 1, DEFAULT_CENSUS_BOUND).unwrap();
        assert_eq!(r3.bad, 0);
        let r4 = census(4, 1, DEFAULT_CENSUS_BOUND).unwrap();
        assert_eq!(
            r4.bad_pairs,
            vec![BadPair {
                w1: "1,3,2,4".into(),
                w2: "4,2,3,1".into()
            }]
        );
        assert!(matches!(
            census(6, 1, DEFAULT_CENSUS_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn census_multi_counts() {
        let r = census(3, 2, DEFAULT_CENSUS_BOUND).unwrap();
        assert_eq!(r.comparable_pairs, 19 * 19);
        assert_eq!(r.bad, 0);
    }
}
