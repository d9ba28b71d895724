//! Exhaustive and randomized sweeps that check the library against its
//! independent oracles.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::artin::{bezout_chain, bezout_sum, eigen_basis, ArtinMatrix, Poly, TruncatedAlgebra};
use crate::error::{Error, Result};
use crate::formula::{companion_lambda, companion_linkage_check, dim_xtri, main_formula, replay_chain, HodgeTateWeights};
use crate::good_pairs::{census, is_good_pair, BadPair, DEFAULT_CENSUS_BOUND};
use crate::sample;
use crate::schubert::{open_cell_member, subquotient_cell_test, tangent_table};
use crate::weyl::{
    all_permutations, bruhat_leq, bruhat_leq_subword, dot_action, MultiPermutation, Permutation,
};

pub const SUITES: [&str; 7] = ["census", "schubert", "flags", "eigen", "linkage", "formula", "bruhat"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub millis: u128,
}

impl SuiteReport {
    fn finish(suite: &str, start: Instant, cases: usize, failures: Vec<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: failures.is_empty(),
            cases,
            failures: failures.into_iter().take(20).collect(),
            millis: start.elapsed().as_millis(),
        }
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "census" => census_suite(),
        "schubert" => schubert_suite(4),
        "flags" => flag_suite(seed, 200),
        "eigen" => eigen_suite(seed, 100),
        "linkage" => linkage_suite(seed, 4, 2),
        "formula" => formula_suite(4, 2),
        "bruhat" => bruhat_suite(5),
        _ => Err(Error::Parse(format!("unknown suite {name:?}"))),
    }
}

/// No bad pairs for `n ≤ 3`; exactly `(1,3,2,4), (4,2,3,1)` for `n = 4`.
pub fn census_suite() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=4 {
        let report = census(n, 1, DEFAULT_CENSUS_BOUND)?;
        cases += report.comparable_pairs as usize;
        let expected = if n == 4 {
            vec![BadPair {
                w1: "1,3,2,4".into(),
                w2: "4,2,3,1".into(),
            }]
        } else {
            Vec::new()
        };
        if report.bad_pairs != expected {
            failures.push(format!("n={n}: bad pairs {:?}", report.bad_pairs));
        }
    }
    Ok(SuiteReport::finish("census", start, cases, failures))
}

/// Combinatorial tangent dimensions against the Jacobian oracle for every
/// pair `tau ⪯ w` with `n ≤ max_n`.
pub fn schubert_suite(max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        let fast = tangent_table(n, false)?;
        let slow = tangent_table(n, true)?;
        cases += fast.len();
        for (a, b) in fast.iter().zip(&slow) {
            if a != b {
                failures.push(format!("w={} tau={}: {} vs oracle {}", a.w, a.tau, a.dim, b.dim));
            }
            if a.w == a.tau && a.dim != a.length {
                failures.push(format!("w={}: dim {} at w, length {}", a.w, a.dim, a.length));
            }
        }
    }
    Ok(SuiteReport::finish("schubert", start, cases, failures))
}

/// The subquotient criterion against the open-cell test, over `Q` and
/// `Q[ε]/(ε²)`, for `samples` random flags per algebra and size `n ≤ 3`.
pub fn flag_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for (a, alg) in [TruncatedAlgebra::rationals(), TruncatedAlgebra::dual()].into_iter().enumerate() {
        for n in 1..=3 {
            let perms = all_permutations(n);
            let mut rng = sample::rng(seed ^ ((a as u64) << 8 | n as u64));
            for k in 0..samples {
                let flag = sample::random_flag(&mut rng, &alg, n);
                let mut open_count = 0;
                for w in &perms {
                    let open = open_cell_member(&flag, w)?;
                    let sub = subquotient_cell_test(&flag, w)?;
                    open_count += usize::from(open);
                    cases += 1;
                    if open != sub {
                        failures.push(format!("{alg} n={n} sample {k} w={w}: open {open}, subquotient {sub}"));
                    }
                }
                if alg.dim() == 1 && open_count != 1 {
                    failures.push(format!("field flag {k} n={n} lies in {open_count} open cells"));
                }
            }
        }
    }
    Ok(SuiteReport::finish("flags", start, cases, failures))
}

/// Random `f` with known residually distinct eigenvalues: the eigenbasis
/// diagonalizes `f` exactly, has unit determinant, and the Bézout chain is an
/// exact polynomial identity.
pub fn eigen_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in [2, 3] {
        let alg = TruncatedAlgebra::truncated(m);
        for n in 1..=4 {
            let mut rng = sample::rng(seed ^ ((m as u64) << 8 | n as u64));
            for k in 0..samples {
                cases += 1;
                let (f, lams) = sample::random_eigen_problem(&mut rng, &alg, n)?;
                let b = eigen_basis(&f, &lams)?;
                let diag = ArtinMatrix::diagonal(&alg, &lams);
                if f.mul(&b)? != b.mul(&diag)? {
                    failures.push(format!("{alg} n={n} sample {k}: f·B ≠ B·diag(λ)"));
                }
                if !b.determinant()?.is_unit() {
                    failures.push(format!("{alg} n={n} sample {k}: det(B) is not a unit"));
                }
                let ps = bezout_chain(&lams)?;
                if bezout_sum(&lams, &ps) != Poly::constant(alg.one()) {
                    failures.push(format!("{alg} n={n} sample {k}: Bézout identity fails"));
                }
            }
        }
    }
    Ok(SuiteReport::finish("eigen", start, cases, failures))
}

/// Every good pair `(w_sat, w)` in `(S_n)^σ`, five random `h` and three random
/// orbit-constant `χ` per `h`: the companion weights are strongly linked and
/// the chain replays.
pub fn linkage_suite(seed: u64, max_n: usize, max_sigma: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        let good = good_single_pairs(n)?;
        for sigma in 1..=max_sigma {
            let pairs = multi_pairs(&good, sigma)?;
            let results: Vec<Result<(usize, Vec<String>)>> = pairs
                .par_iter()
                .enumerate()
                .map(|(idx, (s, w))| {
                    let mut rng = sample::rng(seed ^ ((n as u64) << 40 | (sigma as u64) << 32 | idx as u64));
                    let rel = w.compose(&s.inverse())?;
                    let mut bad = Vec::new();
                    let mut count = 0;
                    for _ in 0..5 {
                        let h = sample::random_hodge_tate(&mut rng, n, sigma);
                        for _ in 0..3 {
                            let chi = sample::random_orbit_constant(&mut rng, &rel);
                            count += 1;
                            let out = companion_linkage_check(w, s, &h, &chi)?;
                            let lam = companion_lambda(w, &h, &chi)?;
                            let ok = out.linked
                                && replay_chain(&dot_action(w, &lam)?, &out.chain) == dot_action(s, &lam)?;
                            if !ok {
                                bad.push(format!("w_sat={s} w={w} h={:?} chi={chi}", h.values()));
                            }
                        }
                    }
                    Ok((count, bad))
                })
                .collect();
            for r in results {
                let (c, bad) = r?;
                cases += c;
                failures.extend(bad);
            }
        }
    }
    Ok(SuiteReport::finish("linkage", start, cases, failures))
}

fn good_single_pairs(n: usize) -> Result<Vec<(Permutation, Permutation)>> {
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for s in &perms {
        for w in &perms {
            if bruhat_leq(s, w)? && is_good_pair(s, w)?.good {
                out.push((s.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}

/// A pair in `(S_n)^σ` is good iff each component is.
fn multi_pairs(
    good: &[(Permutation, Permutation)],
    sigma: usize,
) -> Result<Vec<(MultiPermutation, MultiPermutation)>> {
    let total = good.len().pow(sigma as u32);
    (0..total)
        .map(|mut code| {
            let mut s = Vec::with_capacity(sigma);
            let mut w = Vec::with_capacity(sigma);
            for _ in 0..sigma {
                let (a, b) = &good[code % good.len()];
                code /= good.len();
                s.push(a.clone());
                w.push(b.clone());
            }
            Ok((MultiPermutation::new(s)?, MultiPermutation::new(w)?))
        })
        .collect()
}

/// `total = dim X_tri` on the diagonal, and the Schubert sum at `w = w_0` is
/// `σ·n(n-1)/2`.
pub fn formula_suite(max_n: usize, max_sigma: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        let perms = all_permutations(n);
        for sigma in 1..=max_sigma {
            let h = HodgeTateWeights::new(vec![(0..n as i64).collect(); sigma])?;
            let w0 = MultiPermutation::longest(n, sigma);
            for code in 0..perms.len().pow(sigma as u32) {
                let mut c = code;
                let s = MultiPermutation::new(
                    (0..sigma)
                        .map(|_| {
                            let p = perms[c % perms.len()].clone();
                            c /= perms.len();
                            p
                        })
                        .collect(),
                )?;
                cases += 1;
                let diag = main_formula(n, sigma, &s, &s, &h, false)?;
                if diag.total != dim_xtri(n, sigma) {
                    failures.push(format!("w=w_sat={s}: total {}", diag.total));
                }
                let top = main_formula(n, sigma, &w0, &s, &h, true)?;
                if top.schubert_sum != sigma * n * (n - 1) / 2 {
                    failures.push(format!("w=w0, w_sat={s}: Schubert sum {}", top.schubert_sum));
                }
            }
        }
    }
    Ok(SuiteReport::finish("formula", start, cases, failures))
}

/// Ehresmann's criterion against the subword property on all of `S_n`.
pub fn bruhat_suite(max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        let perms = all_permutations(n);
        let results: Vec<Result<Vec<String>>> = perms
            .par_iter()
            .map(|w| {
                let mut bad = Vec::new();
                for u in &perms {
                    if bruhat_leq(u, w)? != bruhat_leq_subword(u, w)? {
                        bad.push(format!("u={u} w={w}"));
                    }
                }
                Ok(bad)
            })
            .collect();
        cases += perms.len() * perms.len();
        for r in results {
            failures.extend(r?);
        }
    }
    Ok(SuiteReport::finish("bruhat", start, cases, failures))
}
