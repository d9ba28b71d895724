//! Seeded random inputs for the randomized suites.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin::{ArtinMatrix, Elem, TruncatedAlgebra};
use crate::error::Result;
use crate::formula::HodgeTateWeights;
use crate::rational::{q, q_frac, Q};
use crate::schubert::FlagOverRing;
use crate::weyl::{all_permutations, MultiPermutation, WeightVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational, zero with probability `zero_weight / 8`.
pub fn small_rational(rng: &mut impl Rng, zero_weight: u32) -> Q {
    if rng.random_range(0..8) < zero_weight {
        return q(0);
    }
    let num = rng.random_range(-4..=4);
    let den = *[1, 1, 1, 2, 3].choose(rng).expect("non-empty");
    q_frac(num, den)
}

pub fn random_elem(rng: &mut impl Rng, alg: &TruncatedAlgebra, zero_weight: u32) -> Elem {
    let c = (0..alg.dim()).map(|_| small_rational(rng, zero_weight)).collect();
    alg.from_coeffs(c).expect("algebra dimension")
}

pub fn random_nilpotent(rng: &mut impl Rng, alg: &TruncatedAlgebra, zero_weight: u32) -> Elem {
    let mut c: Vec<Q> = (0..alg.dim()).map(|_| small_rational(rng, zero_weight)).collect();
    c[0] = q(0);
    alg.from_coeffs(c).expect("algebra dimension")
}

fn random_unit(rng: &mut impl Rng, alg: &TruncatedAlgebra) -> Elem {
    let mut c: Vec<Q> = (0..alg.dim()).map(|_| small_rational(rng, 4)).collect();
    while c[0] == q(0) {
        c[0] = small_rational(rng, 0);
    }
    alg.from_coeffs(c).expect("algebra dimension")
}

/// Upper unitriangular matrix with sparse random entries above the diagonal.
fn unipotent(rng: &mut impl Rng, alg: &TruncatedAlgebra, n: usize, lower: bool) -> ArtinMatrix {
    ArtinMatrix::from_fn(alg, n, n, |i, j| {
        if i == j {
            alg.one()
        } else if (i < j) != lower {
            random_elem(rng, alg, 4)
        } else {
            alg.zero()
        }
    })
}

/// A random flag: either `b·ẇ` plus a nilpotent perturbation, or a sparse
/// matrix with small entries.
pub fn random_flag(rng: &mut impl Rng, alg: &TruncatedAlgebra, n: usize) -> FlagOverRing {
    loop {
        let m = if rng.random_bool(0.5) {
            let w = all_permutations(n).choose(rng).expect("non-empty").clone();
            let fixed = FlagOverRing::from_permutation(alg, &w);
            let b = ArtinMatrix::from_fn(alg, n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => random_unit(rng, alg),
                std::cmp::Ordering::Less => random_elem(rng, alg, 4),
                std::cmp::Ordering::Greater => alg.zero(),
            });
            let wiggle = ArtinMatrix::from_fn(alg, n, n, |_, _| random_nilpotent(rng, alg, 6));
            b.mul(fixed.matrix()).and_then(|x| x.add(&wiggle))
        } else {
            Ok(ArtinMatrix::from_fn(alg, n, n, |_, _| random_elem(rng, alg, 4)))
        };
        if let Ok(flag) = m.and_then(FlagOverRing::new) {
            return flag;
        }
    }
}

/// `f = U (D + N) U^{-1}` with residually distinct eigenvalues `λ_i = i + ν_i`,
/// `ν_i` nilpotent, `N` strictly upper triangular and `U` invertible.
pub fn random_eigen_problem(rng: &mut impl Rng, alg: &TruncatedAlgebra, n: usize) -> Result<(ArtinMatrix, Vec<Elem>)> {
    let lams: Vec<Elem> = (0..n)
        .map(|i| &alg.constant(q(i as i64 - 1)) + &random_nilpotent(rng, alg, 2))
        .collect();
    let mut t = ArtinMatrix::from_fn(alg, n, n, |i, j| if i < j { random_elem(rng, alg, 3) } else { alg.zero() });
    for (i, l) in lams.iter().enumerate() {
        t[(i, i)] = l.clone();
    }
    let u = unipotent(rng, alg, n, true).mul(&unipotent(rng, alg, n, false))?;
    let f = u.mul(&t)?.mul(&u.inverse()?)?;
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    Ok((f, order.into_iter().map(|i| lams[i].clone()).collect()))
}

/// Strictly increasing weights with gaps in `1..=3`, per component.
pub fn random_hodge_tate(rng: &mut impl Rng, n: usize, sigma: usize) -> HodgeTateWeights {
    let values = (0..sigma)
        .map(|_| {
            let mut h = rng.random_range(-3..=3);
            (0..n)
                .map(|_| {
                    let out = h;
                    h += rng.random_range(1..=3);
                    out
                })
                .collect()
        })
        .collect();
    HodgeTateWeights::new(values).expect("strictly increasing by construction")
}

/// Rational weights constant on the orbits of `rel` in each component.
pub fn random_orbit_constant(rng: &mut impl Rng, rel: &MultiPermutation) -> WeightVector {
    let entries = rel
        .components()
        .iter()
        .map(|p| {
            let mut row = vec![q(0); p.n()];
            for orbit in p.cycles() {
                let value = small_rational(rng, 2);
                for i in orbit {
                    row[i - 1] = value.clone();
                }
            }
            row
        })
        .collect();
    WeightVector::new(entries).expect("rectangular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::orbit_constant;

    #[test]
    fn seeds_are_reproducible() {
        let alg = TruncatedAlgebra::dual();
        let a = random_flag(&mut rng(7), &alg, 3);
        let b = random_flag(&mut rng(7), &alg, 3);
        assert_eq!(a.matrix().to_json(), b.matrix().to_json());
    }

    #[test]
    fn eigen_problem_has_the_requested_spectrum() {
        let alg = TruncatedAlgebra::truncated(3);
        let mut r = rng(1);
        let (f, lams) = random_eigen_problem(&mut r, &alg, 3).unwrap();
        assert_eq!(f.char_poly().unwrap(), crate::artin::Poly::from_roots(&alg, &lams));
    }

    #[test]
    fn orbit_constant_weights() {
        let mut r = rng(3);
        let rel = MultiPermutation::parse("2,1,4,3;3,1,2,4").unwrap();
        let chi = random_orbit_constant(&mut r, &rel);
        assert!(orbit_constant(&rel, &MultiPermutation::identity(4, 2), &chi).unwrap());
    }
}
