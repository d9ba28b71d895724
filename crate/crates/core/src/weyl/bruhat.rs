use std::collections::HashSet;

use super::perm::{MultiPermutation, Permutation};
use crate::error::{check_size, Error, Result};

/// Bruhat order by Ehresmann's criterion: `u ⪯ w` iff for every `k` the sorted
/// prefix `u(1..k)` is entrywise at most the sorted prefix `w(1..k)`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_size(u.n(), w.n())?;
    let n = u.n();
    let mut pu = Vec::with_capacity(n);
    let mut pw = Vec::with_capacity(n);
    for k in 0..n {
        insert_sorted(&mut pu, u.images()[k]);
        insert_sorted(&mut pw, w.images()[k]);
        if pu.iter().zip(&pw).any(|(a, b)| a > b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

pub fn bruhat_lt(u: &Permutation, w: &Permutation) -> Result<bool> {
    Ok(u != w && bruhat_leq(u, w)?)
}

/// A reduced word `[a_1, ..., a_l]` with `w = s_{a_1} s_{a_2} ... s_{a_l}`.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut word = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    // Peel right descents: w = (w s_j) s_j with lg(w s_j) = lg(w) - 1.
    while let Some(j) = (1..cur.n()).find(|&j| cur.apply(j) > cur.apply(j + 1)) {
        cur = cur.right_transpose(j, j + 1);
        word.push(j);
    }
    word.reverse();
    word
}

/// Bruhat order by the subword property: `u ⪯ w` iff `u` is the product of a
/// subword of a reduced word of `w`. Exponential in `lg(w)`; kept as an oracle.
pub fn bruhat_leq_subword(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_size(u.n(), w.n())?;
    let mut products: HashSet<Permutation> = HashSet::from([Permutation::identity(w.n())]);
    for a in reduced_word(w) {
        let extended: Vec<Permutation> = products
            .iter()
            .map(|x| x.right_transpose(a, a + 1))
            .collect();
        products.extend(extended);
    }
    Ok(products.contains(u))
}

/// Runs both algorithms and fails loudly if they disagree.
pub fn bruhat_leq_checked(u: &Permutation, w: &Permutation) -> Result<bool> {
    let fast = bruhat_leq(u, w)?;
    let slow = bruhat_leq_subword(u, w)?;
    if fast != slow {
        return Err(Error::Precondition(format!(
            "Bruhat algorithms disagree on ({u}, {w}): ehresmann={fast}, subword={slow}"
        )));
    }
    Ok(fast)
}

/// Product Bruhat order on `(S_n)^Σ`.
pub fn bruhat_leq_multi(u: &MultiPermutation, w: &MultiPermutation) -> Result<bool> {
    check_size(u.sigma(), w.sigma())?;
    for (a, b) in u.components().iter().zip(w.components()) {
        if !bruhat_leq(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}
