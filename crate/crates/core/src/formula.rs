//! The dimension formula for tangent spaces at companion points, together
//! with the weight-level bookkeeping behind it.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::good_pairs::is_good_pair_multi;
use crate::linalg::span_dim;
use crate::rational::q;
use crate::schubert::schubert_tangent_dim;
use crate::weyl::{bruhat_leq_multi, dot_action, reflect_dot, weight_leq, weight_lt, MultiPermutation, Root, WeightVector};

/// Hodge–Tate weights, strictly increasing within each component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct HodgeTateWeights {
    values: Vec<Vec<i64>>,
}

impl HodgeTateWeights {
    pub fn new(values: Vec<Vec<i64>>) -> Result<Self> {
        let n = values.first().map_or(0, Vec::len);
        if values.is_empty() || n == 0 {
            return Err(Error::Precondition("empty Hodge-Tate weights".into()));
        }
        for row in &values {
            check_size(n, row.len())?;
            if row.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::Precondition(format!("weights {row:?} are not strictly increasing")));
            }
        }
        Ok(HodgeTateWeights { values })
    }

    /// Parses `"0,1,2;0,2,5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let values = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn n(&self) -> usize {
        self.values[0].len()
    }

    pub fn sigma(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    /// `h_{tau,i}`, `i` 1-based.
    pub fn get(&self, tau: usize, i: usize) -> i64 {
        self.values[tau][i - 1]
    }
}

impl TryFrom<Vec<Vec<i64>>> for HodgeTateWeights {
    type Error = Error;
    fn try_from(values: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<HodgeTateWeights> for Vec<Vec<i64>> {
    fn from(h: HodgeTateWeights) -> Self {
        h.values
    }
}

/// A character `z^k · nr(φ) · χ`: integral exponents, symbolic unramified
/// parts, and optionally the weights of the smooth part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterParam {
    pub k: Vec<Vec<i64>>,
    pub phi: Vec<String>,
    pub chi_weights: Option<WeightVector>,
}

impl CharacterParam {
    pub fn new(k: Vec<Vec<i64>>, phi: Vec<String>, chi_weights: Option<WeightVector>) -> Result<Self> {
        let n = k.first().map_or(0, Vec::len);
        for row in &k {
            check_size(n, row.len())?;
        }
        check_size(n, phi.len())?;
        let distinct: HashSet<&String> = phi.iter().collect();
        if distinct.len() != phi.len() {
            return Err(Error::Precondition("phi labels must be pairwise distinct".into()));
        }
        if let Some(chi) = &chi_weights {
            check_size(k.len(), chi.sigma())?;
            check_size(n, chi.n())?;
        }
        Ok(CharacterParam { k, phi, chi_weights })
    }
}

pub fn dim_xtri(n: usize, sigma: usize) -> usize {
    n * n + sigma * n * (n + 1) / 2
}

/// Rank of the lattice spanned by `w(α) - α` over all roots `α`.
pub fn d_invariant(w: &MultiPermutation) -> usize {
    let (n, sigma) = (w.n(), w.sigma());
    let mut gens = Vec::new();
    for (tau, wt) in w.components().iter().enumerate() {
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let mut v = vec![q(0); n * sigma];
                v[tau * n + wt.apply(i) - 1] += q(1);
                v[tau * n + wt.apply(j) - 1] -= q(1);
                v[tau * n + i - 1] -= q(1);
                v[tau * n + j - 1] += q(1);
                gens.push(v);
            }
        }
    }
    span_dim(n * sigma, &gens)
}

/// `w(h)`: entry `(tau, i)` is `h_{tau, w_tau^{-1}(i)}`.
pub fn apply_perm_to_weights(w: &MultiPermutation, h: &HodgeTateWeights) -> Result<Vec<Vec<i64>>> {
    check_size(h.sigma(), w.sigma())?;
    check_size(h.n(), w.n())?;
    Ok(w.components()
        .iter()
        .enumerate()
        .map(|(tau, wt)| {
            let inv = wt.inverse();
            (1..=h.n()).map(|i| h.get(tau, inv.apply(i))).collect()
        })
        .collect())
}

/// Whether `η` satisfies `wt(η_{w_sat(i)}) - wt(η_{w(i)}) = h_i - h_{w_sat^{-1} w(i)}`
/// for every `(tau, i)`.
pub fn companion_weight_space_member(
    eta: &WeightVector,
    w: &MultiPermutation,
    w_sat: &MultiPermutation,
    h: &HodgeTateWeights,
) -> Result<bool> {
    for (a, b) in [(eta.sigma(), w.sigma()), (eta.sigma(), w_sat.sigma()), (eta.sigma(), h.sigma())] {
        check_size(a, b)?;
    }
    for (a, b) in [(eta.n(), w.n()), (eta.n(), w_sat.n()), (eta.n(), h.n())] {
        check_size(a, b)?;
    }
    for tau in 0..eta.sigma() {
        let (wt, st) = (w.component(tau), w_sat.component(tau));
        let st_inv = st.inverse();
        for i in 1..=eta.n() {
            let lhs = eta.get(tau, st.apply(i)) - eta.get(tau, wt.apply(i));
            let rhs = h.get(tau, i) - h.get(tau, st_inv.apply(wt.apply(i)));
            if lhs != q(rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The character `z^{w(h)} nr(φ)` attached to a point with refinement `φ`.
pub fn iota_character(w: &MultiPermutation, h: &HodgeTateWeights, phi: Vec<String>) -> Result<CharacterParam> {
    CharacterParam::new(apply_perm_to_weights(w, h)?, phi, None)
}

/// `η ↦ z^{w(h) - w_sat(h)} η`.
pub fn jmath_twist(
    c: &CharacterParam,
    w: &MultiPermutation,
    w_sat: &MultiPermutation,
    h: &HodgeTateWeights,
) -> Result<CharacterParam> {
    let wh = apply_perm_to_weights(w, h)?;
    let sh = apply_perm_to_weights(w_sat, h)?;
    check_size(wh.len(), c.k.len())?;
    let k = c
        .k
        .iter()
        .zip(wh.iter().zip(&sh))
        .map(|(row, (a, b))| {
            check_size(a.len(), row.len())?;
            Ok(row.iter().zip(a.iter().zip(b)).map(|(k, (x, y))| k + x - y).collect())
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok(CharacterParam {
        k,
        phi: c.phi.clone(),
        chi_weights: c.chi_weights.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageOutcome {
    pub linked: bool,
    /// Reflections applied to `lam` in order, each strictly lowering the weight.
    pub chain: Vec<Root>,
}

/// Applies the dot reflections of `chain` to `lam` in order.
pub fn replay_chain(lam: &WeightVector, chain: &[Root]) -> WeightVector {
    chain.iter().fold(lam.clone(), |acc, &r| reflect_dot(r, &acc))
}

/// Decides `mu ↑ lam` by breadth-first search down the dot orbit of `lam`,
/// one component at a time.
pub fn strongly_linked(mu: &WeightVector, lam: &WeightVector) -> Result<LinkageOutcome> {
    let diff = lam.sub(mu)?;
    if !diff.is_integral() {
        return Err(Error::NonIntegral(format!("{lam} - {mu}")));
    }
    let n = lam.n();
    let mut chain = Vec::new();
    for tau in 0..lam.sigma() {
        let start = WeightVector::new(vec![lam.component(tau).to_vec()])?;
        let target = WeightVector::new(vec![mu.component(tau).to_vec()])?;
        match descend(&start, &target, n)? {
            Some(steps) => chain.extend(steps.into_iter().map(|r| Root { tau, ..r })),
            None => {
                return Ok(LinkageOutcome {
                    linked: false,
                    chain: Vec::new(),
                })
            }
        }
    }
    Ok(LinkageOutcome { linked: true, chain })
}

fn descend(start: &WeightVector, target: &WeightVector, n: usize) -> Result<Option<Vec<Root>>> {
    if start == target {
        return Ok(Some(Vec::new()));
    }
    if !weight_leq(target, start)? {
        return Ok(None);
    }
    let mut parent: HashMap<WeightVector, (WeightVector, Root)> = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(cur) = queue.pop_front() {
        for root in Root::positive_roots(0, n) {
            let next = reflect_dot(root, &cur);
            if next == *start || parent.contains_key(&next) {
                continue;
            }
            if !weight_lt(&next, &cur)? || !weight_leq(target, &next)? {
                continue;
            }
            parent.insert(next.clone(), (cur.clone(), root));
            if next == *target {
                let mut steps = Vec::new();
                let mut at = next;
                while let Some((prev, r)) = parent.get(&at) {
                    steps.push(*r);
                    at = prev.clone();
                }
                steps.reverse();
                return Ok(Some(steps));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// The weight `λ_{tau,i} = h_{tau,i} + i - 1 + wt(χ_{w_tau(i)})`.
pub fn companion_lambda(w: &MultiPermutation, h: &HodgeTateWeights, chi: &WeightVector) -> Result<WeightVector> {
    check_size(h.sigma(), w.sigma())?;
    check_size(h.n(), w.n())?;
    check_size(h.sigma(), chi.sigma())?;
    check_size(h.n(), chi.n())?;
    let entries = (0..h.sigma())
        .map(|tau| {
            (1..=h.n())
                .map(|i| q(h.get(tau, i) + i as i64 - 1) + chi.get(tau, w.component(tau).apply(i)))
                .collect()
        })
        .collect();
    WeightVector::new(entries)
}

/// Whether `χ` is constant on the orbits of `w w_sat^{-1}` in every component.
pub fn orbit_constant(w: &MultiPermutation, w_sat: &MultiPermutation, chi: &WeightVector) -> Result<bool> {
    let rel = w.compose(&w_sat.inverse())?;
    check_size(rel.sigma(), chi.sigma())?;
    check_size(rel.n(), chi.n())?;
    Ok((0..chi.sigma()).all(|tau| {
        let r = rel.component(tau);
        (1..=chi.n()).all(|i| chi.get(tau, r.apply(i)) == chi.get(tau, i))
    }))
}

/// Checks `w_sat·λ ↑ w·λ` for the weight `λ` built from `h` and `χ`.
pub fn companion_linkage_check(
    w: &MultiPermutation,
    w_sat: &MultiPermutation,
    h: &HodgeTateWeights,
    chi: &WeightVector,
) -> Result<LinkageOutcome> {
    if !orbit_constant(w, w_sat, chi)? {
        return Err(Error::Precondition(format!(
            "chi weights {chi} are not constant on the orbits of w w_sat^-1"
        )));
    }
    let lam = companion_lambda(w, h, chi)?;
    strongly_linked(&dot_action(w_sat, &lam)?, &dot_action(w, &lam)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauTerm {
    pub tau: usize,
    pub tangent_dim: usize,
    pub length_sat: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub n: usize,
    pub sigma: usize,
    pub dim_xtri: usize,
    pub d_term: usize,
    pub schubert_sum: usize,
    pub length_term: usize,
    pub total: usize,
    pub per_tau: Vec<TauTerm>,
    pub good_pair: bool,
    /// `"theorem"` for good pairs, `"conjectural"` for overridden bad ones.
    pub status: String,
}

/// `dim X_tri - d_{w w_sat^{-1}} + Σ_tau dim T_{w_sat,tau} X_{w_tau} - length(w_sat)`.
pub fn main_formula(
    n: usize,
    sigma: usize,
    w: &MultiPermutation,
    w_sat: &MultiPermutation,
    h: &HodgeTateWeights,
    allow_bad_pair: bool,
) -> Result<FormulaReport> {
    for m in [w, w_sat] {
        check_size(n, m.n())?;
        check_size(sigma, m.sigma())?;
    }
    check_size(n, h.n())?;
    check_size(sigma, h.sigma())?;
    if !bruhat_leq_multi(w_sat, w)? {
        return Err(Error::Precondition(format!("w_sat {w_sat} is not below w {w}")));
    }
    let good_pair = is_good_pair_multi(w_sat, w)?.good;
    if !good_pair && !allow_bad_pair {
        return Err(Error::NotGoodPair {
            w1: w_sat.to_string(),
            w2: w.to_string(),
        });
    }
    let per_tau = (0..sigma)
        .map(|tau| {
            Ok(TauTerm {
                tau,
                tangent_dim: schubert_tangent_dim(w.component(tau), w_sat.component(tau))?,
                length_sat: w_sat.component(tau).length(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = dim_xtri(n, sigma);
    let d_term = d_invariant(&w.compose(&w_sat.inverse())?);
    let schubert_sum: usize = per_tau.iter().map(|t| t.tangent_dim).sum();
    let length_term = w_sat.length();
    // Each tangent dimension is at least the length of w_tau >= length of
    // w_sat,tau, and d_term <= sigma·(n-1) < dim, so this cannot underflow.
    let total = dim + schubert_sum - d_term - length_term;
    Ok(FormulaReport {
        n,
        sigma,
        dim_xtri: dim,
        d_term,
        schubert_sum,
        length_term,
        total,
        per_tau,
        good_pair,
        status: if good_pair { "theorem" } else { "conjectural" }.into(),
    })
}
