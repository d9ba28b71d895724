//! Type-A Weyl group combinatorics: permutations, roots, the Bruhat order,
//! weights and the dot action.

mod bruhat;
mod perm;
mod weight;

pub use bruhat::{
    bruhat_leq, bruhat_leq_checked, bruhat_leq_multi, bruhat_leq_subword, bruhat_lt,
    reduced_word,
};
pub use perm::{all_permutations, MultiPermutation, Permutation, Root};
pub use weight::{
    dot_action, dot_action_shifted, reflect_dot, special_weight, weight_leq, weight_lt,
    WeightVector,
};
