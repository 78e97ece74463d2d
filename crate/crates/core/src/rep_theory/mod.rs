//! Exact combinatorial representation theory of `S_n` and `U(d)`:
//! partitions, tableau counts, Schur polynomials, Pieri expansion,
//! Littlewood–Richardson admissibility and characters.

mod character;
mod counting;
#[cfg(test)]
pub(crate) mod oracle;
mod partition;
mod schur;

pub use character::{character, cycle_type};
pub use counting::{
    content, content_ratio_product, haar_irrep_scalar, hook_length, lr_admissible, num_ssyt, num_syt, pieri_expand,
};
pub use partition::{partitions_of, Partition};
pub use schur::{schur_eval, schur_eval_with_limit, SchurScalar, DEFAULT_SCHUR_LIMIT};
