//! Edge-count arithmetic for broadcast graphs.

use crate::error::{Error, Result};
use crate::schemes::forest_decompose;

/// `L(n)`: the number of consecutive leading ones in the binary expansion
/// of `n - 1`.
pub fn leading_ones(n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::param(format!("L(n) is defined for n >= 2, got {n}")));
    }
    let x = n - 1;
    Ok((x << x.leading_zeros()).leading_ones())
}

/// Edge count of the binomial-forest construction before overlapping tree
/// and root edges are merged.
pub fn edge_budget_forest(n: usize) -> Result<u64> {
    Ok(forest_decompose(n)?.edge_budget())
}

/// The subcube union sits inside the `m`-cube: at most `floor(n m / 2)`.
pub fn edge_budget_subcube(n: usize) -> u64 {
    let m = crate::sim::ceil_log2(n as u64) as u64;
    n as u64 * m / 2
}

/// Fixed constant of the `O(n L(n))` sparsity tripwire.
pub const SPARSITY_CONSTANT: u64 = 2;

/// `SPARSITY_CONSTANT * n * (L(n) + 1)`.
pub fn sparsity_limit(n: usize) -> Result<u64> {
    Ok(SPARSITY_CONSTANT * n as u64 * (leading_ones(n as u64)? as u64 + 1))
}
