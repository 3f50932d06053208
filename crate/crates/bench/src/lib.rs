//! Fixtures shared by the criterion benches.

use listcast::schemes::{binomial_forest, subcube_union, Scheme};

/// The two sparse constructions at size `n` (not a power of two).
pub fn fixtures(n: usize) -> [(&'static str, Scheme); 2] {
    [
        ("subcube-union", subcube_union(n).expect("n is not a power of two")),
        ("binomial-forest", binomial_forest(n).expect("n is not a power of two").into_scheme()),
    ]
}
