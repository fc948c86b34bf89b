//! Desk-scale caps for exhaustive operations.
//!
//! Every cap has a built-in default. Setting `SSC_MAX_ENUM` replaces all
//! of them with a single value.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "SSC_MAX_ENUM";

/// Subspace and cell enumeration.
pub const ENUMERATION: u128 = 10_000_000;
/// Field-wide scans (norm kernel, exhaustive root search): q^k <= 2^16.
pub const FIELD_SCAN: u128 = 1 << 16;
/// Vectors of a q-system visited when computing its linear set.
pub const QSYSTEM_SCAN: u128 = 1 << 20;
/// Ambient Grassmannian size for the exact clique search.
pub const EXACT_SEARCH: u128 = 100_000;
/// Vertices handed to the clique solver.
pub const CLIQUE_VERTICES: u128 = 20_000;
/// Supported matrices visited by greedy Ferrers search.
pub const FERRERS_GREEDY: u128 = 1 << 20;
/// Supported matrices used as clique vertices by exhaustive Ferrers search.
pub const FERRERS_EXHAUSTIVE: u128 = 1 << 12;
/// Dots allowed in a diagram for greedy/exhaustive search.
pub const FERRERS_DOTS: usize = 20;

fn override_value() -> Option<u128> {
    std::env::var(ENV_VAR).ok()?.trim().parse().ok()
}

/// The effective cap: the environment override if set, else `default`.
pub fn cap(default: u128) -> u128 {
    override_value().unwrap_or(default)
}

/// Fails with [`Error::CapExceeded`] when `size` is above the effective cap.
pub fn check(size: u128, default: u128) -> Result<()> {
    let cap = cap(default);
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
