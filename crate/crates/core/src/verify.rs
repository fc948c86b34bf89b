//! Direct verification of (ℓ, t)-intersecting sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::{lower_bound_multilevel, upper_bound_basic, upper_bound_general};
use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundComparison {
    pub value: u128,
    /// `size >= value`: an upper bound is attained, a lower bound reached.
    pub met: bool,
    pub conjectural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub valid: bool,
    pub size: usize,
    pub code_dim: usize,
    pub ambient: usize,
    pub u: usize,
    pub ell: usize,
    pub t: usize,
    /// Minimum pairwise subspace distance; `2k` for fewer than two codewords.
    pub min_distance: usize,
    /// Largest pairwise intersection; 0 for fewer than two codewords.
    pub worst_pair_intersection_dim: usize,
    pub per_codeword_u_intersection_dims: Vec<usize>,
    pub bound_comparisons: BTreeMap<String, BoundComparison>,
}

/// Checks that every codeword meets `u` in dimension at least `ell` and
/// that any two codewords meet in dimension at most `t`.
pub fn verify_intersecting(code: &SubspaceCode, u: &Subspace, ell: usize, t: usize) -> Result<VerificationReport> {
    if u.ambient() != code.ambient() || u.field() != code.field() {
        return Err(Error::DimensionMismatch(format!(
            "reference in F_{}^{}, code in F_{}^{}",
            u.field().q(),
            u.ambient(),
            code.field().q(),
            code.ambient()
        )));
    }
    let k = code.dim();
    let words = code.codewords();
    let dims_ok = words.iter().all(|w| w.dim() == k);
    let per_u = words
        .iter()
        .map(|w| w.intersection_dim(u))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            worst = worst.max(a.intersection_dim(b)?);
        }
    }
    let min_distance = 2 * (k - worst.min(k));
    let valid = dims_ok && per_u.iter().all(|&d| d >= ell) && worst <= t;
    debug_assert!(!valid || min_distance >= 2 * (k - t.min(k)));

    let size = code.len();
    let q = code.field().q() as u64;
    let n = code.ambient();
    let mut bounds = BTreeMap::new();
    let mut record = |name: &str, value: u128, conjectural: bool| {
        bounds.insert(
            name.to_string(),
            BoundComparison {
                value,
                met: size as u128 >= value,
                conjectural,
            },
        );
    };
    if let Some(v) = upper_bound_general(u.dim(), ell, t, q) {
        record("upperGeneral", v, false);
    }
    if k > 0 && n.is_multiple_of(k) {
        let r = n / k;
        if ell == 1 && t == 0 {
            if let Ok(v) = upper_bound_basic(k, r, u.dim(), q) {
                record("upperBasic", v, false);
            }
        }
        if let Ok(lb) = lower_bound_multilevel(k, r, u.dim(), ell, t, q) {
            record("lowerMultilevel", lb.value, lb.conjectural);
        }
    }

    Ok(VerificationReport {
        valid,
        size,
        code_dim: k,
        ambient: n,
        u: u.dim(),
        ell,
        t,
        min_distance,
        worst_pair_intersection_dim: worst,
        per_codeword_u_intersection_dims: per_u,
        bound_comparisons: bounds,
    })
}
