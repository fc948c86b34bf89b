//! Size bounds for (ℓ, t)-intersecting sets and an exact search for tiny
//! parameters.

use serde::Serialize;

use crate::clique::{max_clique, BitGraph};
use crate::error::{Error, Result};
use crate::ferrers::closed_form_nu_min;
use crate::gf::Fq;
use crate::limits;
use crate::schubert::standard_flag_space;
use crate::subspace::{enumerate_subspaces, gaussian_binomial, Subspace};

/// `(q^u - 1)/(q - 1)`: the largest intersecting set w.r.t. a u-space.
pub fn upper_bound_basic(k: usize, r: usize, u: usize, q: u64) -> Result<u128> {
    if u < 1 || u >= r * k {
        return Err(Error::Range(format!("need 1 <= u < rk (u={u}, r={r}, k={k})")));
    }
    gaussian_binomial(u, 1, q).ok_or(Error::Overflow)
}

/// The Gaussian binomial `[u choose ℓ]_q`; `None` when `t >= ℓ`, where no
/// bound of this form holds.
pub fn upper_bound_general(u: usize, ell: usize, t: usize, q: u64) -> Option<u128> {
    if t + 1 > ell {
        return None;
    }
    gaussian_binomial(u, ell, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub exponent: usize,
    pub value: u128,
    /// Holds only if every Ferrers diagram admits an MFD code.
    pub conjectural: bool,
}

/// `q^{ν_min}` for the largest cell of `Ω_{U,ℓ}` at distance `k - t`.
pub fn lower_bound_multilevel(k: usize, r: usize, u: usize, ell: usize, t: usize, q: u64) -> Result<LowerBound> {
    let exponent = closed_form_nu_min(k, r, u, ell, t)?;
    Ok(LowerBound {
        exponent,
        value: limits::pow_sat(q, exponent),
        conjectural: true,
    })
}

/// `m_q(k, r, u, ℓ, t)` by maximum clique, for the standard `U = V_u`.
pub fn exact_mq_search(k: usize, r: usize, u: usize, ell: usize, t: usize, field: Fq) -> Result<usize> {
    let n = r * k;
    let reference = standard_flag_space(u, n, field)?;
    exact_mq_search_with(k, &reference, ell, t)
}

/// As [`exact_mq_search`] for an arbitrary reference subspace.
pub fn exact_mq_search_with(k: usize, reference: &Subspace, ell: usize, t: usize) -> Result<usize> {
    let n = reference.ambient();
    let field = reference.field();
    if k < 1 || k > n || ell > k.min(reference.dim()) || t >= k {
        return Err(Error::Range(format!(
            "need 1 <= k <= n, l <= min(k, u), t < k (k={k}, n={n}, u={}, l={ell}, t={t})",
            reference.dim()
        )));
    }
    let total = gaussian_binomial(n, k, field.q() as u64).ok_or(Error::Overflow)?;
    limits::check(total, limits::EXACT_SEARCH)?;
    let mut vertices = Vec::new();
    for w in enumerate_subspaces(k, n, field)? {
        if w.intersection_dim(reference)? >= ell {
            vertices.push(w);
        }
    }
    limits::check(vertices.len() as u128, limits::CLIQUE_VERTICES)?;
    let g = BitGraph::from_predicate(vertices.len(), |i, j| {
        vertices[i].intersection_dim(&vertices[j]).expect("same ambient") <= t
    });
    Ok(max_clique(&g).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::new(2).unwrap()
    }

    #[test]
    fn basic_bounds() {
        assert_eq!(upper_bound_basic(3, 2, 3, 2).unwrap(), 7);
        assert_eq!(upper_bound_basic(3, 2, 1, 2).unwrap(), 1);
        assert_eq!(upper_bound_basic(2, 2, 2, 3).unwrap(), 4);
        assert!(upper_bound_basic(3, 2, 6, 2).is_err());
        assert!(upper_bound_basic(3, 2, 0, 2).is_err());
    }

    #[test]
    fn general_bounds() {
        assert_eq!(upper_bound_general(3, 1, 0, 2), Some(7));
        assert_eq!(upper_bound_general(4, 2, 1, 2), Some(35));
        assert_eq!(upper_bound_general(4, 2, 2, 2), None);
        assert_eq!(upper_bound_general(4, 1, 3, 2), None);
    }

    #[test]
    fn lower_bounds() {
        let lb = lower_bound_multilevel(3, 2, 3, 1, 0, 2).unwrap();
        assert_eq!((lb.exponent, lb.value, lb.conjectural), (2, 4, true));
        // l = t + 1 gives l (u - l)
        for (k, r, u, ell) in [(3, 2, 3, 2), (4, 2, 4, 2), (3, 3, 4, 3), (4, 3, 5, 1)] {
            let lb = lower_bound_multilevel(k, r, u, ell, ell - 1, 2).unwrap();
            assert_eq!(lb.exponent, ell * (u - ell));
        }
        // l = 1, t = 0, u <= k gives u - 1
        for (k, r, u) in [(3, 2, 3), (4, 2, 3), (5, 3, 5), (4, 4, 2)] {
            assert_eq!(lower_bound_multilevel(k, r, u, 1, 0, 3).unwrap().exponent, u - 1);
        }
    }

    #[test]
    fn exact_search_values() {
        assert_eq!(exact_mq_search(2, 2, 2, 1, 0, f2()).unwrap(), 3);
        // l = k, t = k - 1: every k-space inside U
        assert_eq!(exact_mq_search(2, 2, 3, 2, 1, f2()).unwrap(), 7);
        assert_eq!(exact_mq_search(2, 3, 3, 2, 1, f2()).unwrap(), 7);
        assert_eq!(exact_mq_search(1, 4, 2, 1, 0, f2()).unwrap(), 3);
    }

    #[test]
    fn exact_search_independent_of_reference() {
        let std = exact_mq_search(2, 2, 2, 1, 0, f2()).unwrap();
        let other = Subspace::from_row_lists(f2(), 4, &[[1, 1, 0, 1], [0, 1, 1, 1]]).unwrap();
        assert_eq!(exact_mq_search_with(2, &other, 1, 0).unwrap(), std);
        let u3 = standard_flag_space(3, 4, f2()).unwrap();
        let moved = Subspace::from_row_lists(f2(), 4, &[[1, 0, 1, 1], [0, 1, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(
            exact_mq_search_with(2, &u3, 1, 0).unwrap(),
            exact_mq_search_with(2, &moved, 1, 0).unwrap()
        );
        let u2 = standard_flag_space(2, 5, f2()).unwrap();
        let moved = Subspace::from_row_lists(f2(), 5, &[[1, 1, 0, 1, 0], [0, 1, 1, 0, 1]]).unwrap();
        assert_eq!(
            exact_mq_search_with(2, &u2, 1, 0).unwrap(),
            exact_mq_search_with(2, &moved, 1, 0).unwrap()
        );
    }

    #[test]
    fn exact_search_cap() {
        assert!(matches!(exact_mq_search(4, 3, 3, 1, 0, f2()), Err(Error::CapExceeded { .. })));
    }
}
