//! Schubert conditions and cells with respect to the standard flag
//! `V_i = span{e_{n-i+1}, …, e_n}`.
//!
//! Pivot vectors and conditions are 1-based, as they appear in output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::Fq;
use crate::limits;
use crate::matrix::Matrix;
use crate::subspace::{combinations, free_slots, CellIter, Subspace};

fn check_increasing(seq: &[usize], n: usize, what: &str) -> Result<()> {
    if seq.is_empty() || seq.len() > n {
        return Err(Error::Range(format!("{what} of length {} in n = {n}", seq.len())));
    }
    if seq[0] < 1 || *seq.last().unwrap() > n || seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Range(format!(
            "{what} {seq:?} must be strictly increasing within 1..={n}"
        )));
    }
    Ok(())
}

/// `(d_1 < … < d_k)`: `dim(W ∩ V_{d_i}) >= i` for every i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchubertCondition {
    n: usize,
    d: Vec<usize>,
}

/// Pivot columns `(p_1 < … < p_k)` of a k x n RREF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PivotVector {
    n: usize,
    p: Vec<usize>,
}

impl SchubertCondition {
    pub fn new(n: usize, d: Vec<usize>) -> Result<Self> {
        check_increasing(&d, n, "Schubert condition")?;
        Ok(SchubertCondition { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.d
    }

    /// `p_i = n + 1 - d_{k+1-i}`.
    pub fn to_pivots(&self) -> PivotVector {
        let k = self.k();
        let p = (1..=k).map(|i| self.n + 1 - self.d[k - i]).collect();
        PivotVector { n: self.n, p }
    }
}

impl PivotVector {
    pub fn new(n: usize, p: Vec<usize>) -> Result<Self> {
        check_increasing(&p, n, "pivot vector")?;
        Ok(PivotVector { n, p })
    }

    /// From 0-based column indices.
    pub fn from_zero_based(n: usize, cols: &[usize]) -> Result<Self> {
        Self::new(n, cols.iter().map(|c| c + 1).collect())
    }

    /// The thick open cell `(1, …, k)`.
    pub fn thick(n: usize, k: usize) -> Result<Self> {
        Self::new(n, (1..=k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.p
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.p.iter().map(|p| p - 1).collect()
    }

    /// `d_i = n + 1 - p_{k+1-i}`.
    pub fn to_condition(&self) -> SchubertCondition {
        let k = self.k();
        let d = (1..=k).map(|i| self.n + 1 - self.p[k - i]).collect();
        SchubertCondition { n: self.n, d }
    }

    /// Whether the whole cell lies in `Ω_d`: componentwise `p >= p(d)`.
    pub fn cell_in_variety(&self, cond: &SchubertCondition) -> bool {
        let bound = cond.to_pivots();
        self.n == cond.n && self.k() == cond.k() && self.p.iter().zip(&bound.p).all(|(a, b)| a >= b)
    }

    /// Number of subspaces in the cell: `q^{#free entries}`.
    pub fn cell_size(&self, q: u64) -> u128 {
        limits::pow_sat(q, echelon_ferrers_of(self).dots())
    }
}

/// All pivot vectors of `Gr(k, n)` in lexicographic order.
pub fn all_pivot_vectors(k: usize, n: usize) -> impl Iterator<Item = PivotVector> {
    combinations(n, k).map(move |c| PivotVector::from_zero_based(n, &c).expect("valid combination"))
}

/// `V_i = span{e_{n-i+1}, …, e_n}`.
pub fn standard_flag_space(i: usize, n: usize, field: Fq) -> Result<Subspace> {
    if i < 1 || i > n {
        return Err(Error::Range(format!("flag index {i} outside 1..={n}")));
    }
    let mut m = Matrix::zeros(field, i, n);
    for r in 0..i {
        m.set(r, n - i + r, 1);
    }
    Subspace::from_rows(&m)
}

pub fn satisfies_schubert(w: &Subspace, cond: &SchubertCondition) -> Result<bool> {
    if w.ambient() != cond.n || w.dim() != cond.k() {
        return Err(Error::DimensionMismatch(format!(
            "{}-space of F_q^{} against a condition for Gr({}, {})",
            w.dim(),
            w.ambient(),
            cond.k(),
            cond.n
        )));
    }
    for (i, &d) in cond.d.iter().enumerate() {
        let v = standard_flag_space(d, cond.n, w.field())?;
        if w.intersection_dim(&v)? < i + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The condition of `Ω_{U,ℓ}` for `U = V_u`:
/// `(u-ℓ+1, …, u, n-k+ℓ+1, …, n)`.
pub fn omega_ul_condition(u: usize, ell: usize, k: usize, n: usize) -> Result<SchubertCondition> {
    if ell < 1 || ell > k.min(u) || u > n || k > n {
        return Err(Error::Range(format!(
            "need 1 <= l <= min(k, u) and u, k <= n (u={u}, l={ell}, k={k}, n={n})"
        )));
    }
    let mut d: Vec<usize> = (u - ell + 1..=u).collect();
    d.extend(n - k + ell + 1..=n);
    SchubertCondition::new(n, d)
}

pub fn in_omega_ul(w: &Subspace, u: &Subspace, ell: usize) -> Result<bool> {
    Ok(w.intersection_dim(u)? >= ell)
}

pub fn cell_of(w: &Subspace) -> Result<PivotVector> {
    PivotVector::from_zero_based(w.ambient(), w.pivots())
}

/// Every subspace in the cell, lexicographic in the free entries.
pub fn enumerate_cell(p: &PivotVector, field: Fq) -> Result<impl Iterator<Item = Subspace>> {
    limits::check(p.cell_size(field.q() as u64), limits::ENUMERATION)?;
    Ok(CellIter::new(field, p.n, &p.zero_based()))
}

/// Positions (row, column; 0-based) of the free entries of the RREF template.
pub fn free_positions(p: &PivotVector) -> Vec<(usize, usize)> {
    free_slots(p.n, &p.zero_based())
}

/// Dot pattern of the free entries of the echelon-Ferrers form.
pub fn echelon_ferrers_of(p: &PivotVector) -> FerrersDiagram {
    let k = p.k();
    let rows = p
        .p
        .iter()
        .enumerate()
        .map(|(i, &pi)| (p.n - pi) - (k - 1 - i))
        .collect();
    FerrersDiagram::new(rows).expect("echelon-Ferrers rows are non-increasing")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_subspaces;

    fn f2() -> Fq {
        Fq::new(2).unwrap()
    }

    #[test]
    fn flag_spaces() {
        assert_eq!(standard_flag_space(3, 3, f2()).unwrap(), Subspace::full(f2(), 3));
        assert_eq!(standard_flag_space(1, 3, f2()).unwrap().to_rows(), vec![vec![0, 0, 1]]);
        assert_eq!(
            standard_flag_space(2, 4, f2()).unwrap().to_rows(),
            vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        assert!(standard_flag_space(0, 3, f2()).is_err());
        assert!(standard_flag_space(4, 3, f2()).is_err());
    }

    #[test]
    fn pivot_condition_relation() {
        let thick = PivotVector::thick(6, 3).unwrap();
        assert_eq!(thick.to_condition().as_slice(), &[4, 5, 6]);
        let d = SchubertCondition::new(6, vec![3, 5, 6]).unwrap();
        assert_eq!(d.to_pivots().as_slice(), &[1, 2, 4]);
        for p in all_pivot_vectors(3, 7) {
            assert_eq!(p.to_condition().to_pivots(), p);
        }
        assert!(PivotVector::new(4, vec![2, 2]).is_err());
        assert!(PivotVector::new(4, vec![0, 2]).is_err());
        assert!(SchubertCondition::new(4, vec![1, 5]).is_err());
    }

    #[test]
    fn omega_conditions() {
        assert_eq!(omega_ul_condition(3, 1, 3, 6).unwrap().as_slice(), &[3, 5, 6]);
        assert_eq!(omega_ul_condition(4, 2, 3, 9).unwrap().as_slice(), &[3, 4, 9]);
        assert_eq!(omega_ul_condition(5, 3, 3, 10).unwrap().as_slice(), &[3, 4, 5]);
        // l = 1 gives (u, n-k+2, …, n)
        assert_eq!(omega_ul_condition(4, 1, 4, 12).unwrap().as_slice(), &[4, 10, 11, 12]);
        assert!(omega_ul_condition(3, 0, 3, 6).is_err());
        assert!(omega_ul_condition(2, 3, 3, 6).is_err());
    }

    #[test]
    fn thick_condition_always_holds() {
        let d = PivotVector::thick(5, 2).unwrap().to_condition();
        for w in enumerate_subspaces(2, 5, f2()).unwrap() {
            assert!(satisfies_schubert(&w, &d).unwrap());
        }
    }

    #[test]
    fn cells_of_gr_2_4() {
        let thick = PivotVector::thick(4, 2).unwrap();
        assert_eq!(enumerate_cell(&thick, f2()).unwrap().count(), 16);
        let total: usize = all_pivot_vectors(2, 4)
            .map(|p| enumerate_cell(&p, f2()).unwrap().count())
            .sum();
        assert_eq!(total, 35);
        for p in all_pivot_vectors(2, 4) {
            for w in enumerate_cell(&p, f2()).unwrap() {
                assert_eq!(cell_of(&w).unwrap(), p);
            }
        }
    }

    #[test]
    fn echelon_ferrers_shapes() {
        let n = 6;
        assert_eq!(echelon_ferrers_of(&PivotVector::thick(n, 3).unwrap()).row_dots(), &[3, 3, 3]);
        assert_eq!(
            echelon_ferrers_of(&PivotVector::new(n, vec![4, 5, 6]).unwrap()).row_dots(),
            &[0, 0, 0]
        );
        assert_eq!(
            echelon_ferrers_of(&PivotVector::new(n, vec![1, 2, 4]).unwrap()).row_dots(),
            &[3, 3, 2]
        );
    }

    #[test]
    fn ell_equals_k_inside_v_u() {
        let n = 5;
        let u = standard_flag_space(3, n, f2()).unwrap();
        let cond = omega_ul_condition(3, 2, 2, n).unwrap();
        for w in enumerate_subspaces(2, n, f2()).unwrap() {
            let inside = w.is_subspace_of(&u).unwrap();
            assert_eq!(in_omega_ul(&w, &u, 2).unwrap(), inside);
            assert_eq!(satisfies_schubert(&w, &cond).unwrap(), inside);
        }
    }
}
