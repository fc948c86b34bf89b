//! Field reduction `F_{q^k}^r -> F_q^{rk}`, Desarguesian spreads, q-systems
//! and their linear sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{ext_rank, ExtElement, FieldCtx};
use crate::limits;
use crate::matrix::Matrix;
use crate::subspace::{gaussian_binomial, Subspace};

/// Expands each coordinate in the power basis: block `i` of length k holds
/// the coefficients of `v_i`.
pub fn field_reduce_vec(v: &[ExtElement]) -> Vec<u32> {
    v.iter().flat_map(|x| x.coeffs().iter().copied()).collect()
}

/// Inverse of [`field_reduce_vec`].
pub fn unreduce(ctx: &FieldCtx, v: &[u32]) -> Result<Vec<ExtElement>> {
    let k = ctx.degree();
    if !v.len().is_multiple_of(k) {
        return Err(Error::DimensionMismatch(format!("length {} is not a multiple of k = {k}", v.len())));
    }
    v.chunks(k).map(|c| ctx.element(c)).collect()
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_point(ctx: &FieldCtx, v: &[ExtElement]) -> Result<Vec<ExtElement>> {
    let lead = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroSpace)?;
    let inv = ctx.inv(lead)?;
    Ok(v.iter().map(|x| ctx.mul(&inv, x)).collect())
}

/// The k-dimensional F_q-subspace `φ(F_{q^k} · rep)`.
pub fn field_reduce_point(ctx: &FieldCtx, rep: &[ExtElement]) -> Result<Subspace> {
    if rep.iter().all(ExtElement::is_zero) {
        return Err(Error::ZeroSpace);
    }
    let rows: Vec<Vec<u32>> = (0..ctx.degree())
        .map(|j| {
            let lambda = ctx.basis_element(j);
            let scaled: Vec<ExtElement> = rep.iter().map(|x| ctx.mul(&lambda, x)).collect();
            field_reduce_vec(&scaled)
        })
        .collect();
    Subspace::from_row_lists(ctx.base(), rep.len() * ctx.degree(), &rows)
}

/// Normalized representatives of all points of `P^{r-1}(F_{q^k})`, grouped
/// by the position of the leading 1 and otherwise in encoding order.
pub fn projective_points(ctx: &FieldCtx, r: usize) -> Result<Vec<Vec<ExtElement>>> {
    if r == 0 {
        return Err(Error::Range("r must be >= 1".into()));
    }
    let q = ctx.q() as u64;
    let count = gaussian_binomial(r * ctx.degree(), 1, q).ok_or(Error::Overflow)?
        / gaussian_binomial(ctx.degree(), 1, q).ok_or(Error::Overflow)?;
    limits::check(count, limits::ENUMERATION)?;
    let order = ctx.order().ok_or(Error::Overflow)?;
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..r {
        let tail = r - lead - 1;
        let total = (order as u128).pow(tail as u32);
        for mut idx in 0..total {
            let mut v = vec![ctx.zero(); r];
            v[lead] = ctx.one();
            for x in v[lead + 1..].iter_mut().rev() {
                *x = ctx.decode((idx % order as u128) as u64)?;
                idx /= order as u128;
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `{φ̄(P) : P ∈ P^{r-1}(F_{q^k})}`.
pub fn desarguesian_spread(ctx: &FieldCtx, r: usize) -> Result<Vec<Subspace>> {
    projective_points(ctx, r)?
        .iter()
        .map(|p| field_reduce_point(ctx, p))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSetPoint {
    /// Normalized representative.
    pub rep: Vec<ExtElement>,
    /// `dim_{F_q}(U ∩ F_{q^k} rep)`.
    pub weight: usize,
}

/// A u-dimensional F_q-subspace of `F_{q^k}^r`, given by an F_q-basis.
#[derive(Clone, Debug)]
pub struct QSystem {
    field: FieldCtx,
    r: usize,
    basis: Vec<Vec<ExtElement>>,
    expanded: Subspace,
}

impl QSystem {
    pub fn new(field: FieldCtx, r: usize, basis: Vec<Vec<ExtElement>>) -> Result<Self> {
        if r == 0 || basis.is_empty() {
            return Err(Error::Range("need r >= 1 and a non-empty basis".into()));
        }
        if let Some(v) = basis.iter().find(|v| v.len() != r) {
            return Err(Error::DimensionMismatch(format!("basis vector of length {} in F_q^k^{r}", v.len())));
        }
        let rows: Vec<Vec<u32>> = basis.iter().map(|v| field_reduce_vec(v)).collect();
        let m = Matrix::from_rows(field.base(), r * field.degree(), &rows)?;
        if m.rank() != basis.len() {
            return Err(Error::Range(format!(
                "basis of {} vectors has F_q-rank {}",
                basis.len(),
                m.rank()
            )));
        }
        let expanded = Subspace::span(&m);
        Ok(QSystem {
            field,
            r,
            basis,
            expanded,
        })
    }

    /// From integer-encoded coordinates.
    pub fn from_encoded(field: FieldCtx, r: usize, basis: &[Vec<u64>]) -> Result<Self> {
        let basis = basis
            .iter()
            .map(|v| v.iter().map(|&e| field.decode(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QSystem::new(field, r, basis)
    }

    pub fn encoded_basis(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|x| self.field.encode(x).expect("order fits")).collect())
            .collect()
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn u(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<ExtElement>] {
        &self.basis
    }

    /// `φ(U)` as a u-dimensional subspace of F_q^{rk}.
    pub fn as_subspace(&self) -> &Subspace {
        &self.expanded
    }

    /// Whether the basis spans `F_{q^k}^r` over `F_{q^k}`.
    pub fn is_nondegenerate(&self) -> bool {
        ext_rank(&self.field, &self.basis) == self.r
    }

    /// Every point of the linear set with its weight, in order of first
    /// appearance among the vectors of `U`.
    pub fn points(&self) -> Result<Vec<LinearSetPoint>> {
        limits::check(limits::pow_sat(self.field.q() as u64, self.u()), limits::QSYSTEM_SCAN)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in self.expanded.vectors().skip(1) {
            let rep = normalize_point(&self.field, &unreduce(&self.field, &v)?)?;
            if !seen.insert(rep.clone()) {
                continue;
            }
            let line = field_reduce_point(&self.field, &rep)?;
            let weight = self.expanded.intersection_dim(&line)?;
            out.push(LinearSetPoint { rep, weight });
        }
        Ok(out)
    }

    pub fn is_scattered(&self) -> Result<bool> {
        Ok(self.points()?.iter().all(|p| p.weight == 1))
    }

    pub fn weight_one_points(&self) -> Result<Vec<LinearSetPoint>> {
        Ok(self.points()?.into_iter().filter(|p| p.weight == 1).collect())
    }
}

/// `{(s, s^q, …, s^{q^{r-1}}) : s ∈ F_{q^k}}`, a scattered k-dimensional system.
pub fn gabidulin_system(ctx: &FieldCtx, r: usize) -> Result<QSystem> {
    if r < 2 {
        return Err(Error::Range(format!("need r >= 2, got {r}")));
    }
    let basis = (0..ctx.degree())
        .map(|j| {
            let s = ctx.basis_element(j);
            (0..r).map(|i| ctx.frobenius(&s, i)).collect()
        })
        .collect();
    QSystem::new(ctx.clone(), r, basis)
}

/// `{(s, s^q, s, …, s) : s ∈ F_{q^k}}`.
pub fn twisted_system(ctx: &FieldCtx, r: usize) -> Result<QSystem> {
    if r < 2 {
        return Err(Error::Range(format!("need r >= 2, got {r}")));
    }
    let basis = (0..ctx.degree())
        .map(|j| {
            let s = ctx.basis_element(j);
            let mut v = vec![s.clone(); r];
            v[1] = ctx.frobenius(&s, 1);
            v
        })
        .collect();
    QSystem::new(ctx.clone(), r, basis)
}

/// The whole line `F_{q^k} · v`: one point of weight k.
pub fn line_system(ctx: &FieldCtx, v: &[ExtElement]) -> Result<QSystem> {
    let basis = (0..ctx.degree())
        .map(|j| {
            let lambda = ctx.basis_element(j);
            v.iter().map(|x| ctx.mul(&lambda, x)).collect()
        })
        .collect();
    QSystem::new(ctx.clone(), v.len(), basis)
}

/// Necessary condition `u <= rk/2` for a scattered system of rank u.
pub fn scattered_rank_check(u: usize, r: usize, k: usize) -> bool {
    2 * u <= r * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_subspaces;

    fn ctx(q: u64, k: usize) -> FieldCtx {
        FieldCtx::new(q, k).unwrap()
    }

    #[test]
    fn reduction_round_trip_and_linearity() {
        let c = ctx(3, 2);
        let all: Vec<ExtElement> = c.elements().unwrap().collect();
        for a in &all {
            for b in &all {
                let v = vec![a.clone(), b.clone()];
                assert_eq!(unreduce(&c, &field_reduce_vec(&v)).unwrap(), v);
                let w = vec![b.clone(), a.clone()];
                let sum: Vec<ExtElement> = v.iter().zip(&w).map(|(x, y)| c.add(x, y)).collect();
                let f = c.base();
                let lhs = field_reduce_vec(&sum);
                let rhs: Vec<u32> = field_reduce_vec(&v)
                    .iter()
                    .zip(field_reduce_vec(&w))
                    .map(|(&x, y)| f.add(x, y))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
        let f4 = ctx(2, 2);
        assert_eq!(field_reduce_vec(&[f4.alpha()]), vec![0, 1]);
        assert_eq!(field_reduce_vec(&[f4.zero(), f4.zero()]), vec![0; 4]);
    }

    #[test]
    fn point_reduction_is_well_defined() {
        let c = ctx(2, 2);
        let p = vec![c.one(), c.zero()];
        let w = field_reduce_point(&c, &p).unwrap();
        assert_eq!(w.to_rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let c8 = ctx(2, 3);
        let p = vec![c8.alpha(), c8.one(), c8.decode(5).unwrap()];
        let w = field_reduce_point(&c8, &p).unwrap();
        assert_eq!(w.dim(), 3);
        for lambda in c8.elements().unwrap().skip(1) {
            let scaled: Vec<ExtElement> = p.iter().map(|x| c8.mul(&lambda, x)).collect();
            assert_eq!(field_reduce_point(&c8, &scaled).unwrap(), w);
        }
        assert!(field_reduce_point(&c8, &[c8.zero()]).is_err());
    }

    #[test]
    fn spreads_partition_nonzero_vectors() {
        for (q, r, k, size) in [(2u64, 2usize, 2usize, 5usize), (2, 2, 3, 9), (3, 2, 2, 10), (2, 3, 2, 21)] {
            let c = ctx(q, k);
            let spread = desarguesian_spread(&c, r).unwrap();
            assert_eq!(spread.len(), size);
            let mut covered = std::collections::HashSet::new();
            for (i, a) in spread.iter().enumerate() {
                for b in &spread[i + 1..] {
                    assert_eq!(a.intersection_dim(b).unwrap(), 0);
                }
                covered.extend(a.vectors().skip(1));
            }
            assert_eq!(covered.len() as u128, limits::pow_sat(q, r * k) - 1);
        }
    }

    #[test]
    fn gabidulin_system_example() {
        let c = ctx(2, 3);
        let u = gabidulin_system(&c, 2).unwrap();
        assert_eq!(u.u(), 3);
        assert_eq!(u.as_subspace().ambient(), 6);
        assert!(u.as_subspace().contains(&field_reduce_vec(&[c.one(), c.one()])).unwrap());
        let pts = u.points().unwrap();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|p| p.weight == 1));
        assert!(u.is_scattered().unwrap());
        assert!(u.is_nondegenerate());
    }

    #[test]
    fn line_systems_are_not_scattered() {
        for (q, k) in [(2u64, 2usize), (2, 3), (3, 2)] {
            let c = ctx(q, k);
            let s = line_system(&c, &[c.one(), c.alpha()]).unwrap();
            let pts = s.points().unwrap();
            assert_eq!(pts.len(), 1);
            assert_eq!(pts[0].weight, k);
            assert!(!s.is_scattered().unwrap());
            assert!(s.weight_one_points().unwrap().is_empty());
            assert!(!s.is_nondegenerate());
        }
        let c = ctx(2, 3);
        let single = QSystem::new(c.clone(), 2, vec![vec![c.one(), c.alpha()]]).unwrap();
        let pts = single.points().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].weight, 1);
    }

    #[test]
    fn weights_partition_every_subspace() {
        // every 2-dimensional F_2-subspace of F_4^2 as a q-system
        let c = ctx(2, 2);
        for w in enumerate_subspaces(2, 4, c.base()).unwrap() {
            let basis: Vec<Vec<ExtElement>> = w.to_rows().iter().map(|r| unreduce(&c, r).unwrap()).collect();
            let s = QSystem::new(c.clone(), 2, basis).unwrap();
            let total: u128 = s
                .points()
                .unwrap()
                .iter()
                .map(|p| limits::pow_sat(2, p.weight) - 1)
                .sum();
            assert_eq!(total, 3);
            if s.is_scattered().unwrap() {
                assert!(scattered_rank_check(s.u(), 2, 2));
            }
        }
    }

    #[test]
    fn rank_check() {
        assert!(scattered_rank_check(3, 2, 3));
        assert!(!scattered_rank_check(4, 2, 3));
        assert!(!scattered_rank_check(5, 2, 4));
        let c = ctx(2, 2);
        assert!(QSystem::new(c.clone(), 2, vec![vec![c.one(), c.one()], vec![c.one(), c.one()]]).is_err());
    }

    #[test]
    fn twisted_system_shape() {
        let c = ctx(2, 3);
        let t = twisted_system(&c, 3).unwrap();
        let s = c.alpha();
        let v = vec![s.clone(), c.frobenius(&s, 1), s.clone()];
        assert!(t.as_subspace().contains(&field_reduce_vec(&v)).unwrap());
        assert!(t.is_scattered().unwrap());
    }
}
