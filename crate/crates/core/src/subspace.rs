//! Subspaces of F_q^n in canonical (RREF) form.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::limits;
use crate::matrix::Matrix;

/// A subspace of F_q^n, stored as its RREF basis.
///
/// Two subspaces are equal iff their bases are entry-wise equal. The zero
/// subspace is representable (dimension 0) so that intersections are total.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row space of `m`; the zero space is allowed.
    pub fn span(m: &Matrix) -> Subspace {
        let r = m.rref();
        let rows: Vec<&[u32]> = (0..r.rank).map(|i| r.matrix.row(i)).collect();
        let basis = Matrix::from_rows(m.field(), m.cols(), &rows).expect("same width");
        Subspace {
            basis,
            pivots: r.pivots,
        }
    }

    /// Row space of `m`, rejecting the zero space.
    pub fn from_rows(m: &Matrix) -> Result<Subspace> {
        let s = Self::span(m);
        if s.dim() == 0 {
            return Err(Error::ZeroSpace);
        }
        Ok(s)
    }

    /// Convenience wrapper over [`Subspace::from_rows`] for literal rows.
    pub fn from_row_lists<R: AsRef<[u32]>>(field: Fq, n: usize, rows: &[R]) -> Result<Subspace> {
        Self::from_rows(&Matrix::from_rows(field, n, rows)?)
    }

    /// Wraps a matrix that the caller guarantees is already in RREF with full row rank.
    pub(crate) fn from_rref_unchecked(basis: Matrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(Subspace::span(&basis).basis, basis);
        Subspace { basis, pivots }
    }

    pub fn zero(field: Fq, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fq, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Fq {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Pivot columns, 0-based and strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::DimensionMismatch(format!(
                "ambient F_{}^{} vs F_{}^{}",
                self.field().q(),
                self.ambient(),
                other.field().q(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F_q^{}",
                v.len(),
                self.ambient()
            )));
        }
        // reduce v against the RREF basis using pivot positions
        let f = self.field();
        let mut w: Vec<u32> = v.iter().map(|&x| x % f.q()).collect();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for i in 0..self.dim() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    /// Dimension of the intersection, via `dim U + dim V - dim(U + V)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(self.dim() + other.dim() - stacked.rank())
    }

    /// `U ∩ V`: a left-kernel vector `(x, y)` of the stacked bases `[A; B]`
    /// gives `xA = -yB`, so the intersection is spanned by the `xA`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let ker = stacked.left_kernel();
        let a = self.dim();
        let f = self.field();
        let coeff_rows: Vec<Vec<u32>> = (0..ker.rows()).map(|i| ker.row(i)[..a].to_vec()).collect();
        let coeffs = Matrix::from_rows(f, a, &coeff_rows)?;
        Ok(Subspace::span(&coeffs.mul(&self.basis)?))
    }

    /// Image under `v ↦ v M`.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map on F_q^{}",
                map.rows(),
                map.cols(),
                self.ambient()
            )));
        }
        Ok(Subspace::span(&self.basis.mul(map)?))
    }

    /// All `q^dim` vectors of the subspace, as coefficient combinations of the basis.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let f = self.field();
        let q = f.q() as u64;
        let dim = self.dim();
        let n = self.ambient();
        let count = (q as u128).pow(dim as u32);
        (0..count).map(move |mut idx| {
            let mut v = vec![0u32; n];
            for i in 0..dim {
                let c = (idx % q as u128) as u32;
                idx /= q as u128;
                if c == 0 {
                    continue;
                }
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = f.add(*x, f.mul(c, b));
                }
            }
            v
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.basis.to_rows())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by ambient, then dimension, then the row-major basis entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient(), self.dim(), self.basis.as_slice()).cmp(&(
            other.ambient(),
            other.dim(),
            other.basis.as_slice(),
        ))
    }
}

/// `2 (k - dim(U ∩ V))` for two k-dimensional subspaces.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    Ok(2 * (u.dim() - u.intersection_dim(v)?))
}

/// Gaussian binomial `[n choose k]_q`, or `None` on overflow.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    Some(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All strictly increasing k-subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                next = Some(succ);
                break;
            }
        }
        Some(cur)
    })
}

/// Odometer over the free entries of the RREF template with given pivots.
/// Free slots are ordered row-major, so the first (top-left) slot is most
/// significant and the matrices come out in lexicographic order.
pub(crate) struct CellIter {
    template: Matrix,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl CellIter {
    pub(crate) fn new(field: Fq, n: usize, pivots: &[usize]) -> CellIter {
        let k = pivots.len();
        let mut template = Matrix::zeros(field, k, n);
        for (i, &p) in pivots.iter().enumerate() {
            template.set(i, p, 1);
        }
        let slots = free_slots(n, pivots);
        CellIter {
            template,
            pivots: pivots.to_vec(),
            counter: vec![0; slots.len()],
            slots,
            done: false,
        }
    }

}

/// Free entries (row, column) of the RREF template with 0-based `pivots`, row-major.
pub(crate) fn free_slots(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for j in p + 1..n {
            if !pivots.contains(&j) {
                slots.push((i, j));
            }
        }
    }
    slots
}

impl Iterator for CellIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut m = self.template.clone();
        for (&(i, j), &v) in self.slots.iter().zip(&self.counter) {
            m.set(i, j, v);
        }
        let q = self.template.field().q();
        let mut idx = self.counter.len();
        loop {
            if idx == 0 {
                self.done = true;
                break;
            }
            idx -= 1;
            self.counter[idx] += 1;
            if self.counter[idx] < q {
                break;
            }
            self.counter[idx] = 0;
        }
        Some(Subspace::from_rref_unchecked(m, self.pivots.clone()))
    }
}

struct HeapEntry {
    head: Subspace,
    source: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    // reversed for a min-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.head.cmp(&self.head)
    }
}

/// Streams every k-subspace of F_q^n exactly once, in lexicographic order of
/// the row-major RREF basis. Each Schubert cell is already sorted, so the
/// stream is a k-way merge over cells.
pub struct SubspaceEnumerator {
    cells: Vec<CellIter>,
    heap: BinaryHeap<HeapEntry>,
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let HeapEntry { head, source } = self.heap.pop()?;
        if let Some(next) = self.cells[source].next() {
            self.heap.push(HeapEntry { head: next, source });
        }
        Some(head)
    }
}

pub fn enumerate_subspaces(k: usize, n: usize, field: Fq) -> Result<SubspaceEnumerator> {
    if k > n {
        return Err(Error::Range(format!("k = {k} > n = {n}")));
    }
    let count = gaussian_binomial(n, k, field.q() as u64).ok_or(Error::Overflow)?;
    limits::check(count, limits::ENUMERATION)?;
    let mut cells: Vec<CellIter> = combinations(n, k)
        .map(|p| CellIter::new(field, n, &p))
        .collect();
    let mut heap = BinaryHeap::new();
    for (source, cell) in cells.iter_mut().enumerate() {
        if let Some(head) = cell.next() {
            heap.push(HeapEntry { head, source });
        }
    }
    Ok(SubspaceEnumerator { cells, heap })
}
