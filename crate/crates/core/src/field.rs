//! The extension field F_{q^k} = F_q[x]/(f) with a fixed monic irreducible `f`.
//!
//! Elements are coefficient vectors in the power basis `1, α, …, α^{k-1}`
//! where `α` is a root of the modulus. The integer encoding of an element
//! reads the coefficients as base-q digits, constant term least significant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::limits;
use crate::matrix::Matrix;

pub const MAX_DEGREE: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    coeffs: Vec<u32>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// Serialized form of a field context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u64,
    pub k: usize,
    pub modulus: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldCtx {
    base: Fq,
    k: usize,
    /// Monic, constant term first, length k + 1.
    modulus: Vec<u32>,
    /// `order = q^k` when it fits in a u64.
    order: Option<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.base.q(), self.k, self.modulus)
    }
}

impl FieldCtx {
    /// F_{q^k} with the smallest monic irreducible modulus of degree k, where
    /// candidates are ordered by the integer value of their non-leading
    /// coefficients (constant term least significant).
    pub fn new(q: u64, k: usize) -> Result<Self> {
        let base = Fq::new(q)?;
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(k));
        }
        if k == 1 {
            return Self::build(base, vec![0, 1]);
        }
        let mut tail = vec![0u32; k];
        loop {
            let mut candidate = tail.clone();
            candidate.push(1);
            if is_irreducible(base, &candidate) {
                return Self::build(base, candidate);
            }
            // next tail in base-q counting order, constant term least significant
            let mut i = 0;
            loop {
                if i == k {
                    return Err(Error::NoIrreducible(k));
                }
                tail[i] += 1;
                if tail[i] == base.q() {
                    tail[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Field with a caller-supplied modulus (constant term first, monic).
    pub fn with_modulus(q: u64, modulus: &[u32]) -> Result<Self> {
        let base = Fq::new(q)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(k));
        }
        if modulus.iter().any(|&c| c >= base.q()) || modulus[k] != 1 {
            return Err(Error::BadModulus(k));
        }
        if !is_irreducible(base, modulus) {
            return Err(Error::BadModulus(k));
        }
        Self::build(base, modulus.to_vec())
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let ctx = Self::with_modulus(spec.q, &spec.modulus)?;
        if ctx.k != spec.k {
            return Err(Error::BadModulus(spec.k));
        }
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            q: self.q() as u64,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    fn build(base: Fq, modulus: Vec<u32>) -> Result<Self> {
        let k = modulus.len() - 1;
        let order = (base.q() as u64).checked_pow(k as u32);
        Ok(FieldCtx {
            base,
            k,
            modulus,
            order,
        })
    }

    pub fn base(&self) -> Fq {
        self.base
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q^k`, if it fits in a u64.
    pub fn order(&self) -> Option<u64> {
        self.order
    }

    fn order_checked(&self) -> Result<u64> {
        self.order.ok_or(Error::Overflow)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> ExtElement {
        self.from_prime(1)
    }

    /// Embeds `c` of the prime field.
    pub fn from_prime(&self, c: u32) -> ExtElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.q();
        e
    }

    /// The class of `x`, i.e. the root of the modulus.
    pub fn alpha(&self) -> ExtElement {
        let mut e = self.zero();
        if self.k == 1 {
            e.coeffs[0] = self.base.neg(self.modulus[0]);
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// `α^j` reduced into the power basis.
    pub fn basis_element(&self, j: usize) -> ExtElement {
        self.pow(&self.alpha(), j as u128)
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<ExtElement> {
        if coeffs.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for degree {}",
                coeffs.len(),
                self.k
            )));
        }
        Ok(ExtElement {
            coeffs: coeffs.iter().map(|&c| c % self.q()).collect(),
        })
    }

    pub fn encode(&self, x: &ExtElement) -> Result<u64> {
        self.order_checked()?;
        let q = self.q() as u64;
        Ok(x.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    pub fn decode(&self, mut n: u64) -> Result<ExtElement> {
        let order = self.order_checked()?;
        if n >= order {
            return Err(Error::Range(format!("element code {n} >= field order {order}")));
        }
        let q = self.q() as u64;
        let mut coeffs = vec![0u32; self.k];
        for c in coeffs.iter_mut() {
            *c = (n % q) as u32;
            n /= q;
        }
        Ok(ExtElement { coeffs })
    }

    /// All field elements in encoding order. Subject to the field-scan cap.
    pub fn elements(&self) -> Result<impl Iterator<Item = ExtElement> + '_> {
        let order = self.order_checked()?;
        limits::check(order as u128, limits::FIELD_SCAN)?;
        Ok((0..order).map(move |n| self.decode(n).expect("in range")))
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = self.base;
        ExtElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = self.base;
        ExtElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.sub(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        let f = self.base;
        ExtElement {
            coeffs: a.coeffs.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    pub fn scale(&self, c: u32, a: &ExtElement) -> ExtElement {
        let f = self.base;
        ExtElement {
            coeffs: a.coeffs.iter().map(|&x| f.mul(c % f.q(), x)).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let prod = poly_mul(self.base, &a.coeffs, &b.coeffs);
        let mut rem = poly_rem(self.base, &prod, &self.modulus);
        rem.resize(self.k, 0);
        ExtElement { coeffs: rem }
    }

    pub fn pow(&self, a: &ExtElement, mut e: u128) -> ExtElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.base;
        let (g, s) = poly_ext_gcd(f, &trim(a.coeffs.clone()), &self.modulus);
        // g is a nonzero constant because the modulus is irreducible
        let ginv = f.inv(g[0])?;
        let mut c: Vec<u32> = s.iter().map(|&x| f.mul(x, ginv)).collect();
        c = poly_rem(f, &c, &self.modulus);
        c.resize(self.k, 0);
        Ok(ExtElement { coeffs: c })
    }

    pub fn div(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x^{q^i}`; iterates are taken mod k.
    pub fn frobenius(&self, x: &ExtElement, i: usize) -> ExtElement {
        let mut y = x.clone();
        for _ in 0..(i % self.k) {
            y = self.pow(&y, self.q() as u128);
        }
        y
    }

    /// `N(x) = x · x^q ⋯ x^{q^{k-1}}`, returned as a prime-field scalar.
    pub fn norm(&self, x: &ExtElement) -> u32 {
        let mut acc = self.one();
        let mut conj = x.clone();
        for _ in 0..self.k {
            acc = self.mul(&acc, &conj);
            conj = self.pow(&conj, self.q() as u128);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    pub fn norm_element(&self, x: &ExtElement) -> ExtElement {
        self.from_prime(self.norm(x))
    }

    /// The kernel of the norm map, in encoding order.
    pub fn norm_one_elements(&self) -> Result<Vec<ExtElement>> {
        Ok(self.elements()?.filter(|x| self.norm(x) == 1).collect())
    }

    /// The k x k matrix over F_q of an F_q-linear map on F_{q^k}, acting on
    /// coordinate row vectors: row j is the image of `α^j`.
    pub fn linear_map_matrix<F>(&self, map: F) -> Matrix
    where
        F: Fn(&ExtElement) -> ExtElement,
    {
        let rows: Vec<Vec<u32>> = (0..self.k)
            .map(|j| map(&self.basis_element(j)).coeffs)
            .collect();
        Matrix::from_rows(self.base, self.k, &rows).expect("k columns")
    }

    /// Roots of `x^q - a x` as an F_q-subspace of F_{q^k}, given by a basis
    /// of coordinate vectors.
    pub fn linearized_kernel(&self, a: &ExtElement) -> Matrix {
        let map = self.linear_map_matrix(|x| {
            let xq = self.pow(x, self.q() as u128);
            self.sub(&xq, &self.mul(a, x))
        });
        let ker = map.left_kernel();
        ker.rref().matrix
    }

    /// Some `β ≠ 0` with `β^{1-q} = a`. Requires `N(a) = 1`.
    pub fn hilbert90_root(&self, a: &ExtElement) -> Result<ExtElement> {
        if self.norm(a) != 1 {
            return Err(Error::NormNotOne);
        }
        let ker = self.linearized_kernel(a);
        let root = self.element(ker.row(0))?;
        self.inv(&root)
    }

    pub fn is_in_prime_subfield(&self, x: &ExtElement) -> bool {
        x.coeffs[1..].iter().all(|&c| c == 0)
    }
}

fn trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q = f.q() as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % q;
        }
    }
    trim(out.into_iter().map(|x| x as u32).collect())
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub(crate) fn poly_rem(f: Fq, a: &[u32], m: &[u32]) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero divisor");
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        r = trim(r);
    }
    r
}

fn poly_divrem(f: Fq, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero divisor");
    let mut quo = vec![0u32; r.len().saturating_sub(dm)];
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        quo[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

fn poly_sub(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

/// Returns `(g, s)` with `s a ≡ g (mod m)`, g = gcd(a, m).
fn poly_ext_gcd(f: Fq, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(m.to_vec()));
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    while !r1.is_empty() {
        let (quo, rem) = poly_divrem(f, &r0, &r1);
        let s2 = poly_sub(f, &s0, &poly_mul(f, &quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

fn poly_gcd(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// `base^e mod m` for polynomials.
fn poly_powmod(f: Fq, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), m);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test: a polynomial of degree d is irreducible iff
/// `gcd(x^{q^i} - x, f) = 1` for every `1 <= i <= d/2`.
pub fn is_irreducible(f: Fq, poly: &[u32]) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let d = poly.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut xqi = x.clone();
    for _ in 1..=d / 2 {
        xqi = poly_powmod(f, &xqi, f.q() as u64, &poly);
        let g = poly_gcd(f, &poly_sub(f, &xqi, &x), &poly);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Rank over F_{q^k} of a list of vectors in F_{q^k}^r.
pub fn ext_rank(ctx: &FieldCtx, rows: &[Vec<ExtElement>]) -> usize {
    let mut m: Vec<Vec<ExtElement>> = rows.to_vec();
    let width = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..width {
        let Some(src) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, src);
        let inv = ctx.inv(&m[rank][c]).expect("nonzero pivot");
        let pivot_row: Vec<ExtElement> = m[rank].iter().map(|x| ctx.mul(x, &inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = ctx.sub(x, &ctx.mul(&factor, p));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive trial division by every monic polynomial of degree <= d/2.
    fn irreducible_by_trial_division(f: Fq, poly: &[u32]) -> bool {
        let d = poly.len() - 1;
        let q = f.q();
        for deg in 1..=d / 2 {
            let count = (q as u64).pow(deg as u32);
            for n in 0..count {
                let mut div = Vec::with_capacity(deg + 1);
                let mut t = n;
                for _ in 0..deg {
                    div.push((t % q as u64) as u32);
                    t /= q as u64;
                }
                div.push(1);
                if poly_rem(f, poly, &div).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for &(q, d) in &[(2u64, 2usize), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
            let f = Fq::new(q).unwrap();
            let count = q.pow(d as u32);
            for n in 0..count {
                let mut poly = Vec::new();
                let mut t = n;
                for _ in 0..d {
                    poly.push((t % q) as u32);
                    t /= q;
                }
                poly.push(1);
                assert_eq!(
                    is_irreducible(f, &poly),
                    irreducible_by_trial_division(f, &poly),
                    "q={q} poly={poly:?}"
                );
            }
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert!(FieldCtx::new(4, 2).is_err());
        assert!(FieldCtx::new(2, 0).is_err());
        assert!(FieldCtx::new(2, 17).is_err());
        assert!(FieldCtx::with_modulus(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let ctx = FieldCtx::new(2, 2).unwrap();
        let w = ctx.alpha();
        let w1 = ctx.element(&[1, 1]).unwrap();
        assert_eq!(ctx.mul(&w, &w), w1);
        assert_eq!(ctx.frobenius(&w, 1), w1);
        assert_eq!(ctx.frobenius(&w, 0), w);
        let norm_one = ctx.norm_one_elements().unwrap();
        assert_eq!(norm_one, vec![ctx.one(), w.clone(), w1]);
        // β with β^{-1} = β^2 and β^{1-2} = ω
        let beta = ctx.hilbert90_root(&w).unwrap();
        assert_eq!(ctx.div(&beta, &ctx.mul(&beta, &beta)).unwrap(), w);
    }

    #[test]
    fn f8_inverse_norm_frobenius() {
        let ctx = FieldCtx::new(2, 3).unwrap();
        for x in ctx.elements().unwrap() {
            assert_eq!(ctx.frobenius(&x, 3), x);
            assert_eq!(ctx.mul(&x, &ctx.one()), x);
            if x.is_zero() {
                assert_eq!(ctx.norm(&x), 0);
                assert_eq!(ctx.inv(&x), Err(Error::DivisionByZero));
            } else {
                assert_eq!(ctx.mul(&ctx.inv(&x).unwrap(), &x), ctx.one());
                assert_eq!(ctx.norm(&x), 1);
            }
        }
        assert_eq!(ctx.norm_one_elements().unwrap().len(), 7);
    }

    #[test]
    fn prime_field_context() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        assert_eq!(ctx.norm_one_elements().unwrap(), vec![ctx.one()]);
        let three = ctx.from_prime(3);
        assert_eq!(ctx.norm(&three), 3);
        assert_eq!(ctx.frobenius(&three, 7), three);
    }

    #[test]
    fn encoding_round_trip() {
        let ctx = FieldCtx::new(3, 3).unwrap();
        for n in 0..27 {
            let x = ctx.decode(n).unwrap();
            assert_eq!(ctx.encode(&x).unwrap(), n);
        }
        assert!(ctx.decode(27).is_err());
        assert_eq!(ctx.encode(&ctx.alpha()).unwrap(), 3);
    }

    #[test]
    fn linearized_kernel_by_exhaustive_roots() {
        let ctx = FieldCtx::new(2, 3).unwrap();
        let w = ctx.alpha();
        let roots: Vec<ExtElement> = ctx
            .elements()
            .unwrap()
            .filter(|x| ctx.sub(&ctx.pow(x, 2), &ctx.mul(&w, x)).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        let ker = ctx.linearized_kernel(&w);
        assert_eq!(ker.rows(), 1);
        assert!(roots.contains(&ctx.element(ker.row(0)).unwrap()));
        let beta = ctx.hilbert90_root(&w).unwrap();
        let scanned: Vec<ExtElement> = ctx
            .elements()
            .unwrap()
            .filter(|b| !b.is_zero() && ctx.div(b, &ctx.pow(b, 2)).unwrap() == w)
            .collect();
        assert!(scanned.contains(&beta));
        assert_eq!(ctx.hilbert90_root(&ctx.one()).unwrap(), ctx.one());
        // a = 1: the kernel is the prime subfield
        let ker1 = ctx.linearized_kernel(&ctx.one());
        assert_eq!(ker1.to_rows(), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn hilbert90_rejects_norm_not_one() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let bad = ctx.elements().unwrap().find(|x| !x.is_zero() && ctx.norm(x) != 1).unwrap();
        assert_eq!(ctx.hilbert90_root(&bad), Err(Error::NormNotOne));
        assert_eq!(ctx.linearized_kernel(&bad).rows(), 0);
    }

    #[test]
    fn ext_rank_detects_proportional_rows() {
        let ctx = FieldCtx::new(2, 2).unwrap();
        let w = ctx.alpha();
        let r1 = vec![ctx.one(), w.clone()];
        let r2 = vec![w.clone(), ctx.mul(&w, &w)];
        assert_eq!(ext_rank(&ctx, &[r1.clone(), r2]), 1);
        assert_eq!(ext_rank(&ctx, &[r1, vec![ctx.zero(), ctx.one()]]), 2);
    }
}
