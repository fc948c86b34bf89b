//! Constant-dimension subspace codes.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::matrix::Matrix;
use crate::subspace::{subspace_distance, Subspace};

/// A set of k-dimensional subspaces of F_q^n, in insertion order, with an
/// optional provenance label per codeword.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    field: Fq,
    n: usize,
    k: usize,
    codewords: Vec<Subspace>,
    labels: Vec<Option<String>>,
    seen: HashSet<Subspace>,
}

impl SubspaceCode {
    pub fn new(field: Fq, n: usize, k: usize) -> Self {
        SubspaceCode {
            field,
            n,
            k,
            codewords: Vec::new(),
            labels: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Adds a codeword. Returns `Ok(false)` if it was already present.
    pub fn insert(&mut self, w: Subspace, label: Option<String>) -> Result<bool> {
        if w.ambient() != self.n || w.dim() != self.k || w.field() != self.field {
            return Err(Error::DimensionMismatch(format!(
                "{}-space of F_{}^{} in a code of {}-spaces of F_{}^{}",
                w.dim(),
                w.field().q(),
                w.ambient(),
                self.k,
                self.field.q(),
                self.n
            )));
        }
        if !self.seen.insert(w.clone()) {
            return Ok(false);
        }
        self.codewords.push(w);
        self.labels.push(label);
        Ok(true)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn contains(&self, w: &Subspace) -> bool {
        self.seen.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Subspace, Option<&str>)> {
        self.codewords
            .iter()
            .zip(&self.labels)
            .map(|(w, l)| (w, l.as_deref()))
    }

    /// Codeword images under `v ↦ v M`, labels carried along.
    pub fn image(&self, map: &Matrix) -> Result<SubspaceCode> {
        if map.rows() != self.n || map.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map on F_q^{}",
                map.rows(),
                map.cols(),
                self.n
            )));
        }
        let mut out = SubspaceCode::new(self.field, self.n, self.k);
        for (w, l) in self.iter() {
            let img = w.image(map)?;
            if img.dim() != self.k {
                return Err(Error::NotInvertible);
            }
            out.insert(img, l.map(str::to_owned))?;
        }
        Ok(out)
    }

    /// Minimum pairwise subspace distance; `None` for fewer than two codewords.
    pub fn min_distance(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                let d = subspace_distance(a, b).expect("same shape");
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
        best
    }

    /// True when the codeword sets agree, ignoring order and labels.
    pub fn same_codewords(&self, other: &SubspaceCode) -> bool {
        self.len() == other.len() && self.codewords.iter().all(|w| other.contains(w))
    }
}
