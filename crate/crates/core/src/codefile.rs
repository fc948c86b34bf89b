//! Self-describing JSON files for codes and q-systems.
//!
//! Codewords are stored as lists of basis rows with entries `0..q`. The
//! header carries the extension field (q, k, modulus) so the file can be
//! read back without knowing how it was produced.

use serde::{Deserialize, Serialize};

use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldSpec};
use crate::linear_set::QSystem;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Header {
    pub q: u64,
    /// Extension degree.
    pub k: usize,
    /// Constant term first, monic.
    pub modulus: Vec<u32>,
    pub n: usize,
    pub code_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub construction: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub header: Header,
    pub codewords: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<Option<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    /// Basis rows of the subspace the code is intersecting with respect to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<Vec<u32>>>,
}

/// A code file after validation.
#[derive(Clone, Debug)]
pub struct LoadedCode {
    pub field: FieldCtx,
    pub code: SubspaceCode,
    pub reference: Option<Subspace>,
    /// Codewords dropped because they repeat an earlier one.
    pub duplicates: usize,
}

impl CodeFile {
    pub fn new(field: &FieldCtx, code: &SubspaceCode, reference: Option<&Subspace>, meta: Option<Meta>) -> Self {
        let spec = field.spec();
        let provenance = code
            .labels()
            .iter()
            .any(Option::is_some)
            .then(|| code.labels().to_vec());
        CodeFile {
            header: Header {
                q: spec.q,
                k: spec.k,
                modulus: spec.modulus,
                n: code.ambient(),
                code_dim: code.dim(),
            },
            codewords: code.codewords().iter().map(Subspace::to_rows).collect(),
            provenance,
            meta,
            reference: reference.map(Subspace::to_rows),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(&self) -> Result<LoadedCode> {
        let h = &self.header;
        let field = FieldCtx::from_spec(&FieldSpec {
            q: h.q,
            k: h.k,
            modulus: h.modulus.clone(),
        })
        .map_err(|e| Error::Parse(format!("header: {e}")))?;
        let base = field.base();
        if h.code_dim == 0 || h.code_dim > h.n {
            return Err(Error::Parse(format!("codeDim {} outside 1..={}", h.code_dim, h.n)));
        }
        if let Some(p) = &self.provenance {
            if p.len() != self.codewords.len() {
                return Err(Error::Parse(format!(
                    "{} provenance labels for {} codewords",
                    p.len(),
                    self.codewords.len()
                )));
            }
        }
        let parse_rows = |rows: &[Vec<u32>], what: &str| -> Result<Subspace> {
            if let Some(bad) = rows.iter().find(|r| r.len() != h.n) {
                return Err(Error::Parse(format!("{what}: row of length {} in F_q^{}", bad.len(), h.n)));
            }
            if rows.iter().flatten().any(|&x| u64::from(x) >= h.q) {
                return Err(Error::Parse(format!("{what}: entry outside 0..{}", h.q)));
            }
            let m = Matrix::from_rows(base, h.n, rows)?;
            Ok(Subspace::span(&m))
        };
        let mut code = SubspaceCode::new(base, h.n, h.code_dim);
        let mut duplicates = 0;
        for (i, rows) in self.codewords.iter().enumerate() {
            let w = parse_rows(rows, &format!("codeword {i}"))?;
            if w.dim() != h.code_dim || rows.len() != h.code_dim {
                return Err(Error::Parse(format!(
                    "codeword {i}: {} rows of rank {}, expected {}",
                    rows.len(),
                    w.dim(),
                    h.code_dim
                )));
            }
            let label = self.provenance.as_ref().and_then(|p| p[i].clone());
            if !code.insert(w, label)? {
                duplicates += 1;
            }
        }
        let reference = self
            .reference
            .as_ref()
            .map(|rows| {
                let u = parse_rows(rows, "reference")?;
                if u.dim() != rows.len() || u.dim() == 0 {
                    return Err(Error::Parse("reference rows are not a basis".into()));
                }
                Ok(u)
            })
            .transpose()?;
        Ok(LoadedCode {
            field,
            code,
            reference,
            duplicates,
        })
    }
}

/// `{"r", "u", "basis"}` with entries in the integer encoding of
/// `F_{q^k}`. The field is given inline or falls back to the default
/// modulus for `(q, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSystemFile {
    pub q: u64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub r: usize,
    pub u: usize,
    pub basis: Vec<Vec<u64>>,
}

impl QSystemFile {
    pub fn new(system: &QSystem) -> Self {
        let spec = system.field().spec();
        QSystemFile {
            q: spec.q,
            k: spec.k,
            modulus: Some(spec.modulus),
            r: system.r(),
            u: system.u(),
            basis: system.encoded_basis(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(&self) -> Result<QSystem> {
        let field = match &self.modulus {
            Some(m) => FieldCtx::with_modulus(self.q, m),
            None => FieldCtx::new(self.q, self.k),
        }
        .map_err(|e| Error::Parse(format!("field: {e}")))?;
        if field.degree() != self.k {
            return Err(Error::Parse(format!("modulus has degree {}, k = {}", field.degree(), self.k)));
        }
        if self.basis.len() != self.u {
            return Err(Error::Parse(format!("u = {} but {} basis vectors", self.u, self.basis.len())));
        }
        QSystem::from_encoded(field, self.r, &self.basis).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::norm_one_code;
    use crate::linear_set::gabidulin_system;

    #[test]
    fn code_round_trip() {
        let c = FieldCtx::new(2, 3).unwrap();
        let set = norm_one_code(&c, 2).unwrap();
        let meta = Meta {
            construction: "norm1".into(),
            params: serde_json::Map::new(),
        };
        let file = CodeFile::new(&c, &set.code, Some(&set.reference), Some(meta));
        let text = file.to_json();
        let back = CodeFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        let loaded = back.load().unwrap();
        assert!(loaded.code.same_codewords(&set.code));
        assert_eq!(loaded.code.labels(), set.code.labels());
        assert_eq!(loaded.reference.unwrap(), set.reference);
        assert_eq!(loaded.duplicates, 0);
        assert_eq!(CodeFile::new(&c, &loaded.code, Some(&set.reference), file.meta.clone()).to_json(), text);
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let c = FieldCtx::new(2, 2).unwrap();
        let set = norm_one_code(&c, 2).unwrap();
        let good = CodeFile::new(&c, &set.code, None, None);

        let mut missing_row = good.clone();
        missing_row.codewords[0].pop();
        assert!(matches!(missing_row.load(), Err(Error::Parse(_))));

        let mut big_entry = good.clone();
        big_entry.codewords[0][0][0] = 2;
        assert!(matches!(big_entry.load(), Err(Error::Parse(_))));

        let mut reducible = good.clone();
        reducible.header.modulus = vec![1, 0, 1];
        assert!(matches!(reducible.load(), Err(Error::Parse(_))));

        let mut dup = good.clone();
        dup.provenance = None;
        dup.codewords.push(dup.codewords[0].clone());
        assert_eq!(dup.load().unwrap().duplicates, 1);

        assert!(CodeFile::from_json("{\"header\": 1}").is_err());
    }

    #[test]
    fn qsystem_round_trip() {
        let c = FieldCtx::new(3, 2).unwrap();
        let s = gabidulin_system(&c, 2).unwrap();
        let file = QSystemFile::new(&s);
        let back = QSystemFile::from_json(&file.to_json()).unwrap().load().unwrap();
        assert_eq!(back.as_subspace(), s.as_subspace());
        let plain = QSystemFile::from_json(r#"{"q": 2, "k": 3, "r": 2, "u": 1, "basis": [[1, 2]]}"#).unwrap();
        assert_eq!(plain.load().unwrap().u(), 1);
        let wrong_u = QSystemFile::from_json(r#"{"q": 2, "k": 3, "r": 2, "u": 2, "basis": [[1, 2]]}"#).unwrap();
        assert!(wrong_u.load().is_err());
    }
}
