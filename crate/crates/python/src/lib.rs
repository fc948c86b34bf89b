//! Python bindings: build, load and verify intersecting sets of subspaces.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ssc_core::bounds;
use ssc_core::codefile::{CodeFile, Meta};
use ssc_core::construct::{self, IntersectingSet};
use ssc_core::ferrers::{self, FerrersMethod};
use ssc_core::linear_set;
use ssc_core::verify::VerificationReport;
use ssc_core::{FerrersDiagram, FieldCtx, Fq, Matrix, Subspace, SubspaceCode};

fn py_err(e: ssc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn method(name: &str, seed: u64) -> PyResult<FerrersMethod> {
    Ok(match name {
        "auto" => FerrersMethod::Auto { seed },
        "mrd-restrict" => FerrersMethod::MrdRestrict,
        "greedy" => FerrersMethod::Greedy { seed },
        "exhaustive" => FerrersMethod::Exhaustive,
        _ => return Err(PyValueError::new_err(format!("unknown method {name:?}"))),
    })
}

/// F_{q^k} in the power basis; elements are integers with the constant
/// coefficient as the least significant base-q digit.
#[pyclass(module = "ssc", frozen)]
pub struct Field {
    ctx: FieldCtx,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (q, k, modulus=None))]
    fn new(q: u64, k: usize, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let ctx = match modulus {
            Some(m) => FieldCtx::with_modulus(q, &m),
            None => FieldCtx::new(q, k),
        }
        .map_err(py_err)?;
        Ok(Field { ctx })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn k(&self) -> usize {
        self.ctx.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.ctx.modulus().to_vec()
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        let (x, y) = (self.ctx.decode(a).map_err(py_err)?, self.ctx.decode(b).map_err(py_err)?);
        self.ctx.encode(&self.ctx.mul(&x, &y)).map_err(py_err)
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        let (x, y) = (self.ctx.decode(a).map_err(py_err)?, self.ctx.decode(b).map_err(py_err)?);
        self.ctx.encode(&self.ctx.add(&x, &y)).map_err(py_err)
    }

    fn frobenius(&self, a: u64, i: usize) -> PyResult<u64> {
        let x = self.ctx.decode(a).map_err(py_err)?;
        self.ctx.encode(&self.ctx.frobenius(&x, i)).map_err(py_err)
    }

    fn norm(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.norm(&self.ctx.decode(a).map_err(py_err)?))
    }

    fn norm_one_elements(&self) -> PyResult<Vec<u64>> {
        let ones = self.ctx.norm_one_elements().map_err(py_err)?;
        ones.iter().map(|x| self.ctx.encode(x).map_err(py_err)).collect()
    }

    fn __repr__(&self) -> String {
        format!("Field(q={}, k={}, modulus={:?})", self.ctx.q(), self.ctx.degree(), self.ctx.modulus())
    }
}

/// Outcome of checking a code against a reference subspace.
#[pyclass(module = "ssc", frozen, get_all)]
pub struct Report {
    valid: bool,
    size: usize,
    min_distance: usize,
    worst_pair_intersection_dim: usize,
    u_intersection_dims: Vec<usize>,
    /// name -> (value, met, conjectural)
    bounds: BTreeMap<String, (u128, bool, bool)>,
}

impl From<VerificationReport> for Report {
    fn from(r: VerificationReport) -> Self {
        Report {
            valid: r.valid,
            size: r.size,
            min_distance: r.min_distance,
            worst_pair_intersection_dim: r.worst_pair_intersection_dim,
            u_intersection_dims: r.per_codeword_u_intersection_dims,
            bounds: r
                .bound_comparisons
                .into_iter()
                .map(|(k, b)| (k, (b.value, b.met, b.conjectural)))
                .collect(),
        }
    }
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!("Report(valid={}, size={}, min_distance={})", self.valid, self.size, self.min_distance)
    }
}

/// A set of k-spaces of F_q^n together with its reference subspace U.
#[pyclass(module = "ssc", frozen)]
pub struct Code {
    field: FieldCtx,
    code: SubspaceCode,
    reference: Option<Subspace>,
    construction: String,
}

impl Code {
    fn from_set(field: FieldCtx, set: IntersectingSet, construction: &str) -> Self {
        Code { field, code: set.code, reference: Some(set.reference), construction: construction.into() }
    }
}

#[pymethods]
impl Code {
    fn __len__(&self) -> usize {
        self.code.len()
    }

    #[getter]
    fn construction(&self) -> &str {
        &self.construction
    }

    /// Reduced row echelon bases of the codewords.
    fn codewords(&self) -> Vec<Vec<Vec<u32>>> {
        self.code.codewords().iter().map(Subspace::to_rows).collect()
    }

    fn labels(&self) -> Vec<Option<String>> {
        self.code.labels().to_vec()
    }

    fn reference(&self) -> Option<Vec<Vec<u32>>> {
        self.reference.as_ref().map(Subspace::to_rows)
    }

    fn min_distance(&self) -> Option<usize> {
        self.code.min_distance()
    }

    /// Check every codeword meets U in at least `l` dimensions and pairs
    /// meet in at most `t`. `u` overrides the stored reference.
    #[pyo3(signature = (l=1, t=0, u=None))]
    fn verify(&self, l: usize, t: usize, u: Option<Vec<Vec<u32>>>) -> PyResult<Report> {
        let reference = match u {
            Some(rows) => Subspace::from_row_lists(self.code.field(), self.code.ambient(), &rows).map_err(py_err)?,
            None => self
                .reference
                .clone()
                .ok_or_else(|| PyValueError::new_err("no reference subspace; pass u"))?,
        };
        let rep = ssc_core::verify_intersecting(&self.code, &reference, l, t).map_err(py_err)?;
        Ok(rep.into())
    }

    fn to_json(&self) -> String {
        let meta = Meta { construction: self.construction.clone(), params: Default::default() };
        CodeFile::new(&self.field, &self.code, self.reference.as_ref(), Some(meta)).to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Code> {
        let file = CodeFile::from_json(text).map_err(py_err)?;
        let construction = file.meta.as_ref().map_or_else(String::new, |m| m.construction.clone());
        let loaded = file.load().map_err(py_err)?;
        Ok(Code { field: loaded.field, code: loaded.code, reference: loaded.reference, construction })
    }

    fn __repr__(&self) -> String {
        format!(
            "Code({}, {} spaces of dim {} in F_{}^{})",
            self.construction,
            self.code.len(),
            self.code.dim(),
            self.code.field().q(),
            self.code.ambient()
        )
    }
}

/// The spaces sigma_a for all a of norm 1, with U = {(s, s^q, ...)}.
#[pyfunction]
fn norm_one_code(q: u64, k: usize, r: usize) -> PyResult<Code> {
    let ctx = FieldCtx::new(q, k).map_err(py_err)?;
    let set = construct::norm_one_code(&ctx, r).map_err(py_err)?;
    Ok(Code::from_set(ctx, set, "norm1"))
}

/// Field reductions of the weight-one points of a q-system.
/// `system` is "gabidulin", "twisted", or a list of encoded basis vectors.
#[pyfunction]
#[pyo3(signature = (q, k, r, system="gabidulin".into()))]
fn scattered_code(q: u64, k: usize, r: usize, system: SystemSpec) -> PyResult<Code> {
    let ctx = FieldCtx::new(q, k).map_err(py_err)?;
    let sys = match system {
        SystemSpec::Named(name) if name == "gabidulin" => linear_set::gabidulin_system(&ctx, r),
        SystemSpec::Named(name) if name == "twisted" => linear_set::twisted_system(&ctx, r),
        SystemSpec::Named(name) => return Err(PyValueError::new_err(format!("unknown system {name:?}"))),
        SystemSpec::Basis(b) => linear_set::QSystem::from_encoded(ctx.clone(), r, &b),
    }
    .map_err(py_err)?;
    let set = construct::scattered_code(&sys).map_err(py_err)?;
    Ok(Code::from_set(ctx, set, "scattered"))
}

#[derive(FromPyObject)]
enum SystemSpec {
    Named(String),
    Basis(Vec<Vec<u64>>),
}

impl From<&str> for SystemSpec {
    fn from(s: &str) -> Self {
        SystemSpec::Named(s.into())
    }
}

/// Union of lifted Ferrers-diagram codes over compatible Schubert cells.
#[pyfunction]
#[pyo3(signature = (q, k, r, u, l=1, t=0, method="auto", seed=0))]
#[allow(clippy::too_many_arguments)]
fn multilevel_code(q: u64, k: usize, r: usize, u: usize, l: usize, t: usize, method: &str, seed: u64) -> PyResult<Code> {
    let ctx = FieldCtx::new(q, k).map_err(py_err)?;
    let ml = ferrers::multilevel_assemble(k, r, u, l, t, ctx.base(), self::method(method, seed)?).map_err(py_err)?;
    Ok(Code { field: ctx, code: ml.code, reference: Some(ml.reference), construction: "multilevel".into() })
}

/// Rank-metric code on a Ferrers diagram: (size, bound exponent, words).
type Words = Vec<Vec<Vec<u32>>>;

#[pyfunction]
#[pyo3(signature = (rows, delta, q=2, method="auto", seed=0))]
fn ferrers_code(rows: Vec<usize>, delta: usize, q: u64, method: &str, seed: u64) -> PyResult<(usize, usize, Words)> {
    let d = FerrersDiagram::new(rows).map_err(py_err)?;
    let f = Fq::new(q).map_err(py_err)?;
    let c = ferrers::construct_ferrers_code(&d, delta, f, self::method(method, seed)?).map_err(py_err)?;
    Ok((c.size(), c.bound_exponent(), c.words.iter().map(Matrix::to_rows).collect()))
}

#[pyfunction]
fn upper_bound_basic(k: usize, r: usize, u: usize, q: u64) -> PyResult<u128> {
    bounds::upper_bound_basic(k, r, u, q).map_err(py_err)
}

#[pyfunction]
fn upper_bound_general(u: usize, l: usize, t: usize, q: u64) -> Option<u128> {
    bounds::upper_bound_general(u, l, t, q)
}

/// (exponent, value) of the conjectural lower bound q^nu_min.
#[pyfunction]
fn lower_bound_multilevel(k: usize, r: usize, u: usize, l: usize, t: usize, q: u64) -> PyResult<(usize, u128)> {
    let b = bounds::lower_bound_multilevel(k, r, u, l, t, q).map_err(py_err)?;
    Ok((b.exponent, b.value))
}

#[pyfunction]
fn closed_form_nu_min(k: usize, r: usize, u: usize, l: usize, t: usize) -> PyResult<usize> {
    ferrers::closed_form_nu_min(k, r, u, l, t).map_err(py_err)
}

/// Best distance-2k multilevel bound and the cells achieving it.
#[pyfunction]
fn max_multilevel_bound_2k(k: usize, r: usize, u: usize, q: u64) -> PyResult<(u128, Vec<Vec<usize>>)> {
    let (v, cells) = ferrers::max_multilevel_bound_2k(k, r, u, q).map_err(py_err)?;
    Ok((v, cells.iter().map(|p| p.as_slice().to_vec()).collect()))
}

#[pyfunction]
fn exact_mq_search(k: usize, r: usize, u: usize, l: usize, t: usize, q: u64) -> PyResult<usize> {
    let f = Fq::new(q).map_err(py_err)?;
    bounds::exact_mq_search(k, r, u, l, t, f).map_err(py_err)
}

#[pyfunction]
fn gaussian_binomial(n: usize, k: usize, q: u64) -> Option<u128> {
    ssc_core::gaussian_binomial(n, k, q)
}

/// dim(A) + dim(B) - 2 dim(A ∩ B) for the row spaces of `a` and `b`.
#[pyfunction]
fn subspace_distance(a: Vec<Vec<u32>>, b: Vec<Vec<u32>>, q: u64) -> PyResult<usize> {
    let f = Fq::new(q).map_err(py_err)?;
    let n = a.first().map_or(0, Vec::len);
    let sa = Subspace::from_row_lists(f, n, &a).map_err(py_err)?;
    let sb = Subspace::from_row_lists(f, n, &b).map_err(py_err)?;
    ssc_core::subspace_distance(&sa, &sb).map_err(py_err)
}

#[pymodule]
fn ssc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Code>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(norm_one_code, m)?)?;
    m.add_function(wrap_pyfunction!(scattered_code, m)?)?;
    m.add_function(wrap_pyfunction!(multilevel_code, m)?)?;
    m.add_function(wrap_pyfunction!(ferrers_code, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_basic, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_general, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_multilevel, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_nu_min, m)?)?;
    m.add_function(wrap_pyfunction!(max_multilevel_bound_2k, m)?)?;
    m.add_function(wrap_pyfunction!(exact_mq_search, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(subspace_distance, m)?)?;
    Ok(())
}
