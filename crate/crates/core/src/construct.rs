//! Intersecting sets from norm-1 elements and from scattered linear sets,
//! and the explicit map relating the two.

use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldCtx};
use crate::linear_set::{field_reduce_point, field_reduce_vec, gabidulin_system, QSystem};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// A code together with the subspace it is intersecting with respect to.
#[derive(Clone, Debug)]
pub struct IntersectingSet {
    pub code: SubspaceCode,
    pub reference: Subspace,
    pub warnings: Vec<String>,
}

fn encode_label(ctx: &FieldCtx, v: &[ExtElement]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| ctx.encode(x).map_or_else(|_| format!("{x:?}"), |e| e.to_string()))
        .collect();
    parts.join(",")
}

/// `σ_a = {(s, a s, s^{q^2}, …, s^{q^{r-1}}) : s ∈ F_{q^k}}`.
pub fn sigma(ctx: &FieldCtx, a: &ExtElement, r: usize) -> Result<Subspace> {
    if r < 2 {
        return Err(Error::Range(format!("need r >= 2, got {r}")));
    }
    let rows: Vec<Vec<u32>> = (0..ctx.degree())
        .map(|j| {
            let s = ctx.basis_element(j);
            let mut v = vec![s.clone(), ctx.mul(a, &s)];
            v.extend((2..r).map(|i| ctx.frobenius(&s, i)));
            field_reduce_vec(&v)
        })
        .collect();
    Subspace::from_row_lists(ctx.base(), r * ctx.degree(), &rows)
}

/// The spaces `φ(σ_a)` over all `a` of norm 1, intersecting with respect to
/// `φ(U)` for `U = {(s, s^q, …, s^{q^{r-1}})}`. Labels are `a=<encoding>`.
pub fn norm_one_code(ctx: &FieldCtx, r: usize) -> Result<IntersectingSet> {
    let reference = gabidulin_system(ctx, r)?.as_subspace().clone();
    let mut code = SubspaceCode::new(ctx.base(), r * ctx.degree(), ctx.degree());
    for a in ctx.norm_one_elements()? {
        let label = format!("a={}", ctx.encode(&a)?);
        code.insert(sigma(ctx, &a, r)?, Some(label))?;
    }
    Ok(IntersectingSet {
        code,
        reference,
        warnings: Vec::new(),
    })
}

/// The field reductions of the weight-one points of `L_U`, intersecting
/// with respect to `φ(U)`. Labels are `P=<encoded coordinates>`.
pub fn scattered_code(system: &QSystem) -> Result<IntersectingSet> {
    let ctx = system.field();
    let mut code = SubspaceCode::new(ctx.base(), system.r() * ctx.degree(), ctx.degree());
    let points = system.points()?;
    let mut warnings = Vec::new();
    for p in points.iter().filter(|p| p.weight == 1) {
        let label = format!("P={}", encode_label(ctx, &p.rep));
        code.insert(field_reduce_point(ctx, &p.rep)?, Some(label))?;
    }
    if code.is_empty() {
        warnings.push("the linear set has no points of weight one; the code is empty".to_string());
    } else if points.iter().any(|p| p.weight > 1) {
        warnings.push(format!(
            "the system is not scattered: {} of {} points have weight > 1",
            points.iter().filter(|p| p.weight > 1).count(),
            points.len()
        ));
    }
    Ok(IntersectingSet {
        code,
        reference: system.as_subspace().clone(),
        warnings,
    })
}

/// `(x_1, …, x_r) ↦ (x_1, x_2, x_3^{q^{k-2}}, …, x_r^{q^{k-r+1}})`, exponents
/// taken mod k.
pub fn psi_apply(ctx: &FieldCtx, v: &[ExtElement]) -> Vec<ExtElement> {
    let k = ctx.degree();
    v.iter()
        .enumerate()
        .map(|(j, x)| {
            if j < 2 {
                x.clone()
            } else {
                // 1-based coordinate j+1 gets q^{k-j}
                ctx.frobenius(x, (k - j % k) % k)
            }
        })
        .collect()
}

/// The `rk x rk` matrix over F_q of [`psi_apply`] on field-reduced row
/// vectors: row `i k + j` is `φ(ψ(α^j e_i))`.
pub fn psi_matrix(ctx: &FieldCtx, r: usize) -> Result<Matrix> {
    if r < 2 {
        return Err(Error::Range(format!("need r >= 2, got {r}")));
    }
    let k = ctx.degree();
    let rows: Vec<Vec<u32>> = (0..r)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut v = vec![ctx.zero(); r];
            v[i] = ctx.basis_element(j);
            field_reduce_vec(&psi_apply(ctx, &v))
        })
        .collect();
    Matrix::from_rows(ctx.base(), r * k, &rows)
}

/// Whether `v ↦ v M` sends `u` onto `u2` and the codewords of `s` onto
/// those of `s2`.
pub fn check_equivalence(
    s: &SubspaceCode,
    u: &Subspace,
    s2: &SubspaceCode,
    u2: &Subspace,
    map: &Matrix,
) -> Result<bool> {
    if map.rows() != s.ambient() || map.cols() != s.ambient() || s.ambient() != s2.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between codes in F_q^{} and F_q^{}",
            map.rows(),
            map.cols(),
            s.ambient(),
            s2.ambient()
        )));
    }
    if map.rank() != map.rows() {
        return Err(Error::NotInvertible);
    }
    if u.image(map)? != *u2 {
        return Ok(false);
    }
    Ok(s.dim() == s2.dim() && s.image(map)?.same_codewords(s2))
}
