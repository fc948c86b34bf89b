//! Ferrers-diagram rank-metric codes and the multilevel construction.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clique::{max_clique, BitGraph};
use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::gf::Fq;
use crate::limits;
use crate::matrix::{rank_distance, Matrix};
use crate::schubert::{all_pivot_vectors, echelon_ferrers_of, omega_ul_condition, standard_flag_space, PivotVector};
use crate::subspace::{subspace_distance, Subspace};

/// Top-right justified dot pattern, stored as dots per row from the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FerrersDiagram {
    #[serde(rename = "rowDots")]
    row_dots: Vec<usize>,
}

impl FerrersDiagram {
    pub fn new(row_dots: Vec<usize>) -> Result<Self> {
        if row_dots.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Range(format!("row dots {row_dots:?} must be non-increasing")));
        }
        Ok(FerrersDiagram { row_dots })
    }

    /// Full `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        FerrersDiagram {
            row_dots: vec![cols; rows],
        }
    }

    pub fn row_dots(&self) -> &[usize] {
        &self.row_dots
    }

    pub fn rows(&self) -> usize {
        self.row_dots.len()
    }

    pub fn cols(&self) -> usize {
        self.row_dots.first().copied().unwrap_or(0)
    }

    pub fn dots(&self) -> usize {
        self.row_dots.iter().sum()
    }

    pub fn has_dot(&self, i: usize, j: usize) -> bool {
        i < self.rows() && j < self.cols() && j >= self.cols() - self.row_dots[i]
    }

    /// Dot positions, row-major.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let m = self.cols();
        self.row_dots
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| (m - d..m).map(move |j| (i, j)))
            .collect()
    }

    /// Dots outside the first `i` rows and the rightmost `delta - 1 - i` columns.
    pub fn nu(&self, delta: usize, i: usize) -> Result<usize> {
        if delta == 0 || i >= delta {
            return Err(Error::Range(format!("need 0 <= i < delta, got i={i}, delta={delta}")));
        }
        let dropped_cols = delta - 1 - i;
        Ok(self
            .row_dots
            .iter()
            .skip(i)
            .map(|&d| d.saturating_sub(dropped_cols))
            .sum())
    }

    /// `min_i nu_i`; the log_q of the Singleton-like bound on code size.
    pub fn nu_min(&self, delta: usize) -> Result<usize> {
        if delta == 0 {
            return Err(Error::Range("delta must be >= 1".into()));
        }
        (0..delta).map(|i| self.nu(delta, i)).try_fold(usize::MAX, |acc, v| Ok(acc.min(v?)))
    }

    pub fn singleton_bound(&self, delta: usize) -> Result<usize> {
        self.nu_min(delta)
    }
}

fn check_lower_bound_params(k: usize, r: usize, u: usize, ell: usize) -> Result<()> {
    if k < 1 || r < 2 || ell < 1 || ell > k.min(u) || 2 * u > r * k {
        return Err(Error::Range(format!(
            "need k >= 1, r >= 2, 1 <= l <= min(k, u), u <= rk/2 (k={k}, r={r}, u={u}, l={ell})"
        )));
    }
    Ok(())
}

/// The k x (r-1)k diagram of the largest cell of `Ω_{U,ℓ}`: the top `k-ℓ`
/// rows are full and the bottom `ℓ` rows carry `u-ℓ` dots.
pub fn prop42_diagram(k: usize, r: usize, u: usize, ell: usize) -> Result<FerrersDiagram> {
    check_lower_bound_params(k, r, u, ell)?;
    let mut rows = vec![(r - 1) * k; k - ell];
    rows.extend(std::iter::repeat_n(u - ell, ell));
    FerrersDiagram::new(rows)
}

/// Closed-form `nu_min` of [`prop42_diagram`] at distance `k - t`, as the
/// minimum of the four case-split candidate indices.
pub fn closed_form_nu_min(k: usize, r: usize, u: usize, ell: usize, t: usize) -> Result<usize> {
    check_lower_bound_params(k, r, u, ell)?;
    if t >= k {
        return Err(Error::Range(format!("need t < k (t={t}, k={k})")));
    }
    let (k, r, u, l) = (k as i64, r as i64, u as i64, ell as i64);
    let s = t as i64 + 1;
    let mut candidates = Vec::with_capacity(4);
    // nu_0
    candidates.push(if s >= l + k - u {
        (r * k - k - u + l) * (k - l) + k * (s - l - k + u)
    } else {
        (r * k - 2 * k + s) * (k - l)
    });
    // nu_{k-t-1}
    candidates.push(if s >= l {
        l * (u - l) + (r - 1) * k * (s - l)
    } else {
        s * (u - l)
    });
    // nu_{k-ℓ}
    if s < l {
        candidates.push(if s <= 2 * l - u { 0 } else { l * (u - 2 * l + s) });
    }
    // nu_{k+ℓ-t-1-u}
    if s < l + k - u {
        candidates.push(if s <= 2 * l - u {
            0
        } else {
            ((r - 1) * k - u + l) * (u + s - 2 * l)
        });
    }
    let min = candidates.into_iter().min().expect("non-empty");
    usize::try_from(min).map_err(|_| Error::Range("negative dot count".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FerrersMethod {
    /// Subcode of a Gabidulin MRD code vanishing off the diagram.
    MrdRestrict,
    /// Greedy scan of supported matrices in a seeded random order.
    Greedy { seed: u64 },
    /// Maximum clique over all supported matrices.
    Exhaustive,
    /// MRD restriction, falling back to exhaustive or greedy search when it
    /// misses the bound and the diagram is small enough.
    Auto { seed: u64 },
}

impl FerrersMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FerrersMethod::MrdRestrict => "mrd-restrict",
            FerrersMethod::Greedy { .. } => "greedy",
            FerrersMethod::Exhaustive => "exhaustive",
            FerrersMethod::Auto { .. } => "auto",
        }
    }
}

/// A rank-metric code supported on a Ferrers diagram.
#[derive(Clone, Debug)]
pub struct FerrersCode {
    pub diagram: FerrersDiagram,
    pub field: Fq,
    pub delta: usize,
    pub words: Vec<Matrix>,
    /// The construction that produced the words.
    pub method: &'static str,
}

impl FerrersCode {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn bound_exponent(&self) -> usize {
        self.diagram.nu_min(self.delta).expect("delta >= 1")
    }

    /// `log_q(size)`.
    pub fn log_size(&self) -> f64 {
        (self.size() as f64).ln() / (self.field.q() as f64).ln()
    }

    pub fn meets_bound(&self) -> bool {
        self.size() as u128 == limits::pow_sat(self.field.q() as u64, self.bound_exponent())
    }

    /// Minimum pairwise rank distance, `None` for fewer than two words.
    pub fn min_distance(&self) -> Option<usize> {
        let mut best = None;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let d = rank_distance(a, b).expect("same shape");
                best = Some(best.map_or(d, |x: usize| x.min(d)));
            }
        }
        best
    }

    pub fn supported_on_diagram(&self) -> bool {
        self.words.iter().all(|w| {
            (0..w.rows()).all(|i| (0..w.cols()).all(|j| w.get(i, j) == 0 || self.diagram.has_dot(i, j)))
        })
    }
}

fn supported_matrix(field: Fq, diagram: &FerrersDiagram, positions: &[(usize, usize)], mut idx: u128) -> Matrix {
    let q = field.q() as u128;
    let mut m = Matrix::zeros(field, diagram.rows(), diagram.cols());
    // first position is the most significant digit
    for &(i, j) in positions.iter().rev() {
        m.set(i, j, (idx % q) as u32);
        idx /= q;
    }
    m
}

fn all_supported(field: Fq, diagram: &FerrersDiagram) -> Vec<Matrix> {
    let positions = diagram.positions();
    let count = limits::pow_sat(field.q() as u64, positions.len());
    (0..count).map(|idx| supported_matrix(field, diagram, &positions, idx)).collect()
}

pub fn construct_ferrers_code(
    diagram: &FerrersDiagram,
    delta: usize,
    field: Fq,
    method: FerrersMethod,
) -> Result<FerrersCode> {
    if delta == 0 {
        return Err(Error::Range("delta must be >= 1".into()));
    }
    let q = field.q() as u64;
    let dots = diagram.dots();
    let zero_only = || FerrersCode {
        diagram: diagram.clone(),
        field,
        delta,
        words: vec![Matrix::zeros(field, diagram.rows(), diagram.cols())],
        method: method.name(),
    };
    if dots == 0 || delta > diagram.rows().min(diagram.cols()) {
        return Ok(zero_only());
    }
    if delta == 1 {
        limits::check(limits::pow_sat(q, dots), limits::ENUMERATION)?;
        return Ok(FerrersCode {
            words: all_supported(field, diagram),
            ..zero_only()
        });
    }
    match method {
        FerrersMethod::MrdRestrict => mrd_restrict(diagram, delta, field),
        FerrersMethod::Greedy { seed } => greedy(diagram, delta, field, seed),
        FerrersMethod::Exhaustive => exhaustive(diagram, delta, field),
        FerrersMethod::Auto { seed } => {
            let mut best = mrd_restrict(diagram, delta, field)?;
            if best.meets_bound() {
                return Ok(best);
            }
            let space = limits::pow_sat(q, dots);
            let fallback = if dots <= limits::FERRERS_DOTS && space <= limits::cap(limits::FERRERS_EXHAUSTIVE) {
                Some(exhaustive(diagram, delta, field)?)
            } else if dots <= limits::FERRERS_DOTS && space <= limits::cap(limits::FERRERS_GREEDY) {
                Some(greedy(diagram, delta, field, seed)?)
            } else {
                None
            };
            if let Some(c) = fallback {
                if c.size() > best.size() {
                    best = c;
                }
            }
            Ok(best)
        }
    }
}

fn check_search_caps(diagram: &FerrersDiagram, field: Fq, cap: u128) -> Result<()> {
    if diagram.dots() > limits::FERRERS_DOTS {
        return Err(Error::CapExceeded {
            size: diagram.dots() as u128,
            cap: limits::FERRERS_DOTS as u128,
        });
    }
    limits::check(limits::pow_sat(field.q() as u64, diagram.dots()), cap)
}

fn greedy(diagram: &FerrersDiagram, delta: usize, field: Fq, seed: u64) -> Result<FerrersCode> {
    check_search_caps(diagram, field, limits::FERRERS_GREEDY)?;
    let mut all = all_supported(field, diagram);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all[1..].shuffle(&mut rng);
    let mut words: Vec<Matrix> = Vec::new();
    for m in all {
        if words.iter().all(|w| rank_distance(w, &m).expect("same shape") >= delta) {
            words.push(m);
        }
    }
    Ok(FerrersCode {
        diagram: diagram.clone(),
        field,
        delta,
        words,
        method: "greedy",
    })
}

/// Supported matrices form a vector space, so some optimal code contains
/// the zero word: search cliques among words of rank >= delta.
fn exhaustive(diagram: &FerrersDiagram, delta: usize, field: Fq) -> Result<FerrersCode> {
    check_search_caps(diagram, field, limits::FERRERS_EXHAUSTIVE)?;
    let zero = Matrix::zeros(field, diagram.rows(), diagram.cols());
    let heavy: Vec<Matrix> = all_supported(field, diagram)
        .into_iter()
        .filter(|m| m.rank() >= delta)
        .collect();
    let g = BitGraph::from_predicate(heavy.len(), |i, j| {
        rank_distance(&heavy[i], &heavy[j]).expect("same shape") >= delta
    });
    let mut words = vec![zero];
    words.extend(max_clique(&g).into_iter().map(|i| heavy[i].clone()));
    Ok(FerrersCode {
        diagram: diagram.clone(),
        field,
        delta,
        words,
        method: "exhaustive",
    })
}

/// Restriction of a Gabidulin code to the diagram.
///
/// With `N = max(rows, cols)` and `L = min(rows, cols)`, the Gabidulin code
/// of length L and minimum distance delta over F_{q^N} expands to an
/// F_q-linear MRD code of `rows x cols` matrices. Its words vanishing off
/// the diagram form a linear Ferrers code of distance >= delta. A few
/// coordinate orientations are tried and the largest subcode is kept.
fn mrd_restrict(diagram: &FerrersDiagram, delta: usize, field: Fq) -> Result<FerrersCode> {
    let rows = diagram.rows();
    let cols = diagram.cols();
    let big = rows.max(cols);
    let len = rows.min(cols);
    let ctx = FieldCtx::new(field.q() as u64, big)?;
    let kappa = len - delta + 1;
    let transposed = rows > cols;

    let mut best: Option<Matrix> = None;
    for variant in 0..4 {
        let reverse_coords = variant & 1 == 1;
        let reverse_coeffs = variant & 2 == 2;
        // F_q-basis of the Gabidulin code: x = α^b on generator row i
        let mut basis_words: Vec<Vec<u32>> = Vec::with_capacity(big * kappa);
        for i in 0..kappa {
            for b in 0..big {
                let x = ctx.basis_element(b);
                let mut m = Matrix::zeros(field, rows, cols);
                for pos in 0..len {
                    let g = ctx.basis_element(pos);
                    let c = ctx.mul(&x, &ctx.frobenius(&g, i));
                    let coord = if reverse_coords { len - 1 - pos } else { pos };
                    for (e, &v) in c.coeffs().iter().enumerate() {
                        let e = if reverse_coeffs { big - 1 - e } else { e };
                        if transposed {
                            m.set(e, coord, v);
                        } else {
                            m.set(coord, e, v);
                        }
                    }
                }
                basis_words.push(m.as_slice().to_vec());
            }
        }
        let gen = Matrix::from_rows(field, rows * cols, &basis_words)?;
        let off: Vec<usize> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !diagram.has_dot(i, j))
            .map(|(i, j)| i * cols + j)
            .collect();
        let mut restricted = Matrix::zeros(field, gen.rows(), off.len());
        for r in 0..gen.rows() {
            for (c, &idx) in off.iter().enumerate() {
                restricted.set(r, c, gen.get(r, idx));
            }
        }
        let combos = restricted.left_kernel();
        let sub = Subspace::span(&combos.mul(&gen)?);
        if best.as_ref().is_none_or(|b| sub.dim() > b.rows()) {
            best = Some(sub.basis().clone());
        }
    }
    let basis = best.expect("at least one variant");
    limits::check(limits::pow_sat(field.q() as u64, basis.rows()), limits::ENUMERATION)?;
    let span = Subspace::span(&basis);
    let words = if span.dim() == 0 {
        vec![Matrix::zeros(field, rows, cols)]
    } else {
        span.vectors()
            .map(|v| Matrix::from_vec(field, rows, cols, v).expect("rows*cols entries"))
            .collect()
    };
    Ok(FerrersCode {
        diagram: diagram.clone(),
        field,
        delta,
        words,
        method: "mrd-restrict",
    })
}

/// Embeds a diagram-supported matrix into the free entries of the RREF
/// template with pivots `p`.
pub fn lift_word(word: &Matrix, p: &PivotVector) -> Result<Subspace> {
    let diagram = echelon_ferrers_of(p);
    if word.rows() != diagram.rows() || word.cols() != diagram.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} word for a {}x{} diagram",
            word.rows(),
            word.cols(),
            diagram.rows(),
            diagram.cols()
        )));
    }
    let n = p.n();
    let pivots = p.zero_based();
    // diagram column j is the j-th non-pivot column to the right of p_1
    let free_cols: Vec<usize> = (pivots[0] + 1..n).filter(|c| !pivots.contains(c)).collect();
    let mut m = Matrix::zeros(word.field(), p.k(), n);
    for (i, &pc) in pivots.iter().enumerate() {
        m.set(i, pc, 1);
        for (j, &col) in free_cols.iter().enumerate() {
            let v = word.get(i, j);
            if v != 0 {
                if !diagram.has_dot(i, j) {
                    return Err(Error::DimensionMismatch(format!("entry ({i}, {j}) is off the diagram")));
                }
                m.set(i, col, v);
            }
        }
    }
    Subspace::from_rows(&m)
}

pub fn lift(code: &FerrersCode, p: &PivotVector) -> Result<SubspaceCode> {
    if echelon_ferrers_of(p) != code.diagram {
        return Err(Error::DimensionMismatch(format!(
            "cell {:?} has diagram {:?}, code is on {:?}",
            p.as_slice(),
            echelon_ferrers_of(p).row_dots(),
            code.diagram.row_dots()
        )));
    }
    let mut out = SubspaceCode::new(code.field, p.n(), p.k());
    for w in &code.words {
        out.insert(lift_word(w, p)?, None)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CellReport {
    pub pivots: PivotVector,
    pub bound_exponent: usize,
    pub size: usize,
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub struct MultilevelCode {
    pub code: SubspaceCode,
    /// `U = rowsp(0 | I_u)`.
    pub reference: Subspace,
    pub cells: Vec<CellReport>,
    /// Cells dropped because a lifted word violated the distance.
    pub discarded: Vec<PivotVector>,
}

/// Multilevel construction of an (ℓ, t)-intersecting set for the standard
/// `U = V_u` in `Gr_q(k, rk)`.
///
/// Cells of `Ω_{U,ℓ}` are taken greedily by descending Singleton-like
/// exponent (ties: lexicographic pivots), keeping only cells whose pivot
/// sets share at most `t` positions with every cell already chosen. Each
/// cell gets a Ferrers code of distance `k - t`; lifted words are checked
/// against the code so far and a cell with any violation is dropped.
pub fn multilevel_assemble(
    k: usize,
    r: usize,
    u: usize,
    ell: usize,
    t: usize,
    field: Fq,
    method: FerrersMethod,
) -> Result<MultilevelCode> {
    if k < 1 || r < 1 || t >= k || u > r * k {
        return Err(Error::Range(format!("need k >= 1, t < k, u <= rk (k={k}, r={r}, u={u}, t={t})")));
    }
    let n = r * k;
    let delta = k - t;
    let cond = omega_ul_condition(u, ell, k, n)?;
    let reference = standard_flag_space(u, n, field)?;

    let mut cells: Vec<(usize, PivotVector)> = all_pivot_vectors(k, n)
        .filter(|p| p.cell_in_variety(&cond))
        .map(|p| {
            let e = echelon_ferrers_of(&p).nu_min(delta).expect("delta >= 1");
            (e, p)
        })
        .collect();
    cells.sort_by(|(ea, pa), (eb, pb)| eb.cmp(ea).then_with(|| pa.cmp(pb)));

    let mut chosen: Vec<PivotVector> = Vec::new();
    for (_, p) in cells {
        let compatible = chosen.iter().all(|c| {
            c.as_slice().iter().filter(|x| p.as_slice().contains(x)).count() <= t
        });
        if compatible {
            chosen.push(p);
        }
    }

    let mut code = SubspaceCode::new(field, n, k);
    let mut reports = Vec::new();
    let mut discarded = Vec::new();
    for p in chosen {
        let diagram = echelon_ferrers_of(&p);
        let fc = construct_ferrers_code(&diagram, delta, field, method)?;
        let lifted = lift(&fc, &p)?;
        let clash = lifted.codewords().iter().any(|w| {
            code.codewords()
                .iter()
                .any(|c| subspace_distance(c, w).expect("same shape") < 2 * delta)
        });
        if clash {
            discarded.push(p);
            continue;
        }
        let label = format!("cell={:?}", p.as_slice());
        for w in lifted.codewords() {
            code.insert(w.clone(), Some(label.clone()))?;
        }
        reports.push(CellReport {
            bound_exponent: diagram.nu_min(delta)?,
            size: fc.size(),
            method: fc.method,
            pivots: p,
        });
    }
    Ok(MultilevelCode {
        code,
        reference,
        cells: reports,
        discarded,
    })
}

/// Upper bound `Σ q^{j_i - 1}` on a distance-2k multilevel code built from
/// the given cells, where `j_i = n - p_k + 1` is the position of the last
/// pivot counted from the right within the last `u` coordinates, i.e. one
/// more than the dots in the bottom row of the cell's diagram.
pub fn multilevel_bound_2k(cells: &[PivotVector], k: usize, u: usize, q: u64) -> Result<u128> {
    let Some(first) = cells.first() else {
        return Ok(0);
    };
    let n = first.n();
    for c in cells {
        if c.n() != n || c.k() != k {
            return Err(Error::DimensionMismatch(format!("cell {:?} is not in Gr({k}, {n})", c.as_slice())));
        }
        let last = *c.as_slice().last().expect("k >= 1");
        if last + u < n + 1 {
            return Err(Error::Range(format!(
                "cell {:?} has its last pivot outside the last {u} coordinates",
                c.as_slice()
            )));
        }
    }
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if a.as_slice().iter().any(|x| b.as_slice().contains(x)) {
                return Err(Error::OverlappingPivots);
            }
        }
    }
    let limit = u.min(n / k);
    if cells.len() > limit {
        return Err(Error::Range(format!("{} cells exceed min(u, r) = {limit}", cells.len())));
    }
    Ok(cells
        .iter()
        .map(|c| {
            let j = n - c.as_slice()[k - 1] + 1;
            limits::pow_sat(q, j - 1)
        })
        .sum())
}

/// The largest [`multilevel_bound_2k`] over all admissible selections of
/// pairwise pivot-disjoint cells of `Ω_{U,1}` in `Gr_q(k, rk)`, with one
/// selection attaining it.
pub fn max_multilevel_bound_2k(k: usize, r: usize, u: usize, q: u64) -> Result<(u128, Vec<PivotVector>)> {
    let n = r * k;
    let cond = omega_ul_condition(u, 1, k, n)?;
    let cells: Vec<PivotVector> = all_pivot_vectors(k, n).filter(|p| p.cell_in_variety(&cond)).collect();
    limits::check(cells.len() as u128, limits::ENUMERATION)?;
    let weight = |p: &PivotVector| limits::pow_sat(q, n - p.as_slice()[k - 1]);

    fn dfs(
        start: usize,
        cells: &[PivotVector],
        weights: &[u128],
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
        total: u128,
        best: &mut (u128, Vec<usize>),
    ) {
        if total > best.0 {
            *best = (total, chosen.clone());
        }
        for i in start..cells.len() {
            if cells[i].as_slice().iter().any(|&x| used[x]) {
                continue;
            }
            for &x in cells[i].as_slice() {
                used[x] = true;
            }
            chosen.push(i);
            dfs(i + 1, cells, weights, chosen, used, total + weights[i], best);
            chosen.pop();
            for &x in cells[i].as_slice() {
                used[x] = false;
            }
        }
    }

    let weights: Vec<u128> = cells.iter().map(weight).collect();
    let mut best = (0u128, Vec::new());
    dfs(0, &cells, &weights, &mut Vec::new(), &mut vec![false; n + 1], 0, &mut best);
    let selection = best.1.into_iter().map(|i| cells[i].clone()).collect();
    Ok((best.0, selection))
}
