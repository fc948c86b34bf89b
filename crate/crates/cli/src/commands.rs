use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use ssc_core::bounds::{lower_bound_multilevel, upper_bound_basic, upper_bound_general};
use ssc_core::codefile::{CodeFile, Meta, QSystemFile};
use ssc_core::construct::{norm_one_code, scattered_code, IntersectingSet};
use ssc_core::ferrers::{construct_ferrers_code, max_multilevel_bound_2k, multilevel_assemble, FerrersMethod, MultilevelCode};
use ssc_core::linear_set::{gabidulin_system, scattered_rank_check, twisted_system, QSystem};
use ssc_core::schubert::{all_pivot_vectors, cell_of, standard_flag_space};
use ssc_core::subspace::{enumerate_subspaces, gaussian_binomial};
use ssc_core::verify::{verify_intersecting, VerificationReport};
use ssc_core::{FerrersDiagram, FieldCtx, Fq, Matrix, Subspace, SubspaceCode};

use crate::output::{print_json, render_report, report_rows, yes_no, Table};
use crate::{
    BoundsArgs, Cli, Command, CompareArgs, Construct, EnumerateArgs, FerrersArgs, LtArgs, MethodArgs, MethodName,
    OutArgs, SystemArgs, VerifyArgs,
};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Construct(c) => construct(c, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Bounds(a) => bounds(a, cli.json),
        Command::Compare(a) => compare(a, cli.json),
        Command::Ferrers(a) => ferrers(a, cli.json),
        Command::LinearSet(a) => linear_set(a, cli.json),
        Command::Enumerate(a) => enumerate(a, cli.json),
        Command::Demo => demo(cli.json),
    }
}

fn status(valid: bool) -> ExitCode {
    if valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn method(m: &MethodArgs) -> FerrersMethod {
    match m.method {
        MethodName::Auto => FerrersMethod::Auto { seed: m.seed },
        MethodName::MrdRestrict => FerrersMethod::MrdRestrict,
        MethodName::Greedy => FerrersMethod::Greedy { seed: m.seed },
        MethodName::Exhaustive => FerrersMethod::Exhaustive,
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn load_system(a: &SystemArgs) -> Result<QSystem> {
    if let Some(path) = &a.system {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = QSystemFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        return file.load().with_context(|| format!("loading {}", path.display()));
    }
    let (Some(q), Some(k), Some(r)) = (a.q, a.k, a.r) else {
        bail!("pass --system FILE, or --gabidulin/--twisted with --q, --k and --r");
    };
    let ctx = FieldCtx::new(q, k)?;
    if a.twisted {
        Ok(twisted_system(&ctx, r)?)
    } else if a.gabidulin {
        Ok(gabidulin_system(&ctx, r)?)
    } else {
        bail!("pass --system FILE, or --gabidulin/--twisted with --q, --k and --r")
    }
}

/// A constructed code ready to be written and summarized.
struct Built {
    title: String,
    field: FieldCtx,
    code: SubspaceCode,
    reference: Subspace,
    ell: usize,
    t: usize,
    meta: Meta,
    warnings: Vec<String>,
    extra: Option<(Value, Table)>,
}

fn from_set(title: String, field: FieldCtx, set: IntersectingSet, meta: Meta) -> Built {
    Built {
        title,
        field,
        code: set.code,
        reference: set.reference,
        ell: 1,
        t: 0,
        meta,
        warnings: set.warnings,
        extra: None,
    }
}

fn multilevel_details(ml: &MultilevelCode) -> (Value, Table) {
    let mut t = Table::new();
    let cells: Vec<Value> = ml
        .cells
        .iter()
        .map(|c| {
            t.row(
                format!("cell {:?}", c.pivots.as_slice()),
                format!("{} words (bound q^{}, {})", c.size, c.bound_exponent, c.method),
            );
            json!({
                "pivots": c.pivots.as_slice(),
                "size": c.size,
                "boundExponent": c.bound_exponent,
                "method": c.method,
            })
        })
        .collect();
    let discarded: Vec<&[usize]> = ml.discarded.iter().map(|p| p.as_slice()).collect();
    if !discarded.is_empty() {
        t.row("discarded cells", format!("{discarded:?}"));
    }
    (json!({ "cells": cells, "discarded": discarded }), t)
}

fn build_multilevel(p: &LtArgs, m: &MethodArgs) -> Result<Built> {
    let LtArgs { field, r, u, ell, t } = *p;
    let ctx = FieldCtx::new(field.q, field.k)?;
    let ml = multilevel_assemble(field.k, r, u, ell, t, ctx.base(), method(m))?;
    let extra = multilevel_details(&ml);
    Ok(Built {
        title: format!("multilevel (q={}, k={}, r={r}, u={u}, l={ell}, t={t})", field.q, field.k),
        field: ctx,
        code: ml.code,
        reference: ml.reference,
        ell,
        t,
        meta: Meta {
            construction: "multilevel".into(),
            params: params(&[
                ("q", json!(field.q)),
                ("k", json!(field.k)),
                ("r", json!(r)),
                ("u", json!(u)),
                ("l", json!(ell)),
                ("t", json!(t)),
                ("method", json!(method(m).name())),
                ("seed", json!(m.seed)),
            ]),
        },
        warnings: Vec::new(),
        extra: Some(extra),
    })
}

fn construct(c: &Construct, as_json: bool) -> Result<ExitCode> {
    let (built, out) = match c {
        Construct::Norm1 { field, r, out } => {
            let ctx = FieldCtx::new(field.q, field.k)?;
            let set = norm_one_code(&ctx, *r)?;
            let meta = Meta {
                construction: "norm1".into(),
                params: params(&[("q", json!(field.q)), ("k", json!(field.k)), ("r", json!(r))]),
            };
            let title = format!("norm1 (q={}, k={}, r={r})", field.q, field.k);
            (from_set(title, ctx, set, meta), out)
        }
        Construct::Scattered { system, out } => {
            let sys = load_system(system)?;
            let set = scattered_code(&sys)?;
            let spec = sys.field().spec();
            let meta = Meta {
                construction: "scattered".into(),
                params: params(&[
                    ("q", json!(spec.q)),
                    ("k", json!(spec.k)),
                    ("r", json!(sys.r())),
                    ("u", json!(sys.u())),
                    ("system", json!(sys.encoded_basis())),
                ]),
            };
            let title = format!("scattered (q={}, k={}, r={}, u={})", spec.q, spec.k, sys.r(), sys.u());
            (from_set(title, sys.field().clone(), set, meta), out)
        }
        Construct::Multilevel { params, method, out } => (build_multilevel(params, method)?, out),
    };
    emit(built, out, as_json)
}

fn emit(b: Built, out: &OutArgs, as_json: bool) -> Result<ExitCode> {
    let rep = verify_intersecting(&b.code, &b.reference, b.ell, b.t)?;
    let file = CodeFile::new(&b.field, &b.code, Some(&b.reference), Some(b.meta));
    let text = file.to_json() + "\n";
    let summary = if as_json {
        let mut v = json!({ "code": b.title, "report": rep, "warnings": b.warnings });
        if let Some((extra, _)) = &b.extra {
            v["multilevel"] = extra.clone();
        }
        if let Some(path) = &out.out {
            v["out"] = json!(path.display().to_string());
        }
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        let mut s = render_report(&b.title, &rep);
        if let Some((_, t)) = &b.extra {
            s.push_str(&t.render());
        }
        s
    };
    for w in &b.warnings {
        eprintln!("warning: {w}");
    }
    match &out.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            print!("{summary}");
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(status(rep.valid))
}

fn read_code(path: &Path) -> Result<ssc_core::codefile::LoadedCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = CodeFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.load().with_context(|| format!("loading {}", path.display()))
}

fn verify(a: &VerifyArgs, as_json: bool) -> Result<ExitCode> {
    let loaded = read_code(&a.file)?;
    let base = loaded.field.base();
    let n = loaded.code.ambient();
    let reference = if let Some(path) = &a.u_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let rows: Vec<Vec<u32>> =
            serde_json::from_str(&text).with_context(|| format!("parsing {} as a list of rows", path.display()))?;
        if rows.iter().flatten().any(|&x| x >= base.q()) || rows.iter().any(|r| r.len() != n) {
            bail!("{}: rows must have {n} entries in 0..{}", path.display(), base.q());
        }
        Subspace::from_rows(&Matrix::from_rows(base, n, &rows)?)?
    } else if let Some(u) = a.standard_u {
        standard_flag_space(u, n, base)?
    } else if let Some(u) = loaded.reference.clone() {
        u
    } else {
        bail!("the file has no reference subspace; pass --u-file or --standard-u");
    };
    if loaded.duplicates > 0 {
        eprintln!("warning: {} duplicate codeword(s) ignored", loaded.duplicates);
    }
    let rep = verify_intersecting(&loaded.code, &reference, a.ell, a.t)?;
    if as_json {
        print_json(&json!({
            "file": a.file.display().to_string(),
            "duplicates": loaded.duplicates,
            "report": rep,
        }));
    } else {
        print!("{}", render_report(&a.file.display().to_string(), &rep));
    }
    Ok(status(rep.valid))
}

fn bounds(a: &BoundsArgs, as_json: bool) -> Result<ExitCode> {
    let LtArgs { field, r, u, ell, t } = a.params;
    let (q, k) = (field.q, field.k);
    Fq::new(q)?;
    let lower = lower_bound_multilevel(k, r, u, ell, t, q)?;
    let basic = if ell == 1 && t == 0 { Some(upper_bound_basic(k, r, u, q)?) } else { None };
    let general = upper_bound_general(u, ell, t, q);
    let cells = if ell == 1 && t == 0 { Some(max_multilevel_bound_2k(k, r, u, q)?) } else { None };
    let rank_ok = scattered_rank_check(u, r, k);
    if as_json {
        print_json(&json!({
            "params": { "q": q, "k": k, "r": r, "u": u, "l": ell, "t": t },
            "upperBasic": basic,
            "upperGeneral": general,
            "multilevelCells2k": cells.as_ref().map(|(v, sel)| json!({
                "value": v,
                "cells": sel.iter().map(|p| p.as_slice().to_vec()).collect::<Vec<_>>(),
            })),
            "lowerMultilevel": lower,
            "scatteredRankCheck": rank_ok,
        }));
        return Ok(ExitCode::SUCCESS);
    }
    let na = || "n/a".to_string();
    let mut tb = Table::new();
    tb.row("parameters", format!("q={q} k={k} r={r} u={u} l={ell} t={t}"))
        .row("upper (l=1, t=0)", basic.map_or_else(na, |v| v.to_string()))
        .row("upper [u choose l]_q", general.map_or_else(na, |v| v.to_string()))
        .row(
            "multilevel cells, distance 2k",
            cells.as_ref().map_or_else(na, |(v, sel)| {
                let s: Vec<String> = sel.iter().map(|p| format!("{:?}", p.as_slice())).collect();
                format!("{v} via {}", s.join(" + "))
            }),
        )
        .row(
            "lower q^nu_min",
            format!("q^{} = {} (conjectural: assumes MFD codes exist)", lower.exponent, lower.value),
        )
        .row("u <= rk/2", yes_no(rank_ok));
    print!("{}", tb.render());
    Ok(ExitCode::SUCCESS)
}

struct Compared {
    name: &'static str,
    title: String,
    report: VerificationReport,
}

fn compare(a: &CompareArgs, as_json: bool) -> Result<ExitCode> {
    let (q, k, r) = (a.field.q, a.field.k, a.r);
    let u = k;
    let ctx = FieldCtx::new(q, k)?;
    let mut rows = Vec::new();
    let n1 = norm_one_code(&ctx, r)?;
    rows.push(Compared {
        name: "norm1",
        title: format!("norm1 (q={q}, k={k}, r={r})"),
        report: verify_intersecting(&n1.code, &n1.reference, 1, 0)?,
    });
    let sc = scattered_code(&gabidulin_system(&ctx, r)?)?;
    rows.push(Compared {
        name: "scattered",
        title: format!("scattered (q={q}, k={k}, r={r}, u={u})"),
        report: verify_intersecting(&sc.code, &sc.reference, 1, 0)?,
    });
    let ml = multilevel_assemble(k, r, u, 1, 0, ctx.base(), method(&a.method))?;
    rows.push(Compared {
        name: "multilevel",
        title: format!("multilevel (q={q}, k={k}, r={r}, u={u}, l=1, t=0)"),
        report: verify_intersecting(&ml.code, &ml.reference, 1, 0)?,
    });
    let bound = upper_bound_basic(k, r, u, q)?;
    let (cell_bound, _) = max_multilevel_bound_2k(k, r, u, q)?;
    let all_valid = rows.iter().all(|c| c.report.valid);
    let ml_size = rows[2].report.size as u128;
    let verdict = if r < u {
        let strict = ml_size < bound && cell_bound < bound;
        Some(strict)
    } else {
        None
    };
    let verdict_text = match verdict {
        Some(true) => format!("r < u: multilevel {ml_size} (cell bound {cell_bound}) < {bound}, strict inequality confirmed"),
        Some(false) => format!("r < u: strict inequality NOT observed ({ml_size}, cell bound {cell_bound}, bound {bound})"),
        None => "r >= u: no verdict, both may reach the bound".to_string(),
    };
    if as_json {
        let codes: Map<String, Value> = rows
            .iter()
            .map(|c| (c.name.to_string(), serde_json::to_value(&c.report).expect("report")))
            .collect();
        print_json(&json!({
            "params": { "q": q, "k": k, "r": r, "u": u },
            "codes": codes,
            "upperBasic": bound,
            "multilevelCells2k": cell_bound,
            "strict": verdict,
        }));
    } else {
        let mut t = Table::new();
        for c in &rows {
            t.row(
                c.title.clone(),
                format!("{} codewords, valid {}, d = {}", c.report.size, yes_no(c.report.valid), c.report.min_distance),
            );
        }
        t.row("upper bound [u choose 1]_q", bound)
            .row("multilevel cell bound", cell_bound)
            .row("verdict", verdict_text);
        print!("{}", t.render());
    }
    Ok(status(all_valid && verdict != Some(false)))
}

fn ferrers(a: &FerrersArgs, as_json: bool) -> Result<ExitCode> {
    let d = FerrersDiagram::new(a.rows.clone())?;
    let f = Fq::new(a.q)?;
    let code = construct_ferrers_code(&d, a.delta, f, method(&a.method))?;
    let exponent = code.bound_exponent();
    let min = code.min_distance();
    if as_json {
        print_json(&json!({
            "diagram": d,
            "delta": a.delta,
            "q": a.q,
            "method": code.method,
            "size": code.size(),
            "logSize": code.log_size(),
            "boundExponent": exponent,
            "meetsBound": code.meets_bound(),
            "minRankDistance": min,
            "words": code.words.iter().map(Matrix::to_rows).collect::<Vec<_>>(),
        }));
    } else {
        let mut t = Table::new();
        t.row("diagram", format!("{:?} ({} dots)", d.row_dots(), d.dots()))
            .row("delta", a.delta)
            .row("method", code.method)
            .row("size", format!("{} = q^{:.3}", code.size(), code.log_size()))
            .row("bound", format!("q^{exponent}"))
            .row("meets bound", yes_no(code.meets_bound()))
            .row("min rank distance", min.map_or_else(|| "n/a".into(), |m| m.to_string()));
        print!("{}", t.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn linear_set(a: &SystemArgs, as_json: bool) -> Result<ExitCode> {
    let sys = load_system(a)?;
    let ctx = sys.field();
    let points = sys.points()?;
    let scattered = points.iter().all(|p| p.weight == 1);
    let enc = |v: &[ssc_core::ExtElement]| -> Vec<u64> { v.iter().map(|x| ctx.encode(x).expect("small field")).collect() };
    let spec = ctx.spec();
    if as_json {
        print_json(&json!({
            "q": spec.q, "k": spec.k, "r": sys.r(), "u": sys.u(),
            "points": points.iter().map(|p| json!({ "rep": enc(&p.rep), "weight": p.weight })).collect::<Vec<_>>(),
            "scattered": scattered,
            "nondegenerate": sys.is_nondegenerate(),
            "rankCheck": scattered_rank_check(sys.u(), sys.r(), spec.k),
        }));
    } else {
        let mut t = Table::new();
        t.row("system", format!("q={} k={} r={} u={}", spec.q, spec.k, sys.r(), sys.u()))
            .row("points", points.len())
            .row("scattered", yes_no(scattered))
            .row("nondegenerate", yes_no(sys.is_nondegenerate()))
            .row("u <= rk/2", yes_no(scattered_rank_check(sys.u(), sys.r(), spec.k)));
        for p in &points {
            t.row(format!("  {:?}", enc(&p.rep)), format!("weight {}", p.weight));
        }
        print!("{}", t.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(a: &EnumerateArgs, as_json: bool) -> Result<ExitCode> {
    let f = Fq::new(a.q)?;
    let mut counts: std::collections::BTreeMap<Vec<usize>, u128> = all_pivot_vectors(a.k, a.n)
        .map(|p| (p.as_slice().to_vec(), 0))
        .collect();
    let mut total: u128 = 0;
    for w in enumerate_subspaces(a.k, a.n, f)? {
        *counts.get_mut(cell_of(&w)?.as_slice()).expect("known cell") += 1;
        total += 1;
    }
    let expected = gaussian_binomial(a.n, a.k, a.q).unwrap_or(u128::MAX);
    let cells: Vec<(Vec<usize>, u128, u128)> = all_pivot_vectors(a.k, a.n)
        .map(|p| (p.as_slice().to_vec(), counts[p.as_slice()], p.cell_size(a.q)))
        .collect();
    let consistent = total == expected && cells.iter().all(|(_, c, s)| c == s);
    if as_json {
        print_json(&json!({
            "q": a.q, "n": a.n, "k": a.k,
            "total": total,
            "gaussianBinomial": expected,
            "cells": cells.iter().map(|(p, c, _)| json!({ "pivots": p, "count": c })).collect::<Vec<_>>(),
            "consistent": consistent,
        }));
    } else {
        let mut t = Table::new();
        for (p, c, _) in &cells {
            t.row(format!("cell {p:?}"), c);
        }
        t.row("total", format!("{total} (Gaussian binomial {expected})"));
        print!("{}", t.render());
    }
    Ok(status(consistent))
}

fn demo(as_json: bool) -> Result<ExitCode> {
    let ctx = FieldCtx::new(2, 3)?;
    let set = norm_one_code(&ctx, 2)?;
    let rep_n1 = verify_intersecting(&set.code, &set.reference, 1, 0)?;
    let ml = multilevel_assemble(3, 2, 3, 1, 0, ctx.base(), FerrersMethod::Auto { seed: 0 })?;
    let rep_ml = verify_intersecting(&ml.code, &ml.reference, 1, 0)?;
    let (cell_bound, _) = max_multilevel_bound_2k(3, 2, 3, 2)?;
    let (ml_json, ml_table) = multilevel_details(&ml);
    if as_json {
        print_json(&json!({
            "field": ctx.spec(),
            "norm1": {
                "report": rep_n1,
                "codewords": set.code.iter().map(|(w, l)| json!({ "label": l, "basis": w.to_rows() })).collect::<Vec<_>>(),
            },
            "multilevel": { "report": rep_ml, "details": ml_json },
            "upperBasic": upper_bound_basic(3, 2, 3, 2)?,
            "multilevelCells2k": cell_bound,
        }));
    } else {
        println!("F_8 = F_2[x]/({:?}), U = {{(s, s^2) : s in F_8}} in F_2^6\n", ctx.modulus());
        print!("{}", render_report("norm1 (q=2, k=3, r=2)", &rep_n1));
        for (w, l) in set.code.iter() {
            println!("  {:<6} {:?}", l.unwrap_or(""), w.to_rows());
        }
        println!();
        let mut t = Table::new();
        t.row("code", "multilevel (q=2, k=3, r=2, u=3, l=1, t=0)");
        report_rows(&mut t, &rep_ml);
        print!("{}{}", t.render(), ml_table.render());
        println!("\nnorm1 reaches {} spaces; the multilevel construction is limited to {cell_bound}.", rep_n1.size);
    }
    Ok(status(rep_n1.valid && rep_ml.valid))
}
