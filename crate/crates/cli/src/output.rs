use std::fmt::Write as _;

use ssc_core::verify::VerificationReport;

/// Two-column key/value block with aligned values.
#[derive(Default)]
pub struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new() -> Self {
        Table::default()
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            let _ = writeln!(out, "{k}{}  {v}", " ".repeat(pad));
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bound_status(name: &str, met: bool) -> &'static str {
    match (name.starts_with("upper"), met) {
        (true, true) => "attained",
        (true, false) => "not attained",
        (false, true) => "reached",
        (false, false) => "not reached",
    }
}

pub fn report_rows(table: &mut Table, rep: &VerificationReport) {
    table
        .row("size", rep.size)
        .row("subspaces", format!("{}-dim in F_q^{}", rep.code_dim, rep.ambient))
        .row("reference", format!("{}-dim, l = {}, t = {}", rep.u, rep.ell, rep.t))
        .row("valid", yes_no(rep.valid))
        .row("min distance", rep.min_distance)
        .row("worst pair intersection", rep.worst_pair_intersection_dim);
    let dims: Vec<String> = rep
        .per_codeword_u_intersection_dims
        .iter()
        .map(usize::to_string)
        .collect();
    let dims = if dims.len() > 32 {
        format!("{} … ({} codewords)", dims[..32].join(" "), dims.len())
    } else {
        dims.join(" ")
    };
    table.row("dim(S ∩ U)", dims);
    for (name, b) in &rep.bound_comparisons {
        let flag = if b.conjectural { " (conjectural)" } else { "" };
        table.row(format!("bound {name}"), format!("{} {}{flag}", b.value, bound_status(name, b.met)));
    }
}

pub fn render_report(title: &str, rep: &VerificationReport) -> String {
    let mut t = Table::new();
    t.row("code", title);
    report_rows(&mut t, rep);
    t.render()
}

pub fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value"));
}
