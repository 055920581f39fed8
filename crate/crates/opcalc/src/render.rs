//! Plain-text output.

use std::fmt::Write;

use opcalc_core::{Poly, Ring, TruncMatrix};

pub fn poly(p: &Poly<impl Ring>) -> String {
    p.display_in("t").to_string()
}

/// `u_k = …` lines for the rows of `a`.
pub fn rows(a: &TruncMatrix<impl Ring>) -> String {
    let mut out = String::new();
    for (k, u) in a.row_polys().iter().enumerate() {
        writeln!(out, "u_{k} = {}", poly(u)).expect("string write");
    }
    out
}

/// Right-aligned columns; positions outside the stored pattern are blank.
pub fn matrix<R: Ring>(m: &TruncMatrix<R>) -> String {
    let cells: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for r in &cells {
        for (k, c) in r.iter().enumerate() {
            width[k] = width[k].max(c.chars().count());
        }
    }
    let mut out = format!("# index bound {}, {} exact rows\n", m.index_bound(), m.valid_rows());
    for r in &cells {
        let line: Vec<String> = (0..cols)
            .map(|k| format!("{:>w$}", r.get(k).map(String::as_str).unwrap_or(""), w = width[k]))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).expect("string write");
    }
    out
}

/// Row `k` of `l` read as `shift(u_k) = Σⱼ l[k][j]·u_j`.
pub fn recurrence<R: Ring>(l: &TruncMatrix<R>, shift: &str) -> String {
    let mut out = String::new();
    for k in 0..l.valid_rows() {
        let terms: Vec<String> = l
            .row(k)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, e)| !e.is_zero())
            .map(|(j, e)| if e.is_one() { format!("u_{j}") } else { format!("({e})*u_{j}") })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        writeln!(out, "{shift} u_{k} = {rhs}").expect("string write");
    }
    out
}
