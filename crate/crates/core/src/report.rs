//! Assembled counting reports.
//!
//! One report covers a single free algebra: the per-(k, p) table of
//! minimal and irreducible system counts through every route (filter
//! classification, assignment enumeration, closed form in both readings
//! of the diagonal case), the exact cardinality, and the alternating
//! bound evaluated with each table. Serializes to JSON, RFC 4180 CSV
//! (LF line endings) and an aligned plain-text table; all three outputs
//! are byte-deterministic.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::counting::{eta_closed_form, eta_via_theorem, upper_bound};
use crate::error::Result;
use crate::free::{build_free, FreeAlgebra, GeneratorFilter};
use crate::guard::SizeGuard;

/// One (k, p) record: counts of `(p+1)`-valued systems of the `k`-th
/// filter through every route.
#[derive(Clone, Debug)]
pub struct CountRow {
    pub k: u32,
    pub p: u32,
    /// Minimal irreducible systems (filter classification).
    pub alpha: u64,
    /// All irreducible systems (filter classification; the oracle).
    pub eta_oracle: u64,
    /// Assignment-enumeration total.
    pub eta_theorem: u64,
    /// Closed form as printed.
    pub eta_literal: BigUint,
    /// Closed form with the corrected diagonal summation limit.
    pub eta_corrected: BigUint,
    /// Set when the literal closed form disagrees with the oracle.
    pub flag: bool,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub n: u32,
    pub r: u32,
    pub cardinality_exact: u64,
    /// Valuedness of the k-th filter subalgebra, k = 1..=r.
    pub filter_valuedness: Vec<u64>,
    pub rows: Vec<CountRow>,
    pub upper_bound_oracle: BigInt,
    pub upper_bound_literal: BigInt,
    pub upper_bound_corrected: BigInt,
    /// The oracle-table bound dominates the exact cardinality.
    pub bound_holds: bool,
}

/// Builds the free algebra and its canonical filters, then the report.
pub fn build_count_report(n: u32, r: u32, guard: &SizeGuard) -> Result<CountReport> {
    let free = build_free(n as usize, r as usize, guard)?;
    let filters = free.canonical_filters(guard)?;
    build_count_report_from(&free, &filters, guard)
}

/// Assembles a report from an already-built free algebra and its
/// canonical filters.
pub fn build_count_report_from(
    free: &FreeAlgebra,
    filters: &[GeneratorFilter],
    guard: &SizeGuard,
) -> Result<CountReport> {
    let (n, r) = (free.n() as u32, free.r() as u32);
    let mut rows = Vec::with_capacity((n * r) as usize);
    let mut table_oracle = Vec::with_capacity(r as usize);
    let mut table_literal = Vec::with_capacity(r as usize);
    let mut table_corrected = Vec::with_capacity(r as usize);
    for k in 1..=r {
        let gf = &filters[(k - 1) as usize];
        let m_k = gf.valuedness as u64;
        let mut row_oracle = Vec::with_capacity(n as usize);
        let mut row_literal = Vec::with_capacity(n as usize);
        let mut row_corrected = Vec::with_capacity(n as usize);
        for p in 1..=n {
            let alpha = gf.alpha[(p - 1) as usize];
            let eta_oracle = gf.eta[(p - 1) as usize];
            let eta_theorem = eta_via_theorem(n, r, k, p, guard)?;
            let closed = eta_closed_form(n as u64, r as u64, k as u64, p as u64, m_k);
            let flag = closed.literal != BigUint::from(eta_oracle);
            row_oracle.push(BigUint::from(eta_oracle));
            row_literal.push(closed.literal.clone());
            row_corrected.push(closed.corrected.clone());
            rows.push(CountRow {
                k,
                p,
                alpha,
                eta_oracle,
                eta_theorem,
                eta_literal: closed.literal,
                eta_corrected: closed.corrected,
                flag,
            });
        }
        table_oracle.push(row_oracle);
        table_literal.push(row_literal);
        table_corrected.push(row_corrected);
    }
    let upper_bound_oracle = upper_bound(n, r, &table_oracle)?;
    let upper_bound_literal = upper_bound(n, r, &table_literal)?;
    let upper_bound_corrected = upper_bound(n, r, &table_corrected)?;
    let exact = free.size() as u64;
    let bound_holds = upper_bound_oracle >= BigInt::from(exact);
    Ok(CountReport {
        n,
        r,
        cardinality_exact: exact,
        filter_valuedness: filters.iter().map(|f| f.valuedness as u64).collect(),
        rows,
        upper_bound_oracle,
        upper_bound_literal,
        upper_bound_corrected,
        bound_holds,
    })
}

#[derive(Serialize)]
struct RowJson {
    k: u32,
    p: u32,
    alpha: u64,
    eta_oracle: u64,
    eta_theorem: u64,
    eta_literal: String,
    eta_corrected: String,
    flag: bool,
}

#[derive(Serialize)]
struct ReportJson {
    n: u32,
    r: u32,
    cardinality_exact: u64,
    filter_valuedness: Vec<u64>,
    rows: Vec<RowJson>,
    upper_bound_oracle: String,
    upper_bound_literal: String,
    upper_bound_corrected: String,
    bound_holds: bool,
}

impl CountReport {
    pub fn to_json_string(&self) -> String {
        let doc = ReportJson {
            n: self.n,
            r: self.r,
            cardinality_exact: self.cardinality_exact,
            filter_valuedness: self.filter_valuedness.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| RowJson {
                    k: row.k,
                    p: row.p,
                    alpha: row.alpha,
                    eta_oracle: row.eta_oracle,
                    eta_theorem: row.eta_theorem,
                    eta_literal: row.eta_literal.to_string(),
                    eta_corrected: row.eta_corrected.to_string(),
                    flag: row.flag,
                })
                .collect(),
            upper_bound_oracle: self.upper_bound_oracle.to_string(),
            upper_bound_literal: self.upper_bound_literal.to_string(),
            upper_bound_corrected: self.upper_bound_corrected.to_string(),
            bound_holds: self.bound_holds,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// RFC 4180 quoting, LF line endings, one row per (k, p). The
    /// `eta_formula` column carries the literal closed form; `flag`
    /// marks disagreement with the oracle.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,p,alpha,eta_oracle,eta_formula,flag\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&row.k.to_string()),
                csv_field(&row.p.to_string()),
                csv_field(&row.alpha.to_string()),
                csv_field(&row.eta_oracle.to_string()),
                csv_field(&row.eta_literal.to_string()),
                csv_field(if row.flag { "true" } else { "false" }),
            ));
        }
        out
    }

    /// Fixed-width table plus the bound verdict lines.
    pub fn to_text(&self) -> String {
        let headers = ["k", "p", "alpha", "eta_oracle", "eta_formula", "flag"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|row| {
                [
                    row.k.to_string(),
                    row.p.to_string(),
                    row.alpha.to_string(),
                    row.eta_oracle.to_string(),
                    row.eta_literal.to_string(),
                    if row.flag { "DISAGREES".into() } else { "ok".into() },
                ]
            })
            .collect();
        let widths: Vec<usize> = headers
            .iter()
            .enumerate()
            .map(|(i, h)| {
                cells
                    .iter()
                    .map(|c| c[i].len())
                    .chain(std::iter::once(h.len()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = format!("counts for n={} r={}\n", self.n, self.r);
        let fmt_line = |fields: &[String]| -> String {
            fields
                .iter()
                .enumerate()
                .map(|(i, f)| format!("{:>width$}", f, width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&fmt_line(
            &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        ));
        out.push('\n');
        for c in &cells {
            out.push_str(&fmt_line(c));
            out.push('\n');
        }
        out.push_str(&format!(
            "filter valuedness by k: {:?}\n",
            self.filter_valuedness
        ));
        out.push_str(&self.bound_text());
        out
    }

    /// The bound verdict lines alone.
    pub fn bound_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "exact cardinality: {}\n",
            self.cardinality_exact
        ));
        out.push_str(&format!(
            "upper bound (oracle eta): {}  holds: {}\n",
            self.upper_bound_oracle, self.bound_holds
        ));
        out.push_str(&format!(
            "upper bound (corrected formula eta): {}\n",
            self.upper_bound_corrected
        ));
        out.push_str(&format!(
            "upper bound (literal formula eta): {}\n",
            self.upper_bound_literal
        ));
        out
    }
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}
