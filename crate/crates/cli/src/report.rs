//! Serializable report shapes and their human, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;

use lad_core::dynamics::FlatnessReport;
use lad_core::entropy::EntropyReport;
use lad_core::harness::{AdditivityCheck, InequalityCheck};

use crate::args::Format;
use crate::Failure;

#[derive(Serialize)]
pub struct EntropyJson<'a> {
    pub ideal: &'a str,
    pub n: &'a [usize],
    pub length: &'a [u64],
    pub naive: &'a [f64],
    pub fekete: &'a [f64],
    pub ratio: &'a [f64],
    pub headline: f64,
    pub exact_ratio: Option<u64>,
}

impl<'a> From<&'a EntropyReport> for EntropyJson<'a> {
    fn from(r: &'a EntropyReport) -> Self {
        EntropyJson {
            ideal: &r.ideal,
            n: &r.n,
            length: &r.lengths,
            naive: &r.naive,
            fekete: &r.fekete,
            ratio: &r.ratio,
            headline: r.headline,
            exact_ratio: r.exact_ratio,
        }
    }
}

#[derive(Serialize)]
pub struct FlatnessJson {
    pub dimension_check: &'static str,
    pub pattern_check: &'static str,
    pub dim_source: usize,
    pub dim_fiber: usize,
    pub dim_target: usize,
    pub notes: Vec<String>,
}

impl From<&FlatnessReport> for FlatnessJson {
    fn from(r: &FlatnessReport) -> Self {
        FlatnessJson {
            dimension_check: r.dimension_check.as_str(),
            pattern_check: r.pattern_check.as_str(),
            dim_source: r.dim_source,
            dim_fiber: r.dim_fiber,
            dim_target: r.dim_target,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Serialize)]
struct RowJson {
    n: usize,
    lhs: u64,
    rhs_factor_r: u64,
    rhs_factor_fiber: u64,
    pass: bool,
}

#[derive(Serialize)]
struct AdditivityEntropyJson<'a> {
    target: EntropyJson<'a>,
    source: EntropyJson<'a>,
    fiber: EntropyJson<'a>,
}

#[derive(Serialize)]
struct DecompositionJson {
    target: f64,
    source: f64,
    fiber: f64,
    gap: f64,
}

#[derive(Serialize)]
struct AdditivityJson<'a> {
    map: &'a str,
    q: &'a str,
    q_prime: &'a str,
    passed: bool,
    rows: Vec<RowJson>,
    flatness: FlatnessJson,
    entropy: AdditivityEntropyJson<'a>,
    decomposition: DecompositionJson,
}

#[derive(Serialize)]
struct InequalityEntropyJson<'a> {
    target: EntropyJson<'a>,
    source: EntropyJson<'a>,
}

#[derive(Serialize)]
struct InequalityJson<'a> {
    map: &'a str,
    passed: bool,
    rows: Vec<RowJson>,
    entropy: InequalityEntropyJson<'a>,
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_table(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Single-row CSV for scalar reports.
pub fn csv_record(header: &[&str], values: Vec<String>) -> Result<String, Failure> {
    csv_table(header, [values])
}

fn headline_line(r: &EntropyReport) -> String {
    match r.symbolic() {
        Some(sym) => format!("{:.10} = {sym} (exact ratios observed)", r.headline),
        None => format!("{:.10}", r.headline),
    }
}

pub fn entropy(r: &EntropyReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(json(&EntropyJson::from(r))),
        Format::Csv => csv_table(
            &["n", "length", "naive", "fekete", "ratio"],
            (0..r.n.len()).map(|k| {
                vec![
                    r.n[k].to_string(),
                    r.lengths[k].to_string(),
                    r.naive[k].to_string(),
                    r.fekete[k].to_string(),
                    if k == 0 {
                        String::new()
                    } else {
                        r.ratio[k - 1].to_string()
                    },
                ]
            }),
        ),
        Format::Human => {
            let mut s = String::new();
            writeln!(s, "q = {}", r.ideal).unwrap();
            writeln!(
                s,
                "{:>3} {:>14} {:>14} {:>14} {:>14}",
                "n", "length", "naive", "fekete", "ratio"
            )
            .unwrap();
            for k in 0..r.n.len() {
                let ratio = if k == 0 {
                    String::new()
                } else {
                    format!("{:.10}", r.ratio[k - 1])
                };
                writeln!(
                    s,
                    "{:>3} {:>14} {:>14.10} {:>14.10} {:>14}",
                    r.n[k], r.lengths[k], r.naive[k], r.fekete[k], ratio
                )
                .unwrap();
            }
            writeln!(s, "headline entropy {}", headline_line(r)).unwrap();
            Ok(s)
        }
    }
}

fn rows_csv(rows: Vec<RowJson>) -> Result<String, Failure> {
    csv_table(
        &["n", "lhs", "rhs_factor_r", "rhs_factor_fiber", "pass"],
        rows.into_iter().map(|r| {
            vec![
                r.n.to_string(),
                r.lhs.to_string(),
                r.rhs_factor_r.to_string(),
                r.rhs_factor_fiber.to_string(),
                r.pass.to_string(),
            ]
        }),
    )
}

fn rows_human(s: &mut String, rows: &[RowJson], relation: &str) {
    writeln!(
        s,
        "{:>3} {:>16} {:>3} {:>14} {:>14} {:>6}",
        "n", "lhs", "", "R factor", "fiber factor", ""
    )
    .unwrap();
    for r in rows {
        writeln!(
            s,
            "{:>3} {:>16} {:>3} {:>14} {:>14} {:>6}",
            r.n,
            r.lhs,
            relation,
            r.rhs_factor_r,
            r.rhs_factor_fiber,
            if r.pass { "ok" } else { "FAIL" }
        )
        .unwrap();
    }
}

pub fn additivity(map: &str, c: &AdditivityCheck, format: Format) -> Result<String, Failure> {
    let rows: Vec<RowJson> = c
        .rows
        .iter()
        .map(|r| RowJson {
            n: r.n,
            lhs: r.lhs,
            rhs_factor_r: r.rhs_factor_r,
            rhs_factor_fiber: r.rhs_factor_fiber,
            pass: r.pass,
        })
        .collect();
    match format {
        Format::Json => Ok(json(&AdditivityJson {
            map,
            q: &c.q,
            q_prime: &c.q_prime,
            passed: c.passed(),
            rows,
            flatness: (&c.flatness).into(),
            entropy: AdditivityEntropyJson {
                target: (&c.target_entropy).into(),
                source: (&c.source_entropy).into(),
                fiber: (&c.fiber_entropy).into(),
            },
            decomposition: DecompositionJson {
                target: c.decomposition.target,
                source: c.decomposition.source,
                fiber: c.decomposition.fiber,
                gap: c.decomposition.gap(),
            },
        })),
        Format::Csv => rows_csv(rows),
        Format::Human => {
            let mut s = String::new();
            writeln!(s, "map {map}, q = {}, q' = {}", c.q, c.q_prime).unwrap();
            writeln!(s, "Q = {}", c.target_entropy.ideal).unwrap();
            rows_human(&mut s, &rows, "=");
            writeln!(
                s,
                "entropy: target {}, source {}, fiber {}, gap {:.3e}",
                headline_line(&c.target_entropy),
                headline_line(&c.source_entropy),
                headline_line(&c.fiber_entropy),
                c.decomposition.gap()
            )
            .unwrap();
            writeln!(
                s,
                "flatness advisory: dimension {} ({} + {} vs {}), pattern {}",
                c.flatness.dimension_check.as_str(),
                c.flatness.dim_source,
                c.flatness.dim_fiber,
                c.flatness.dim_target,
                c.flatness.pattern_check.as_str()
            )
            .unwrap();
            writeln!(
                s,
                "{}",
                if c.passed() {
                    "additivity holds for every n"
                } else {
                    "ADDITIVITY FAILED"
                }
            )
            .unwrap();
            Ok(s)
        }
    }
}

pub fn inequality(map: &str, c: &InequalityCheck, format: Format) -> Result<String, Failure> {
    let rows: Vec<RowJson> = c
        .rows
        .iter()
        .map(|r| RowJson {
            n: r.n,
            lhs: r.lhs,
            rhs_factor_r: r.rhs_factor_r,
            rhs_factor_fiber: r.rhs_factor_fiber,
            pass: r.pass,
        })
        .collect();
    match format {
        Format::Json => Ok(json(&InequalityJson {
            map,
            passed: c.passed(),
            rows,
            entropy: InequalityEntropyJson {
                target: (&c.target_entropy).into(),
                source: (&c.source_entropy).into(),
            },
        })),
        Format::Csv => rows_csv(rows),
        Format::Human => {
            let mut s = String::new();
            writeln!(s, "map {map}").unwrap();
            rows_human(&mut s, &rows, "<=");
            writeln!(
                s,
                "entropy: target {}, source {}",
                headline_line(&c.target_entropy),
                headline_line(&c.source_entropy)
            )
            .unwrap();
            writeln!(
                s,
                "{}",
                if c.passed() {
                    "inequality holds for every n"
                } else {
                    "INEQUALITY FAILED"
                }
            )
            .unwrap();
            Ok(s)
        }
    }
}
