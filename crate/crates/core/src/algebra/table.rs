//! Multiplication tables of basis vectors and their export formats.
//!
//! JSON: `{"t":3,"gammas":["symbolic"],"entries":[{"p":0,"q":0,"sign":1,"gamma_mask":0,"index":0},...]}`
//! CSV: header `p,q,sign,monomial,index`, monomial written `g1*g3` or `1`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CdAlgebra, Element, Gammas};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, SparsePoly};
use crate::twist::{self, Sign, TwistTerm};

/// Largest dimension materialized by default.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?} (text, csv, json)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub p: u64,
    pub q: u64,
    pub term: TwistTerm,
}

/// All `n^2` basis products of a tower `E_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    pub t: u32,
    pub gammas: Gammas,
    pub entries: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    p: u64,
    q: u64,
    sign: i8,
    gamma_mask: u64,
    index: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    t: u32,
    gammas: Vec<String>,
    entries: Vec<JsonEntry>,
}

impl From<&TableEntry> for JsonEntry {
    fn from(e: &TableEntry) -> Self {
        JsonEntry {
            p: e.p,
            q: e.q,
            sign: e.term.sign.to_i8(),
            gamma_mask: e.term.gamma_mask,
            index: e.term.index,
        }
    }
}

fn gamma_strings(gammas: &Gammas) -> Vec<String> {
    match gammas {
        Gammas::Symbolic => vec!["symbolic".to_string()],
        Gammas::Concrete(g) => g.iter().map(|r| r.to_string()).collect(),
    }
}

fn check_cap(t: u32, cap: u64) -> Result<()> {
    twist::BasisIndex::new(0, t)?;
    let dim = 1u64 << t;
    if dim > cap {
        return Err(Error::TableCapExceeded { dim, cap });
    }
    Ok(())
}

/// Reduces an oracle product to `sign * monomial * f_index`, if it has that shape.
pub fn single_term(x: &Element<SparsePoly>) -> Option<TwistTerm> {
    if x.len() != 1 {
        return None;
    }
    let (index, coeff) = x.terms().next()?;
    let (mono, c) = coeff.as_single_term()?;
    let sign = Sign::from_i64(if *c == num_traits::One::one() {
        1
    } else if *c == -<crate::scalar::Rational as num_traits::One>::one() {
        -1
    } else {
        return None;
    })?;
    Some(TwistTerm { sign, gamma_mask: mono.to_mask()?, index })
}

/// Every basis product of an arbitrary algebra, computed by the doubling oracle.
pub fn build_table<S: Scalar>(alg: &CdAlgebra<S>, cap: u64) -> Result<Vec<(u64, u64, Element<S>)>> {
    let dim = alg.dim();
    if dim > cap {
        return Err(Error::TableCapExceeded { dim, cap });
    }
    let rows: Vec<Vec<(u64, u64, Element<S>)>> = (0..dim)
        .into_par_iter()
        .map(|p| {
            let fp = alg.basis(p)?;
            (0..dim)
                .map(|q| Ok((p, q, alg.mul(&fp, &alg.basis(q)?)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

impl MultiplicationTable {
    /// Table of `E_t` from the symbolic doubling oracle. Each product is
    /// reduced to a single signed monomial term; anything else is an error.
    pub fn from_oracle(t: u32, gammas: Gammas, cap: u64) -> Result<Self> {
        check_cap(t, cap)?;
        if let Gammas::Concrete(g) = &gammas {
            if g.len() != t as usize {
                return Err(Error::InvalidParameter(format!(
                    "expected {t} parameter values, got {}",
                    g.len()
                )));
            }
            CdAlgebra::rational_tower(g)?;
        }
        let alg = CdAlgebra::symbolic_tower(t)?;
        let entries = build_table(&alg, cap)?
            .into_iter()
            .map(|(p, q, x)| {
                single_term(&x).map(|term| TableEntry { p, q, term }).ok_or_else(|| {
                    Error::InvalidParameter(format!("f{p} f{q} = {x} is not a single term"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(MultiplicationTable { t, gammas, entries })
    }

    /// Table of `E_t` from the sign-map fast path.
    pub fn from_twist(t: u32, gammas: Gammas, cap: u64) -> Result<Self> {
        check_cap(t, cap)?;
        let n = 1u64 << t;
        let entries = (0..n * n)
            .map(|k| {
                let (p, q) = (k / n, k % n);
                TableEntry { p, q, term: twist::basis_product_unchecked(t, p, q) }
            })
            .collect();
        Ok(MultiplicationTable { t, gammas, entries })
    }

    pub fn dim(&self) -> u64 {
        1u64 << self.t
    }

    pub fn get(&self, p: u64, q: u64) -> Option<&TableEntry> {
        self.entries.get((p * self.dim() + q) as usize)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Row/column layout: rows are the left factor, columns the right factor.
    pub fn to_text(&self) -> String {
        let n = self.dim() as usize;
        let label = |i: usize| if i == 0 { "1".to_string() } else { format!("f{i}") };
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(n + 1);
        grid.push(std::iter::once("*".to_string()).chain((0..n).map(label)).collect());
        for p in 0..n {
            let mut row = vec![label(p)];
            row.extend(self.entries[p * n..(p + 1) * n].iter().map(|e| e.term.cell()));
            grid.push(row);
        }
        let widths: Vec<usize> =
            (0..=n).map(|j| grid.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for (k, row) in grid.iter().enumerate() {
            let cells: Vec<String> =
                row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
            if k == 0 {
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                out.push_str(&rule.join("-+-"));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,sign,monomial,index\n");
        for e in &self.entries {
            out.push_str(&csv_row(e));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let table = JsonTable {
            t: self.t,
            gammas: gamma_strings(&self.gammas),
            entries: self.entries.iter().map(JsonEntry::from).collect(),
        };
        let mut s = serde_json::to_string(&table).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let table: JsonTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let gammas = if table.gammas == ["symbolic"] {
            Gammas::Symbolic
        } else {
            Gammas::Concrete(
                table
                    .gammas
                    .iter()
                    .map(|g| crate::scalar::parse_rational(g))
                    .collect::<Result<_>>()?,
            )
        };
        let entries = table
            .entries
            .into_iter()
            .map(|e| {
                let sign = Sign::from_i64(e.sign.into())
                    .ok_or_else(|| Error::Parse(format!("bad sign {}", e.sign)))?;
                Ok(TableEntry {
                    p: e.p,
                    q: e.q,
                    term: TwistTerm { sign, gamma_mask: e.gamma_mask, index: e.index },
                })
            })
            .collect::<Result<_>>()?;
        Ok(MultiplicationTable { t: table.t, gammas, entries })
    }
}

fn csv_row(e: &TableEntry) -> String {
    format!("{},{},{},{},{}\n", e.p, e.q, e.term.sign.to_i8(), e.term.monomial(), e.term.index)
}

/// Parses the CSV export back into entries.
pub fn parse_csv(s: &str) -> Result<Vec<TableEntry>> {
    let mut lines = s.lines();
    if lines.next().map(str::trim) != Some("p,q,sign,monomial,index") {
        return Err(Error::Parse("missing CSV header p,q,sign,monomial,index".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 5 {
                return Err(Error::Parse(format!("bad CSV row {line:?}")));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
            let sign = f[2]
                .parse::<i64>()
                .ok()
                .and_then(Sign::from_i64)
                .ok_or_else(|| Error::Parse(format!("bad sign {:?}", f[2])))?;
            Ok(TableEntry {
                p: num(f[0])?,
                q: num(f[1])?,
                term: TwistTerm { sign, gamma_mask: parse_monomial_mask(f[3])?, index: num(f[4])? },
            })
        })
        .collect()
}

/// `"g1*g3"` -> `0b101`, `"1"` -> `0`.
pub fn parse_monomial_mask(s: &str) -> Result<u64> {
    if s == "1" {
        return Ok(0);
    }
    s.split('*').try_fold(0u64, |mask, part| {
        let m: u32 = part
            .strip_prefix('g')
            .and_then(|d| d.parse().ok())
            .filter(|m| (1..=64).contains(m))
            .ok_or_else(|| Error::Parse(format!("bad monomial {s:?}")))?;
        Ok(mask | 1 << (m - 1))
    })
}

/// Writes the table of `E_t` row by row from the fast path without holding it
/// in memory. Text rows are unpadded.
pub fn stream_table(t: u32, gammas: &Gammas, format: Format, out: &mut dyn Write) -> Result<()> {
    twist::BasisIndex::new(0, t)?;
    let n = 1u64 << t;
    let io = |e: std::io::Error| Error::InvalidParameter(format!("write failed: {e}"));
    match format {
        Format::Csv => {
            out.write_all(b"p,q,sign,monomial,index\n").map_err(io)?;
            for p in 0..n {
                for q in 0..n {
                    let e = TableEntry { p, q, term: twist::basis_product_unchecked(t, p, q) };
                    out.write_all(csv_row(&e).as_bytes()).map_err(io)?;
                }
            }
        }
        Format::Json => {
            let g = serde_json::to_string(&gamma_strings(gammas)).expect("strings serialize");
            write!(out, "{{\"t\":{t},\"gammas\":{g},\"entries\":[").map_err(io)?;
            for p in 0..n {
                for q in 0..n {
                    let e = TableEntry { p, q, term: twist::basis_product_unchecked(t, p, q) };
                    if p + q > 0 {
                        out.write_all(b",").map_err(io)?;
                    }
                    let s = serde_json::to_string(&JsonEntry::from(&e)).expect("entry serializes");
                    out.write_all(s.as_bytes()).map_err(io)?;
                }
            }
            out.write_all(b"]}\n").map_err(io)?;
        }
        Format::Text => {
            for p in 0..n {
                let row: Vec<String> =
                    (0..n).map(|q| twist::basis_product_unchecked(t, p, q).cell()).collect();
                writeln!(out, "{}", row.join(" | ")).map_err(io)?;
            }
        }
    }
    Ok(())
}
