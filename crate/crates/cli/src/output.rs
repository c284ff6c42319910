//! Rendering of result tables as aligned text, CSV, markdown, or JSON lines.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use permuto_core::arith::{factorial, int};
use permuto_core::formulas::MuResult;
use permuto_core::{BigRational, Error, Result};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(BigInt),
    Rat(BigRational),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rat(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => big(v),
            Cell::Rat(v) => rational(v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<BigRational> for Cell {
    fn from(v: BigRational) -> Self {
        Cell::Rat(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Integers go out as JSON numbers of any size.
pub fn big(v: &BigInt) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("integer literal is a JSON number"),
    )
}

/// `{"num": .., "den": ..}` in lowest terms.
pub fn rational(v: &BigRational) -> Value {
    let mut m = Map::new();
    m.insert("num".into(), big(v.numer()));
    m.insert("den".into(), big(v.denom()));
    Value::Object(m)
}

pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                for row in &self.rows {
                    let object: Map<String, Value> = self
                        .headers
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), c.json()))
                        .collect();
                    writeln!(out, "{}", Value::Object(object)).unwrap();
                }
            }
            Format::Csv => {
                writeln!(out, "{}", self.headers.join(",")).unwrap();
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(|c| csv_field(&c.plain())).collect();
                    writeln!(out, "{}", fields.join(",")).unwrap();
                }
            }
            Format::Md => {
                writeln!(out, "| {} |", self.headers.join(" | ")).unwrap();
                writeln!(out, "|{}", "---|".repeat(self.headers.len())).unwrap();
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(Cell::plain).collect();
                    writeln!(out, "| {} |", fields.join(" | ")).unwrap();
                }
            }
            Format::Text => {
                let text: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::plain).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|j| {
                        text.iter()
                            .map(|r| r[j].len())
                            .chain([self.headers[j].len()])
                            .max()
                            .unwrap()
                    })
                    .collect();
                // words read better flush left, numbers flush right
                let left: Vec<bool> = (0..self.headers.len())
                    .map(|j| {
                        self.rows
                            .first()
                            .is_some_and(|r| matches!(r[j], Cell::Text(_)))
                    })
                    .collect();
                let line = |fields: Vec<&str>| {
                    let padded: Vec<String> = fields
                        .iter()
                        .zip(widths.iter().zip(&left))
                        .map(|(f, (w, &l))| {
                            if l {
                                format!("{f:<w$}")
                            } else {
                                format!("{f:>w$}")
                            }
                        })
                        .collect();
                    padded.join("  ").trim_end().to_owned()
                };
                writeln!(out, "{}", line(self.headers.clone())).unwrap();
                for row in &text {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// One `(n, k)` result: `mu_k(n)` in lowest terms and the Chern number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub n: u32,
    pub k: u32,
    pub mu_numerator: BigInt,
    pub mu_denominator: BigInt,
    pub chern_number: BigInt,
}

impl OutputRecord {
    pub fn mu(&self) -> BigRational {
        BigRational::new(self.mu_numerator.clone(), self.mu_denominator.clone())
    }

    pub const HEADERS: [&'static str; 4] = ["n", "k", "mu", "chern_number"];

    pub fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.k.into(),
            self.mu().into(),
            self.chern_number.clone().into(),
        ]
    }
}

impl TryFrom<MuResult> for OutputRecord {
    type Error = Error;

    fn try_from(r: MuResult) -> Result<Self> {
        let record = OutputRecord {
            n: r.n,
            k: r.k,
            mu_numerator: r.mu.numer().clone(),
            mu_denominator: r.mu.denom().clone(),
            chern_number: r.chern_number,
        };
        let scaled = int(factorial(record.n as i64 + 1)?) * record.mu();
        if scaled != int(record.chern_number.clone()) {
            return Err(Error::Inconsistency(format!(
                "record for n={} k={} is not self-consistent",
                r.n, r.k
            )));
        }
        Ok(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use permuto_core::arith::ratio;
    use permuto_core::formulas::mu_result;

    fn sample() -> Table {
        let mut t = Table::new(OutputRecord::HEADERS.to_vec());
        t.push(
            OutputRecord::try_from(mu_result(2, 4).unwrap())
                .unwrap()
                .cells(),
        );
        t
    }

    #[test]
    fn json_keeps_field_order_and_exact_numbers() {
        assert_eq!(
            sample().render(Format::Json),
            "{\"n\":4,\"k\":2,\"mu\":{\"num\":13,\"den\":12},\"chern_number\":130}\n"
        );
        let huge = BigInt::from(10).pow(40);
        assert_eq!(big(&huge).to_string(), format!("1{}", "0".repeat(40)));
    }

    #[test]
    fn csv_and_markdown() {
        assert_eq!(
            sample().render(Format::Csv),
            "n,k,mu,chern_number\n4,2,13/12,130\n"
        );
        assert_eq!(
            sample().render(Format::Md),
            "| n | k | mu | chern_number |\n|---|---|---|---|\n| 4 | 2 | 13/12 | 130 |\n"
        );
        assert_eq!(csv_field("2,0"), "\"2,0\"");
    }

    #[test]
    fn text_is_right_aligned() {
        assert_eq!(
            sample().render(Format::Text),
            "n  k     mu  chern_number\n4  2  13/12           130\n"
        );
    }

    #[test]
    fn rationals_reduce() {
        assert_eq!(
            rational(&ratio(-2, 4)).to_string(),
            "{\"num\":-1,\"den\":2}"
        );
    }
}
