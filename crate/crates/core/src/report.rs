//! Serializable results shared by the command line front end and the tests.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::group::FinAbGroup2;
use crate::OddRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An exact rational as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&OddRational> for Fraction {
    fn from(q: &OddRational) -> Self {
        Fraction {
            num: q.num().to_string(),
            den: q.den().to_string(),
        }
    }
}

impl TryFrom<&Fraction> for OddRational {
    type Error = crate::Error;

    fn try_from(f: &Fraction) -> crate::Result<Self> {
        format!("{}/{}", f.num, f.den).parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub cyclic_2_exponents: Vec<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_rank: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

impl From<&FinAbGroup2> for GroupJson {
    fn from(g: &FinAbGroup2) -> Self {
        GroupJson {
            cyclic_2_exponents: g.exponents().to_vec(),
            free_rank: g.free_rank(),
        }
    }
}

impl From<&GroupJson> for FinAbGroup2 {
    fn from(g: &GroupJson) -> Self {
        FinAbGroup2::from_exponents(g.cyclic_2_exponents.iter().copied())
            .with_free_rank(g.free_rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub dim: i64,
    pub group: GroupJson,
    pub psi3: Option<Fraction>,
    /// Which theory or family the row belongs to, e.g. `KO` or `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TableRow {
    pub fn new(dim: i64, group: &FinAbGroup2) -> Self {
        TableRow {
            dim,
            group: group.into(),
            psi3: None,
            label: None,
        }
    }

    pub fn with_psi3(mut self, q: Option<&OddRational>) -> Self {
        self.psi3 = q.map(Fraction::from);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

/// One entry of a matrix, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub value: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub tables: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<MatrixEntry>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            checks: Vec::new(),
            tables: Vec::new(),
            values: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> &mut Self {
        let detail = detail.into();
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: (!detail.is_empty()).then_some(detail),
        });
        self
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl ToString) -> &mut Self {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    /// Record every entry of a square matrix that lies on or below the diagonal.
    pub fn lower_triangle(&mut self, name: &str, m: &crate::QMatrix) -> &mut Self {
        for i in 0..m.rows() {
            for j in 0..=i.min(m.cols().saturating_sub(1)) {
                let value = Fraction::from(m.get(i, j));
                self.entries.push(MatrixEntry {
                    matrix: name.to_string(),
                    row: i + 1,
                    col: j + 1,
                    value,
                });
            }
        }
        self
    }

    pub fn row(&mut self, row: TableRow) -> &mut Self {
        self.tables.push(row);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        if !self.values.is_empty() {
            out.push_str("\n| quantity | value |\n|---|---|\n");
            for v in &self.values {
                let _ = writeln!(out, "| {} | {} |", v.name, v.value);
            }
        }
        if !self.entries.is_empty() {
            out.push_str("\n| matrix | entry | value |\n|---|---|---|\n");
            for e in &self.entries {
                let v = if e.value.den == "1" {
                    e.value.num.clone()
                } else {
                    format!("{}/{}", e.value.num, e.value.den)
                };
                let _ = writeln!(out, "| {} | ({}, {}) | {} |", e.matrix, e.row, e.col, v);
            }
        }
        if !self.tables.is_empty() {
            let labelled = self.tables.iter().any(|r| r.label.is_some());
            out.push_str(if labelled {
                "\n| table | dim | group | psi^3 |\n|---|---|---|---|\n"
            } else {
                "\n| dim | group | psi^3 |\n|---|---|---|\n"
            });
            for r in &self.tables {
                let g = FinAbGroup2::from(&r.group);
                let psi = r.psi3.as_ref().map_or("-".to_string(), |f| {
                    if f.den == "1" {
                        f.num.clone()
                    } else {
                        format!("{}/{}", f.num, f.den)
                    }
                });
                if labelled {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        r.label.as_deref().unwrap_or(""),
                        r.dim,
                        g,
                        psi
                    );
                } else {
                    let _ = writeln!(out, "| {} | {} | {} |", r.dim, g, psi);
                }
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "- {mark} {}: {d}", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "- {mark} {}", c.name);
                    }
                }
            }
        }
        out
    }
}
