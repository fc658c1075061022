use std::fmt::{self, Write as _};

use serde_json::{json, Value};
use synergy_core::axioms::{AxiomMatrix, AxiomReport, Verdict, Witness};
use synergy_core::rational::{to_decimal_string, to_fraction_string};
use synergy_core::{PlayerLabeling, Rational};

/// `p/q (decimal)`, or just the integer.
pub fn exact_text(r: &Rational) -> String {
    if r.is_integer() {
        to_fraction_string(r)
    } else {
        format!("{} ({})", to_fraction_string(r), to_decimal_string(r))
    }
}

pub fn exact_json(r: &Rational) -> Value {
    json!({"exact": to_fraction_string(r), "decimal": to_decimal_string(r)})
}

/// Left-aligned text columns separated by two spaces.
pub struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Table {
        Table { rows: vec![header] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let columns = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..columns)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        for row in &self.rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                write!(line, "{cell:<width$}", width = widths[c])?;
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

fn verdict_text(r: &AxiomReport) -> &'static str {
    match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Vacuous => "vacuous",
        Verdict::Fail => "FAIL",
    }
}

fn describe_witness(w: &Witness, labels: Option<&PlayerLabeling>) -> String {
    let fallback = PlayerLabeling::default_for(w.n);
    let labels = labels.filter(|l| l.len() == w.n).unwrap_or(&fallback);
    let mut parts = Vec::new();
    if !w.coalitions.is_empty() {
        let sets: Vec<String> = w.coalitions.iter().map(|c| format!("{{{}}}", labels.format_coalition(*c))).collect();
        parts.push(format!("coalitions {}", sets.join(" ")));
    }
    if let Some(i) = w.player {
        parts.push(format!("player {}", labels.labels()[i]));
    }
    if let Some(p) = &w.permutation {
        let image: Vec<&str> = p.iter().map(|&j| labels.labels()[j].as_str()).collect();
        parts.push(format!("permutation -> [{}]", image.join(",")));
    }
    if let Some(c) = &w.scalar {
        parts.push(format!("scalar {}", to_fraction_string(c)));
    }
    let relation = match w.relation {
        synergy_core::axioms::Relation::Equal => "!=",
        synergy_core::axioms::Relation::AtLeast => "<",
    };
    format!(
        "{}: {} {relation} {} [{}] on a {}-player game",
        w.description,
        to_fraction_string(&w.lhs),
        to_fraction_string(&w.rhs),
        parts.join(", "),
        w.n
    )
}

pub fn matrix_text(m: &AxiomMatrix, labels: Option<&PlayerLabeling>) -> String {
    let mut header = vec!["value".to_string()];
    header.extend(m.axioms.iter().map(|a| a.to_string()));
    let mut t = Table::new(header);
    for (name, row) in m.values.iter().zip(&m.cells) {
        let mut line = vec![name.clone()];
        line.extend(row.iter().map(|r| verdict_text(r).to_string()));
        t.push(line);
    }
    let mut out = format!("{} game(s)\n{t}", m.games);
    let failures: Vec<&AxiomReport> = m.cells.iter().flatten().filter(|r| r.verdict == Verdict::Fail).collect();
    if !failures.is_empty() {
        out.push_str("\nfailures:\n");
        for r in failures {
            let w = r.witness.as_ref().expect("failing reports carry a witness");
            let _ = writeln!(out, "  {} / {}: {}", r.value, r.axiom, describe_witness(w, labels));
        }
    }
    out
}

pub fn matrix_csv(m: &AxiomMatrix, labels: Option<&PlayerLabeling>) -> String {
    let mut out = String::from("value,axiom,verdict,cases,witness\n");
    for r in m.cells.iter().flatten() {
        let witness = r.witness.as_ref().map(|w| describe_witness(w, labels).replace('"', "\"\"")).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},\"{witness}\"", r.value, r.axiom, r.verdict, r.cases);
    }
    out
}
