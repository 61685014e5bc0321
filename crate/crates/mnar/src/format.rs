use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::TransactionDatabase;
use crate::error::{Error, Result};
use crate::rulegen::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!(
                "unknown format '{s}' (expected text, csv, or json)"
            ))),
        }
    }
}

/// One rule with item ids resolved back to labels, as serialized by the
/// CSV and JSON writers. `confidence` is the rounded float convenience
/// view of `conf_num / conf_den`; the integer pair is authoritative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support: u32,
    pub conf_num: u64,
    pub conf_den: u64,
    pub confidence: f64,
}

impl RuleRecord {
    pub fn from_rule(rule: &Rule, db: &TransactionDatabase) -> RuleRecord {
        RuleRecord {
            antecedent: db.labels_of(&rule.antecedent).iter().map(|s| s.to_string()).collect(),
            consequent: db.labels_of(&rule.consequent).iter().map(|s| s.to_string()).collect(),
            support: rule.support,
            conf_num: rule.confidence.num(),
            conf_den: rule.confidence.den(),
            confidence: rule.confidence.to_f64(),
        }
    }

    /// The fields that identify a rule, for multiset comparisons that
    /// should ignore the derived float.
    pub fn key(&self) -> (Vec<String>, Vec<String>, u32, u64, u64) {
        (
            self.antecedent.clone(),
            self.consequent.clone(),
            self.support,
            self.conf_num,
            self.conf_den,
        )
    }
}

/// `A T => C W #SUP: 3 #CONF: 3/3 (1.0000)`, one rule per line, labels
/// lexicographic within each side.
pub fn write_text(w: &mut dyn Write, rules: &[Rule], db: &TransactionDatabase) -> Result<()> {
    for rule in rules {
        writeln!(
            w,
            "{} => {} #SUP: {} #CONF: {}/{} ({:.4})",
            db.labels_of(&rule.antecedent).join(" "),
            db.labels_of(&rule.consequent).join(" "),
            rule.support,
            rule.confidence.num(),
            rule.confidence.den(),
            rule.confidence.to_f64(),
        )?;
    }
    Ok(())
}

/// Header plus one row per rule; item lists are space-joined within their
/// field.
pub fn write_csv(w: &mut dyn Write, rules: &[Rule], db: &TransactionDatabase) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["antecedent", "consequent", "support", "conf_num", "conf_den", "confidence"])
        .map_err(csv_error)?;
    for rule in rules {
        let rec = RuleRecord::from_rule(rule, db);
        out.write_record([
            rec.antecedent.join(" "),
            rec.consequent.join(" "),
            rec.support.to_string(),
            rec.conf_num.to_string(),
            rec.conf_den.to_string(),
            format!("{:.4}", rec.confidence),
        ])
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

/// JSON Lines: one `RuleRecord` object per line.
pub fn write_json(w: &mut dyn Write, rules: &[Rule], db: &TransactionDatabase) -> Result<()> {
    for rule in rules {
        let rec = RuleRecord::from_rule(rule, db);
        serde_json::to_writer(&mut *w, &rec).map_err(|e| Error::Config(e.to_string()))?;
        writeln!(w)?;
    }
    Ok(())
}

/// Reads rows produced by `write_csv` back into records.
pub fn read_csv(r: impl Read) -> Result<Vec<RuleRecord>> {
    let mut reader = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_error)?;
        let field = |i: usize| -> Result<&str> {
            row.get(i)
                .ok_or_else(|| Error::Config(format!("csv row too short: {row:?}")))
        };
        let split = |s: &str| -> Vec<String> {
            s.split_whitespace().map(str::to_owned).collect()
        };
        let parse_err = |what: &str| Error::Config(format!("bad {what} in csv row {row:?}"));
        out.push(RuleRecord {
            antecedent: split(field(0)?),
            consequent: split(field(1)?),
            support: field(2)?.parse().map_err(|_| parse_err("support"))?,
            conf_num: field(3)?.parse().map_err(|_| parse_err("conf_num"))?,
            conf_den: field(4)?.parse().map_err(|_| parse_err("conf_den"))?,
            confidence: field(5)?.parse().map_err(|_| parse_err("confidence"))?,
        });
    }
    Ok(out)
}

/// Reads lines produced by `write_json` back into records.
pub fn read_json(r: impl Read) -> Result<Vec<RuleRecord>> {
    let mut out = Vec::new();
    for line in BufReader::new(r).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Config(e.to_string()))?);
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("csv: {other:?}")),
    }
}
