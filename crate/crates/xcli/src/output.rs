//! Record stream: JSON Lines or CSV.

use std::io::{self, Write};

use crosschar::report::{CheckRecord, ProbeReport};
use serde::Serialize;

use crate::config::Format;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Record {
    Check(CheckRecord),
    Probe(ProbeReport),
}

impl Record {
    pub fn passed(&self) -> bool {
        match self {
            Record::Check(c) => c.passed(),
            Record::Probe(p) => p.passed(),
        }
    }

    /// `experiment` or `probe`.
    pub fn name(&self) -> &str {
        match self {
            Record::Check(c) => &c.experiment,
            Record::Probe(p) => &p.probe,
        }
    }

    /// Human-readable reasons for failure, empty when the record passed.
    pub fn failures(&self) -> Vec<String> {
        match self {
            Record::Check(c) if !c.passed() => vec![format!(
                "{} {}: got {}, expected {}",
                c.experiment,
                params_string(c),
                c.lhs,
                c.rhs
            )],
            Record::Check(_) => vec![],
            Record::Probe(p) => p
                .failures()
                .into_iter()
                .map(|a| format!("{} q={} r={}: {}: got {}, expected {}", p.probe, p.q, p.r, a.name, a.got, a.expected))
                .collect(),
        }
    }
}

impl From<CheckRecord> for Record {
    fn from(c: CheckRecord) -> Record {
        Record::Check(c)
    }
}

impl From<ProbeReport> for Record {
    fn from(p: ProbeReport) -> Record {
        Record::Probe(p)
    }
}

/// A record with the suite group it was produced under, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(flatten)]
    pub record: Record,
}

impl Entry {
    pub fn plain(record: Record) -> Entry {
        Entry { group: None, record }
    }
}

fn params_string(c: &CheckRecord) -> String {
    c.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub const CSV_COLUMNS: [&str; 10] = ["group", "kind", "experiment", "q", "r", "seed", "name", "expected", "got", "verdict"];

pub fn write(entries: &[Entry], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(entries, out),
        Format::Csv => write_csv(entries, out),
    }
}

pub fn write_json(entries: &[Entry], out: &mut dyn Write) -> io::Result<()> {
    for e in entries {
        serde_json::to_writer(&mut *out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv(entries: &[Entry], out: &mut dyn Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for e in entries {
        let group = e.group.clone().unwrap_or_default();
        match &e.record {
            Record::Check(c) => {
                let q = (c.p as u128).pow(c.m).to_string();
                let seed = c.params.get("seed").cloned().unwrap_or_default();
                w.write_record([
                    group.as_str(),
                    "check",
                    &c.experiment,
                    &q,
                    &c.r.to_string(),
                    &seed,
                    &params_string(c),
                    &c.rhs,
                    &c.lhs,
                    &c.verdict,
                ])?;
            }
            Record::Probe(p) => {
                let seed = p.seed.map(|s| s.to_string()).unwrap_or_default();
                let (q, r) = (p.q.to_string(), p.r.to_string());
                for a in &p.assertions {
                    let verdict = if a.pass { "pass" } else { "fail" };
                    w.write_record([
                        group.as_str(),
                        "assertion",
                        &p.probe,
                        &q,
                        &r,
                        &seed,
                        &a.name,
                        &a.expected,
                        &a.got,
                        verdict,
                    ])?;
                }
                for o in &p.observations {
                    w.write_record([group.as_str(), "observation", &p.probe, &q, &r, &seed, &o.name, "", &o.value, "observed"])?;
                }
            }
        }
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Entry> {
        let c = CheckRecord::new("orthogonality", 5, 1, 13, 1).param("phi", 1).param("psi", 2).compare(0, 0);
        let mut p = ProbeReport::new("decompose", 5, 7);
        p.expect_eq("rank e_+", 15, 15);
        p.observe("note", "a, b");
        vec![Entry { group: Some("c01".into()), record: c.into() }, Entry::plain(p.into())]
    }

    #[test]
    fn json_lines_are_flat() {
        let mut buf = Vec::new();
        write_json(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(v["group"], "c01");
        assert_eq!(v["experiment"], "orthogonality");
        assert_eq!(v["params"]["psi"], "2");
        let v: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert!(v.get("group").is_none());
        assert_eq!(v["assertions"][0]["pass"], true);
    }

    #[test]
    fn csv_has_fixed_columns() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        assert_eq!(lines[1], "c01,check,orthogonality,5,13,,phi=1;psi=2,0,0,pass");
        assert_eq!(lines[2], ",assertion,decompose,5,7,,rank e_+,15,15,pass");
        assert_eq!(lines[3], ",observation,decompose,5,7,,note,,\"a, b\",observed");
    }
}
