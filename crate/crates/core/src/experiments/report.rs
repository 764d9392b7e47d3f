use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Where a reported number comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Produced by this run.
    Computed,
    /// A value or bound stated in the literature.
    Expected,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: Value,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Exhausted,
}

impl Status {
    /// 0 on success, 1 on a failed check, 2 when a cap or budget ran out.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Exhausted => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(crate::Error::invalid(format!("unknown format `{other}` (json, csv or text)"))),
        }
    }
}

/// Everything one command computed, with every number tagged by its source.
///
/// Reports carry no wall-clock time, so equal inputs and seed give
/// byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub instance: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Hypotheses that do not hold for this instance, and similar notes.
    pub flags: Vec<String>,
    pub quantities: Vec<Quantity>,
    pub checks: Vec<Check>,
    /// Set when a budget or cap stopped the computation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<BTreeMap<String, Value>>,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            instance: BTreeMap::new(),
            seed: None,
            flags: Vec::new(),
            quantities: Vec::new(),
            checks: Vec::new(),
            exhausted: None,
            rows: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.instance.insert(name.to_string(), value.into());
        self
    }

    pub fn computed(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.quantities.push(Quantity { name: name.to_string(), value: value.into(), source: Source::Computed });
        self
    }

    pub fn expected(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.quantities.push(Quantity { name: name.to_string(), value: value.into(), source: Source::Expected });
        self
    }

    pub fn flag(&mut self, note: impl Into<String>) -> &mut Self {
        self.flags.push(note.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        self.refresh();
        passed
    }

    pub fn exhaust(&mut self, why: impl Into<String>) {
        self.exhausted = Some(why.into());
        self.refresh();
    }

    pub fn row(&mut self, row: BTreeMap<String, Value>) {
        self.rows.push(row);
    }

    fn refresh(&mut self) {
        self.status = if self.checks.iter().any(|c| !c.passed) {
            Status::Fail
        } else if self.exhausted.is_some() {
            Status::Exhausted
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn quantity(&self, name: &str) -> Option<&Value> {
        self.quantities.iter().find(|q| q.name == name).map(|q| &q.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    /// The table rows when there are any, otherwise one line per quantity and
    /// check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["kind", "name", "value", "source"]).expect("in-memory write");
            for q in &self.quantities {
                let source = match q.source {
                    Source::Computed => "computed",
                    Source::Expected => "expected",
                };
                w.write_record(["quantity", &q.name, &plain(&q.value), source]).expect("in-memory write");
            }
            for c in &self.checks {
                w.write_record(["check", &c.name, if c.passed { "pass" } else { "fail" }, &c.detail]).expect("in-memory write");
            }
        } else {
            let header: Vec<&String> = self.rows[0].keys().collect();
            w.write_record(&header).expect("in-memory write");
            for row in &self.rows {
                w.write_record(header.iter().map(|h| row.get(*h).map(plain).unwrap_or_default())).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.instance.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for f in &self.flags {
            let _ = writeln!(out, "note: {f}");
        }
        let width = self.quantities.iter().map(|q| q.name.len()).max().unwrap_or(0);
        for q in &self.quantities {
            let tag = match q.source {
                Source::Computed => "computed",
                Source::Expected => "expected",
            };
            let _ = writeln!(out, "  {:width$}  {}  [{tag}]", q.name, plain(&q.value));
        }
        if !self.rows.is_empty() {
            let header: Vec<&String> = self.rows[0].keys().collect();
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| header.iter().map(|h| r.get(*h).map(plain).unwrap_or_default()).collect()).collect();
            let widths: Vec<usize> =
                header.iter().enumerate().map(|(i, h)| cells.iter().map(|c| c[i].len()).max().unwrap_or(0).max(h.len())).collect();
            let line = |vals: Vec<&str>| vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect::<Vec<_>>().join("  ");
            let _ = writeln!(out, "{}", line(header.iter().map(|s| s.as_str()).collect()));
            for c in &cells {
                let _ = writeln!(out, "{}", line(c.iter().map(|s| s.as_str()).collect()));
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{mark} {}", c.name);
            } else {
                let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
            }
        }
        if let Some(why) = &self.exhausted {
            let _ = writeln!(out, "EXHAUSTED {why}");
        }
        let _ = writeln!(out, "status: {}", serde_json::to_value(self.status).expect("status").as_str().unwrap_or(""));
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_tracks_checks() {
        let mut r = RunReport::new("t");
        r.computed("x", 3);
        assert_eq!(r.status, Status::Pass);
        r.exhaust("budget");
        assert_eq!(r.status.exit_code(), 2);
        r.check("y", false, "bad");
        assert_eq!(r.status.exit_code(), 1);
        assert!(r.to_text().contains("FAIL y: bad"));
        assert!(r.to_csv().starts_with("kind,name,value,source"));
    }
}
