use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    fn word(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        }
    }
}

/// One check: what was tested, the statement it tests, and the evidence.
#[derive(Debug, Serialize)]
pub struct Record {
    pub name: &'static str,
    pub anchor: &'static str,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub data: Value,
}

#[derive(Debug)]
pub struct Outcome {
    verdict: Verdict,
    reason: Option<String>,
    data: Value,
}

impl Outcome {
    pub fn pass(data: Value) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            reason: None,
            data,
        }
    }

    pub fn fail(reason: impl Into<String>, data: Value) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            reason: Some(reason.into()),
            data,
        }
    }

    pub fn skip(reason: impl Into<String>, data: Value) -> Self {
        Outcome {
            verdict: Verdict::Skip,
            reason: Some(reason.into()),
            data,
        }
    }

    pub fn check(ok: bool, data: Value, reason: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(data)
        } else {
            Self::fail(reason(), data)
        }
    }

    /// A check whose prediction only applies to hyperkähler-type rings;
    /// otherwise the data is reported without a verdict.
    pub fn predicted(
        applies: bool,
        ok: bool,
        data: Value,
        reason: impl FnOnce() -> String,
    ) -> Self {
        if applies {
            Self::check(ok, data, reason)
        } else {
            Self::skip("no prediction for this ring; data reported", data)
        }
    }

    pub fn error(e: impl std::fmt::Display) -> Self {
        Self::fail(e.to_string(), Value::Null)
    }

    /// An error from a check that only has a prediction when `applies`.
    pub fn predicted_error(applies: bool, e: impl std::fmt::Display) -> Self {
        if applies {
            Self::error(e)
        } else {
            Self::skip(format!("no prediction for this ring; {e}"), Value::Null)
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub subject: String,
    pub field: &'static str,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &'static str, subject: String, field: &'static str) -> Self {
        Report {
            command,
            subject,
            field,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &'static str, anchor: &'static str, outcome: Outcome) {
        self.records.push(Record {
            name,
            anchor,
            verdict: outcome.verdict,
            reason: outcome.reason,
            data: outcome.data,
        });
    }

    fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Verdict::Fail) > 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} pass, {} fail, {} skip",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skip)
        )
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "subject": self.subject,
            "field": self.field,
            "records": self.records,
            "summary": {
                "pass": self.count(Verdict::Pass),
                "fail": self.count(Verdict::Fail),
                "skip": self.count(Verdict::Skip),
            },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = format!(
            "llvkit {}: {} [{}]\n",
            self.command, self.subject, self.field
        );
        for r in &self.records {
            out.push_str(&format!(
                "{:<4}  {:<width$}  {}\n",
                r.verdict.word(),
                r.name,
                r.anchor
            ));
            if let Some(reason) = &r.reason {
                out.push_str(&format!("      {:<width$}  reason: {reason}\n", ""));
            }
            if !r.data.is_null() {
                let data = serde_json::to_string(&r.data).expect("data serializes");
                out.push_str(&format!("      {:<width$}  {data}\n", ""));
            }
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}
