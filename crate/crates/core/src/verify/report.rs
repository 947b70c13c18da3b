use std::fmt::Write as _;

use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Expansion,
    Reduction,
    Numeric,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VStatus {
    Verified,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub tag: String,
    pub method: Method,
    pub status: VStatus,
    /// Rendered residual; `"0"` when verified symbolically.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_value: Option<f64>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub records: Vec<Record>,
    pub meta: serde_json::Value,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, rank: Option<(usize, usize)>) -> Self {
        VerificationReport {
            suite: suite.into(),
            m: rank.map(|r| r.0),
            n: rank.map(|r| r.1),
            records: Vec::new(),
            meta: serde_json::Value::Null,
        }
    }

    pub fn count(&self, s: VStatus) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn all_verified(&self) -> bool {
        self.records.iter().all(|r| r.status == VStatus::Verified)
    }

    pub fn record(&self, tag: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.tag == tag)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    /// Max numeric residual over the records that carry one.
    pub fn max_residual(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.residual_value).fold(None, |a, x| Some(a.map_or(x, |a: f64| a.max(x))))
    }

    /// 0 when every record verified, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_verified() {
            0
        } else {
            2
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let rank = match (self.m, self.n) {
            (Some(m), Some(n)) => format!(" (m={m}, n={n})"),
            _ => String::new(),
        };
        let _ = writeln!(s, "suite {}{rank}", self.suite);
        for r in &self.records {
            let st = match r.status {
                VStatus::Verified => "ok",
                VStatus::Failed => "FAIL",
                VStatus::Inconclusive => "??",
            };
            let res = match r.residual_value {
                Some(x) => format!("{x:.3e}"),
                None => r.residual.clone(),
            };
            let _ = write!(s, "{st:<5}{:<34} {:>9.2}ms  {res}", r.tag, r.elapsed_ms);
            if let Some(n) = &r.note {
                let _ = write!(s, "  [{n}]");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} verified, {} failed, {} inconclusive",
            self.count(VStatus::Verified),
            self.count(VStatus::Failed),
            self.count(VStatus::Inconclusive)
        );
        s
    }
}
