//! Check results shared by the library and the CLI.

use serde::{Deserialize, Serialize};

/// Outcome of a single check. `Mismatch` means the computation disagrees
/// with a value stated in the literature; `Fail` means an internal
/// consistency violation.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Mismatch,
    Reported,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Mismatch => "mismatch",
            Status::Reported => "reported",
            Status::Skipped => "skipped",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value attached to a check.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    List(Vec<i64>),
    Matrix(Vec<Vec<i64>>),
    Text(String),
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::List(v) => write!(f, "{v:?}"),
            Value::Matrix(m) => write!(f, "{m:?}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value::Int(v as i64)
            }
        }
    )*};
}

int_value!(i32, i64, u32, u64, usize);

impl From<Vec<usize>> for Value {
    fn from(v: Vec<usize>) -> Self {
        Value::List(v.into_iter().map(|x| x as i64).collect())
    }
}

impl From<Vec<i64>> for Value {
    fn from(v: Vec<i64>) -> Self {
        Value::List(v)
    }
}

impl From<Vec<Vec<i64>>> for Value {
    fn from(m: Vec<Vec<i64>>) -> Self {
        Value::Matrix(m)
    }
}

impl From<Vec<Vec<usize>>> for Value {
    fn from(m: Vec<Vec<usize>>) -> Self {
        Value::Matrix(
            m.into_iter()
                .map(|r| r.into_iter().map(|x| x as i64).collect())
                .collect(),
        )
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub computed: Option<Value>,
    pub expected: Option<Value>,
    pub oracle: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An ordered list of checks for one `(n, r)` instance.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub n: usize,
    pub r: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>, n: usize, r: usize) -> Self {
        Report {
            title: title.into(),
            n,
            r,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn add(
        &mut self,
        name: impl Into<String>,
        status: Status,
        computed: Option<Value>,
        expected: Option<Value>,
        oracle: Option<Value>,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            status,
            computed,
            expected,
            oracle,
            detail: None,
        });
        status != Status::Fail
    }

    /// Pass iff `computed == expected`, otherwise fail.
    pub fn expect(
        &mut self,
        name: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
    ) -> bool {
        let (c, e) = (computed.into(), expected.into());
        let status = if c == e { Status::Pass } else { Status::Fail };
        self.add(name, status, Some(c), Some(e), None)
    }

    /// Pass iff computed, expected and an independent oracle all agree.
    pub fn expect_with_oracle(
        &mut self,
        name: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        oracle: impl Into<Value>,
    ) -> bool {
        let (c, e, o) = (computed.into(), expected.into(), oracle.into());
        let status = if c == e && c == o {
            Status::Pass
        } else {
            Status::Fail
        };
        self.add(name, status, Some(c), Some(e), Some(o))
    }

    /// A boolean assertion.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.add(name, status, Some(Value::Bool(ok)), None, None)
    }

    /// Compares a computed value with a published one: mismatch, not fail.
    pub fn compare_published(
        &mut self,
        name: impl Into<String>,
        computed: impl Into<Value>,
        published: impl Into<Value>,
    ) -> bool {
        let (c, e) = (computed.into(), published.into());
        let status = if c == e {
            Status::Pass
        } else {
            Status::Mismatch
        };
        self.add(name, status, Some(c), Some(e), None)
    }

    /// Records a value without asserting anything about it.
    pub fn record(&mut self, name: impl Into<String>, computed: impl Into<Value>) {
        self.add(name, Status::Reported, Some(computed.into()), None, None);
    }

    /// Records a value next to a reference value it is not required to match.
    pub fn record_against(
        &mut self,
        name: impl Into<String>,
        computed: impl Into<Value>,
        reference: impl Into<Value>,
    ) {
        self.add(
            name,
            Status::Reported,
            Some(computed.into()),
            Some(reference.into()),
            None,
        );
    }

    pub fn with_detail(&mut self, detail: impl Into<String>) {
        if let Some(last) = self.checks.last_mut() {
            last.detail = Some(detail.into());
        }
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }
}

/// One line of CLI output.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ReportRecord {
    pub n: usize,
    pub r: usize,
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub computed: Option<Value>,
    pub expected: Option<Value>,
    pub oracle: Option<Value>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl ReportRecord {
    pub fn from_check(suite: &str, n: usize, r: usize, seed: u64, check: Check) -> Self {
        ReportRecord {
            n,
            r,
            suite: suite.to_string(),
            check: check.name,
            status: check.status,
            computed: check.computed,
            expected: check.expected,
            oracle: check.oracle,
            seed,
            elapsed_ms: 0,
        }
    }
}
