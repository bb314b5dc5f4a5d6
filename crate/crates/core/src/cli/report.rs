use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

/// Everything a run produces. Keys serialize in sorted order, floats with
/// 12 significant digits.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub config: Value,
    pub checks: Vec<Check>,
    pub tables: Map<String, Value>,
    pub ms: Option<f64>,
}

impl Report {
    pub fn new(config: Value) -> Self {
        Self {
            config,
            ..Default::default()
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl Serialize) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
        });
    }

    /// Records the outcome of a computation that signals a broken identity
    /// through [`Error::CheckFailed`]. Other errors are returned.
    pub fn check_result<T>(
        &mut self,
        name: &str,
        res: crate::Result<T>,
        witness: impl FnOnce(&T) -> Value,
    ) -> crate::Result<Option<T>> {
        match res {
            Ok(v) => {
                let w = witness(&v);
                self.check(name, true, w);
                Ok(Some(v))
            }
            Err(Error::CheckFailed { name: inner, witness }) => {
                self.check(name, false, format!("{inner}: {witness}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn table(&mut self, key: &str, value: impl Serialize) {
        self.tables.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("config".into(), self.config.clone());
        top.insert(
            "checks".into(),
            serde_json::to_value(&self.checks).unwrap_or(Value::Null),
        );
        top.insert("tables".into(), Value::Object(self.tables.clone()));
        top.insert(
            "ms".into(),
            self.ms.map(Value::from).unwrap_or(Value::Null),
        );
        round_floats(Value::Object(top))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Rounds every non-integer number to 12 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}
