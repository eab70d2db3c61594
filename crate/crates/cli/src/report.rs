//! The report every command produces, independent of output format.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Integers with magnitude above this are emitted as decimal strings so
/// JSON consumers using doubles lose nothing.
pub const MAX_SAFE_INTEGER: i64 = 1 << 53;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Row,
    pub verified: bool,
    pub results: Vec<Row>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            params: Row::new(),
            verified: true,
            results: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Row) {
        self.results.push(row);
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            check: check.into(),
            detail: detail.into(),
        });
        self.verified = false;
    }
}

/// JSON number when it is safe for doubles, decimal string otherwise.
pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) if i.abs() <= MAX_SAFE_INTEGER => Value::from(i),
        _ => Value::String(v.to_string()),
    }
}

pub fn ints<'a>(vs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(vs.into_iter().map(int).collect())
}

pub fn small(v: u64) -> Value {
    int(&BigInt::from(v))
}

/// Builds a [`Row`] from `key => value` pairs, keeping their order.
#[macro_export]
macro_rules! row {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::report::Row::new();
        $( r.insert(($k).to_string(), ::serde_json::Value::from($v)); )*
        r
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(&BigInt::from(89)), Value::from(89));
        assert_eq!(int(&BigInt::from(1i64 << 53)), Value::from(1i64 << 53));
        assert_eq!(
            int(&BigInt::from((1i64 << 53) + 1)),
            Value::String("9007199254740993".into())
        );
        assert_eq!(int(&BigInt::from(-(1i64 << 60))), Value::String((-(1i64 << 60)).to_string()));
    }

    #[test]
    fn verified_tracks_failures() {
        let mut r = Report::new("x");
        assert!(r.verified);
        r.fail("c", "d");
        assert!(!r.verified);
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("classify").param("base", 12);
        r.push(row! { "kind" => "cycle", "elements" => ints(&[BigInt::from(5), BigInt::from(25)]) });
        r.push(row! { "big" => int(&(BigInt::from(1u64) << 80)) });
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
