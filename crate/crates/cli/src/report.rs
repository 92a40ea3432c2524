use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use qmoment_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

/// Exit status for a library error: mathematical verdicts map to 2,
/// everything else (parse, shape, domain) to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPd { .. }
        | Error::NotPsd { .. }
        | Error::BlockNotPsd { .. }
        | Error::CompletionFailure { .. }
        | Error::NotQPositive(_)
        | Error::NotJUnitary { .. }
        | Error::KernelMismatch(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// One run of one subcommand; printed once, as text or as a JSON document.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub subcommand: &'static str,
    pub inputs_digest: String,
    pub results: Map<String, Value>,
    pub violations: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(subcommand: &'static str) -> Self {
        RunReport {
            subcommand,
            inputs_digest: String::new(),
            results: Map::new(),
            violations: Vec::new(),
            error: None,
            exit_status: EXIT_OK,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_owned(), v);
    }

    pub fn fail(&mut self, e: &Error) {
        if let Error::NotQPositive(v) = e {
            self.violations.extend(v.iter().map(|x| serde_json::to_value(x).expect("violations serialize")));
        }
        self.error = Some(e.to_string());
        self.exit_status = exit_code(e);
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = format!("{}: {}\n", self.subcommand, verdict(self.exit_status));
        if !self.inputs_digest.is_empty() {
            out += &format!("  input sha256 = {}\n", self.inputs_digest);
        }
        for (k, v) in &self.results {
            out += &format!("  {k} = {}\n", fmt_value(v));
        }
        for v in &self.violations {
            out += &format!("  violation: {v}\n");
        }
        if let Some(e) = &self.error {
            out += &format!("  error: {e}\n");
        }
        out
    }
}

fn verdict(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_NEGATIVE => "negative",
        _ => "input error",
    }
}

/// Floats with 17 significant digits so outputs diff reproducibly.
fn fmt_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(fmt_value).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(fmt_value(&serde_json::json!(0.1)), "1.0000000000000001e-1");
        assert_eq!(fmt_value(&serde_json::json!([1, 2])), "[1, 2]");
    }

    #[test]
    fn verdict_errors_map_to_two() {
        assert_eq!(exit_code(&Error::NotPd { order: 1, min_eig: -1.0 }), EXIT_NEGATIVE);
        assert_eq!(exit_code(&Error::Invalid("x".into())), EXIT_INPUT);
    }
}
