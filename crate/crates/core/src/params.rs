//! String-keyed parameter access shared by every optimizer, so the CLI and
//! plan files can override any parameter as `key=value`.

use std::str::FromStr;

use crate::error::{Error, Result};

pub trait ParamSet {
    /// Overrides one parameter from its textual form.
    fn set(&mut self, key: &str, value: &str) -> Result<()>;

    /// Every parameter with its current value, in a stable order. Feeding
    /// the pairs back through [`ParamSet::set`] reproduces `self`.
    fn entries(&self) -> Vec<(&'static str, String)>;

    fn validate(&self) -> Result<()>;

    fn apply(&mut self, overrides: &[(String, String)]) -> Result<()> {
        for (k, v) in overrides {
            self.set(k, v)?;
        }
        self.validate()
    }
}

pub(crate) fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::InvalidParameter {
        key: key.to_string(),
        value: value.to_string(),
        reason: format!("expected {}", std::any::type_name::<T>()),
    })
}

pub(crate) fn invalid(key: &str, value: impl ToString, reason: &str) -> Error {
    Error::InvalidParameter {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

pub(crate) fn unknown(algorithm: &str, key: &str) -> Error {
    Error::UnknownParameter {
        algorithm: algorithm.to_string(),
        key: key.to_string(),
    }
}

/// Splits `key=value`.
pub fn split_assignment(s: &str) -> Result<(String, String)> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::InvalidParameter {
            key: "set".into(),
            value: s.to_string(),
            reason: "expected KEY=VALUE".into(),
        }),
    }
}

/// `{:?}` for floats prints the shortest representation that parses back
/// to the same value.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}
