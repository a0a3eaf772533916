use std::fmt;
use std::io;

use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(parkfn::Error),
    Json(serde_json::Error),
    Io(io::Error),
    /// At least one identity check came out unequal.
    IdentityFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::IdentityFailed => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Library(e) => e.kind(),
            CliError::Json(_) => "Json",
            CliError::Io(_) => "Io",
            CliError::IdentityFailed => "IdentityFailed",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Library(e) => e.fmt(f),
            CliError::Json(e) => write!(f, "bad JSON: {e}"),
            CliError::Io(e) => e.fmt(f),
            CliError::IdentityFailed => f.write_str("closed form and enumeration differ"),
        }
    }
}

impl From<parkfn::Error> for CliError {
    fn from(e: parkfn::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::IdentityFailed.exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(parkfn::Error::EmptySample).exit_code(), 1);
        assert_eq!(CliError::IdentityFailed.to_json()["error"]["kind"], "IdentityFailed");
    }
}
