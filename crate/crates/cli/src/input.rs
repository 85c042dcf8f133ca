use std::fs;
use std::path::Path;

use serde_json::Value;
use setdyn::finite::FiniteRelationSystem;
use setdyn::interval::PwlMultimap;
use sha2::{Digest, Sha256};

use crate::CliError;

pub enum System {
    Finite(FiniteRelationSystem),
    Pwl(PwlMultimap),
}

/// A parsed input document with the SHA-256 of its raw bytes.
pub struct Input {
    pub digest: String,
    pub system: System,
}

impl Input {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let system = parse(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(Self { digest, system })
    }

    pub fn kind(&self) -> &'static str {
        match self.system {
            System::Finite(_) => "finite",
            System::Pwl(_) => "pwl",
        }
    }
}

/// Syntax errors carry line and column; field errors name the field.
pub fn parse(bytes: &[u8]) -> Result<System, String> {
    let mut doc: Value = serde_json::from_slice(bytes).map_err(|e| format!("invalid JSON: {e}"))?;
    let kind = doc
        .as_object_mut()
        .ok_or("top level must be an object")?
        .remove("kind")
        .ok_or("missing field `kind` (expected \"finite\" or \"pwl\")")?;
    match kind.as_str() {
        Some("finite") => serde_json::from_value(doc)
            .map(System::Finite)
            .map_err(|e| format!("finite system: {e}")),
        Some("pwl") => serde_json::from_value(doc)
            .map(System::Pwl)
            .map_err(|e| format!("pwl multimap: {e}")),
        _ => Err(format!("field `kind` must be \"finite\" or \"pwl\", got {kind}")),
    }
}
