use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;

/// Reads an argument that is inline JSON, a path to a JSON file, or a bare builtin name.
pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with(['{', '[', '"']) {
        return serde_json::from_str(arg).context("inline JSON");
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return serde_json::from_str(&text).with_context(|| arg.to_string());
    }
    if arg.ends_with(".json") || arg.contains(std::path::MAIN_SEPARATOR) {
        bail!("{arg}: no such file");
    }
    Ok(serde_json::from_value(serde_json::Value::String(arg.to_string()))?)
}
