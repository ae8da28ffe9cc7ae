#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_halfdisk"));
    cmd.env("NO_COLOR", "1");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema is JSON")
}

/// Validates `instance` against `schemas/<name>.schema.json`; the error lists
/// every failing location.
pub fn validate(name: &str, instance: &Value) -> Result<(), String> {
    let common = load("common.schema.json");
    let common_id = common["$id"].as_str().expect("common schema has an $id").to_string();
    let resource = jsonschema::Resource::from_contents(common).map_err(|e| e.to_string())?;
    let validator = jsonschema::options()
        .with_resource(common_id, resource)
        .build(&load(&format!("{name}.schema.json")))
        .map_err(|e| format!("schema {name} does not compile: {e}"))?;
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{}: {e}", e.instance_path))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("{name}: {}", errors.join("; ")))
    }
}
