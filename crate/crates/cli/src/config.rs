//! `--config <path>`: a JSON object whose keys are long flag names (plus
//! an optional `"command"`). The file's values are spliced in ahead of the
//! command-line flags, so flags given explicitly take precedence.

use std::ffi::OsString;
use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::error::CliError;

const COMMANDS: &[&str] = &[
    "chi",
    "arrows",
    "bias",
    "sweep",
    "landscape",
    "landscape2d",
    "filter",
    "spectrum-estimate",
    "validate",
    "help",
];

const SWITCHES: &[&str] = &["--diagnostic", "--help", "--version", "-h", "-V"];

/// Returns the argument vector with any config file expanded into flags.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let strings: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(path) = config_path(&strings) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::io(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("config {} is not valid JSON: {e}", path.display())))?;
    let Value::Object(map) = value else {
        return Err(CliError::usage(format!("config {} must be a JSON object", path.display())));
    };

    let sub_index = subcommand_index(&strings);
    let sub = match (sub_index, map.get("command")) {
        (Some(i), _) => strings[i].clone(),
        (None, Some(Value::String(c))) => c.clone(),
        (None, Some(_)) => return Err(CliError::usage("config key `command` must be a string")),
        (None, None) => return Err(CliError::usage("no command given on the command line or in the config")),
    };

    let mut out: Vec<OsString> = vec![args[0].clone(), sub.into()];
    out.extend(config_flags(&map)?);
    for (i, a) in args.iter().enumerate().skip(1) {
        if Some(i) != sub_index {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

fn subcommand_index(args: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if a.starts_with('-') {
            if !a.contains('=') && !SWITCHES.contains(&a.as_str()) {
                i += 1;
            }
        } else if COMMANDS.contains(&a.as_str()) {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn config_flags(map: &Map<String, Value>) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (key, value) in map {
        if key == "command" || key == "config" {
            continue;
        }
        let flag = format!("--{key}");
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => {
                out.push(flag.into());
                out.push(n.to_string().into());
            }
            Value::String(s) => {
                out.push(flag.into());
                out.push(s.into());
            }
            Value::Array(_) | Value::Object(_) => {
                return Err(CliError::usage(format!("config key `{key}` must be a scalar")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn finds_subcommand_after_global_values() {
        let a = strs(&["rbf", "--format", "json", "--config", "c.json", "sweep", "--pmax", "9"]);
        assert_eq!(subcommand_index(&a), Some(5));
        assert_eq!(config_path(&a), Some(PathBuf::from("c.json")));
        let b = strs(&["rbf", "--output=chi", "--config=x"]);
        assert_eq!(subcommand_index(&b), None);
        assert_eq!(config_path(&b), Some(PathBuf::from("x")));
    }

    #[test]
    fn flags_from_object() {
        let v: Value = serde_json::from_str(r#"{"command":"sweep","fn":"sin2","k":2.3,"pmax":200,"diagnostic":true,"x":false}"#).unwrap();
        let Value::Object(m) = v else { unreachable!() };
        let flags: Vec<String> = config_flags(&m).unwrap().into_iter().map(|s| s.into_string().unwrap()).collect();
        assert_eq!(flags, strs(&["--diagnostic", "--fn", "sin2", "--k", "2.3", "--pmax", "200"]));
    }
}
