//! `--config` files: INI-style `key = value` lines whose keys are flag names.
//!
//! Blank lines, `#`/`;` comments and `[section]` headers are ignored. Keys the
//! chosen subcommand does not take are skipped; a flag given on the command
//! line wins over the file.

use std::path::Path;

use clap::CommandFactory;

use crate::{Cli, CliError};

/// Every flag a config file may set.
pub const KEYS: &[&str] = &[
    "R", "k", "p", "p-right", "p-left", "branch", "smin", "smax", "n", "out", "format", "suite", "trials", "seed",
    "tol", "ladder",
];

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if !KEYS.contains(&key) {
            return Err(CliError::usage(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        let value = unquote(value.trim());
        match entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value.to_string(),
            None => entries.push((key.to_string(), value.to_string())),
        }
    }
    Ok(entries)
}

fn unquote(v: &str) -> &str {
    for q in ['"', '\''] {
        if let Some(inner) = v.strip_prefix(q).and_then(|r| r.strip_suffix(q)) {
            return inner;
        }
    }
    v
}

/// Appends the config file's settings to `args` for flags not already given.
pub fn expand_args(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::usage(format!("cannot read config {path}: {e}")))?;
    let entries = parse(&text)?;

    let command = Cli::command();
    let Some(sub) = args.iter().skip(1).find_map(|a| command.find_subcommand(a)) else {
        return Ok(args);
    };
    let accepted: Vec<&str> = sub.get_arguments().filter_map(|a| a.get_long()).collect();

    let mut out = args.clone();
    for (key, value) in entries {
        if !accepted.contains(&key.as_str()) || given(&args, &key) {
            continue;
        }
        out.push(format!("--{key}={value}"));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(path) = a.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}

fn given(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}=")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_lines() {
        let entries =
            parse("# comment\n; other\n[sample]\nR = 2\nk=3\n p = \"fourier:1;0.3,0.1\" \n\nk = 4\n").unwrap();
        assert_eq!(
            entries,
            vec![("R".into(), "2".into()), ("k".into(), "4".into()), ("p".into(), "fourier:1;0.3,0.1".into())]
        );
        assert!(parse("R 2").is_err());
        assert!(parse("colour = red").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ini");
        std::fs::write(&path, "R = 2\nk = 3\nsuite = ode\n").unwrap();
        let args = strings(&["fneq", "classify", "--k", "5", "--config", path.to_str().unwrap()]);
        let out = expand_args(args.clone()).unwrap();
        assert_eq!(out[..args.len()], args[..]);
        assert_eq!(out[args.len()..], ["--R=2".to_string()]);
    }

    #[test]
    fn missing_file_is_usage_error() {
        let err = expand_args(strings(&["fneq", "classify", "--config", "/nonexistent/x.ini"])).unwrap_err();
        assert_eq!(err.code, 2);
    }
}
