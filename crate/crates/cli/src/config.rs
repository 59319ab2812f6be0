//! Optional `key = value` parameter files. Entries become long flags placed
//! right after the subcommand, ahead of the command-line flags, so explicit
//! flags win.

use std::fs;
use std::path::Path;

pub fn read(path: &Path) -> Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(format!("config line {}: empty key", lineno + 1));
        }
        out.push((key.replace('_', "-"), value.trim().to_string()));
    }
    Ok(out)
}

/// Splices config entries into `args`. Returns `args` unchanged when there
/// is no `--config`.
pub fn expand(args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            path = Some(iter.next().ok_or("--config needs a file path")?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let entries = read(Path::new(&path))?;
    let Some(pos) = rest.iter().position(|a| subcommands.contains(&a.as_str())) else {
        return Ok(rest);
    };
    let mut injected = Vec::new();
    for (key, value) in entries {
        match value.as_str() {
            "true" => injected.push(format!("--{key}")),
            "false" => {}
            _ => {
                injected.push(format!("--{key}"));
                injected.push(value);
            }
        }
    }
    rest.splice(pos + 1..pos + 1, injected);
    Ok(rest)
}
