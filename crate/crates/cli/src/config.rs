//! `key = value` preset files. Keys are long flag names (`theta-t` or
//! `theta_t`); `#` starts a comment. Values from the file are appended to the
//! argument list only for flags absent from the command line, so flags always
//! win.

use std::path::Path;

use clap::Command;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Config {
    pub entries: Vec<(String, String)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = k.trim().trim_start_matches("--").replace('_', "-");
            if key.is_empty() {
                return Err(CliError::usage(format!("config line {}: empty key", i + 1)));
            }
            entries.push((key, v.trim().to_owned()));
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Long flag names present on the command line.
fn given_flags(args: &[String]) -> Vec<String> {
    args.iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_owned())
        .collect()
}

/// Value of `--config`, if any.
pub fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_owned());
        }
    }
    None
}

/// Appends file presets to `args` for the selected subcommand.
pub fn merge(cmd: &Command, args: &[String], cfg: &Config) -> Result<Vec<String>, CliError> {
    let mut out = args.to_vec();
    let Some(sub) = args.iter().skip(1).find_map(|a| cmd.find_subcommand(a)) else {
        return Ok(out);
    };
    let given = given_flags(args);
    let long_of = |c: &Command, key: &str| c.get_arguments().find(|a| a.get_long() == Some(key)).cloned();

    for (key, value) in &cfg.entries {
        if key == "config" {
            continue;
        }
        let arg = match long_of(sub, key).or_else(|| long_of(cmd, key)) {
            Some(a) => a,
            None => {
                let known = cmd.get_subcommands().any(|s| long_of(s, key).is_some());
                if known {
                    continue;
                }
                return Err(CliError::usage(format!("config: unknown key '{key}'")));
            }
        };
        if given.iter().any(|g| g == key) {
            continue;
        }
        let clashes = given.iter().any(|g| {
            let Some(other) = long_of(sub, g) else { return false };
            sub.get_arg_conflicts_with(&arg).iter().any(|c| c.get_id() == other.get_id())
                || sub.get_arg_conflicts_with(&other).iter().any(|c| c.get_id() == arg.get_id())
        });
        if clashes {
            continue;
        }
        if arg.get_action().takes_values() {
            out.push(format!("--{key}={value}"));
        } else {
            match value.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => out.push(format!("--{key}")),
                "false" | "no" | "0" => {}
                _ => return Err(CliError::usage(format!("config: '{key}' expects true or false"))),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let c = Config::parse("# preset\n theta_t = 0.3 \n\neta=0.9 # trailing\n").unwrap();
        assert_eq!(
            c.entries,
            vec![("theta-t".into(), "0.3".into()), ("eta".into(), "0.9".into())]
        );
        assert!(Config::parse("novalue\n").is_err());
        assert!(Config::parse("=3\n").is_err());
    }

    #[test]
    fn finds_config_path() {
        let a: Vec<String> = ["x", "precision", "--config", "f.cfg"].iter().map(|s| s.to_string()).collect();
        assert_eq!(config_path(&a).as_deref(), Some("f.cfg"));
        let a: Vec<String> = ["x", "--config=g"].iter().map(|s| s.to_string()).collect();
        assert_eq!(config_path(&a).as_deref(), Some("g"));
    }
}
