//! `key = value` configuration files, spliced into the argument list as long
//! flags right after the subcommand so that explicit flags override them.

use std::ffi::OsString;
use std::path::Path;

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse(text: &str, path: &Path) -> Result<Vec<(String, String)>, String> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            format!("{}:{}: expected `key = value`, got `{line}`", path.display(), i + 1)
        })?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("{}:{}: invalid key `{}`", path.display(), i + 1, key));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

/// Finds `--config FILE` or `--config=FILE` among the arguments.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

/// Returns the argument list with the config file's flags inserted.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut flags: Vec<OsString> = Vec::new();
    for (key, value) in parse(&text, path)? {
        match value.as_str() {
            "true" => flags.push(format!("--{key}").into()),
            "false" => {}
            _ => flags.push(format!("--{key}={value}").into()),
        }
    }
    // args[0] is the program, args[1] the subcommand.
    let mut out = Vec::with_capacity(args.len() + flags.len());
    let mut args = args.into_iter();
    out.extend(args.by_ref().take(2));
    out.extend(flags);
    out.extend(args);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_comments_and_underscores() {
        let text = "# defaults\nmax_lag = 20\n\nno-plot = true # quiet\n";
        let e = parse(text, Path::new("c.conf")).unwrap();
        assert_eq!(e, vec![("max-lag".into(), "20".into()), ("no-plot".into(), "true".into())]);
        assert!(parse("oops", Path::new("c.conf")).unwrap_err().contains("c.conf:1"));
    }

    #[test]
    fn flags_follow_the_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.conf");
        std::fs::write(&cfg, "max-lag = 5\nno-plot = false\nraw = true\n").unwrap();
        let args = os(&["streamlens", "acf", "in.csv", "--config", cfg.to_str().unwrap(), "--max-lag", "7"]);
        let out = expand(args).unwrap();
        let s: Vec<String> = out.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert_eq!(&s[..4], &["streamlens", "acf", "--max-lag=5", "--raw"]);
        assert_eq!(s.last().unwrap(), "7");
    }

    #[test]
    fn untouched_without_config() {
        let args = os(&["streamlens", "hurst", "x.csv"]);
        assert_eq!(expand(args.clone()).unwrap(), args);
    }
}
