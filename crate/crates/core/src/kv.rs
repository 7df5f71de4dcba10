//! Plain-text `key=value` documents, one pair per line.

use crate::error::{Error, Result};

/// Renders pairs in order. Keys must not contain `=`; values must not contain newlines.
pub(crate) fn render<K: AsRef<str>, V: AsRef<str>>(
    pairs: impl IntoIterator<Item = (K, V)>,
) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        debug_assert!(!k.as_ref().contains('=') && !v.as_ref().contains('\n'));
        out.push_str(k.as_ref());
        out.push('=');
        out.push_str(v.as_ref());
        out.push('\n');
    }
    out
}

/// Parses lines of `key=value`; blank lines and `#` comments are skipped.
/// The value is everything after the first `=`.
pub(crate) fn parse(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, line)| {
            line.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.to_string()))
                .ok_or_else(|| Error::Format(format!("line {}: expected key=value", i + 1)))
        })
        .collect()
}

pub(crate) fn lookup<'a>(pairs: &'a [(String, String)], key: &str) -> Result<&'a str> {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Format(format!("missing key {key:?}")))
}

pub(crate) fn lookup_parse<T: std::str::FromStr>(
    pairs: &[(String, String)],
    key: &str,
) -> Result<T> {
    let raw = lookup(pairs, key)?;
    raw.trim()
        .parse()
        .map_err(|_| Error::Format(format!("bad value {raw:?} for {key:?}")))
}
