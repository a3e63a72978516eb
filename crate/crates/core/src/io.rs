//! Small helpers shared by the line-oriented text formats.

use crate::error::{Error, Result};

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c "))
}

/// Parses a `keyword count` header line.
pub(crate) fn parse_header(line: &str, keyword: &str, lineno: usize) -> Result<usize> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(
            lineno,
            format!("expected `{keyword} N` header"),
        ));
    }
    let n = parse_num(parts.next(), lineno, "count")?;
    if parts.next().is_some() {
        return Err(Error::parse(lineno, "trailing tokens after header"));
    }
    Ok(n)
}

pub(crate) fn parse_num<T: std::str::FromStr>(
    token: Option<&str>,
    lineno: usize,
    what: &str,
) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad {what} `{token}`")))
}
