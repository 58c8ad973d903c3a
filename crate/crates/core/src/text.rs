//! Line-oriented reader shared by the plain-text formats.
//!
//! Blank lines and lines starting with `#` are skipped everywhere.

use crate::error::{parse_err, Result};

pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    pub(crate) fn line_no(&self) -> usize {
        self.last
    }

    pub(crate) fn next_content(&mut self) -> Option<&'a str> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            self.last = i + 1;
            return Some(t);
        }
        None
    }

    pub(crate) fn expect_content(&mut self, what: &str) -> Result<&'a str> {
        match self.next_content() {
            Some(l) => Ok(l),
            None => parse_err(self.last + 1, format!("unexpected end of input, expected {what}")),
        }
    }

    pub(crate) fn numbers(&mut self, what: &str) -> Result<Vec<usize>> {
        let line = self.expect_content(what)?;
        parse_numbers(line, self.last)
    }

    pub(crate) fn at_end(&mut self) -> bool {
        let save = self.inner.clone();
        let last = self.last;
        let done = self.next_content().is_none();
        self.inner = save;
        self.last = last;
        done
    }
}

pub(crate) fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .or_else(|_| parse_err(line_no, format!("expected a non-negative integer, found `{tok}`")))
        })
        .collect()
}

pub(crate) fn header(lines: &mut Lines<'_>, what: &str, count: usize) -> Result<Vec<usize>> {
    let nums = lines.numbers(what)?;
    if nums.len() != count {
        return parse_err(
            lines.line_no(),
            format!("{what} header needs {count} numbers, found {}", nums.len()),
        );
    }
    Ok(nums)
}

pub(crate) fn join(xs: &[usize]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&x.to_string());
    }
    s
}
