//! The algebra file format.
//!
//! A structure is declared by its dimension and its nonzero products:
//!
//! ```text
//! # comment lines start with '#'
//! dim = 2
//! mu(1,2) = 1:1, 2:2/3
//! mu(2,1) = 1:-1, 2:-2/3
//! ```
//!
//! `mu(i,j) = k1:q1, k2:q2, ...` sets μ(e_i, e_j) = Σ q·e_k with 1-based
//! indices in 1..dim; omitted entries are zero; rationals are `p/q` or plain
//! integers. Duplicate (i,j,k) declarations are rejected. `print` emits the
//! canonical form (lowest terms, ascending indices, zeros omitted), and
//! `parse(print(s))` reproduces `s` exactly. The full grammar (EBNF) is in
//! `docs/algebra-file.md`.

use kvp_core::exactla::{format_rat, parse_rat};
use kvp_core::BilinearStructure;
use num::Zero;
use std::collections::BTreeSet;
use std::fmt;

/// Largest accepted dimension; parsing is format-level validation and the
/// per-operation guards downstream are tighter.
pub const MAX_DIM: usize = 16;

/// Parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct LineScanner<'a> {
    text: &'a str,
    /// byte offset into `text`
    pos: usize,
    line_no: usize,
}

impl<'a> LineScanner<'a> {
    fn new(text: &'a str, line_no: usize) -> Self {
        LineScanner { text, pos: 0, line_no }
    }

    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line_no,
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == ' ' || c == '\t' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, expected: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == expected => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{expected}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{expected}`, found end of line"))),
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number_token(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start_col = self.col();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start || &self.text[start..self.pos] == "-" {
            return Err(ParseError {
                line: self.line_no,
                col: start_col,
                msg: "expected a number".to_string(),
            });
        }
        Ok((self.text[start..self.pos].to_string(), start_col))
    }

    fn index(&mut self, dim: usize, what: &str) -> Result<usize, ParseError> {
        let (tok, col) = self.number_token()?;
        let value: usize = tok.parse().map_err(|_| ParseError {
            line: self.line_no,
            col,
            msg: format!("invalid {what} `{tok}`"),
        })?;
        if value == 0 || value > dim {
            return Err(ParseError {
                line: self.line_no,
                col,
                msg: format!("{what} {value} out of range 1..{dim}"),
            });
        }
        Ok(value)
    }

    fn rational(&mut self) -> Result<kvp_core::Rat, ParseError> {
        let (mut tok, col) = self.number_token()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            let (den, _) = self.number_token()?;
            tok = format!("{tok}/{den}");
        }
        parse_rat(&tok).map_err(|msg| ParseError {
            line: self.line_no,
            col,
            msg,
        })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }
}

/// Parses the text form of a structure.
pub fn parse(text: &str) -> Result<BilinearStructure, ParseError> {
    let mut dim: Option<usize> = None;
    let mut mu: Option<BilinearStructure> = None;
    let mut declared: BTreeSet<(usize, usize, usize)> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut s = LineScanner::new(raw, line_no);
        if s.eat_keyword("dim") {
            if dim.is_some() {
                return Err(s.error("duplicate `dim` declaration"));
            }
            s.eat('=')?;
            let (tok, col) = s.number_token()?;
            let n: usize = tok.parse().map_err(|_| ParseError {
                line: line_no,
                col,
                msg: format!("invalid dimension `{tok}`"),
            })?;
            if n == 0 || n > MAX_DIM {
                return Err(ParseError {
                    line: line_no,
                    col,
                    msg: format!("dimension {n} out of range 1..{MAX_DIM}"),
                });
            }
            if !s.at_end() {
                return Err(s.error("unexpected trailing input"));
            }
            dim = Some(n);
            mu = Some(BilinearStructure::zero(n));
            continue;
        }
        if s.eat_keyword("mu") {
            let Some(n) = dim else {
                return Err(s.error("`mu` declaration before `dim`"));
            };
            let structure = mu.as_mut().expect("mu allocated with dim");
            s.eat('(')?;
            let i = s.index(n, "index")?;
            s.eat(',')?;
            let j = s.index(n, "index")?;
            s.eat(')')?;
            s.eat('=')?;
            loop {
                s.skip_ws();
                let key_col = s.col();
                let k = s.index(n, "output index")?;
                s.eat(':')?;
                let q = s.rational()?;
                if !declared.insert((i, j, k)) {
                    return Err(ParseError {
                        line: line_no,
                        col: key_col,
                        msg: format!("duplicate declaration for mu({i},{j}) component {k}"),
                    });
                }
                structure.set_c(i - 1, j - 1, k - 1, q);
                if s.at_end() {
                    break;
                }
                s.eat(',')?;
            }
            continue;
        }
        return Err(s.error("expected `dim = ...`, `mu(i,j) = ...` or a `#` comment"));
    }

    match mu {
        Some(structure) => Ok(structure),
        None => Err(ParseError {
            line: 1,
            col: 1,
            msg: "missing `dim = ...` declaration".to_string(),
        }),
    }
}

/// Canonical text form: `dim` first, then nonzero products in ascending
/// (i, j) order with ascending output indices, all rationals in lowest terms.
pub fn print(mu: &BilinearStructure) -> String {
    let n = mu.dim();
    let mut out = format!("dim = {n}\n");
    for i in 0..n {
        for j in 0..n {
            let entries: Vec<String> = (0..n)
                .filter(|&k| !mu.c(i, j, k).is_zero())
                .map(|k| format!("{}:{}", k + 1, format_rat(mu.c(i, j, k))))
                .collect();
            if !entries.is_empty() {
                out.push_str(&format!("mu({},{}) = {}\n", i + 1, j + 1, entries.join(", ")));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kvp_core::exactla::{rat, ratio};

    #[test]
    fn parse_basic_file() {
        let text = "# the (1, 2/3) family member\ndim = 2\nmu(1,2) = 1:1, 2:2/3\nmu(2,1) = 1:-1, 2:-2/3\n";
        let mu = parse(text).unwrap();
        assert_eq!(mu, BilinearStructure::dim2_skew(rat(1), ratio(2, 3)));
    }

    #[test]
    fn print_parse_roundtrip() {
        let mu = BilinearStructure::dim2_skew(ratio(-3, 7), rat(5));
        let text = print(&mu);
        assert_eq!(parse(&text).unwrap(), mu);
        // canonical form is a fixed point of print ∘ parse
        assert_eq!(print(&parse(&text).unwrap()), text);
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = parse("dim = 2\nmu(1,3) = 1:1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("out of range"), "{}", err.msg);
    }

    #[test]
    fn rejects_duplicate_component() {
        let err = parse("dim = 2\nmu(1,2) = 1:1, 1:2\n").unwrap_err();
        assert!(err.msg.contains("duplicate"), "{}", err.msg);
        // the same slot on a second line is a duplicate too
        let err = parse("dim = 2\nmu(1,2) = 1:1\nmu(1,2) = 1:2\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn second_line_may_extend_other_components() {
        let mu = parse("dim = 2\nmu(1,2) = 1:1\nmu(1,2) = 2:5\n").unwrap();
        assert_eq!(mu.c(0, 1, 0), &rat(1));
        assert_eq!(mu.c(0, 1, 1), &rat(5));
    }

    #[test]
    fn rejects_missing_dim_and_bad_tokens() {
        assert!(parse("").is_err());
        assert!(parse("mu(1,1) = 1:1\n").is_err());
        assert!(parse("dim = 0\n").is_err());
        assert!(parse("dim = 2\nmu(1,2) 1:1\n").is_err());
        assert!(parse("dim = 2\nmu(1,2) = 1:1/0\n").is_err());
        assert!(parse("dim = 2\nnonsense\n").is_err());
        let err = parse("dim = 2\nmu(1,2) = 1:1,\n").unwrap_err();
        assert!(err.msg.contains("expected a number"), "{}", err.msg);
    }

    #[test]
    fn error_positions_are_one_based() {
        let err = parse("dim = 2\nmu(1,2) = 3:1\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 11));
    }

    #[test]
    fn explicit_zero_entries_are_allowed_and_canonicalized_away() {
        let mu = parse("dim = 2\nmu(1,2) = 1:0, 2:4/2\n").unwrap();
        assert_eq!(mu.c(0, 1, 0), &rat(0));
        assert_eq!(mu.c(0, 1, 1), &rat(2));
        assert_eq!(print(&mu), "dim = 2\nmu(1,2) = 2:2\n");
    }
}
