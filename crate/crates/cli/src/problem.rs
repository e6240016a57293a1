//! The problem file format.
//!
//! ```text
//! # comments run to the end of the line
//! Z6
//! pcs
//! 1 1 3 5 | 0 1 5
//! 0 4 2 2 | 0 2 4
//! ```
//!
//! The first non-comment line is the ring, the second the mode. In `pcs`
//! mode every further line is one row of H, a `|`, and the same row of S. In
//! `code` mode the generators of the partial kernel come first, then a blank
//! line, then the coset representatives, one per line. An empty generator
//! block is written as a blank line directly after the mode line.
//!
//! Elements are separated by whitespace or commas. Elements of product rings
//! are written as tuples such as `(1,2)`; spaces inside the parentheses are
//! allowed.

use std::fmt::Write as _;

use ringcodes::{Matrix, RingElem, RingSpec, RingVec};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Pcs {
        spec: RingSpec,
        h: Matrix,
        s: Matrix,
    },
    Code {
        spec: RingSpec,
        n: usize,
        generators: Vec<RingVec>,
        reps: Vec<RingVec>,
    },
}

impl Problem {
    pub fn spec(&self) -> &RingSpec {
        match self {
            Problem::Pcs { spec, .. } | Problem::Code { spec, .. } => spec,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Problem::Pcs { h, .. } => h.ncols(),
            Problem::Code { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Element tokens of one line with their one-based columns.
fn tokenize(text: &str, line: usize, offset: usize) -> Result<Vec<(usize, String)>, CliError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
        } else if c == '(' {
            let start = i;
            while i < chars.len() && chars[i] != ')' {
                i += 1;
            }
            if i == chars.len() {
                return Err(parse_err(line, offset + start + 1, "unclosed parenthesis"));
            }
            let inner: String = chars[start..=i].iter().filter(|c| !c.is_whitespace()).collect();
            tokens.push((offset + start + 1, inner));
            i += 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != ',' && chars[i] != '(' {
                i += 1;
            }
            tokens.push((offset + start + 1, chars[start..i].iter().collect()));
        }
    }
    Ok(tokens)
}

fn parse_elems(spec: &RingSpec, text: &str, line: usize, offset: usize) -> Result<Vec<RingElem>, CliError> {
    tokenize(text, line, offset)?
        .into_iter()
        .map(|(col, tok)| spec.parse_elem(&tok).map_err(|e| parse_err(line, col, format!("{tok:?}: {e}"))))
        .collect()
}

/// A vector literal given on the command line, such as `5,2,0,1`,
/// `(5,2,0,1)` with k = 1, or `(1,0) (0,2)` over a product ring.
pub fn parse_vector(spec: &RingSpec, text: &str) -> Result<RingVec, CliError> {
    let trimmed = text.trim();
    let body = if spec.num_factors() == 1 {
        trimmed.trim_start_matches('(').trim_end_matches(')')
    } else {
        trimmed
    };
    Ok(RingVec::new(parse_elems(spec, body, 1, 0)?))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    // (line number, content); comment-only lines vanish, blank lines stay
    let mut lines: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let has_comment = raw.contains('#');
        let content = strip_comment(raw);
        if content.trim().is_empty() && has_comment {
            continue;
        }
        lines.push((i + 1, content));
    }
    let mut it = lines.into_iter().skip_while(|(_, l)| l.trim().is_empty());
    let (ring_line, ring_text) = it.next().ok_or_else(|| parse_err(1, 1, "missing ring line"))?;
    let spec: RingSpec = ring_text
        .trim()
        .parse()
        .map_err(|e| parse_err(ring_line, 1, format!("{e}")))?;
    let (mode_line, mode_text) = it
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(ring_line + 1, 1, "missing mode line (pcs or code)"))?;
    let rest: Vec<(usize, &str)> = it.collect();
    match mode_text.trim() {
        "pcs" => parse_pcs(spec, &rest, mode_line),
        "code" => parse_code(spec, &rest, mode_line),
        other => Err(parse_err(mode_line, 1, format!("unknown mode {other:?}, expected pcs or code"))),
    }
}

fn check_width(expected: &mut Option<usize>, found: usize, line: usize, what: &str) -> Result<(), CliError> {
    match expected {
        Some(w) if *w != found => Err(parse_err(line, 1, format!("{what} has {found} entries, expected {w}"))),
        Some(_) => Ok(()),
        None => {
            *expected = Some(found);
            Ok(())
        }
    }
}

fn parse_pcs(spec: RingSpec, lines: &[(usize, &str)], mode_line: usize) -> Result<Problem, CliError> {
    let mut h_rows = Vec::new();
    let mut s_rows = Vec::new();
    let (mut n, mut s) = (None, None);
    for &(ln, text) in lines.iter().filter(|(_, l)| !l.trim().is_empty()) {
        let bar = text.find('|').ok_or_else(|| parse_err(ln, 1, "missing '|' between H and S"))?;
        if text[bar + 1..].contains('|') {
            return Err(parse_err(ln, bar + 2 + text[bar + 1..].find('|').unwrap(), "more than one '|'"));
        }
        let h = parse_elems(&spec, &text[..bar], ln, 0)?;
        let sr = parse_elems(&spec, &text[bar + 1..], ln, bar + 1)?;
        check_width(&mut n, h.len(), ln, "H row")?;
        check_width(&mut s, sr.len(), ln, "S row")?;
        h_rows.push(RingVec::new(h));
        s_rows.push(RingVec::new(sr));
    }
    if h_rows.is_empty() {
        return Err(parse_err(mode_line + 1, 1, "no rows"));
    }
    let (n, s) = (n.unwrap_or(0), s.unwrap_or(0));
    if n == 0 {
        return Err(parse_err(lines[0].0, 1, "H rows are empty"));
    }
    if s == 0 {
        return Err(parse_err(lines[0].0, 1, "S rows are empty"));
    }
    Ok(Problem::Pcs {
        h: Matrix::new(h_rows, n).expect("widths checked"),
        s: Matrix::new(s_rows, s).expect("widths checked"),
        spec,
    })
}

fn parse_code(spec: RingSpec, lines: &[(usize, &str)], mode_line: usize) -> Result<Problem, CliError> {
    // blocks separated by runs of blank lines; an empty first block is
    // signalled by a blank line right after the mode line
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    let mut prev_blank = false;
    for (idx, &(ln, text)) in lines.iter().enumerate() {
        if text.trim().is_empty() {
            if idx == 0 || !prev_blank {
                blocks.push(Vec::new());
            }
            prev_blank = true;
        } else {
            blocks.last_mut().unwrap().push((ln, text));
            prev_blank = false;
        }
    }
    while blocks.len() > 2 && blocks.last().is_some_and(|b| b.is_empty()) {
        blocks.pop();
    }
    if blocks.len() != 2 {
        let ln = lines.iter().find(|(_, l)| l.trim().is_empty()).map_or(mode_line, |p| p.0);
        return Err(parse_err(
            ln,
            1,
            format!(
                "code mode needs a generator block and a representative block separated by one blank line, found {} blocks",
                blocks.len()
            ),
        ));
    }
    let mut n = None;
    let mut parse_block = |block: &[(usize, &str)], what: &str| -> Result<Vec<RingVec>, CliError> {
        block
            .iter()
            .map(|&(ln, text)| {
                let v = parse_elems(&spec, text, ln, 0)?;
                check_width(&mut n, v.len(), ln, what)?;
                Ok(RingVec::new(v))
            })
            .collect()
    };
    let generators = parse_block(&blocks[0], "generator")?;
    let reps = parse_block(&blocks[1], "representative")?;
    if reps.is_empty() {
        return Err(parse_err(mode_line + 1, 1, "no coset representatives"));
    }
    let n = n.unwrap_or(0);
    if n == 0 {
        return Err(parse_err(mode_line + 1, 1, "vectors are empty"));
    }
    Ok(Problem::Code {
        spec,
        n,
        generators,
        reps,
    })
}

fn row_text(v: &RingVec) -> String {
    v.coords().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render_pcs(spec: &RingSpec, h: &Matrix, s: &Matrix) -> String {
    let mut out = format!("{spec}\npcs\n");
    for (hr, sr) in h.rows().iter().zip(s.rows()) {
        writeln!(out, "{} | {}", row_text(hr), row_text(sr)).unwrap();
    }
    out
}

pub fn render_code(spec: &RingSpec, generators: &[RingVec], reps: &[RingVec]) -> String {
    let mut out = format!("{spec}\ncode\n");
    for g in generators {
        writeln!(out, "{}", row_text(g)).unwrap();
    }
    out.push('\n');
    for d in reps {
        writeln!(out, "{}", row_text(d)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "# worked example\nZ6\npcs\n1 1 3 5 | 0 1 5\n0 4 2 2 | 0 2 4   # second row\n";

    #[test]
    fn parses_pcs_file() {
        let p = parse_problem(EXAMPLE).unwrap();
        let Problem::Pcs { spec, h, s } = &p else { panic!("wrong mode") };
        assert_eq!(spec.to_string(), "Z6");
        assert_eq!(h.nrows(), 2);
        assert_eq!(s.ncols(), 3);
        assert_eq!(render_pcs(spec, h, s), "Z6\npcs\n1 1 3 5 | 0 1 5\n0 4 2 2 | 0 2 4\n");
        assert_eq!(parse_problem(&render_pcs(spec, h, s)).unwrap(), p);
    }

    #[test]
    fn parses_code_file_with_empty_kernel_block() {
        let text = "Z2xZ3\ncode\n\n(1, 0) (0,2)\n# comment between\n(0,0),(0,0)\n\n";
        let p = parse_problem(text).unwrap();
        let Problem::Code { n, generators, reps, spec } = &p else { panic!("wrong mode") };
        assert_eq!(*n, 2);
        assert!(generators.is_empty());
        assert_eq!(reps.len(), 2);
        assert_eq!(parse_problem(&render_code(spec, generators, reps)).unwrap(), p);
    }

    #[test]
    fn parses_code_file_with_kernel() {
        let text = "Z6\ncode\n2 1 1 0\n0 1 0 1\n3 0 3 0\n\n0 0 0 0\n5 2 0 0\n4 1 0 0\n";
        let Problem::Code { generators, reps, .. } = parse_problem(text).unwrap() else { panic!() };
        assert_eq!(generators.len(), 3);
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn reports_positions() {
        let err = parse_problem("Z6\npcs\n1 1 3 5 | 0 1 5\n0 4 9 2 | 0 2 4\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, column: 5, .. }), "{err:?}");
        let err = parse_problem("Z6\npcs\n1 1 3 | 0 1 5\n0 4 2 2 | 0 2 4\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }));
        let err = parse_problem("Z1\npcs\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
        let err = parse_problem("Z6\nfoo\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        let err = parse_problem("Z6\npcs\n1 1 | 0 | 1\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, column: 9, .. }), "{err:?}");
    }

    #[test]
    fn vector_literals() {
        let r = RingSpec::zmod(6).unwrap();
        assert_eq!(parse_vector(&r, "(5,2,0,1)").unwrap(), r.vec_from_ints(&[5, 2, 0, 1]));
        assert_eq!(parse_vector(&r, "5 2 0 1").unwrap(), r.vec_from_ints(&[5, 2, 0, 1]));
        let r23 = RingSpec::new(&[2, 3]).unwrap();
        let v = parse_vector(&r23, "(1,2) (0,1)").unwrap();
        assert_eq!(v.len(), 2);
    }
}
