//! The plain-text instance format.
//!
//! ```text
//! c comment
//! p oct <n> <m>
//! e <u> <v>          (exactly m lines, ids in 1..=n)
//! w <v> <num>[/<den>] (optional; unlisted vertices weigh 1)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use p5oct_core::{Graph, Weights};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn parse_count(tok: Option<&str>, what: &str, line: usize) -> Result<usize, ParseError> {
    match tok.map(str::parse::<usize>) {
        Some(Ok(x)) => Ok(x),
        Some(Err(_)) => fail(line, format!("{what} is not a non-negative integer")),
        None => fail(line, format!("missing {what}")),
    }
}

fn parse_id(tok: Option<&str>, n: usize, line: usize) -> Result<usize, ParseError> {
    let id = parse_count(tok, "vertex id", line)?;
    if id == 0 || id > n {
        return fail(line, format!("vertex id {id} outside 1..={n}"));
    }
    Ok(id - 1)
}

/// Parses `<num>` or `<num>/<den>` with integer parts.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator `{num}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator `{den}`"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `num/den` in lowest terms, always with a
/// denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_instance(text: &str) -> Result<(Graph, Weights), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weights: Vec<BigRational> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return fail(line, "duplicate header");
                }
                if toks.next() != Some("oct") {
                    return fail(line, "header must read `p oct <n> <m>`");
                }
                let n = parse_count(toks.next(), "vertex count", line)?;
                let m = parse_count(toks.next(), "edge count", line)?;
                if m > n * n.saturating_sub(1) / 2 {
                    return fail(line, format!("{m} edges cannot fit on {n} vertices"));
                }
                header = Some((n, m));
                weights = vec![BigRational::one(); n];
            }
            "e" => {
                let Some((n, m)) = header else { return fail(line, "edge before header") };
                let u = parse_id(toks.next(), n, line)?;
                let v = parse_id(toks.next(), n, line)?;
                if u == v {
                    return fail(line, format!("self-loop at vertex {}", u + 1));
                }
                if edges.len() == m {
                    return fail(line, format!("more than the {m} edges declared"));
                }
                edges.push((u.min(v), u.max(v)));
            }
            "w" => {
                let Some((n, _)) = header else { return fail(line, "weight before header") };
                let v = parse_id(toks.next(), n, line)?;
                let Some(value) = toks.next() else { return fail(line, "missing weight") };
                weights[v] = parse_rational(value).map_err(|m| ParseError { line, message: m })?;
            }
            other => return fail(line, format!("unknown line kind `{other}`")),
        }
        if toks.next().is_some() {
            return fail(line, "trailing tokens");
        }
    }

    let Some((n, m)) = header else { return fail(last_line.max(1), "missing header `p oct <n> <m>`") };
    if edges.len() != m {
        return fail(last_line, format!("header declares {m} edges, found {}", edges.len()));
    }
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return fail(last_line, format!("duplicate edge {} {}", w[0].0 + 1, w[0].1 + 1));
    }
    let g = Graph::new(n, &edges).expect("ids checked while parsing");
    Ok((g, Weights::new(weights)))
}

/// Canonical text: header, edges in lexicographic order, then weight lines
/// for vertices whose weight is not 1.
pub fn serialize_instance(g: &Graph, w: &Weights) -> String {
    let mut out = format!("p oct {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for (v, x) in w.as_slice().iter().enumerate() {
        if !x.is_one() {
            if x.is_integer() {
                writeln!(out, "w {} {}", v + 1, x.numer()).unwrap();
            } else {
                writeln!(out, "w {} {}", v + 1, format_rational(x)).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_examples() {
        let (g, w) = parse_instance("p oct 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, Graph::path(2));
        assert_eq!(w, Weights::unit(2));

        let (g, w) = parse_instance("p oct 1 0\nw 1 3/2\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(w.get(0), &rat(3, 2));

        let err = parse_instance("e 1 2\np oct 2 1\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("p oct 2 0\np oct 2 0\n", 2, "duplicate header"),
            ("c hi\np oct 2 1\ne 1 3\n", 3, "outside"),
            ("p oct 2 0\nw 1 1/0\n", 2, "zero denominator"),
            ("p oct 2 0\nx 1\n", 2, "unknown line kind"),
            ("p oct 3 2\ne 1 2\n", 2, "declares 2 edges"),
            ("p oct 3 1\ne 2 2\n", 2, "self-loop"),
            ("p oct 3 2\ne 1 2\ne 2 1\n", 3, "duplicate edge"),
            ("p oct 3 1\ne 1 2 3\n", 2, "trailing"),
            ("p oct 2 1\ne 1 2\ne 1 2\n", 3, "more than"),
            ("c only a comment\n", 1, "missing header"),
            ("p oct 2 0\nw 1 abc\n", 2, "numerator"),
        ];
        for (text, line, needle) in cases {
            let err = parse_instance(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
            assert!(err.message.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn later_weight_lines_override_earlier_ones() {
        let (_, w) = parse_instance("p oct 1 0\nw 1 2\nw 1 -7/3\n").unwrap();
        assert_eq!(w.get(0), &rat(-7, 3));
    }

    #[test]
    fn serialize_round_trip() {
        let g = Graph::new(4, &[(2, 3), (0, 1), (1, 2)]).unwrap();
        let w = Weights::new(vec![rat(1, 1), rat(3, 2), rat(-4, 1), rat(0, 1)]);
        let text = serialize_instance(&g, &w);
        assert_eq!(text, "p oct 4 3\ne 1 2\ne 2 3\ne 3 4\nw 2 3/2\nw 3 -4\nw 4 0\n");
        let (g2, w2) = parse_instance(&text).unwrap();
        assert_eq!((g2, w2), (g, w));
    }

    #[test]
    fn serialize_normalizes() {
        let messy = "c x\n\np oct 3 2\nw 2 6/4\ne 3 2\nw 1 1\ne 2 1\n";
        let (g, w) = parse_instance(messy).unwrap();
        assert_eq!(serialize_instance(&g, &w), "p oct 3 2\ne 1 2\ne 2 3\nw 2 3/2\n");
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(4, 1)), "4/1");
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
    }
}
