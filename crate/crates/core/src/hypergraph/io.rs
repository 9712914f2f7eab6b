//! Plain-text formats.
//!
//! `.h3`: a header line `n m`, then `m` lines `a b c` (0-based, ascending).
//! `.g2`: a header line `n m`, then `m` lines `a b`.
//! Blank lines and `#` comments are ignored. Writers emit edges in
//! lexicographic order, so output is canonical for a given edge set.

use std::fmt::Write as _;

use super::{Graph, Pair, Triple, TripleSystem, VertexId};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_numbers(line: usize, body: &str, want: usize) -> Result<Vec<usize>> {
    let nums = body
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a nonnegative integer: {t:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if nums.len() != want {
        return Err(Error::Parse {
            line,
            msg: format!("expected {want} numbers, found {}", nums.len()),
        });
    }
    Ok(nums)
}

fn parse_body(text: &str, arity: usize) -> Result<(usize, Vec<(usize, Vec<VertexId>)>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header line".into(),
    })?;
    let nm = parse_numbers(hl, header, 2)?;
    let (n, m) = (nm[0], nm[1]);
    let mut rows = Vec::with_capacity(m);
    for (ln, body) in lines {
        let vs = parse_numbers(ln, body, arity)?;
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: ln,
                msg: "vertices must be strictly ascending".into(),
            });
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::Parse {
                line: ln,
                msg: format!("vertex {v} out of range for n = {n}"),
            });
        }
        rows.push((ln, vs));
    }
    if rows.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header announces {m} edges, found {}", rows.len()),
        });
    }
    Ok((n, rows))
}

pub fn parse_h3(text: &str) -> Result<TripleSystem> {
    let (n, rows) = parse_body(text, 3)?;
    let mut edges = Vec::with_capacity(rows.len());
    for (_, vs) in &rows {
        edges.push(Triple::new_unchecked(vs[0], vs[1], vs[2]));
    }
    TripleSystem::new(n, edges)
}

pub fn write_h3(h: &TripleSystem) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.len()).unwrap();
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

pub fn parse_g2(text: &str) -> Result<Graph> {
    let (n, rows) = parse_body(text, 2)?;
    let mut g = Graph::new(n, std::iter::empty())?;
    for (ln, vs) in rows {
        if !g.insert(Pair::new_unchecked(vs[0], vs[1])) {
            return Err(Error::Parse {
                line: ln,
                msg: "duplicate edge".into(),
            });
        }
    }
    Ok(g)
}

pub fn write_g2(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.len()).unwrap();
    for p in g.edges() {
        writeln!(out, "{} {}", p.u(), p.v()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_blank_lines() {
        let text = "# F5\n5 3\n\n0 1 2\n0 1 3 # second\n2 3 4\n";
        let h = parse_h3(text).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(write_h3(&h), "5 3\n0 1 2\n0 1 3\n2 3 4\n");
    }

    #[test]
    fn writer_sorts_edges() {
        let h = TripleSystem::from_tuples(5, &[(2, 3, 4), (0, 1, 2)]).unwrap();
        assert_eq!(write_h3(&h), "5 2\n0 1 2\n2 3 4\n");
        let g = Graph::from_pairs(4, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(write_g2(&g), "4 2\n0 1\n2 3\n");
        assert_eq!(parse_g2(&write_g2(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_h3("").is_err());
        assert!(parse_h3("3 1\n0 2 1\n").is_err());
        assert!(parse_h3("3 2\n0 1 2\n").is_err());
        assert!(parse_h3("3 1\n0 1 3\n").is_err());
        assert!(parse_h3("3 1\n0 1\n").is_err());
        assert!(parse_h3("4 2\n0 1 2\n0 1 2\n").is_err());
        assert!(parse_g2("3 2\n0 1\n0 1\n").is_err());
        assert!(parse_g2("x 0\n").is_err());
    }
}
