//! Plain-text hypergraph format.
//!
//! ```text
//! # comment lines start with '#'
//! 3 5
//! 0 1 2
//! 1 2 3
//! ```
//!
//! The first non-comment line holds `r n`; each further line one edge of `r`
//! 0-based vertex indices. Blank lines are ignored. Writing emits edges in
//! canonical (lexicographic) order, so parse/write round-trips byte for byte.

use super::Hypergraph;
use crate::error::{Error, Result};

pub fn parse_text(input: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "header must be `r n`".into(),
                    });
                }
                if nums[0] == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "uniformity must be at least 1".into(),
                    });
                }
                header = Some((nums[0], nums[1], line_no));
            }
            Some((r, n, _)) => {
                if nums.len() != r {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("edge has {} vertices, expected {r}", nums.len()),
                    });
                }
                let mut sorted = nums.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "edge repeats a vertex".into(),
                    });
                }
                if let Some(bad) = sorted.iter().find(|&&x| x >= n) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("vertex {bad} out of range for n = {n}"),
                    });
                }
                edges.push(nums);
            }
        }
    }
    let (r, n, _) = header.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        message: "missing `r n` header".into(),
    })?;
    Hypergraph::new(r, n, edges)
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.r(), h.n());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_round_trips() {
        let text = "# C5\n3 5\n\n2 1 0\n1 2 3\n# mid comment\n2 3 4\n0 3 4\n0 1 4\n";
        let h = parse_text(text).unwrap();
        assert_eq!(h.edge_count(), 5);
        let canonical = to_text(&h);
        assert_eq!(canonical, "3 5\n0 1 2\n0 1 4\n0 3 4\n1 2 3\n2 3 4\n");
        assert_eq!(to_text(&parse_text(&canonical).unwrap()), canonical);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_text("3 4\n0 1 2\n0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_text("3 4\n0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_text("3 4\n0 1 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_text("# nothing\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_text("").is_err());
    }

    #[test]
    fn empty_edge_set() {
        let h = parse_text("3 6\n").unwrap();
        assert_eq!((h.n(), h.edge_count()), (6, 0));
        assert_eq!(to_text(&h), "3 6\n");
    }
}
