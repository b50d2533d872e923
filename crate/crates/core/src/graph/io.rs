//! Graph text format: line 1 is `n R`, then one line `u v` per edge with
//! 1-indexed endpoints, `u < v`, LF-terminated.

use super::{Graph, GraphError};

impl Graph {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.max_degree());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Parses the text format. Trailing blank lines are tolerated so that
    /// graphs can be concatenated into streams.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate();
        let (line_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(GraphError::InvalidText {
                line: 1,
                msg: "empty input".into(),
            })?;
        let mut parts = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize, GraphError> {
            tok.ok_or(GraphError::InvalidText {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| GraphError::InvalidText {
                line,
                msg: "expected an integer".into(),
            })
        };
        let n = parse_num(parts.next(), line_no + 1)?;
        let r = parse_num(parts.next(), line_no + 1)?;
        if parts.next().is_some() {
            return Err(GraphError::InvalidText {
                line: line_no + 1,
                msg: "header has trailing tokens".into(),
            });
        }
        let mut edges = Vec::new();
        for (line_no, line) in lines {
            if line.trim().is_empty() {
                break;
            }
            let mut parts = line.split_whitespace();
            let u = parse_num(parts.next(), line_no + 1)?;
            let v = parse_num(parts.next(), line_no + 1)?;
            if parts.next().is_some() {
                return Err(GraphError::InvalidText {
                    line: line_no + 1,
                    msg: "edge line has trailing tokens".into(),
                });
            }
            if u == 0 || v == 0 || u >= v {
                return Err(GraphError::InvalidText {
                    line: line_no + 1,
                    msg: format!("edge endpoints must satisfy 1 <= u < v, got {u} {v}"),
                });
            }
            edges.push((u - 1, v - 1));
        }
        Graph::new(n, r, &edges)
    }
}
