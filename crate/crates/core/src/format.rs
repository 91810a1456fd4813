//! Text formats for [`BipartiteGraph`].
//!
//! All three formats share the header `n=<n> m=<m> k=<k>` (in DOT it sits in
//! a leading `//` comment). Global labels are `0..k` for `X` and `k..n` for
//! `Y`; DOT names them `x0..` and `y0..`.
//!
//! ```text
//! edge-list       biadjacency     dot
//! n=6 m=7 k=4     n=6 m=7 k=4     // n=6 m=7 k=4
//! 0 4             1111            graph B {
//! 0 5             1110              subgraph X { x0; x1; x2; x3; }
//! ...                               subgraph Y { y0; y1; }
//!                                   x0 -- y0;
//!                                   ...
//!                                 }
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::GraphError;
use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Biadjacency,
    Dot,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::EdgeList, Format::Biadjacency, Format::Dot];

    pub fn name(self) -> &'static str {
        match self {
            Format::EdgeList => "edge-list",
            Format::Biadjacency => "biadjacency",
            Format::Dot => "dot",
        }
    }
}

impl FromStr for Format {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GraphError::UnknownFormat(s.to_string()))
    }
}

pub fn serialize(g: &BipartiteGraph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g),
        Format::Biadjacency => write_biadjacency(g),
        Format::Dot => write_dot(g),
    }
}

pub fn parse(text: &str, format: Format) -> Result<BipartiteGraph, GraphError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Biadjacency => parse_biadjacency(text),
        Format::Dot => parse_dot(text),
    }
}

fn header(g: &BipartiteGraph) -> String {
    format!("n={} m={} k={}", g.n(), g.m(), g.x_size())
}

fn write_edge_list(g: &BipartiteGraph) -> String {
    let k = g.x_size();
    let mut out = header(g);
    out.push('\n');
    for (x, y) in g.edges() {
        let _ = writeln!(out, "{} {}", x, k + y);
    }
    out
}

fn write_biadjacency(g: &BipartiteGraph) -> String {
    let mut out = header(g);
    out.push('\n');
    for row in g.rows() {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

fn write_dot(g: &BipartiteGraph) -> String {
    let mut out = format!("// {}\ngraph B {{\n", header(g));
    for (name, prefix, size) in [("X", 'x', g.x_size()), ("Y", 'y', g.y_size())] {
        let _ = write!(out, "  subgraph {name} {{");
        for i in 0..size {
            let _ = write!(out, " {prefix}{i};");
        }
        out.push_str(" }\n");
    }
    for (x, y) in g.edges() {
        let _ = writeln!(out, "  x{x} -- y{y};");
    }
    out.push_str("}\n");
    out
}

/// Parsed `n=.. m=.. k=..` header.
#[derive(Debug, Clone, Copy)]
struct Header {
    n: usize,
    m: usize,
    k: usize,
}

impl Header {
    fn y_size(&self) -> usize {
        self.n - self.k
    }
}

fn parse_header(line: &str, line_no: usize, base_col: usize) -> Result<Header, GraphError> {
    let mut values = [None; 3];
    let mut col = base_col;
    for token in line.split(' ') {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            GraphError::syntax(line_no, col, format!("expected key=value, found {token:?}"))
        })?;
        let slot = match key {
            "n" => 0,
            "m" => 1,
            "k" => 2,
            _ => {
                return Err(GraphError::syntax(
                    line_no,
                    col,
                    format!("unknown header key {key:?}"),
                ))
            }
        };
        let parsed = value.parse::<usize>().map_err(|_| {
            GraphError::syntax(
                line_no,
                col + key.len() + 1,
                format!("invalid number {value:?}"),
            )
        })?;
        if values[slot].replace(parsed).is_some() {
            return Err(GraphError::syntax(
                line_no,
                col,
                format!("repeated header key {key:?}"),
            ));
        }
        col += token.len() + 1;
    }
    match values {
        [Some(n), Some(m), Some(k)] if k >= 1 && k < n => Ok(Header { n, m, k }),
        [Some(n), Some(_), Some(k)] => Err(GraphError::syntax(
            line_no,
            base_col,
            format!("header needs 1 <= k <= n-1, got n={n} k={k}"),
        )),
        _ => Err(GraphError::syntax(
            line_no,
            base_col,
            "header must declare n, m and k",
        )),
    }
}

fn check_count(h: &Header, g: &BipartiteGraph) -> Result<(), GraphError> {
    if h.m != g.m() {
        return Err(GraphError::EdgeCountMismatch {
            declared: h.m,
            found: g.m(),
        });
    }
    Ok(())
}

/// Lines with 1-based numbers; a trailing empty line after the final LF is dropped.
fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.strip_suffix('\n')
        .unwrap_or(text)
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn parse_edge_list(text: &str) -> Result<BipartiteGraph, GraphError> {
    let mut lines = numbered_lines(text);
    let (_, first) = lines
        .next()
        .ok_or_else(|| GraphError::syntax(1, 1, "missing header"))?;
    let h = parse_header(first, 1, 1)?;
    let mut g = BipartiteGraph::empty(h.k, h.y_size())?;

    for (line_no, line) in lines {
        let mut fields = line.split(' ');
        let mut next_vertex = |col: usize| -> Result<usize, GraphError> {
            let field = fields
                .next()
                .ok_or_else(|| GraphError::syntax(line_no, col, "expected two vertex labels"))?;
            let v = field.parse::<usize>().map_err(|_| {
                GraphError::syntax(line_no, col, format!("invalid vertex {field:?}"))
            })?;
            if v >= h.n {
                return Err(GraphError::syntax(
                    line_no,
                    col,
                    format!("vertex {v} out of range for n={}", h.n),
                ));
            }
            Ok(v)
        };
        let u = next_vertex(1)?;
        let v_col = line.find(' ').map_or(line.len() + 1, |i| i + 2);
        let v = next_vertex(v_col)?;
        if fields.next().is_some() {
            return Err(GraphError::syntax(line_no, 1, "trailing fields after edge"));
        }
        if !(u < h.k && h.k <= v) {
            return Err(GraphError::syntax(
                line_no,
                1,
                format!("edge {u} {v} does not satisfy u < k <= v with k={}", h.k),
            ));
        }
        if !g.insert_edge(u, v - h.k)? {
            return Err(GraphError::DuplicateEdge { u, v });
        }
    }
    check_count(&h, &g)?;
    Ok(g)
}

fn parse_biadjacency(text: &str) -> Result<BipartiteGraph, GraphError> {
    let mut lines = numbered_lines(text);
    let (_, first) = lines
        .next()
        .ok_or_else(|| GraphError::syntax(1, 1, "missing header"))?;
    let h = parse_header(first, 1, 1)?;
    let mut g = BipartiteGraph::empty(h.k, h.y_size())?;

    let mut rows = 0;
    for (line_no, line) in lines {
        if rows == h.y_size() {
            return Err(GraphError::syntax(
                line_no,
                1,
                format!("more than {} rows", h.y_size()),
            ));
        }
        let width = line.chars().count();
        if width != h.k {
            return Err(GraphError::syntax(
                line_no,
                width.min(h.k) + 1,
                format!("row has {width} columns, expected {}", h.k),
            ));
        }
        for (x, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    g.insert_edge(x, rows)?;
                }
                other => {
                    return Err(GraphError::syntax(
                        line_no,
                        x + 1,
                        format!("unexpected {other:?}"),
                    ))
                }
            }
        }
        rows += 1;
    }
    if rows != h.y_size() {
        return Err(GraphError::syntax(
            rows + 2,
            1,
            format!("expected {} rows, found {rows}", h.y_size()),
        ));
    }
    check_count(&h, &g)?;
    Ok(g)
}

fn parse_dot(text: &str) -> Result<BipartiteGraph, GraphError> {
    let mut lines = numbered_lines(text);
    let (_, first) = lines
        .next()
        .ok_or_else(|| GraphError::syntax(1, 1, "missing header comment"))?;
    let header_text = first
        .strip_prefix("// ")
        .ok_or_else(|| GraphError::syntax(1, 1, "expected `// n=.. m=.. k=..` header comment"))?;
    let h = parse_header(header_text, 1, 4)?;
    let mut g = BipartiteGraph::empty(h.k, h.y_size())?;

    let expect = |line_no: usize, line: &str, want: &str| {
        if line.trim() == want {
            Ok(())
        } else {
            Err(GraphError::syntax(line_no, 1, format!("expected {want:?}")))
        }
    };

    let (line_no, line) = lines
        .next()
        .ok_or_else(|| GraphError::syntax(2, 1, "missing `graph B {`"))?;
    expect(line_no, line, "graph B {")?;

    for (name, prefix, size) in [("X", 'x', h.k), ("Y", 'y', h.y_size())] {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| GraphError::syntax(line_no, 1, format!("missing subgraph {name}")))?;
        let want = {
            let mut s = format!("subgraph {name} {{");
            for i in 0..size {
                let _ = write!(s, " {prefix}{i};");
            }
            s.push_str(" }");
            s
        };
        expect(line_no, line, &want)?;
    }

    let mut closed = false;
    for (line_no, line) in lines {
        if closed {
            return Err(GraphError::syntax(
                line_no,
                1,
                "content after closing brace",
            ));
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim();
        if body == "}" {
            closed = true;
            continue;
        }
        let stmt = body
            .strip_suffix(';')
            .ok_or_else(|| GraphError::syntax(line_no, line.len() + 1, "expected `;`"))?;
        let (lhs, rhs) = stmt
            .split_once(" -- ")
            .ok_or_else(|| GraphError::syntax(line_no, indent + 1, "expected `xI -- yJ;`"))?;
        let x = dot_vertex(lhs, 'x', h.k, line_no, indent + 1)?;
        let y = dot_vertex(rhs, 'y', h.y_size(), line_no, indent + lhs.len() + 5)?;
        if !g.insert_edge(x, y)? {
            return Err(GraphError::DuplicateEdge { u: x, v: h.k + y });
        }
    }
    if !closed {
        return Err(GraphError::syntax(0, 0, "missing closing `}`"));
    }
    check_count(&h, &g)?;
    Ok(g)
}

fn dot_vertex(
    token: &str,
    prefix: char,
    size: usize,
    line: usize,
    column: usize,
) -> Result<usize, GraphError> {
    token
        .strip_prefix(prefix)
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i < size)
        .ok_or_else(|| {
            GraphError::syntax(line, column, format!("invalid {prefix}-vertex {token:?}"))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::complete(2, 2).unwrap()
    }

    #[test]
    fn single_edge_edge_list() {
        let g = BipartiteGraph::from_edges(1, 1, [(0, 0)]).unwrap();
        assert_eq!(serialize(&g, Format::EdgeList), "n=2 m=1 k=1\n0 1\n");
    }

    #[test]
    fn empty_edge_list_is_header_only() {
        let g = BipartiteGraph::empty(2, 2).unwrap();
        assert_eq!(serialize(&g, Format::EdgeList), "n=4 m=0 k=2\n");
        assert_eq!(parse("n=4 m=0 k=2\n", Format::EdgeList).unwrap(), g);
    }

    #[test]
    fn complete_biadjacency() {
        assert_eq!(
            serialize(&k22(), Format::Biadjacency),
            "n=4 m=4 k=2\n11\n11\n"
        );
    }

    #[test]
    fn dot_layout() {
        let g = BipartiteGraph::from_edges(2, 1, [(1, 0)]).unwrap();
        assert_eq!(
            serialize(&g, Format::Dot),
            "// n=3 m=1 k=2\ngraph B {\n  subgraph X { x0; x1; }\n  subgraph Y { y0; }\n  x1 -- y0;\n}\n"
        );
    }

    #[test]
    fn round_trips_k24() {
        let g = BipartiteGraph::complete(2, 4).unwrap();
        for f in Format::ALL {
            assert_eq!(parse(&serialize(&g, f), f).unwrap(), g, "{}", f.name());
        }
    }

    #[test]
    fn edge_lines_are_sorted() {
        let g = BipartiteGraph::from_edges(2, 2, [(1, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(
            serialize(&g, Format::EdgeList),
            "n=4 m=3 k=2\n0 3\n1 2\n1 3\n"
        );
    }

    #[test]
    fn vertex_out_of_range() {
        let err = parse("n=4 m=1 k=2\n0 4\n", Format::EdgeList).unwrap_err();
        assert!(
            matches!(
                err,
                GraphError::Syntax {
                    line: 2,
                    column: 3,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn edge_within_one_side_is_rejected() {
        let err = parse("n=4 m=1 k=2\n0 1\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 2, .. }));
    }

    #[test]
    fn declared_count_mismatch() {
        let err = parse("n=4 m=3 k=2\n0 2\n1 3\n", Format::EdgeList).unwrap_err();
        assert_eq!(
            err,
            GraphError::EdgeCountMismatch {
                declared: 3,
                found: 2
            }
        );
        let err = parse("n=4 m=3 k=2\n11\n00\n", Format::Biadjacency).unwrap_err();
        assert_eq!(
            err,
            GraphError::EdgeCountMismatch {
                declared: 3,
                found: 2
            }
        );
    }

    #[test]
    fn biadjacency_syntax_errors() {
        let err = parse("n=4 m=1 k=2\n1x\n00\n", Format::Biadjacency).unwrap_err();
        assert!(matches!(
            err,
            GraphError::Syntax {
                line: 2,
                column: 2,
                ..
            }
        ));
        let err = parse("n=4 m=1 k=2\n10\n", Format::Biadjacency).unwrap_err();
        assert!(matches!(err, GraphError::Syntax { .. }));
        let err = parse("n=4 m=1 k=2\n100\n00\n", Format::Biadjacency).unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 2, .. }));
    }

    #[test]
    fn header_errors() {
        assert!(parse("n=4 k=2\n", Format::EdgeList).is_err());
        assert!(parse("n=4 m=0 k=4\n", Format::EdgeList).is_err());
        let err = parse("n=4 m=x k=2\n", Format::EdgeList).unwrap_err();
        assert!(
            matches!(
                err,
                GraphError::Syntax {
                    line: 1,
                    column: 7,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn dot_rejects_foreign_vertices() {
        let text = "// n=3 m=1 k=2\ngraph B {\n  subgraph X { x0; x1; }\n  subgraph Y { y0; }\n  x2 -- y0;\n}\n";
        assert!(matches!(
            parse(text, Format::Dot),
            Err(GraphError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn unknown_format_name() {
        assert_eq!(
            "graphml".parse::<Format>(),
            Err(GraphError::UnknownFormat("graphml".into()))
        );
        assert_eq!("dot".parse::<Format>(), Ok(Format::Dot));
    }
}
