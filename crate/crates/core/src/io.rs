//! Plain-text edge lists and a DIMACS-flavored writer.
//!
//! Input lines are `u v` (unweighted) or `u v w` (weighted); blank lines and
//! lines starting with `#` are ignored. Duplicate edges keep the first weight,
//! self-loops are dropped, and both are counted in [`ParseStats`].
//! Isolated vertices cannot be expressed as edges; the writer lists them on
//! an informational `# isolated:` comment line that the parser skips.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, Weight, WeightedGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub lines: usize,
    pub duplicates: usize,
    pub self_loops: usize,
}

#[derive(Clone, Debug)]
pub struct Parsed<G> {
    pub graph: G,
    pub stats: ParseStats,
}

fn parse_id(token: &str, line: usize) -> Result<VertexId> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

fn parse_weight(token: &str, line: usize) -> Result<Weight> {
    if token.starts_with('-') && token[1..].parse::<u128>().is_ok() {
        return Err(Error::NegativeWeight {
            line,
            weight: token.to_string(),
        });
    }
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid weight {token:?}"),
    })
}

/// Splits the input into numbered, non-comment token lines.
fn records<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, Vec<String>)>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(line) => line,
            Err(e) => return Some(Err(e.into())),
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        Some(Ok((
            i + 1,
            trimmed.split_whitespace().map(str::to_string).collect(),
        )))
    })
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Parsed<Graph>> {
    let mut graph = Graph::new();
    let mut stats = ParseStats::default();
    for record in records(reader) {
        let (line, tokens) = record?;
        let [u, v] = tokens.as_slice() else {
            return Err(Error::Parse {
                line,
                message: format!("expected \"u v\", found {} fields", tokens.len()),
            });
        };
        let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
        stats.lines += 1;
        if u == v {
            stats.self_loops += 1;
            continue;
        }
        if !graph.add_edge(u, v) {
            stats.duplicates += 1;
        }
    }
    Ok(Parsed { graph, stats })
}

pub fn parse_weighted_edge_list<R: BufRead>(reader: R) -> Result<Parsed<WeightedGraph>> {
    let mut graph = WeightedGraph::new();
    let mut stats = ParseStats::default();
    for record in records(reader) {
        let (line, tokens) = record?;
        let [u, v, w] = tokens.as_slice() else {
            return Err(Error::Parse {
                line,
                message: format!("expected \"u v w\", found {} fields", tokens.len()),
            });
        };
        let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
        let w = parse_weight(w, line)?;
        stats.lines += 1;
        if u == v {
            stats.self_loops += 1;
            continue;
        }
        if !graph.add_edge(u, v, w) {
            stats.duplicates += 1;
        }
    }
    Ok(Parsed { graph, stats })
}

fn write_isolated<W: Write>(g: &Graph, out: &mut W) -> Result<()> {
    let isolated: Vec<String> = g
        .vertices()
        .filter(|&v| g.degree(v) == Some(0))
        .map(|v| v.to_string())
        .collect();
    if !isolated.is_empty() {
        writeln!(out, "# isolated: {}", isolated.join(" "))?;
    }
    Ok(())
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# n={} m={}", g.n(), g.m())?;
    write_isolated(g, &mut out)?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v())?;
    }
    Ok(())
}

pub fn write_weighted_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> Result<()> {
    writeln!(out, "# n={} m={}", g.n(), g.m())?;
    write_isolated(g.graph(), &mut out)?;
    for (e, w) in g.edges() {
        writeln!(out, "{} {} {}", e.u(), e.v(), w)?;
    }
    Ok(())
}

/// DIMACS writer: vertices are renumbered `1..=n` in ascending id order and
/// the mapping is kept on `c v <dimacs> <id>` comment lines.
pub fn write_dimacs<W: Write>(g: &WeightedGraph, weighted: bool, mut out: W) -> Result<()> {
    let index: std::collections::HashMap<VertexId, usize> =
        g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    writeln!(out, "p edge {} {}", g.n(), g.m())?;
    for v in g.vertices() {
        writeln!(out, "c v {} {}", index[&v], v)?;
    }
    for (e, w) in g.edges() {
        if weighted {
            writeln!(out, "e {} {} {}", index[&e.u()], index[&e.v()], w)?;
        } else {
            writeln!(out, "e {} {}", index[&e.u()], index[&e.v()])?;
        }
    }
    Ok(())
}

/// Reads a matching written as one `u v` pair per line.
pub fn parse_matching_edges<R: BufRead>(reader: R) -> Result<Vec<(VertexId, VertexId)>> {
    let mut edges = Vec::new();
    for record in records(reader) {
        let (line, tokens) = record?;
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(Error::Parse {
                line,
                message: "expected \"u v\" or \"u v w\"".into(),
            });
        }
        edges.push((parse_id(&tokens[0], line)?, parse_id(&tokens[1], line)?));
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_path() {
        let p = parse_edge_list("0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!((p.graph.n(), p.graph.m()), (3, 2));
    }

    #[test]
    fn counts_duplicates_and_loops() {
        let p = parse_edge_list("# comment\n0 1\n0 1\n\n1 1\n".as_bytes()).unwrap();
        assert_eq!((p.graph.n(), p.graph.m()), (2, 1));
        assert_eq!(p.stats.duplicates, 1);
        assert_eq!(p.stats.self_loops, 1);
    }

    #[test]
    fn keeps_zero_weights_and_first_duplicate() {
        let p = parse_weighted_edge_list("0 1 5\n1 2 0\n1 0 8\n".as_bytes()).unwrap();
        assert_eq!(p.graph.n(), 3);
        assert_eq!(p.graph.weight(0, 1), Some(5));
        assert_eq!(p.graph.weight(1, 2), Some(0));
        assert_eq!(p.stats.duplicates, 1);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_edge_list("0 1\n# c\n1 x\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_edge_list("0 1 2\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_weighted_edge_list("0 1\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_weighted_edge_list("0 1 3\n1 2 -4\n".as_bytes()),
            Err(Error::NegativeWeight { line: 2, .. })
        ));
        assert!(parse_edge_list("-1 2\n".as_bytes()).is_err());
    }

    #[test]
    fn writer_output() {
        let p3 = Graph::from_edges([(0, 1), (1, 2)]);
        let mut buf = Vec::new();
        write_edge_list(&p3, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);

        let mut buf = Vec::new();
        write_weighted_edge_list(&WeightedGraph::from_edges([(0, 1, 5)]), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().lines().any(|l| l == "0 1 5"));

        let mut buf = Vec::new();
        write_edge_list(&Graph::new(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().all(|l| l.starts_with('#')));
    }

    #[test]
    fn dimacs_header_and_lines() {
        let g = WeightedGraph::from_edges([(10, 20, 3), (20, 30, 4)]);
        let mut buf = Vec::new();
        write_dimacs(&g, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p edge 3 2\n"));
        assert!(text.contains("e 1 2 3\n"));
        assert!(text.contains("e 2 3 4\n"));
        assert!(text.contains("c v 3 30\n"));
    }
}
