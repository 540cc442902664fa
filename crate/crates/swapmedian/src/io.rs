//! Line-oriented text formats for instances and graphs, and the verification
//! report records emitted by the checking drivers.
//!
//! Instance documents carry a `swapmedian v1` header, `#`-prefixed metadata
//! lines (`# key: value`), and one permutation per line. Graphs parse from
//! either a structured `swapmedian-graph v1` document or a bare 0-based edge
//! list ("u v" per line); emitted graphs are always structured.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::geodesy::MedianInstance;
use crate::graphs::SimpleGraph;
use crate::perm::Permutation;

pub const INSTANCE_HEADER: &str = "swapmedian v1";
pub const GRAPH_HEADER: &str = "swapmedian-graph v1";

/// Parse failures, pointing at the offending line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

/// A parsed instance file: permutations plus provenance metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub format_version: String,
    pub permutations: Vec<Permutation>,
    pub metadata: BTreeMap<String, String>,
}

impl InstanceDocument {
    /// Wraps permutations in a document; they must all share one size.
    pub fn new(permutations: Vec<Permutation>) -> Result<Self, FormatError> {
        if let Some(first) = permutations.first() {
            if let Some(p) = permutations.iter().find(|p| p.size() != first.size()) {
                return Err(FormatError::new(
                    0,
                    format!("permutation sizes differ: {} vs {}", first.size(), p.size()),
                ));
            }
        }
        Ok(InstanceDocument {
            format_version: INSTANCE_HEADER.into(),
            permutations,
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_metadata(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.into(), value.to_string());
        self
    }

    /// Parses the `swapmedian v1` text format.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut permutations = Vec::new();
        let mut metadata = BTreeMap::new();
        let mut header_seen = false;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if !header_seen {
                if line != INSTANCE_HEADER {
                    return Err(FormatError::new(
                        lineno,
                        format!("expected header `{INSTANCE_HEADER}`, found `{line}`"),
                    ));
                }
                header_seen = true;
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((key, value)) = rest.split_once(':') {
                    metadata.insert(key.trim().to_string(), value.trim().to_string());
                }
                continue;
            }
            let perm: Permutation = line
                .parse()
                .map_err(|e| FormatError::new(lineno, format!("{e}")))?;
            if let Some(first) = permutations.first() {
                let first: &Permutation = first;
                if first.size() != perm.size() {
                    return Err(FormatError::new(
                        lineno,
                        format!(
                            "permutation of size {} after size {}",
                            perm.size(),
                            first.size()
                        ),
                    ));
                }
            }
            permutations.push(perm);
        }
        if !header_seen {
            return Err(FormatError::new(1, "empty document"));
        }
        Ok(InstanceDocument {
            format_version: INSTANCE_HEADER.into(),
            permutations,
            metadata,
        })
    }

    /// Renders the document; `parse` of the output reproduces the value.
    pub fn to_text(&self) -> String {
        let mut out = String::from(INSTANCE_HEADER);
        out.push('\n');
        for (key, value) in &self.metadata {
            out.push_str(&format!("# {key}: {value}\n"));
        }
        for p in &self.permutations {
            out.push_str(&format!("{p}\n"));
        }
        out
    }

    /// Interprets the document as a median/closest instance (exactly 3).
    pub fn triple(&self) -> Result<MedianInstance, FormatError> {
        if self.permutations.len() != 3 {
            return Err(FormatError::new(
                0,
                format!("expected 3 permutations, found {}", self.permutations.len()),
            ));
        }
        MedianInstance::new(
            self.permutations[0].clone(),
            self.permutations[1].clone(),
            self.permutations[2].clone(),
        )
        .map_err(|e| FormatError::new(0, format!("{e}")))
    }

    /// Interprets the document as an ordered pair (exactly 2).
    pub fn pair(&self) -> Result<(Permutation, Permutation), FormatError> {
        if self.permutations.len() != 2 {
            return Err(FormatError::new(
                0,
                format!("expected 2 permutations, found {}", self.permutations.len()),
            ));
        }
        Ok((self.permutations[0].clone(), self.permutations[1].clone()))
    }
}

/// Parses a graph from structured or bare edge-list text.
pub fn parse_graph(text: &str) -> Result<(SimpleGraph, BTreeMap<String, String>), FormatError> {
    let first_meaningful = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    if first_meaningful == Some(GRAPH_HEADER) {
        parse_structured_graph(text)
    } else {
        parse_bare_edges(text)
    }
}

fn parse_structured_graph(
    text: &str,
) -> Result<(SimpleGraph, BTreeMap<String, String>), FormatError> {
    let mut metadata = BTreeMap::new();
    let mut vertices: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((key, value)) = rest.split_once(':') {
                metadata.insert(key.trim().to_string(), value.trim().to_string());
            }
            continue;
        }
        if !header_seen {
            if line != GRAPH_HEADER {
                return Err(FormatError::new(
                    lineno,
                    format!("expected header `{GRAPH_HEADER}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("vertices") => {
                let n = parse_token(tokens.next(), lineno, "vertex count")?;
                if vertices.replace(n).is_some() {
                    return Err(FormatError::new(lineno, "duplicate `vertices` line"));
                }
            }
            Some("edge") => {
                let u = parse_token(tokens.next(), lineno, "edge endpoint")?;
                let v = parse_token(tokens.next(), lineno, "edge endpoint")?;
                if vertices.is_none() {
                    return Err(FormatError::new(lineno, "`edge` before `vertices`"));
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(FormatError::new(
                    lineno,
                    format!("unknown directive `{other}`"),
                ));
            }
            None => unreachable!("line is non-empty"),
        }
        if let Some(extra) = tokens.next() {
            return Err(FormatError::new(lineno, format!("trailing token `{extra}`")));
        }
    }
    let n = vertices.ok_or_else(|| FormatError::new(1, "missing `vertices` line"))?;
    let graph =
        SimpleGraph::new(n, &edges).map_err(|e| FormatError::new(0, format!("{e}")))?;
    Ok((graph, metadata))
}

fn parse_bare_edges(text: &str) -> Result<(SimpleGraph, BTreeMap<String, String>), FormatError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_vertex = 0usize;
    let mut any = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let u = parse_token(tokens.next(), lineno, "edge endpoint")?;
        let v = parse_token(tokens.next(), lineno, "edge endpoint")?;
        if let Some(extra) = tokens.next() {
            return Err(FormatError::new(lineno, format!("trailing token `{extra}`")));
        }
        edges.push((u, v));
        max_vertex = max_vertex.max(u).max(v);
        any = true;
    }
    if !any {
        return Err(FormatError::new(
            1,
            "empty edge list (use the structured format for edgeless graphs)",
        ));
    }
    let graph = SimpleGraph::new(max_vertex + 1, &edges)
        .map_err(|e| FormatError::new(0, format!("{e}")))?;
    Ok((graph, BTreeMap::new()))
}

fn parse_token<T: std::str::FromStr>(
    token: Option<&str>,
    lineno: usize,
    what: &str,
) -> Result<T, FormatError> {
    let token = token.ok_or_else(|| FormatError::new(lineno, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| FormatError::new(lineno, format!("invalid {what} `{token}`")))
}

/// Renders a graph in the structured format.
pub fn graph_to_text(g: &SimpleGraph, metadata: &BTreeMap<String, String>) -> String {
    let mut out = String::from(GRAPH_HEADER);
    out.push('\n');
    for (key, value) in metadata {
        out.push_str(&format!("# {key}: {value}\n"));
    }
    out.push_str(&format!("vertices {}\n", g.vertex_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

/// Verdict of one verification item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Out of scope for the given guards/preconditions; not a failure.
    Skip,
}

/// One machine-readable verification record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn pass(check_id: &str, instance: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn pass_with(check_id: &str, instance: impl Into<String>, witness: impl Into<String>) -> Self {
        VerificationReport {
            witness: Some(witness.into()),
            ..Self::pass(check_id, instance)
        }
    }

    /// Failures always carry a witness.
    pub fn fail(check_id: &str, instance: impl Into<String>, witness: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            instance: instance.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skip(check_id: &str, instance: impl Into<String>, reason: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            instance: instance.into(),
            verdict: Verdict::Skip,
            witness: Some(reason.into()),
        }
    }

    /// One line of the report stream.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report fields serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_document_round_trips() {
        let doc = InstanceDocument::new(vec![
            "8 5 1 3 2 7 6 4".parse().unwrap(),
            Permutation::identity(8).unwrap(),
        ])
        .unwrap()
        .with_metadata("source", "fig-1")
        .with_metadata("note", "hand-written");
        let text = doc.to_text();
        let parsed = InstanceDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.metadata["source"], "fig-1");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = InstanceDocument::parse("swapmedian v1\n1 2 3\n1 1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = InstanceDocument::parse("not a header\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = InstanceDocument::parse("swapmedian v1\n1 2 3\n1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("size"));
    }

    #[test]
    fn triple_requires_exactly_three() {
        let doc = InstanceDocument::parse("swapmedian v1\n1 2\n2 1\n").unwrap();
        assert!(doc.triple().is_err());
        assert!(doc.pair().is_ok());
    }

    #[test]
    fn bare_edge_lists_parse() {
        let (g, meta) = parse_graph("# triangle\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(meta.is_empty());
        assert!(parse_graph("0 1\n1\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn structured_graphs_round_trip() {
        let g = SimpleGraph::new(4, &[(0, 1)]).unwrap();
        let mut meta = BTreeMap::new();
        meta.insert("name".to_string(), "K2+2K1".to_string());
        let text = graph_to_text(&g, &meta);
        let (parsed, parsed_meta) = parse_graph(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(parsed_meta, meta);
        // Isolated vertices survive, unlike in the bare format.
        assert_eq!(parsed.vertex_count(), 4);
    }

    #[test]
    fn structured_graph_errors() {
        assert!(parse_graph("swapmedian-graph v1\nedge 0 1\n").is_err());
        assert!(parse_graph("swapmedian-graph v1\nvertices 2\nedge 0 2\n").is_err());
        assert!(parse_graph("swapmedian-graph v1\nvertices 2\nbogus\n").is_err());
        let err = parse_graph("swapmedian-graph v1\nvertices 2\nedge 0 1 9\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn failure_reports_carry_witnesses() {
        let report = VerificationReport::fail("thm4-iff", "K2", "alpha 1 < target 2");
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.witness.is_some());
        let line = report.to_json_line();
        assert!(line.contains("\"check_id\":\"thm4-iff\""));
        assert!(line.contains("\"verdict\":\"fail\""));
        let passing = VerificationReport::pass("thm4-iff", "K2");
        assert!(!passing.to_json_line().contains("witness"));
    }
}
