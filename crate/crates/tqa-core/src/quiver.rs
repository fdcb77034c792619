//! Quivers, paths and parallel pairs.
//!
//! A quiver is a finite directed multigraph; loops and parallel arrows are
//! allowed. Paths of length n are composable arrow sequences, with vertices
//! doubling as paths of length zero. Orderings are canonical everywhere:
//! arrows in declaration order, paths lexicographically by arrow index.

use std::fmt;

use petgraph::algo::{connected_components, is_cyclic_directed};
use petgraph::graph::{DiGraph, UnGraph};
use serde::Deserialize;

use crate::error::{Error, Limits, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path: an origin vertex plus a (possibly empty) composable arrow
/// sequence. Empty sequence means the vertex itself, which removes any
/// ambiguity about length-zero paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    origin: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), &self.arrows, self.origin).cmp(&(
            other.arrows.len(),
            &other.arrows,
            other.origin,
        ))
    }
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.origin
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.origin == self.target
    }
}

/// Two paths sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParallelPair {
    pub first: Path,
    pub second: Path,
}

/// Structural predicates backing the triviality theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_oriented_cycle: bool,
    pub has_sink: bool,
    pub has_source: bool,
    pub is_acyclic: bool,
    pub is_connected: bool,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        for label in &q.vertices {
            check_label(label)?;
        }
        for i in 0..q.vertices.len() {
            for j in (i + 1)..q.vertices.len() {
                if q.vertices[i] == q.vertices[j] {
                    return Err(Error::Validation(format!(
                        "duplicate vertex label `{}`",
                        q.vertices[i]
                    )));
                }
            }
        }
        for (label, src, dst) in arrows {
            check_label(&label)?;
            let source = q.vertex_id(&src).ok_or_else(|| {
                Error::Validation(format!("arrow `{label}` references unknown vertex `{src}`"))
            })?;
            let target = q.vertex_id(&dst).ok_or_else(|| {
                Error::Validation(format!("arrow `{label}` references unknown vertex `{dst}`"))
            })?;
            if q.arrows.iter().any(|a| a.label == label) {
                return Err(Error::Validation(format!("duplicate arrow label `{label}`")));
            }
            q.arrows.push(Arrow {
                label,
                source,
                target,
            });
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_id(&self, label: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        assert!(v < self.vertices.len());
        Path {
            origin: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = &self.arrows[a];
        Path {
            origin: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from an arrow-id sequence, checking composability.
    pub fn path_from_arrows(&self, ids: &[ArrowId]) -> Option<Path> {
        let first = *ids.first()?;
        let mut target = self.arrows.get(first)?.source;
        for &id in ids {
            let a = self.arrows.get(id)?;
            if a.source != target {
                return None;
            }
            target = a.target;
        }
        Some(Path {
            origin: self.arrows[first].source,
            target,
            arrows: ids.to_vec(),
        })
    }

    /// Juxtaposition when `t(p) = o(r)`, `None` otherwise. Vertex paths act
    /// as one-sided identities at their vertex.
    pub fn concat(&self, p: &Path, r: &Path) -> Option<Path> {
        if p.target != r.origin {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&r.arrows);
        Some(Path {
            origin: p.origin,
            target: r.target,
            arrows,
        })
    }

    /// The subpath spanning arrow positions `range` (empty range yields the
    /// vertex path at the boundary point).
    pub fn subpath(&self, p: &Path, start: usize, end: usize) -> Path {
        assert!(start <= end && end <= p.len(), "subpath range out of bounds");
        if start == end {
            let v = if start == 0 {
                p.origin
            } else {
                self.arrows[p.arrows[start - 1]].target
            };
            return self.vertex_path(v);
        }
        self.path_from_arrows(&p.arrows[start..end])
            .expect("subpath of a valid path composes")
    }

    /// All paths of length `n` in canonical order; `n = 0` yields the
    /// vertices.
    pub fn paths(&self, n: usize, limits: &Limits) -> Result<Vec<Path>> {
        let mut level: Vec<Path> = (0..self.vertices.len()).map(|v| self.vertex_path(v)).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &level {
                for (id, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(id);
                        next.push(Path {
                            origin: p.origin,
                            target: arrow.target,
                            arrows,
                        });
                    }
                }
            }
            limits.check_paths(next.len(), "enumerating paths")?;
            level = next;
            if level.is_empty() {
                break;
            }
        }
        level.sort();
        Ok(level)
    }

    /// All parallel pairs in `Δ_i x Δ_m`, ordered by (first, second).
    pub fn parallel_pairs(&self, i: usize, m: usize, limits: &Limits) -> Result<Vec<ParallelPair>> {
        let firsts = self.paths(i, limits)?;
        let seconds = self.paths(m, limits)?;
        let mut out = Vec::new();
        for f in &firsts {
            for s in &seconds {
                if f.source() == s.source() && f.target() == s.target() {
                    out.push(ParallelPair {
                        first: f.clone(),
                        second: s.clone(),
                    });
                    limits.check_paths(out.len(), "enumerating parallel pairs")?;
                }
            }
        }
        Ok(out)
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(id, _)| id)
    }

    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(id, _)| id)
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_arrows(v).next().is_none()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_arrows(v).next().is_none()
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let digraph: DiGraph<(), ()> = DiGraph::from_edges(
            self.arrows
                .iter()
                .map(|a| (a.source as u32, a.target as u32)),
        );
        // from_edges only materializes vertices mentioned by arrows; pad the
        // undirected copy so isolated vertices count as components.
        let mut ungraph: UnGraph<(), ()> = UnGraph::new_undirected();
        for _ in 0..self.vertices.len() {
            ungraph.add_node(());
        }
        for a in &self.arrows {
            ungraph.add_edge((a.source as u32).into(), (a.target as u32).into(), ());
        }

        let is_connected = self.vertices.len() <= 1 || connected_components(&ungraph) == 1;
        let is_acyclic = self.arrows.is_empty() || !is_cyclic_directed(&digraph);
        let has_sink = (0..self.vertices.len()).any(|v| self.is_sink(v));
        let has_source = (0..self.vertices.len()).any(|v| self.is_source(v));
        let degrees_one = (0..self.vertices.len()).all(|v| {
            self.out_arrows(v).count() == 1 && self.in_arrows(v).count() == 1
        });
        let is_oriented_cycle =
            !self.vertices.is_empty() && degrees_one && is_connected && !is_acyclic;

        StructureFlags {
            is_oriented_cycle,
            has_sink,
            has_source,
            is_acyclic,
            is_connected,
        }
    }

    /// Plain rendering: concatenated arrow labels, or the vertex label.
    pub fn path_string(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertices[p.origin].clone();
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].label.as_str())
            .collect()
    }

    /// Rendering with consecutive repeats collapsed (`xxx` becomes `x^3`),
    /// as used inside bar/tensor notation.
    pub fn path_string_pow(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertices[p.origin].clone();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let mut j = i;
            while j < p.arrows.len() && p.arrows[j] == p.arrows[i] {
                j += 1;
            }
            out.push_str(&self.arrows[p.arrows[i]].label);
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    /// Parses a path written as concatenated arrow labels with optional
    /// `^k` powers (`ax^3b`), or a single vertex label. Arrow labels are
    /// matched greedily, longest first.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::ClassExpr("empty path".into()));
        }
        if let Some(v) = self.vertex_id(text) {
            return Ok(self.vertex_path(v));
        }
        let mut labels: Vec<(usize, &str)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(id, a)| (id, a.label.as_str()))
            .collect();
        labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));

        let mut ids: Vec<ArrowId> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let Some(&(id, label)) = labels.iter().find(|(_, l)| rest.starts_with(l)) else {
                return Err(Error::ClassExpr(format!(
                    "cannot read an arrow label at `{rest}` in path `{text}`"
                )));
            };
            rest = &rest[label.len()..];
            let mut count = 1usize;
            if let Some(stripped) = rest.strip_prefix('^') {
                let digits: String = stripped.chars().take_while(char::is_ascii_digit).collect();
                if digits.is_empty() {
                    return Err(Error::ClassExpr(format!("missing exponent in `{text}`")));
                }
                count = digits
                    .parse()
                    .map_err(|_| Error::ClassExpr(format!("bad exponent in `{text}`")))?;
                rest = &stripped[digits.len()..];
            }
            // x^0 marks the vertex; contributes no arrows.
            ids.extend(std::iter::repeat(id).take(count));
            if count == 0 && ids.is_empty() && rest.is_empty() {
                let v = self.arrows[id].source;
                return Ok(self.vertex_path(v));
            }
        }
        if ids.is_empty() {
            return Err(Error::ClassExpr(format!("path `{text}` has no arrows")));
        }
        self.path_from_arrows(&ids)
            .ok_or_else(|| Error::ClassExpr(format!("arrows in `{text}` do not compose")))
    }
}

fn check_label(label: &str) -> Result<()> {
    let mut chars = label.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(format!("invalid label `{label}`")))
    }
}

#[derive(Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    #[serde(rename = "N")]
    n: usize,
}

#[derive(Deserialize)]
struct ArrowJson {
    label: String,
    source: String,
    target: String,
}

/// Parses the quiver DSL (or its JSON alternative) and the truncation
/// length. Declaration order is preserved.
///
/// ```text
/// # three-vertex example
/// vertices: v1 v2 v3
/// arrow a: v1 -> v2
/// arrow x: v2 -> v2
/// arrow b: v2 -> v3
/// truncation: 3
/// ```
pub fn parse_quiver(text: &str) -> Result<(Quiver, usize)> {
    if text.trim_start().starts_with('{') {
        let parsed: QuiverJson = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("invalid quiver JSON: {e}")))?;
        let quiver = Quiver::new(
            parsed.vertices,
            parsed
                .arrows
                .into_iter()
                .map(|a| (a.label, a.source, a.target))
                .collect(),
        )?;
        if parsed.n < 2 {
            return Err(Error::Validation(format!(
                "truncation length must be at least 2, got {}",
                parsed.n
            )));
        }
        return Ok((quiver, parsed.n));
    }

    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut truncation: Option<usize> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let col = |needle: &str| raw_line.find(needle).map_or(1, |p| p + 1);
        let err = |column: usize, message: String| Error::Parse {
            line: line_no,
            column,
            message,
        };

        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertices:" => {
                if vertices.is_some() {
                    return Err(err(1, "`vertices:` declared twice".into()));
                }
                if tokens.len() < 2 {
                    return Err(err(col("vertices:"), "expected at least one vertex".into()));
                }
                vertices = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "arrow" => {
                // arrow <label>: <src> -> <dst>
                if tokens.len() != 5 || tokens[3] != "->" || !tokens[1].ends_with(':') {
                    return Err(err(
                        col("arrow"),
                        "expected `arrow <label>: <src> -> <dst>`".into(),
                    ));
                }
                let label = tokens[1].trim_end_matches(':').to_string();
                arrows.push((label, tokens[2].to_string(), tokens[4].to_string()));
            }
            "truncation:" => {
                if tokens.len() != 2 {
                    return Err(err(col("truncation:"), "expected one integer".into()));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| err(col(tokens[1]), format!("bad integer `{}`", tokens[1])))?;
                if n < 2 {
                    return Err(err(
                        col(tokens[1]),
                        format!("truncation length must be at least 2, got {n}"),
                    ));
                }
                truncation = Some(n);
            }
            other => {
                return Err(err(col(other), format!("unknown directive `{other}`")));
            }
        }
    }

    let vertices = vertices.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `vertices:` declaration".into(),
    })?;
    let truncation = truncation.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `truncation:` declaration".into(),
    })?;
    let quiver = Quiver::new(vertices, arrows)?;
    Ok((quiver, truncation))
}

impl fmt::Display for StructureFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "oriented_cycle={} sink={} source={} acyclic={} connected={}",
            self.is_oriented_cycle, self.has_sink, self.has_source, self.is_acyclic, self.is_connected
        )
    }
}

/// Built-in quivers; every example used in the write-up is runnable by name.
pub mod builtins {
    use super::{parse_quiver, Quiver};

    /// Three vertices, arrows a: v1->v2, x: v2->v2 (loop), b: v2->v3.
    pub fn example83() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into(), "v3".into()],
            vec![
                ("a".into(), "v1".into(), "v2".into()),
                ("x".into(), "v2".into(), "v2".into()),
                ("b".into(), "v2".into(), "v3".into()),
            ],
        )
        .expect("static quiver is valid")
    }

    /// One vertex, one loop: the truncated polynomial algebra `k[x]/(x^N)`.
    pub fn one_loop() -> Quiver {
        Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .expect("static quiver is valid")
    }

    /// Oriented cycle on `c` vertices (c >= 1).
    pub fn cycle(c: usize) -> Quiver {
        assert!(c >= 1);
        if c == 1 {
            return one_loop();
        }
        let vertices: Vec<String> = (1..=c).map(|i| format!("v{i}")).collect();
        let arrows = (1..=c)
            .map(|i| {
                let next = if i == c { 1 } else { i + 1 };
                (format!("a{i}"), format!("v{i}"), format!("v{next}"))
            })
            .collect();
        Quiver::new(vertices, arrows).expect("static quiver is valid")
    }

    /// `r` loops on a single vertex: the truncated tensor algebra.
    pub fn tensor(r: usize) -> Quiver {
        let arrows = (1..=r)
            .map(|i| (format!("x{i}"), "v".to_string(), "v".to_string()))
            .collect();
        Quiver::new(vec!["v".into()], arrows).expect("static quiver is valid")
    }

    /// Linear quiver A_n: v1 -> v2 -> ... -> vn.
    pub fn linear(n: usize) -> Quiver {
        assert!(n >= 1);
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let arrows = (1..n)
            .map(|i| (format!("a{i}"), format!("v{i}"), format!("v{}", i + 1)))
            .collect();
        Quiver::new(vertices, arrows).expect("static quiver is valid")
    }

    /// Oriented 4-cycle with arrows named v1..v4 (the first medal example).
    pub fn example7_1() -> Quiver {
        Quiver::new(
            vec!["u1".into(), "u2".into(), "u3".into(), "u4".into()],
            vec![
                ("v1".into(), "u1".into(), "u2".into()),
                ("v2".into(), "u2".into(), "u3".into()),
                ("v3".into(), "u3".into(), "u4".into()),
                ("v4".into(), "u4".into(), "u1".into()),
            ],
        )
        .expect("static quiver is valid")
    }

    /// Two 2-cycles glued at a middle vertex (the second medal example):
    /// v1: u1->u2, v2: u2->u3, v3: u3->u2, v4: u2->u1.
    pub fn example7_2() -> Quiver {
        Quiver::new(
            vec!["u1".into(), "u2".into(), "u3".into()],
            vec![
                ("v1".into(), "u1".into(), "u2".into()),
                ("v2".into(), "u2".into(), "u3".into()),
                ("v3".into(), "u3".into(), "u2".into()),
                ("v4".into(), "u2".into(), "u1".into()),
            ],
        )
        .expect("static quiver is valid")
    }

    /// Branching acyclic quiver: one source feeding two sinks.
    pub fn branching() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()],
            vec![
                ("a".into(), "v1".into(), "v2".into()),
                ("b".into(), "v2".into(), "v3".into()),
                ("c".into(), "v2".into(), "v4".into()),
            ],
        )
        .expect("static quiver is valid")
    }

    /// Resolves a builtin by CLI name (`example83`, `loop`, `cycle4`,
    /// `tensor2`, `a3`, `example7-1`, `example7-2`, `branching`).
    pub fn by_name(name: &str) -> Option<Quiver> {
        match name {
            "example83" => Some(example83()),
            "loop" => Some(one_loop()),
            "example7-1" => Some(example7_1()),
            "example7-2" => Some(example7_2()),
            "branching" => Some(branching()),
            _ => {
                if let Some(rest) = name.strip_prefix("cycle") {
                    rest.parse().ok().filter(|&c| c >= 1).map(cycle)
                } else if let Some(rest) = name.strip_prefix("tensor") {
                    rest.parse().ok().filter(|&r| r >= 1).map(tensor)
                } else if let Some(rest) = name.strip_prefix('a') {
                    rest.parse().ok().filter(|&n| n >= 1).map(linear)
                } else {
                    None
                }
            }
        }
    }

    /// The DSL file for the three-vertex example, used in parser tests.
    pub fn example83_dsl() -> &'static str {
        "# three-vertex example\nvertices: v1 v2 v3\narrow a: v1 -> v2\narrow x: v2 -> v2\narrow b: v2 -> v3\ntruncation: 3\n"
    }

    #[allow(dead_code)]
    fn _parse_roundtrip_guard() {
        let _ = parse_quiver(example83_dsl());
    }
}

#[cfg(test)]
mod tests {
    use super::builtins::*;
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn parse_example83_file() {
        let (q, n) = parse_quiver(example83_dsl()).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.arrow_count(), 3);
        assert_eq!(n, 3);
        assert_eq!(q, example83());
    }

    #[test]
    fn parse_vertex_only_quiver() {
        let (q, _) = parse_quiver("vertices: v\ntruncation: 2\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.paths(1, &limits()).unwrap().is_empty());
    }

    #[test]
    fn parse_rejects_unknown_vertex() {
        let res = parse_quiver("vertices: v1\narrow a: v1 -> v9\ntruncation: 2\n");
        assert!(matches!(res, Err(Error::Validation(_))));
    }

    #[test]
    fn parse_rejects_small_truncation_and_duplicates() {
        assert!(parse_quiver("vertices: v\ntruncation: 1\n").is_err());
        assert!(parse_quiver("vertices: v v\ntruncation: 2\n").is_err());
        assert!(parse_quiver(
            "vertices: v\narrow a: v -> v\narrow a: v -> v\ntruncation: 2\n"
        )
        .is_err());
    }

    #[test]
    fn parse_reports_line_numbers() {
        let res = parse_quiver("vertices: v\nnonsense here\ntruncation: 2\n");
        match res {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_json_alternative() {
        let text = r#"{"vertices":["v1","v2"],"arrows":[{"label":"a","source":"v1","target":"v2"}],"N":2}"#;
        let (q, n) = parse_quiver(text).unwrap();
        assert_eq!(n, 2);
        assert_eq!(q.arrow_count(), 1);
    }

    #[test]
    fn paths_of_example83() {
        let q = example83();
        let p2 = q.paths(2, &limits()).unwrap();
        let names: Vec<String> = p2.iter().map(|p| q.path_string(p)).collect();
        assert_eq!(names, vec!["ax", "ab", "xx", "xb"]);

        let p0 = q.paths(0, &limits()).unwrap();
        assert_eq!(p0.len(), 3);
        assert!(p0.iter().all(Path::is_vertex));
    }

    #[test]
    fn paths_of_one_loop() {
        let q = one_loop();
        let p5 = q.paths(5, &limits()).unwrap();
        assert_eq!(p5.len(), 1);
        assert_eq!(p5[0].len(), 5);
    }

    #[test]
    fn paths_cap_is_enforced() {
        let q = tensor(2);
        let tight = Limits {
            max_paths: 7,
            ..Limits::default()
        };
        assert!(matches!(
            q.paths(3, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn concat_examples() {
        let q = example83();
        let a = q.parse_path("a").unwrap();
        let x = q.parse_path("x").unwrap();
        let b = q.parse_path("b").unwrap();
        let ax = q.concat(&a, &x).unwrap();
        assert_eq!(q.path_string(&ax), "ax");
        assert!(q.concat(&b, &a).is_none());
        let v2 = q.vertex_path(q.vertex_id("v2").unwrap());
        assert_eq!(q.concat(&v2, &x).unwrap(), x);
        assert_eq!(q.concat(&x, &v2).unwrap(), x);
    }

    #[test]
    fn concat_is_associative_where_defined() {
        let q = example83();
        let lim = limits();
        let all: Vec<Path> = (0..=2)
            .flat_map(|n| q.paths(n, &lim).unwrap())
            .collect();
        for p in &all {
            for r in &all {
                for s in &all {
                    let left = q.concat(p, r).and_then(|pr| q.concat(&pr, s));
                    let right = q.concat(r, s).and_then(|rs| q.concat(p, &rs));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn parallel_pairs_examples() {
        let q = example83();
        let pairs = q.parallel_pairs(2, 3, &limits()).unwrap();
        let names: Vec<(String, String)> = pairs
            .iter()
            .map(|p| (q.path_string(&p.first), q.path_string(&p.second)))
            .collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&("ax".into(), "axx".into())));
        assert!(names.contains(&("xx".into(), "xxx".into())));
        assert!(names.contains(&("xb".into(), "xxb".into())));
        assert!(names.contains(&("ab".into(), "axb".into())));

        let diag = q.parallel_pairs(0, 0, &limits()).unwrap();
        assert_eq!(diag.len(), 3);
        for p in &diag {
            assert_eq!(p.first, p.second);
        }

        let a2 = linear(2);
        assert!(a2.parallel_pairs(0, 1, &limits()).unwrap().is_empty());
    }

    #[test]
    fn parallel_pair_count_identity() {
        // |pairs(i, m)| = sum over (u, v) of #paths(u->v, i) * #paths(u->v, m)
        let q = example7_2();
        let lim = limits();
        for (i, m) in [(1usize, 2usize), (2, 3), (0, 2)] {
            let pairs = q.parallel_pairs(i, m, &lim).unwrap().len();
            let pi = q.paths(i, &lim).unwrap();
            let pm = q.paths(m, &lim).unwrap();
            let mut total = 0;
            for u in 0..q.vertex_count() {
                for v in 0..q.vertex_count() {
                    let ci = pi
                        .iter()
                        .filter(|p| p.source() == u && p.target() == v)
                        .count();
                    let cm = pm
                        .iter()
                        .filter(|p| p.source() == u && p.target() == v)
                        .count();
                    total += ci * cm;
                }
            }
            assert_eq!(pairs, total);
        }
    }

    #[test]
    fn paths_are_sorted_and_duplicate_free() {
        let q = tensor(2);
        let p3 = q.paths(3, &limits()).unwrap();
        assert_eq!(p3.len(), 8);
        let mut sorted = p3.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(p3, sorted);
    }

    #[test]
    fn structure_flags_examples() {
        let f = cycle(4).structure_flags();
        assert!(f.is_oriented_cycle);
        assert!(!f.has_sink && !f.has_source);
        assert!(!f.is_acyclic);

        let f = example83().structure_flags();
        assert!(f.has_source && f.has_sink);
        assert!(!f.is_oriented_cycle && !f.is_acyclic);
        assert!(f.is_connected);

        let f = one_loop().structure_flags();
        assert!(f.is_oriented_cycle && !f.has_sink && !f.has_source);

        let f = linear(3).structure_flags();
        assert!(f.is_acyclic && !f.is_oriented_cycle);

        let f = tensor(2).structure_flags();
        assert!(!f.is_oriented_cycle && !f.is_acyclic && !f.has_sink && !f.has_source);
    }

    #[test]
    fn path_parsing_with_powers() {
        let q = example83();
        let p = q.parse_path("ax^2b").unwrap();
        assert_eq!(q.path_string(&p), "axxb");
        assert_eq!(q.path_string_pow(&p), "ax^2b");
        let v = q.parse_path("v2").unwrap();
        assert!(v.is_vertex());
        let x0 = q.parse_path("x^0").unwrap();
        assert!(x0.is_vertex());
        assert_eq!(x0.source(), q.vertex_id("v2").unwrap());
        assert!(q.parse_path("ba").is_err());
        assert!(q.parse_path("zz").is_err());
    }

    #[test]
    fn builtin_lookup() {
        assert!(by_name("example83").is_some());
        assert_eq!(by_name("cycle4").unwrap().vertex_count(), 4);
        assert_eq!(by_name("tensor2").unwrap().arrow_count(), 2);
        assert_eq!(by_name("a3").unwrap().vertex_count(), 3);
        assert!(by_name("nope").is_none());
    }
}
