//! Family, graph, certificate, and report files.
//!
//! Two equivalent family formats exist: a text document with a header line
//! `n=<int>` followed by one `graph <i>:` block per colour holding `u v`
//! edge lines, and a JSON document `{"n": int, "graphs": [[[u,v],...],...]}`.
//! Writers emit labels 1-based with u < v and lines sorted, so reading back
//! a written family reproduces it exactly.

use rhc_core::{CycleError, Edge, FamilyError, Graph, GraphError, GraphFamily, RainbowCycle};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Serde mirror of a graph family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub n: usize,
    pub graphs: Vec<Vec<(usize, usize)>>,
}

impl FamilyDoc {
    pub fn from_family(family: &GraphFamily) -> Self {
        let graphs = family
            .graphs()
            .iter()
            .map(|g| g.edges().iter().map(|e| e.endpoints()).collect())
            .collect();
        FamilyDoc { n: family.n(), graphs }
    }

    pub fn to_family(&self) -> Result<GraphFamily, IoError> {
        let graphs = self
            .graphs
            .iter()
            .map(|edges| Graph::new(self.n, edges))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GraphFamily::new(graphs)?)
    }
}

/// Serde mirror of a rainbow Hamiltonian cycle certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub n: usize,
    pub vertices: Vec<usize>,
    /// Entries (u, v, colour), sorted by edge.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CertificateDoc {
    pub fn from_cycle(cycle: &RainbowCycle) -> Self {
        let edges = cycle
            .colored_edges()
            .map(|(e, c)| {
                let (u, v) = e.endpoints();
                (u, v, c)
            })
            .collect();
        CertificateDoc { n: cycle.n(), vertices: cycle.vertices().to_vec(), edges }
    }

    pub fn to_cycle(&self) -> Result<RainbowCycle, IoError> {
        let colored = self
            .edges
            .iter()
            .map(|&(u, v, c)| Edge::new(u, v).map(|e| (e, c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RainbowCycle::from_colored_edges(self.n, colored)?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Text,
    Json,
}

impl std::str::FromStr for FileFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(FileFormat::Text),
            "json" => Ok(FileFormat::Json),
            other => Err(format!("unknown format '{other}', expected text or json")),
        }
    }
}

fn parse_edge_line(line: &str, lineno: usize, n: usize) -> Result<(usize, usize), IoError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(IoError::Parse {
            line: lineno,
            msg: format!("expected an edge line 'u v', found '{line}'"),
        });
    }
    let mut labels = [0usize; 2];
    for (slot, part) in labels.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| IoError::Parse {
            line: lineno,
            msg: format!("'{part}' is not a vertex label"),
        })?;
    }
    let (u, v) = (labels[0], labels[1]);
    if u == 0 || v == 0 || u > n || v > n {
        return Err(IoError::Parse {
            line: lineno,
            msg: format!("edge {u} {v} has a label outside 1..={n}"),
        });
    }
    if u == v {
        return Err(IoError::Parse { line: lineno, msg: format!("edge {u} {v} is a loop") });
    }
    Ok((u, v))
}

fn parse_blocks(text: &str, expected: Option<usize>) -> Result<(usize, Vec<Vec<(usize, usize)>>), IoError> {
    let mut n: Option<usize> = None;
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n.is_none() {
            let rest = line.strip_prefix("n").and_then(|r| r.trim_start().strip_prefix('='));
            let value = rest.and_then(|r| r.trim().parse::<usize>().ok());
            match value {
                Some(v) => n = Some(v),
                None => {
                    return Err(IoError::Parse {
                        line: lineno,
                        msg: format!("expected header 'n=<int>', found '{line}'"),
                    })
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("graph") {
            let rest = rest.trim();
            let index: Option<usize> =
                rest.strip_suffix(':').and_then(|r| r.trim().parse().ok());
            let want = blocks.len() + 1;
            match index {
                Some(i) if i == want => blocks.push(Vec::new()),
                Some(i) => {
                    return Err(IoError::Parse {
                        line: lineno,
                        msg: format!("expected 'graph {want}:', found 'graph {i}:'"),
                    })
                }
                None => {
                    return Err(IoError::Parse {
                        line: lineno,
                        msg: format!("expected 'graph {want}:', found '{line}'"),
                    })
                }
            }
            continue;
        }
        let order = n.expect("header parsed");
        let edge = parse_edge_line(line, lineno, order)?;
        match blocks.last_mut() {
            Some(block) => block.push(edge),
            None => {
                return Err(IoError::Parse {
                    line: lineno,
                    msg: format!("edge line before any 'graph <i>:' header: '{line}'"),
                })
            }
        }
    }
    let order = n.ok_or(IoError::Parse { line: last_line, msg: "missing 'n=<int>' header".into() })?;
    if let Some(count) = expected {
        if blocks.len() != count {
            return Err(IoError::Parse {
                line: last_line,
                msg: format!("expected {count} graph blocks, found {}", blocks.len()),
            });
        }
    }
    Ok((order, blocks))
}

/// Parses the text family format; the file must hold exactly n blocks.
pub fn parse_family_text(text: &str) -> Result<GraphFamily, IoError> {
    let (n, probe) = parse_blocks(text, None)?;
    if probe.len() != n {
        let doc_lines = text.lines().count();
        return Err(IoError::Parse {
            line: doc_lines,
            msg: format!("header declares n={n} but the file holds {} graph blocks", probe.len()),
        });
    }
    FamilyDoc { n, graphs: probe }.to_family()
}

/// Parses a single graph in the text format: an `n=<int>` header and exactly
/// one `graph 1:` block.
pub fn parse_graph_text(text: &str) -> Result<Graph, IoError> {
    let (n, blocks) = parse_blocks(text, Some(1))?;
    Ok(Graph::new(n, &blocks[0])?)
}

pub fn format_family_text(family: &GraphFamily) -> String {
    let mut out = String::new();
    writeln!(out, "n={}", family.n()).unwrap();
    for (i, g) in family.graphs().iter().enumerate() {
        writeln!(out).unwrap();
        writeln!(out, "graph {}:", i + 1).unwrap();
        for e in g.edges() {
            let (u, v) = e.endpoints();
            writeln!(out, "{u} {v}").unwrap();
        }
    }
    out
}

pub fn format_graph_text(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n={}", g.n()).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "graph 1:").unwrap();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_family_json(text: &str) -> Result<GraphFamily, IoError> {
    let doc: FamilyDoc = serde_json::from_str(text)?;
    doc.to_family()
}

pub fn format_family_json(family: &GraphFamily) -> String {
    serde_json::to_string_pretty(&FamilyDoc::from_family(family)).expect("family serializes")
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Reads a family file in either format, decided by the leading character.
pub fn read_family(path: &Path) -> Result<GraphFamily, IoError> {
    let text = fs::read_to_string(path)?;
    if looks_like_json(&text) {
        parse_family_json(&text)
    } else {
        parse_family_text(&text)
    }
}

/// Reads a single graph: either a one-block text document or a JSON family
/// document holding exactly one graph.
pub fn read_graph(path: &Path) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path)?;
    if looks_like_json(&text) {
        let doc: FamilyDoc = serde_json::from_str(&text)?;
        if doc.graphs.len() != 1 {
            return Err(IoError::Parse {
                line: 1,
                msg: format!("expected one graph, found {}", doc.graphs.len()),
            });
        }
        Ok(Graph::new(doc.n, &doc.graphs[0])?)
    } else {
        parse_graph_text(&text)
    }
}

pub fn write_family(family: &GraphFamily, path: &Path, format: FileFormat) -> Result<(), IoError> {
    let text = match format {
        FileFormat::Text => format_family_text(family),
        FileFormat::Json => format_family_json(family),
    };
    fs::write(path, text)?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<RainbowCycle, IoError> {
    let text = fs::read_to_string(path)?;
    let doc: CertificateDoc = serde_json::from_str(&text)?;
    doc.to_cycle()
}

pub fn write_certificate(cycle: &RainbowCycle, path: &Path) -> Result<(), IoError> {
    let doc = CertificateDoc::from_cycle(cycle);
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

/// Writes any serializable report as pretty JSON.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), IoError> {
    fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rhc_core::{complete_plus_pendant, cycle_graph, GraphFamily};

    #[test]
    fn text_round_trip() {
        let fam = GraphFamily::uniform(&complete_plus_pendant(6).unwrap()).unwrap();
        let text = format_family_text(&fam);
        let back = parse_family_text(&text).unwrap();
        assert_eq!(back.graphs(), fam.graphs());
        assert_eq!(format_family_text(&back), text);
    }

    #[test]
    fn json_round_trip() {
        let fam = GraphFamily::uniform(&cycle_graph(5).unwrap()).unwrap();
        let json = format_family_json(&fam);
        let back = parse_family_json(&json).unwrap();
        assert_eq!(back.graphs(), fam.graphs());
    }

    #[test]
    fn block_count_mismatch_reported() {
        let mut text = String::from("n=6\n");
        for i in 1..=5 {
            text.push_str(&format!("graph {i}:\n1 2\n"));
        }
        match parse_family_text(&text).unwrap_err() {
            IoError::Parse { msg, .. } => {
                assert!(msg.contains("n=6") && msg.contains('5'), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_label_reported_with_line() {
        let text = "n=4\ngraph 1:\n0 2\n";
        match parse_family_text(text).unwrap_err() {
            IoError::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("0 2"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_pieces_reported() {
        assert!(matches!(parse_family_text("m=4\n"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_family_text("n=4\ngraph 2:\n"),
            Err(IoError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_family_text("n=4\n1 2\n"),
            Err(IoError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_family_text("n=4\ngraph 1:\n1 2 3\n"),
            Err(IoError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_family_text("n=4\ngraph 1:\n2 2\n"),
            Err(IoError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn graph_document_round_trip() {
        let g = complete_plus_pendant(5).unwrap();
        let text = format_graph_text(&g);
        let back = parse_graph_text(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn certificate_round_trip() {
        let fam = GraphFamily::uniform(&rhc_core::complete(5).unwrap()).unwrap();
        let cycle = rhc_core::find_rainbow_hamiltonian_cycle(&fam, 1_000_000)
            .unwrap()
            .found()
            .unwrap()
            .clone();
        let doc = CertificateDoc::from_cycle(&cycle);
        let back = doc.to_cycle().unwrap();
        assert_eq!(back, cycle);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# family\n\nn=4\n# block\ngraph 1:\n1 2\n\ngraph 2:\n\ngraph 3:\n2 3\ngraph 4:\n1 4\n";
        let fam = parse_family_text(text).unwrap();
        assert_eq!(fam.n(), 4);
        assert_eq!(fam.graph(2).edge_count(), 0);
        assert_eq!(fam.graph(3).edge_count(), 1);
    }
}
