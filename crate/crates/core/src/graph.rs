//! The graph of all prefix normal words of one length, with an edge
//! `u -> v` whenever `v` is `u` with a single 1 turned into a 0.
//!
//! Edges point in chain direction, so every prefix normal chain is a path
//! from `1^n` to `0^n`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::chain::{chain_words, first_non_pn_word, Generator};
use crate::enumerate::{enumerate_pn_words, PnWordSet, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::word::BinaryWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnGraph {
    nodes: PnWordSet,
    /// `(parent, child)` as indices into `nodes`, ordered by parent then by
    /// flipped position.
    edges: Vec<(usize, usize)>,
}

impl PnGraph {
    pub fn n(&self) -> usize {
        self.nodes.n()
    }

    pub fn nodes(&self) -> &PnWordSet {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &BinaryWord {
        &self.nodes.words()[index]
    }

    pub fn index_of(&self, w: &BinaryWord) -> Option<usize> {
        self.nodes.words().binary_search(w).ok()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_words(&self) -> impl Iterator<Item = (&BinaryWord, &BinaryWord)> {
        self.edges.iter().map(|&(u, v)| (self.node(u), self.node(v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Layer of a node: its number of 1s.
    pub fn level(&self, index: usize) -> usize {
        self.node(index).count_ones()
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == index).count()
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == index).count()
    }
}

/// Nodes are `PN(n)`.
pub fn build_pn_graph(n: usize) -> Result<PnGraph> {
    if n > DEFAULT_WORD_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: DEFAULT_WORD_CAP,
        });
    }
    Ok(build_pn_graph_from(enumerate_pn_words(n)))
}

pub fn build_pn_graph_from(nodes: PnWordSet) -> PnGraph {
    let mut edges = Vec::new();
    for (u, word) in nodes.iter().enumerate() {
        for i in 1..=word.len() {
            if let Ok(child) = word.flip(i) {
                if let Ok(v) = nodes.words().binary_search(&child) {
                    edges.push((u, v));
                }
            }
        }
    }
    PnGraph { nodes, edges }
}

/// The nodes and edges of one generator's chain inside a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOverlay {
    pub generator: Generator,
    /// Node indices from `1^n` to `0^n`.
    pub path: Vec<usize>,
}

impl ChainOverlay {
    pub fn contains_node(&self, index: usize) -> bool {
        self.path.contains(&index)
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.path.windows(2).any(|p| p[0] == u && p[1] == v)
    }
}

/// Locates the chain of `generator` as a path in `graph`.
pub fn overlay_chain(graph: &PnGraph, generator: &Generator) -> Result<ChainOverlay> {
    if generator.len() != graph.n() {
        return Err(Error::LengthMismatch {
            left: graph.n(),
            right: generator.len(),
        });
    }
    if first_non_pn_word(generator).is_some() {
        return Err(Error::NotPnGenerator(generator.to_string()));
    }
    let path = chain_words(generator)
        .map(|w| {
            graph.index_of(&w).ok_or_else(|| Error::Inconsistent {
                n: graph.n(),
                reason: format!("chain word {w} is not a node"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = graph.n();
    let ends_ok = path.first().map(|&i| graph.node(i)) == Some(&BinaryWord::ones(n))
        && path.last().map(|&i| graph.node(i)) == Some(&BinaryWord::zeros(n));
    if !ends_ok {
        return Err(Error::Inconsistent {
            n,
            reason: "chain does not run from 1^n to 0^n".into(),
        });
    }
    if let Some(p) = path.windows(2).find(|p| !graph.has_edge(p[0], p[1])) {
        return Err(Error::Inconsistent {
            n,
            reason: format!("no edge {} -> {}", graph.node(p[0]), graph.node(p[1])),
        });
    }
    Ok(ChainOverlay {
        generator: generator.clone(),
        path,
    })
}

/// Graphviz source, one rank per number of 1s, highest first.
pub fn emit_dot(graph: &PnGraph, overlay: Option<&ChainOverlay>) -> String {
    let mut out = String::new();
    let on_path = |i: usize| overlay.is_some_and(|o| o.contains_node(i));
    let on_edge = |u: usize, v: usize| overlay.is_some_and(|o| o.contains_edge(u, v));

    writeln!(out, "digraph pn{} {{", graph.n()).unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    if let Some(o) = overlay {
        writeln!(out, "  label=\"chain {}\";", o.generator).unwrap();
    }
    for level in (0..=graph.n()).rev() {
        let members: Vec<usize> = (0..graph.nodes().len())
            .rev()
            .filter(|&i| graph.level(i) == level)
            .collect();
        if members.is_empty() {
            continue;
        }
        writeln!(out, "  {{ rank=same;").unwrap();
        for i in members {
            let w = graph.node(i);
            if on_path(i) {
                writeln!(out, "    \"{w}\" [label=\"{w}\", color=red, penwidth=2];").unwrap();
            } else {
                writeln!(out, "    \"{w}\" [label=\"{w}\"];").unwrap();
            }
        }
        writeln!(out, "  }}").unwrap();
    }
    for &(u, v) in graph.edges() {
        let (a, b) = (graph.node(u), graph.node(v));
        if on_edge(u, v) {
            writeln!(out, "  \"{a}\" -> \"{b}\" [color=red, penwidth=2];").unwrap();
        } else {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct JsonNode<'a> {
    pub word: &'a BinaryWord,
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_chain: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct JsonEdge<'a> {
    pub from: &'a BinaryWord,
    pub to: &'a BinaryWord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_chain: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct JsonGraph<'a> {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlay: Option<&'a Generator>,
    pub nodes: Vec<JsonNode<'a>>,
    pub edges: Vec<JsonEdge<'a>>,
}

/// Adjacency list form for programmatic consumers.
pub fn to_json_graph<'a>(graph: &'a PnGraph, overlay: Option<&'a ChainOverlay>) -> JsonGraph<'a> {
    JsonGraph {
        n: graph.n(),
        overlay: overlay.map(|o| &o.generator),
        nodes: (0..graph.nodes().len())
            .map(|i| JsonNode {
                word: graph.node(i),
                level: graph.level(i),
                on_chain: overlay.map(|o| o.contains_node(i)),
            })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|&(u, v)| JsonEdge {
                from: graph.node(u),
                to: graph.node(v),
                on_chain: overlay.map(|o| o.contains_edge(u, v)),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    fn edge_strings(graph: &PnGraph) -> Vec<(String, String)> {
        graph
            .edge_words()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn small_graphs() {
        let one = build_pn_graph(1).unwrap();
        assert_eq!(one.nodes().len(), 2);
        assert_eq!(edge_strings(&one), [("1".to_string(), "0".to_string())]);

        let three = build_pn_graph(3).unwrap();
        assert_eq!(three.nodes().len(), 5);
        let edges = edge_strings(&three);
        for (a, b) in [("111", "110"), ("111", "101"), ("110", "100"), ("101", "100"), ("100", "000")] {
            assert!(edges.contains(&(a.into(), b.into())), "{a} -> {b}");
        }
        assert_eq!(edges.len(), 5);

        assert_eq!(build_pn_graph(4).unwrap().nodes().len(), 8);
        assert!(build_pn_graph(25).is_err());
    }

    #[test]
    fn overlays() {
        let four = build_pn_graph(4).unwrap();
        let o = overlay_chain(&four, &g("4,3,2,1")).unwrap();
        let words: Vec<String> = o.path.iter().map(|&i| four.node(i).to_string()).collect();
        assert_eq!(words, ["1111", "1110", "1100", "1000", "0000"]);

        let o = overlay_chain(&four, &g("3,2,4,1")).unwrap();
        let words: Vec<String> = o.path.iter().map(|&i| four.node(i).to_string()).collect();
        assert_eq!(words, ["1111", "1101", "1001", "1000", "0000"]);

        let one = build_pn_graph(1).unwrap();
        assert_eq!(overlay_chain(&one, &g("1")).unwrap().path.len(), 2);

        assert!(matches!(
            overlay_chain(&four, &g("2,1")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            overlay_chain(&four, &g("1,2,3,4")),
            Err(Error::NotPnGenerator(_))
        ));
    }

    #[test]
    fn dot_layout() {
        let dot = emit_dot(&build_pn_graph(1).unwrap(), None);
        assert_eq!(
            dot,
            "digraph pn1 {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n  \
             { rank=same;\n    \"1\" [label=\"1\"];\n  }\n  { rank=same;\n    \"0\" [label=\"0\"];\n  }\n  \
             \"1\" -> \"0\";\n}\n"
        );
    }

    #[test]
    fn dot_highlights_overlay() {
        let four = build_pn_graph(4).unwrap();
        let o = overlay_chain(&four, &g("4,3,2,1")).unwrap();
        let dot = emit_dot(&four, Some(&o));
        assert_eq!(dot.matches("[label=").count(), 8);
        assert_eq!(dot.matches("color=red").count(), 5 + 4);
    }

    #[test]
    fn json_shape() {
        let one = build_pn_graph(1).unwrap();
        let v = serde_json::to_value(to_json_graph(&one, None)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "n": 1,
                "nodes": [{"word": "0", "level": 0}, {"word": "1", "level": 1}],
                "edges": [{"from": "1", "to": "0"}]
            })
        );
    }
}
