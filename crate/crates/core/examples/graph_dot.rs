//! Graphviz drawing of the single-flip graph, with one chain highlighted.
//!
//! ```text
//! cargo run --example graph_dot -- 4 3,2,4,1 | dot -Tsvg > pn4.svg
//! ```

use pnchain::{build_pn_graph, emit_dot, overlay_chain, Generator};

fn main() -> Result<(), pnchain::Error> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let graph = build_pn_graph(n)?;
    let overlay = match args.next() {
        Some(s) => Some(overlay_chain(&graph, &s.parse::<Generator>()?)?),
        None => None,
    };
    eprintln!("{} nodes, {} edges", graph.nodes().len(), graph.edges().len());
    print!("{}", emit_dot(&graph, overlay.as_ref()));
    Ok(())
}
