//! Graphviz export.

use std::fmt::Write;

use proper_core::properize::split_product_name;
use proper_core::{Partition, RelationalStructure};

const COLORS: [&str; 8] = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4"];
const FILLS: [&str; 8] =
    ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon", "lightgray", "aquamarine"];

/// How agents' edges are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Layout {
    /// All edges in one graph, colored and labeled by agent.
    #[default]
    Colored,
    /// One edge subgraph per agent.
    PerAgent,
}

/// Options for [`export_dot`].
#[derive(Clone, Debug, Default)]
pub struct DotOptions<'a> {
    /// Edge layout.
    pub layout: Layout,
    /// Blocks to highlight, e.g. the offset blocks of a properized model.
    pub blocks: Option<&'a Partition>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

// Quoted node label: the state (both coordinates for product states), then
// its atoms on a second line.
fn node_label(m: &RelationalStructure, x: usize) -> String {
    let name = m.state_name(x);
    let head = match split_product_name(name) {
        Some((base, tag)) => format!("({base}, {tag})"),
        None => name.to_string(),
    };
    let atoms: Vec<&str> = m.valuation().iter().filter(|(_, ext)| ext.contains(&x)).map(|(p, _)| p.as_str()).collect();
    if atoms.is_empty() {
        quote(&head)
    } else {
        format!("\"{}\\n{}\"", escape(&head), escape(&atoms.join(",")))
    }
}

/// Renders `m` as a DOT digraph. Nodes are `s0`, `s1`, … in state order.
pub fn export_dot(m: &RelationalStructure, opts: &DotOptions<'_>) -> String {
    let mut out = String::from("digraph model {\n");
    let block_of = opts.blocks.and_then(|b| b.labels(m.len()).map(|labels| (b, labels)));

    match &block_of {
        Some((blocks, labels)) => {
            for (b, block) in blocks.blocks().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_block{b} {{");
                let _ = writeln!(out, "    label={};", quote(&format!("block {b}")));
                for &x in block {
                    let fill = FILLS[labels[x] % FILLS.len()];
                    let _ = writeln!(out, "    s{x} [label={}, style=filled, fillcolor={fill}];", node_label(m, x));
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for x in 0..m.len() {
                let _ = writeln!(out, "  s{x} [label={}];", node_label(m, x));
            }
        }
    }

    for agent in 1..=m.n_agents() {
        let color = COLORS[(agent - 1) % COLORS.len()];
        match opts.layout {
            Layout::Colored => {
                for &(x, y) in m.edges(agent) {
                    let _ = writeln!(out, "  s{x} -> s{y} [label=\"{agent}\", color={color}];");
                }
            }
            Layout::PerAgent => {
                let _ = writeln!(out, "  subgraph agent{agent} {{");
                let _ = writeln!(out, "    edge [color={color}, label=\"{agent}\"];");
                for &(x, y) in m.edges(agent) {
                    let _ = writeln!(out, "    s{x} -> s{y};");
                }
                out.push_str("  }\n");
            }
        }
    }
    out.push_str("}\n");
    out
}
