use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Branch, TailBitingTrellis, TrellisKind, TrellisPath};

/// Which edges to draw bold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Highlight {
    #[default]
    None,
    /// Every tail-biting path starting and ending in this state.
    State(u32),
    /// An explicit set of paths.
    Paths(Vec<TrellisPath>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExportOptions {
    pub highlight: Highlight,
    /// Repeat section 1 after section `N` so the circular trellis can be
    /// drawn on a line.
    pub planar_tail: bool,
}

fn node(k: usize, s: u32) -> String {
    format!("t{k}_s{s}")
}

/// Renders the trellis as a Graphviz `digraph`. Output depends only on the
/// trellis and the options.
pub fn export_dot(t: &TailBitingTrellis, options: &ExportOptions) -> String {
    let paths = match &options.highlight {
        Highlight::None => Vec::new(),
        Highlight::State(s) => t.paths_from(*s, |_, _| true).unwrap_or_default(),
        Highlight::Paths(p) => p.clone(),
    };
    // (section, branch) pairs on highlighted paths.
    let mut bold: BTreeSet<(usize, Branch)> = BTreeSet::new();
    for p in &paths {
        for k in 1..=p.labels.len() {
            bold.insert((
                k,
                Branch {
                    from: p.states[k - 1],
                    label: p.labels.get(k),
                    to: p.states[k],
                },
            ));
        }
    }

    let n = t.len();
    let last = if options.planar_tail { n + 1 } else { n };
    let name = match t.kind() {
        TrellisKind::Code => "code_trellis",
        TrellisKind::Error => "error_trellis",
    };
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "    rankdir=LR;").unwrap();
    writeln!(out, "    node [shape=circle, fontsize=10];").unwrap();
    writeln!(out, "    edge [fontsize=8];").unwrap();
    for k in 0..=last {
        writeln!(out, "    subgraph time_{k} {{").unwrap();
        writeln!(out, "        rank=same;").unwrap();
        for s in t.states(k.min(n)) {
            writeln!(
                out,
                "        {} [label=\"{}\"];",
                node(k, s),
                t.format_state(s)
            )
            .unwrap();
        }
        writeln!(out, "    }}").unwrap();
    }
    for k in 1..=last {
        // The planar tail repeats section 1.
        let src = if k > n { 1 } else { k };
        for b in t.branches(src) {
            let label = crate::bits::fmt_bits(b.label, t.label_width());
            let style = if bold.contains(&(src, *b)) {
                ", style=bold, penwidth=2.5"
            } else {
                ""
            };
            writeln!(
                out,
                "    {} -> {} [label=\"{label}\"{style}];",
                node(k - 1, b.from),
                node(k, b.to)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
