//! Graphviz output for finite sets of AR-quiver points.

use std::fmt::Write;

use crate::arq::BundlePoint;
use crate::meshcat::MeshWindow;
use crate::missing::TorsionClass;
use crate::tilting::TiltingCandidate;
use crate::wpl::Wpl;

/// Node styling for [`render`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeStyle {
    pub fill: Option<&'static str>,
    pub bold: bool,
}

/// A digraph of `points` with every AR arrow between them. Nodes carry
/// `pos` hints (tau-power across, orbit down) for renderers that honor them.
pub fn render(wpl: &Wpl, name: &str, points: &[BundlePoint], style: impl Fn(BundlePoint) -> NodeStyle) -> String {
    let rows = wpl.orbits_topological();
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (k, &p) in points.iter().enumerate() {
        let row = rows.iter().position(|&o| o == p.orbit).unwrap_or(0);
        let st = style(p);
        let mut attrs = format!("label=\"{}\", pos=\"{},{}!\"", wpl.format_point(p), -2 * p.m, -(row as i64));
        if let Some(fill) = st.fill {
            write!(attrs, ", style=\"filled{}\", fillcolor=\"{fill}\"", if st.bold { ",bold" } else { "" }).unwrap();
        } else if st.bold {
            attrs.push_str(", style=bold");
        }
        writeln!(out, "  n{k} [{attrs}];").unwrap();
    }
    for (a, &p) in points.iter().enumerate() {
        for q in wpl.successors(p) {
            if let Some(b) = points.iter().position(|&r| r == q) {
                writeln!(out, "  n{a} -> n{b};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The whole window with its AR arrows.
pub fn window(wpl: &Wpl, w: &MeshWindow) -> String {
    let (lo, hi) = w.tau_range();
    render(wpl, &format!("window {lo}:{hi}"), w.vertices(), |_| NodeStyle::default())
}

/// Points colored by torsion class relative to `t`; summands drawn bold.
pub fn torsion_overlay(wpl: &Wpl, t: &TiltingCandidate, points: &[BundlePoint]) -> String {
    render(wpl, "missing part", points, |p| NodeStyle {
        fill: Some(match wpl.torsion_class(p, t) {
            TorsionClass::Missing => "salmon",
            TorsionClass::X0 => "lightblue",
            TorsionClass::X1 => "lightgray",
        }),
        bold: t.contains(p),
    })
}
