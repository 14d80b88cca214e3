//! Lattice diagrams of the minimal-K-type labeling: each K-type node is
//! marked by the kind of tempiric representation it is minimal for.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::catalog::GroupDatum;
use crate::cktheory::Window;
use crate::error::{Error, Result};
use crate::tempered::{minimal_ktypes, TempiricRep};
use crate::weights::{norm_unchecked, Atom, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    /// Minimal K-type of a discrete series.
    Circle,
    /// One of the two minimal K-types of a split principal series.
    Square,
    /// Unique minimal K-type of a principal series.
    Triangle,
}

impl Marker {
    pub fn glyph(self) -> char {
        match self {
            Marker::Circle => 'O',
            Marker::Square => '#',
            Marker::Triangle => '^',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::Circle => "circle",
            Marker::Square => "square",
            Marker::Triangle => "triangle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub label: Label,
    pub position: (i64, i64),
    pub marker: Marker,
    pub partner: Option<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    pub group: String,
    pub grid_bound: i64,
    pub two_dimensional: bool,
    pub nodes: Vec<Node>,
}

impl DiagramSpec {
    pub fn count(&self, marker: Marker) -> usize {
        self.nodes.iter().filter(|n| n.marker == marker).count()
    }

    /// Square pairs, each listed once with the smaller label first.
    pub fn pairs(&self) -> Vec<(Label, Label)> {
        let mut out: Vec<(Label, Label)> = self
            .nodes
            .iter()
            .filter_map(|n| n.partner.as_ref().filter(|p| n.label < **p).map(|p| (n.label.clone(), p.clone())))
            .collect();
        out.sort();
        out
    }
}

type Cells = Vec<(Label, (i64, i64))>;

fn grid(datum: &GroupDatum, g: i64) -> Result<(Cells, bool)> {
    if g < 0 {
        return Err(Error::Unsupported(format!("negative grid bound {g}")));
    }
    if g > 200 {
        return Err(Error::WindowTooLarge(format!("grid bound {g} exceeds 200")));
    }
    match datum.k.atoms() {
        [Atom::SU2, Atom::SU2] | [Atom::SO3, Atom::SO3] | [Atom::SU2, Atom::SO3] | [Atom::SO3, Atom::SU2] => {
            let mut nodes = Vec::new();
            for b in (0..=g).rev() {
                for a in 0..=g {
                    nodes.push((Label(vec![a, b]), (a, b)));
                }
            }
            Ok((nodes, true))
        }
        [Atom::Torus1] => Ok(((-g..=g).map(|n| (Label(vec![n]), (n, 0))).collect(), false)),
        [Atom::SU2] | [Atom::SO3] => Ok(((0..=g).map(|n| (Label(vec![n]), (n, 0))).collect(), false)),
        _ => Err(Error::Unsupported(format!("no lattice diagram for K = {}", datum.k))),
    }
}

pub fn figure(datum: &GroupDatum, grid_bound: i64) -> Result<DiagramSpec> {
    let (cells, two_dimensional) = grid(datum, grid_bound)?;
    let bound = cells.iter().map(|(l, _)| norm_unchecked(datum, l)).max().expect("grid is nonempty");
    let window = Window::new(datum, &bound)?;
    let owner: BTreeMap<&Label, &TempiricRep> = window.reps.iter().map(|r| (r.minimal_ktype(), r)).collect();
    let mut nodes = Vec::with_capacity(cells.len());
    for (label, position) in cells {
        let rep = owner
            .get(&label)
            .ok_or_else(|| Error::Internal(format!("K-type {label} is not minimal for any tempiric representation")))?;
        let (marker, partner) = match rep {
            TempiricRep::DiscreteSeries { .. } => (Marker::Circle, None),
            TempiricRep::PrincipalConstituent { split: false, .. } => (Marker::Triangle, None),
            TempiricRep::PrincipalConstituent { class, .. } => {
                let partner = minimal_ktypes(datum, class)?.into_iter().find(|m| *m != label);
                (Marker::Square, partner)
            }
        };
        nodes.push(Node { label, position, marker, partner });
    }
    Ok(DiagramSpec { group: datum.name.clone(), grid_bound, two_dimensional, nodes })
}

fn header(spec: &DiagramSpec) -> String {
    format!(
        "# derived minimal K-type labeling of {} (grid bound {})\n# O = discrete series, # = split principal series (paired), ^ = unsplit principal series\n",
        spec.group, spec.grid_bound
    )
}

pub fn render_text(spec: &DiagramSpec) -> String {
    let mut out = header(spec);
    let g = spec.grid_bound;
    let width = (g.max(1) as f64).log10() as usize + 2;
    if spec.two_dimensional {
        let at: BTreeMap<(i64, i64), &Node> = spec.nodes.iter().map(|n| (n.position, n)).collect();
        for b in (0..=g).rev() {
            let _ = write!(out, "{b:>width$} |");
            for a in 0..=g {
                let _ = write!(out, " {:>w$}", at[&(a, b)].marker.glyph(), w = width - 1);
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>width$} +", "");
        out.push_str(&"-".repeat(((width) * (g as usize + 1)).max(1)));
        out.push('\n');
        let _ = write!(out, "{:>width$}  ", "");
        for a in 0..=g {
            let _ = write!(out, "{a:>w$} ", w = width - 1);
        }
        out = out.trim_end().to_string();
        out.push('\n');
    } else {
        let mut labels = String::new();
        let mut marks = String::new();
        for n in &spec.nodes {
            let _ = write!(labels, "{:>w$}", n.label.to_string(), w = width + 1);
            let _ = write!(marks, "{:>w$}", n.marker.glyph(), w = width + 1);
        }
        let _ = writeln!(out, "{}", labels.trim_end());
        let _ = writeln!(out, "{}", marks.trim_end());
    }
    let pairs = spec.pairs();
    if !pairs.is_empty() {
        let listed: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let _ = writeln!(out, "pairs: {}", listed.join(" "));
    }
    let _ = writeln!(
        out,
        "nodes={} triangles={} squares={} pairs={} circles={}",
        spec.nodes.len(),
        spec.count(Marker::Triangle),
        spec.count(Marker::Square),
        pairs.len(),
        spec.count(Marker::Circle)
    );
    out
}

pub fn render_dot(spec: &DiagramSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "// derived minimal K-type labeling of {} (grid bound {})", spec.group, spec.grid_bound);
    let _ = writeln!(out, "graph \"{}\" {{", spec.group);
    for n in &spec.nodes {
        let shape = match n.marker {
            Marker::Circle => "circle",
            Marker::Square => "square",
            Marker::Triangle => "triangle",
        };
        let _ = writeln!(
            out,
            "  \"{}\" [shape={shape}, pos=\"{},{}!\"];",
            n.label, n.position.0, n.position.1
        );
    }
    for (a, b) in spec.pairs() {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}

pub fn render_svg(spec: &DiagramSpec) -> String {
    const STEP: i64 = 40;
    const R: i64 = 12;
    let xs: Vec<i64> = spec.nodes.iter().map(|n| n.position.0).collect();
    let ys: Vec<i64> = spec.nodes.iter().map(|n| n.position.1).collect();
    let (x0, x1) = (*xs.iter().min().unwrap_or(&0), *xs.iter().max().unwrap_or(&0));
    let (y0, y1) = (*ys.iter().min().unwrap_or(&0), *ys.iter().max().unwrap_or(&0));
    let width = (x1 - x0 + 2) * STEP;
    let height = (y1 - y0 + 2) * STEP;
    let place = |(x, y): (i64, i64)| ((x - x0 + 1) * STEP, (y1 - y + 1) * STEP);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<!-- derived minimal K-type labeling of {} (grid bound {}) -->", spec.group, spec.grid_bound);
    let at: BTreeMap<&Label, (i64, i64)> = spec.nodes.iter().map(|n| (&n.label, place(n.position))).collect();
    for (a, b) in spec.pairs() {
        let (p, q) = (at[&a], at[&b]);
        let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>", p.0, p.1, q.0, q.1);
    }
    for n in &spec.nodes {
        let (cx, cy) = place(n.position);
        let _ = match n.marker {
            Marker::Circle => writeln!(out, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{R}\"/>"),
            Marker::Square => writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                cx - R,
                cy - R,
                2 * R,
                2 * R
            ),
            Marker::Triangle => writeln!(
                out,
                "<polygon points=\"{},{} {},{} {},{}\"/>",
                cx,
                cy - R,
                cx - R,
                cy + R,
                cx + R,
                cy + R
            ),
        };
    }
    out.push_str("</svg>\n");
    out
}
