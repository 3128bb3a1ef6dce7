//! SVG and TikZ drawings of the triangulated junior simplex.
//!
//! The simplex is drawn with `e_z` bottom-left, `e_y` bottom-right and `e_x` on
//! top, inside a 6 by 5.2 frame. All coordinates are exact rationals until the
//! final decimal formatting, which uses integer rounding only, so the output bytes
//! depend on nothing but the inputs.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;

use crate::fan::Fan;
use crate::group::{Character, LatticeContext};
use crate::ktheory::B0Report;

type Q = Ratio<i64>;

/// Frame width and height of the drawing, in layout units.
pub const WIDTH: (i64, i64) = (6, 1);
pub const HEIGHT: (i64, i64) = (26, 5);

/// Exact planar positions of the junior points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub positions: Vec<(Q, Q)>,
}

impl Layout {
    pub fn new(ctx: &LatticeContext) -> Layout {
        let r = ctx.order() as i64;
        let w = Q::new(WIDTH.0, WIDTH.1);
        let h = Q::new(HEIGHT.0, HEIGHT.1);
        let top = (w / 2, h);
        let right = (w, Q::from(0));
        let positions = ctx
            .junior_points()
            .iter()
            .map(|p| {
                let x = Q::new(p.scaled[0], r);
                let y = Q::new(p.scaled[1], r);
                (x * top.0 + y * right.0, x * top.1 + y * right.1)
            })
            .collect();
        Layout { positions }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnotationMode {
    None,
    WallDegrees,
    H0Classes,
}

impl FromStr for AnnotationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(AnnotationMode::None),
            "wall-degrees" => Ok(AnnotationMode::WallDegrees),
            "h0-classes" => Ok(AnnotationMode::H0Classes),
            _ => Err(format!("unknown annotation mode `{s}` (none, wall-degrees, h0-classes)")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Annotation<'a> {
    None,
    /// Each wall lists the characters of positive degree on its curve.
    WallDegrees(&'a B0Report),
    /// Walls on which some degree-0 character has positive degree are highlighted
    /// and list those characters.
    H0Classes(&'a B0Report),
}

impl<'a> Annotation<'a> {
    pub fn from_mode(mode: AnnotationMode, report: &'a B0Report) -> Annotation<'a> {
        match mode {
            AnnotationMode::None => Annotation::None,
            AnnotationMode::WallDegrees => Annotation::WallDegrees(report),
            AnnotationMode::H0Classes => Annotation::H0Classes(report),
        }
    }
}

/// Rounds to `digits` decimals, half away from zero, and trims trailing zeros.
fn decimal(q: Q, digits: u32) -> String {
    let scale = 10i64.pow(digits);
    let (n, d) = (*q.numer() as i128 * scale as i128, *q.denom() as i128);
    let rounded = (2 * n + n.signum() * d) / (2 * d);
    let sign = if rounded < 0 { "-" } else { "" };
    let a = rounded.abs();
    let (int, frac) = (a / scale as i128, a % scale as i128);
    let mut s = format!("{sign}{int}");
    if frac != 0 {
        let f = format!("{:0width$}", frac, width = digits as usize);
        s.push('.');
        s.push_str(f.trim_end_matches('0'));
    }
    s
}

struct EdgeStyle {
    interior: bool,
    highlight: bool,
    label: Option<Vec<(Character, u64)>>,
}

struct Edge {
    ends: [usize; 2],
    style: EdgeStyle,
}

fn edges(fan: &Fan, annotation: Annotation<'_>) -> Vec<Edge> {
    let mut out: Vec<Edge> = fan
        .boundary_edges
        .iter()
        .map(|&ends| Edge {
            ends,
            style: EdgeStyle {
                interior: false,
                highlight: false,
                label: None,
            },
        })
        .collect();
    for (i, wall) in fan.walls.iter().enumerate() {
        let positive = |rep: &B0Report| -> Vec<(Character, u64)> {
            rep.wall_degrees[i]
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d > 0)
                .map(|(c, &d)| (Character(c as u32), d))
                .collect()
        };
        let style = match annotation {
            Annotation::None => EdgeStyle {
                interior: true,
                highlight: false,
                label: None,
            },
            Annotation::WallDegrees(rep) => EdgeStyle {
                interior: true,
                highlight: false,
                label: Some(positive(rep)),
            },
            Annotation::H0Classes(rep) => {
                let marked: Vec<(Character, u64)> =
                    positive(rep).into_iter().filter(|(c, _)| rep.h0.contains(c)).collect();
                EdgeStyle {
                    interior: true,
                    highlight: !marked.is_empty(),
                    label: Some(marked),
                }
            }
        };
        out.push(Edge {
            ends: wall.endpoints,
            style,
        });
    }
    out
}

fn midpoint(layout: &Layout, ends: [usize; 2]) -> (Q, Q) {
    let (a, b) = (layout.positions[ends[0]], layout.positions[ends[1]]);
    ((a.0 + b.0) / 2, (a.1 + b.1) / 2)
}

fn plain_label(ctx: &LatticeContext, items: &[(Character, u64)], with_degree: bool) -> Vec<String> {
    items
        .iter()
        .map(|&(c, d)| {
            if with_degree {
                format!("{}:{d}", ctx.label(c))
            } else {
                ctx.label(c)
            }
        })
        .collect()
}

const SVG_SCALE: i64 = 100;
const SVG_MARGIN: i64 = 40;

fn svg_point(p: (Q, Q)) -> (String, String) {
    let h = Q::new(HEIGHT.0, HEIGHT.1);
    let x = Q::from(SVG_MARGIN) + p.0 * SVG_SCALE;
    let y = Q::from(SVG_MARGIN) + (h - p.1) * SVG_SCALE;
    (decimal(x, 3), decimal(y, 3))
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 document: one polyline per edge, one dot per non-corner junior point.
pub fn emit_svg(ctx: &LatticeContext, fan: &Fan, annotation: Annotation<'_>, generator: &str) -> String {
    let layout = Layout::new(ctx);
    let w = Q::new(WIDTH.0, WIDTH.1) * SVG_SCALE + 2 * SVG_MARGIN;
    let h = Q::new(HEIGHT.0, HEIGHT.1) * SVG_SCALE + 2 * SVG_MARGIN;
    let (w, h) = (decimal(w, 3), decimal(h, 3));
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<!-- {} : {} -->", escape_xml(generator), escape_xml(&ctx.spec().to_string()));
    let with_degree = matches!(annotation, Annotation::WallDegrees(_));
    let edges = edges(fan, annotation);
    s.push_str("<g fill=\"none\" stroke-linecap=\"round\">\n");
    for e in &edges {
        let (x1, y1) = svg_point(layout.positions[e.ends[0]]);
        let (x2, y2) = svg_point(layout.positions[e.ends[1]]);
        let (class, color, width) = match (e.style.interior, e.style.highlight) {
            (false, _) => ("boundary", "#000000", "2.5"),
            (true, false) => ("wall", "#000000", "1.5"),
            (true, true) => ("wall h0", "#c0392b", "3"),
        };
        let _ = writeln!(
            s,
            "<polyline class=\"{class}\" stroke=\"{color}\" stroke-width=\"{width}\" points=\"{x1},{y1} {x2},{y2}\"/>"
        );
    }
    s.push_str("</g>\n<g fill=\"#000000\">\n");
    for (i, p) in ctx.junior_points().iter().enumerate() {
        if p.corner.is_none() {
            let (x, y) = svg_point(layout.positions[i]);
            let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"5\"/>");
        }
    }
    s.push_str("</g>\n<g font-family=\"serif\" font-size=\"16\" text-anchor=\"middle\">\n");
    for (axis, name) in [(crate::group::Axis::X, "e_x"), (crate::group::Axis::Y, "e_y"), (crate::group::Axis::Z, "e_z")] {
        let (x, y) = svg_point(layout.positions[ctx.corner_index(axis)]);
        let dy = if axis == crate::group::Axis::X { "-12" } else { "24" };
        let _ = writeln!(s, "<text x=\"{x}\" y=\"{y}\" dy=\"{dy}\">{name}</text>");
    }
    for e in &edges {
        if let Some(items) = &e.style.label {
            if items.is_empty() {
                continue;
            }
            let (x, y) = svg_point(midpoint(&layout, e.ends));
            let text = plain_label(ctx, items, with_degree).join(" ");
            let _ = writeln!(
                s,
                "<text x=\"{x}\" y=\"{y}\" font-size=\"11\" fill=\"#1f4e9c\">{}</text>",
                escape_xml(&text)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn tikz_label(ctx: &LatticeContext, c: Character) -> String {
    let label = ctx.label(c);
    let sub = label.trim_start_matches('χ');
    format!("\\chi_{{{sub}}}")
}

/// TikZ picture with one `\draw` per edge and a bullet node per non-corner junior point.
pub fn emit_tikz(ctx: &LatticeContext, fan: &Fan, annotation: Annotation<'_>, generator: &str) -> String {
    let layout = Layout::new(ctx);
    let pt = |p: (Q, Q)| format!("({},{})", decimal(p.0, 4), decimal(p.1, 4));
    let mut s = String::new();
    let _ = writeln!(s, "% {} : {}", generator, ctx.spec());
    s.push_str("\\begin{tikzpicture}[x=1cm,y=1cm]\n");
    let with_degree = matches!(annotation, Annotation::WallDegrees(_));
    let edges = edges(fan, annotation);
    for e in &edges {
        let style = match (e.style.interior, e.style.highlight) {
            (false, _) => "[thick]",
            (true, false) => "",
            (true, true) => "[very thick,red]",
        };
        let _ = writeln!(
            s,
            "\\draw{style} {} -- {};",
            pt(layout.positions[e.ends[0]]),
            pt(layout.positions[e.ends[1]])
        );
    }
    for (i, p) in ctx.junior_points().iter().enumerate() {
        if p.corner.is_none() {
            let _ = writeln!(
                s,
                "\\node[circle,fill,inner sep=1.5pt] at {} {{}};",
                pt(layout.positions[i])
            );
        }
    }
    for e in &edges {
        if let Some(items) = &e.style.label {
            if items.is_empty() {
                continue;
            }
            let text: Vec<String> = items
                .iter()
                .map(|&(c, d)| {
                    if with_degree {
                        format!("{}{{:}}{d}", tikz_label(ctx, c))
                    } else {
                        tikz_label(ctx, c)
                    }
                })
                .collect();
            let _ = writeln!(
                s,
                "\\node[font=\\scriptsize,fill=white,inner sep=1pt] at {} {{${}$}};",
                pt(midpoint(&layout, e.ends)),
                text.join("\\ ")
            );
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}
