//! Deterministic SVG rendering of multicurves and cabling stages.
//!
//! World coordinates put peg k at (0, k), x growing rightward and y
//! upward. Every drawn coordinate is a rational with denominator
//! dividing 8; at 40 pixels per unit the emitted SVG consists of
//! integers only, so output is byte-stable. No timestamps, no ids
//! beyond the fixed structure.

use crate::cable::cable;
use crate::curve::{eight_outline, excursion_outline, CurveComponent, MultiCurve};
use num_rational::Rational64;

const SCALE: i64 = 40;
const PANEL_GAP: i64 = 60;
const MARGIN: i64 = 30;

type Pt = (Rational64, Rational64);

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// One cabling step staged for the four-panel figure.
#[derive(Debug, Clone)]
pub struct CableStages {
    pub prefix: MultiCurve,
    pub p: i64,
    pub q: i64,
    pub result: MultiCurve,
}

enum Shape {
    /// Closed rectilinear outline drawn with rounded corners.
    Outline { points: Vec<Pt>, class: &'static str },
    /// Open rectilinear arc drawn with rounded corners.
    Arc { points: Vec<Pt>, class: &'static str },
    HLine { y: Rational64, class: &'static str },
    VGuide { x: Rational64, y0: Rational64, y1: Rational64 },
    PegColumn { x: Rational64 },
}

struct Panel {
    label: String,
    shapes: Vec<Shape>,
}

impl Panel {
    fn from_curve(m: &MultiCurve, column_x: Rational64, highlight: bool) -> Panel {
        let mut shapes = vec![Shape::PegColumn { x: column_x }];
        let mut deepest: Option<(i64, u64)> = None;
        for c in &m.components {
            match c {
                CurveComponent::Line { height_offset } => {
                    shapes.push(Shape::HLine { y: *height_offset, class: "line" });
                }
                CurveComponent::TallEight { anchor, span } => {
                    let points = eight_outline(*anchor, *span)
                        .into_iter()
                        .map(|(x, y)| (x + column_x, y))
                        .collect();
                    shapes.push(Shape::Outline { points, class: "curve" });
                    if deepest.map_or(true, |(_, s)| *span > s) {
                        deepest = Some((*anchor, *span));
                    }
                }
                CurveComponent::RawPolyline { points } => {
                    shapes.push(Shape::Outline { points: points.clone(), class: "curve" });
                }
            }
        }
        if highlight {
            if let Some((anchor, span)) = deepest {
                for j in 1..=span as i64 {
                    shapes.push(Shape::VGuide {
                        x: column_x + q(2 * j - 1, 2),
                        y0: q(anchor, 1) - q(5, 4),
                        y1: q(anchor + span as i64 - 1, 1) + q(5, 4),
                    });
                }
                let points = excursion_outline(anchor, span)
                    .into_iter()
                    .map(|(x, y)| (x + column_x, y))
                    .collect();
                shapes.push(Shape::Arc { points, class: "depth" });
            }
        }
        Panel { label: String::new(), shapes }
    }

    /// The staggered-copies panel: each scaled copy around its own peg
    /// column, before the horizontal translation.
    fn copies(prefix: &MultiCurve, p: i64, q_step: i64) -> Panel {
        let cabled = cable(prefix, p, q_step).expect("normal-form input");
        let max_span = cabled.eights().map(|(_, s)| s).max().unwrap_or(1) as i64;
        let gap = q(max_span + 2, 1);
        let mut shapes = Vec::new();
        for i in 0..p {
            shapes.push(Shape::PegColumn { x: gap * i });
        }
        // Copy i of each prefix eight lands i*q lower, scaled by p.
        for (anchor, span) in prefix.eights() {
            for i in 0..p {
                let points = eight_outline(p * anchor - i * q_step, span * p as u64)
                    .into_iter()
                    .map(|(x, y)| (x + gap * i, y))
                    .collect();
                shapes.push(Shape::Outline { points, class: "curve" });
            }
        }
        for c in &prefix.components {
            if let CurveComponent::Line { height_offset } = c {
                shapes.push(Shape::HLine {
                    y: *height_offset * p,
                    class: "line",
                });
            }
        }
        Panel { label: String::new(), shapes }
    }

    fn labeled(mut self, label: impl Into<String>) -> Panel {
        self.label = label.into();
        self
    }

    /// World bounding box (x0, y0, x1, y1) of the panel's content.
    fn bbox(&self) -> (Rational64, Rational64, Rational64, Rational64) {
        let mut xs: Vec<Rational64> = Vec::new();
        let mut ys: Vec<Rational64> = Vec::new();
        for s in &self.shapes {
            match s {
                Shape::Outline { points, .. } | Shape::Arc { points, .. } => {
                    for (x, y) in points {
                        xs.push(*x);
                        ys.push(*y);
                    }
                }
                Shape::HLine { y, .. } => ys.push(*y),
                Shape::VGuide { x, y0, y1 } => {
                    xs.push(*x);
                    ys.push(*y0);
                    ys.push(*y1);
                }
                Shape::PegColumn { x } => xs.push(*x),
            }
        }
        let min = |v: &[Rational64]| v.iter().min().copied().unwrap_or_else(|| q(0, 1));
        let max = |v: &[Rational64]| v.iter().max().copied().unwrap_or_else(|| q(0, 1));
        (
            min(&xs) - 1,
            min(&ys) - q(3, 2),
            max(&xs) + 1,
            max(&ys) + q(3, 2),
        )
    }
}

/// Converts a world rational (denominator dividing 8) to integer pixels.
fn px(r: Rational64) -> i64 {
    let scaled = r * SCALE;
    assert!(scaled.is_integer(), "coordinate {r} does not land on the pixel grid");
    scaled.to_integer()
}

struct Frame {
    ox: i64,
    oy: i64,
}

impl Frame {
    fn x(&self, wx: Rational64) -> i64 {
        self.ox + px(wx)
    }
    fn y(&self, wy: Rational64) -> i64 {
        self.oy - px(wy)
    }
}

/// Rounds the corners of a rectilinear path: every corner is replaced
/// by a quadratic arc of radius 1/8 along its two axis-aligned edges.
fn rounded_path(frame: &Frame, points: &[Pt], closed: bool) -> String {
    let r = q(1, 8);
    let n = points.len();
    let step_towards = |from: Pt, to: Pt| -> Pt {
        let dx = to.0 - from.0;
        let dy = to.1 - from.1;
        debug_assert!(dx == q(0, 1) || dy == q(0, 1), "path is rectilinear");
        let sx = match dx.cmp(&q(0, 1)) {
            std::cmp::Ordering::Greater => r,
            std::cmp::Ordering::Less => -r,
            std::cmp::Ordering::Equal => q(0, 1),
        };
        let sy = match dy.cmp(&q(0, 1)) {
            std::cmp::Ordering::Greater => r,
            std::cmp::Ordering::Less => -r,
            std::cmp::Ordering::Equal => q(0, 1),
        };
        (from.0 + sx, from.1 + sy)
    };
    let fmt = |p: Pt| format!("{},{}", frame.x(p.0), frame.y(p.1));
    let mut d = String::new();
    if closed {
        let start = step_towards(points[0], points[1]);
        d.push_str(&format!("M {}", fmt(start)));
        for i in 1..=n {
            let corner = points[i % n];
            let next = points[(i + 1) % n];
            let approach = step_towards(corner, points[i - 1]);
            let depart = step_towards(corner, next);
            d.push_str(&format!(" L {} Q {} {}", fmt(approach), fmt(corner), fmt(depart)));
        }
        d.push_str(" Z");
    } else {
        d.push_str(&format!("M {}", fmt(points[0])));
        for i in 1..n - 1 {
            let corner = points[i];
            let approach = step_towards(corner, points[i - 1]);
            let depart = step_towards(corner, points[i + 1]);
            d.push_str(&format!(" L {} Q {} {}", fmt(approach), fmt(corner), fmt(depart)));
        }
        d.push_str(&format!(" L {}", fmt(points[n - 1])));
    }
    d
}

fn render_panels(panels: &[Panel]) -> String {
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\"");

    struct Placed<'a> {
        panel: &'a Panel,
        frame: Frame,
        bbox: (Rational64, Rational64, Rational64, Rational64),
    }
    let mut placed: Vec<Placed> = Vec::new();
    let mut cursor = MARGIN;
    let mut height: i64 = 0;
    for panel in panels {
        let bbox = panel.bbox();
        let w = px(bbox.2 - bbox.0);
        let h = px(bbox.3 - bbox.1) + 20;
        let frame = Frame { ox: cursor - px(bbox.0), oy: MARGIN + 20 + px(bbox.3) };
        cursor += w + PANEL_GAP;
        height = height.max(h + 2 * MARGIN + 20);
        placed.push(Placed { panel, frame, bbox });
    }
    let width = cursor - PANEL_GAP + MARGIN;
    out.push_str(&format!(" width=\"{width}\" height=\"{height}\""));
    out.push_str(&format!(" viewBox=\"0 0 {width} {height}\">\n"));
    out.push_str(
        "<style>\n\
         .curve{fill:none;stroke:#1f77b4;stroke-width:2}\n\
         .line{stroke:#333333;stroke-width:2}\n\
         .depth{fill:none;stroke:#d62728;stroke-width:3}\n\
         .peg{fill:#000000}\n\
         .guide{stroke:#bbbbbb;stroke-width:1}\n\
         .label{font-family:monospace;font-size:14px;fill:#333333}\n\
         </style>\n",
    );

    for (i, pl) in placed.iter().enumerate() {
        let (x0, y0, x1, y1) = pl.bbox;
        out.push_str(&format!("<g id=\"panel-{i}\">\n"));
        if !pl.panel.label.is_empty() {
            out.push_str(&format!(
                "<text class=\"label\" x=\"{}\" y=\"{}\">{}</text>\n",
                pl.frame.x(x0),
                pl.frame.y(y1) - 6,
                pl.panel.label
            ));
        }
        // Guides under everything, then lines, curves, pegs on top.
        for shape in &pl.panel.shapes {
            if let Shape::VGuide { x, y0, y1 } = shape {
                out.push_str(&format!(
                    "<line class=\"guide\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                    pl.frame.x(*x),
                    pl.frame.y(*y0),
                    pl.frame.x(*x),
                    pl.frame.y(*y1)
                ));
            }
        }
        for shape in &pl.panel.shapes {
            match shape {
                Shape::HLine { y, class } => {
                    out.push_str(&format!(
                        "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                        pl.frame.x(x0),
                        pl.frame.y(*y),
                        pl.frame.x(x1),
                        pl.frame.y(*y)
                    ));
                }
                Shape::Outline { points, class } => {
                    out.push_str(&format!(
                        "<path class=\"{class}\" d=\"{}\"/>\n",
                        rounded_path(&pl.frame, points, true)
                    ));
                }
                Shape::Arc { points, class } => {
                    out.push_str(&format!(
                        "<path class=\"{class}\" d=\"{}\"/>\n",
                        rounded_path(&pl.frame, points, false)
                    ));
                }
                _ => {}
            }
        }
        for shape in &pl.panel.shapes {
            if let Shape::PegColumn { x } = shape {
                let lo = y0.ceil().to_integer();
                let hi = y1.floor().to_integer();
                for k in lo..=hi {
                    out.push_str(&format!(
                        "<circle class=\"peg\" cx=\"{}\" cy=\"{}\" r=\"4\"/>\n",
                        pl.frame.x(*x),
                        pl.frame.y(q(k, 1))
                    ));
                }
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a multicurve; with stage data, a four-panel cabling figure
/// (input, staggered copies, aligned result, highlighted excursion).
pub fn render_svg(m: &MultiCurve, stages: Option<&CableStages>) -> String {
    match stages {
        None => render_panels(&[Panel::from_curve(m, q(0, 1), false)]),
        Some(st) => {
            let depth = st
                .result
                .eights()
                .map(|(_, s)| s)
                .max()
                .unwrap_or(0);
            let panels = vec![
                Panel::from_curve(&st.prefix, q(0, 1), false).labeled("input"),
                Panel::copies(&st.prefix, st.p, st.q)
                    .labeled(format!("p={} copies, q={}", st.p, st.q)),
                Panel::from_curve(&st.result, q(0, 1), false).labeled("aligned"),
                Panel::from_curve(&st.result, q(0, 1), true)
                    .labeled(format!("excursion depth {depth}")),
            ];
            render_panels(&panels)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cable::{iterated_cable, CablePattern};
    use crate::complex::box_sum_complex;
    use crate::curve::curve_from_complex;
    use crate::split::split_ord1;

    fn four_one_curve() -> MultiCurve {
        curve_from_complex(&split_ord1(&box_sum_complex("4_1", &[(0, 0, 1)])).unwrap())
    }

    #[test]
    fn single_panel_render_is_stable() {
        let svg1 = render_svg(&four_one_curve(), None);
        let svg2 = render_svg(&four_one_curve(), None);
        assert_eq!(svg1, svg2);
        assert!(svg1.starts_with("<svg"));
        assert!(svg1.contains("class=\"curve\""));
        assert!(svg1.contains("class=\"line\""));
        assert!(svg1.contains("class=\"peg\""));
    }

    #[test]
    fn empty_curve_renders_pegs_only() {
        let svg = render_svg(&MultiCurve::default(), None);
        assert!(svg.contains("class=\"peg\""));
        assert!(!svg.contains("class=\"curve\""));
    }

    #[test]
    fn staged_render_has_four_panels_and_highlight() {
        let curve = four_one_curve();
        let pattern = CablePattern::parse("3,1").unwrap();
        let result = iterated_cable(&curve, &pattern).unwrap();
        let stages = CableStages { prefix: curve, p: 3, q: 1, result };
        let svg = render_svg(&MultiCurve::default(), Some(&stages));
        assert_eq!(svg.matches("<g id=\"panel-").count(), 4);
        assert!(svg.contains("class=\"depth\""));
        assert!(svg.contains("excursion depth 3"));
        assert_eq!(svg.matches("class=\"guide\"").count(), 3);
    }
}
