//! SVG 1.1 wall diagrams in the `(s, t)` half-plane. Coordinates are printed
//! with two decimals, so output is byte-stable for a fixed input.

use mukai_walls::surd::{rat_sqrt, rat_to_f64};
use mukai_walls::{Rat, Shape, Wall};
use std::collections::BTreeSet;
use std::fmt::Write;

const SCALE: f64 = 200.0;
const MARGIN: f64 = 40.0;
const FOOTER: f64 = 40.0;

/// Plot rectangle `[s_min, s_max] x [0, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub s_min: f64,
    pub s_max: f64,
    pub t_max: f64,
}

impl Frame {
    /// Parses `s_min:s_max:t_max`.
    pub fn parse(text: &str) -> Result<Frame, String> {
        let parts: Vec<f64> = text
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("window {text:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let [s_min, s_max, t_max] = parts[..] else {
            return Err(format!("window {text:?}: expected s_min:s_max:t_max"));
        };
        if !(s_min < s_max && t_max > 0.0) || !(s_min.is_finite() && s_max.is_finite() && t_max.is_finite()) {
            return Err(format!("window {text:?}: need s_min < s_max and t_max > 0"));
        }
        Ok(Frame { s_min, s_max, t_max })
    }

    /// Smallest frame with half-unit padding around every wall and the origin.
    pub fn around(walls: &[Wall]) -> Frame {
        let (mut lo, mut hi, mut top) = (0.0f64, 0.0f64, 1.0f64);
        for w in walls {
            match &w.shape {
                Shape::Circle { center, radius_sq } => {
                    let (c, r) = (rat_to_f64(center), rat_to_f64(radius_sq).sqrt());
                    lo = lo.min(c - r);
                    hi = hi.max(c + r);
                    top = top.max(r);
                }
                Shape::VLine { s } => {
                    lo = lo.min(rat_to_f64(s));
                    hi = hi.max(rat_to_f64(s));
                }
            }
        }
        let snap = |x: f64, up: bool| if up { (x * 2.0).ceil() / 2.0 } else { (x * 2.0).floor() / 2.0 };
        Frame { s_min: snap(lo - 0.5, false), s_max: snap(hi + 0.5, true), t_max: snap(top + 0.5, true) }
    }

    fn x(&self, s: f64) -> f64 {
        MARGIN + (s - self.s_min) * SCALE
    }

    fn y(&self, t: f64) -> f64 {
        MARGIN + (self.t_max - t) * SCALE
    }

    fn has_s(&self, s: f64) -> bool {
        self.s_min <= s && s <= self.s_max
    }

    /// Some part of the shape lies strictly inside the frame.
    fn shows(&self, shape: &Shape) -> bool {
        match shape {
            Shape::Circle { center, radius_sq } => {
                let (c, r) = (rat_to_f64(center), rat_to_f64(radius_sq).sqrt());
                c - r < self.s_max && c + r > self.s_min
            }
            Shape::VLine { s } => self.has_s(rat_to_f64(s)),
        }
    }
}

/// Everything drawn in one diagram.
#[derive(Clone, Debug)]
pub struct Diagram<'a> {
    pub frame: Frame,
    pub walls: &'a [Wall],
    /// Dashed vertical line, e.g. the cross-section used for enumeration.
    pub cross_section: Option<Rat>,
    pub caption: String,
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn wall_label(w: &Wall) -> String {
    match w.m {
        Some(m) => format!("C_{m}"),
        None => format!("({})", w.witness),
    }
}

pub fn render(d: &Diagram) -> String {
    let f = &d.frame;
    let width = 2.0 * MARGIN + (f.s_max - f.s_min) * SCALE;
    let height = 2.0 * MARGIN + f.t_max * SCALE + FOOTER;
    let visible: Vec<&Wall> = d.walls.iter().filter(|w| f.shows(&w.shape)).collect();

    let mut s_ticks: BTreeSet<Rat> = BTreeSet::new();
    let mut t_ticks: BTreeSet<Rat> = BTreeSet::new();
    for w in &visible {
        match &w.shape {
            Shape::Circle { center, radius_sq } => {
                s_ticks.insert(center.clone());
                if let Some(r) = rat_sqrt(radius_sq) {
                    s_ticks.insert(center - &r);
                    s_ticks.insert(center + &r);
                    t_ticks.insert(r);
                }
            }
            Shape::VLine { s } => {
                s_ticks.insert(s.clone());
            }
        }
    }
    s_ticks.retain(|q| f.has_s(rat_to_f64(q)));
    t_ticks.retain(|q| rat_to_f64(q) <= f.t_max);
    let axis_s = if f.has_s(0.0) { 0.0 } else { f.s_min };

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let _ = writeln!(
        w,
        r#"<defs><clipPath id="window"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        num(f.x(f.s_min)),
        num(f.y(f.t_max)),
        num((f.s_max - f.s_min) * SCALE),
        num(f.t_max * SCALE)
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // Axes.
    let _ = writeln!(w, r#"<g stroke="black" stroke-width="1.5" fill="none">"#);
    let _ = writeln!(
        w,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(f.x(f.s_min)),
        num(f.y(0.0)),
        num(f.x(f.s_max) + 15.0),
        num(f.y(0.0))
    );
    let _ = writeln!(
        w,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-dasharray="2,4"/>"#,
        num(f.x(axis_s)),
        num(f.y(0.0)),
        num(f.x(axis_s)),
        num(f.y(f.t_max) - 15.0)
    );
    for q in &s_ticks {
        let x = f.x(rat_to_f64(q));
        let _ = writeln!(
            w,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(x),
            num(f.y(0.0)),
            num(x),
            num(f.y(0.0) + 6.0)
        );
    }
    for q in &t_ticks {
        let y = f.y(rat_to_f64(q));
        let x = f.x(axis_s);
        let _ = writeln!(w, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(x - 6.0), num(y), num(x), num(y));
    }
    let _ = writeln!(w, "</g>");

    // Walls, clipped to the window.
    let _ = writeln!(w, r#"<g clip-path="url(#window)" fill="none" stroke-width="2">"#);
    if let Some(s0) = &d.cross_section {
        let x = f.x(rat_to_f64(s0));
        let _ = writeln!(
            w,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="8,6"/>"#,
            num(x),
            num(f.y(0.0)),
            num(x),
            num(f.y(f.t_max))
        );
    }
    for wall in &visible {
        let colour = if wall.codim0 { "firebrick" } else { "steelblue" };
        match &wall.shape {
            Shape::Circle { center, radius_sq } => {
                let (c, r) = (rat_to_f64(center), rat_to_f64(radius_sq).sqrt());
                let _ = writeln!(
                    w,
                    r#"<circle cx="{}" cy="{}" r="{}" stroke="{colour}"/>"#,
                    num(f.x(c)),
                    num(f.y(0.0)),
                    num(r * SCALE)
                );
                if t_ticks.iter().any(|q| (rat_to_f64(q) - r).abs() < 1e-12) {
                    let _ = writeln!(
                        w,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-width="1" stroke-dasharray="2,4"/>"#,
                        num(f.x(axis_s)),
                        num(f.y(r)),
                        num(f.x(c)),
                        num(f.y(r))
                    );
                }
            }
            Shape::VLine { s } => {
                let x = f.x(rat_to_f64(s));
                let _ = writeln!(
                    w,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}"/>"#,
                    num(x),
                    num(f.y(0.0)),
                    num(x),
                    num(f.y(f.t_max))
                );
            }
        }
    }
    let _ = writeln!(w, "</g>");

    // Labels.
    let _ = writeln!(w, r#"<g font-family="serif" font-size="14" fill="black">"#);
    let _ = writeln!(w, r#"<text x="{}" y="{}">s</text>"#, num(f.x(f.s_max) + 18.0), num(f.y(0.0) + 5.0));
    let _ = writeln!(w, r#"<text x="{}" y="{}">t</text>"#, num(f.x(axis_s) + 5.0), num(f.y(f.t_max) - 18.0));
    for q in &s_ticks {
        let anchor = if *q == Rat::from_integer(0.into()) { "O".to_string() } else { q.to_string() };
        let _ = writeln!(
            w,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(f.x(rat_to_f64(q))),
            num(f.y(0.0) + 22.0),
            escape(&anchor)
        );
    }
    for q in &t_ticks {
        let _ = writeln!(
            w,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            num(f.x(axis_s) - 9.0),
            num(f.y(rat_to_f64(q)) + 5.0),
            escape(&q.to_string())
        );
    }
    if let Some(s0) = &d.cross_section {
        if f.has_s(rat_to_f64(s0)) {
            let _ = writeln!(
                w,
                r#"<text x="{}" y="{}">s={}</text>"#,
                num(f.x(rat_to_f64(s0)) + 4.0),
                num(f.y(f.t_max) + 14.0),
                escape(&s0.to_string())
            );
        }
    }
    for wall in &visible {
        let (x, y, dx, anchor) = match &wall.shape {
            Shape::Circle { center, radius_sq } => (rat_to_f64(center), rat_to_f64(radius_sq).sqrt(), 0.0, "middle"),
            Shape::VLine { s } => (rat_to_f64(s), f.t_max * 0.5, 6.0, "start"),
        };
        if f.has_s(x) && y < f.t_max {
            let _ = writeln!(
                w,
                r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
                num(f.x(x) + dx),
                num(f.y(y) - 6.0),
                escape(&wall_label(wall))
            );
        }
    }
    let _ = writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        num(width / 2.0),
        num(height - 12.0),
        escape(&d.caption)
    );
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    out
}
