//! Static SVG plot of a Newton polygon on the integer lattice.
//!
//! The boundary through the vertices is a single `<path>`; unbounded edges,
//! the diagonal and the grid are separate `<line>` elements.

use std::fmt::Write;

use lctkit::newton::NewtonPolygon;
use num_traits::ToPrimitive;

pub const SPACING: f64 = 20.0;
pub const MARGIN: f64 = 30.0;

struct Frame {
    width: u32,
    height: u32,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + SPACING * x
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + SPACING * (self.height as f64 - y)
    }
}

pub fn render(polygon: &NewtonPolygon) -> String {
    let vs = polygon.vertices();
    let max_x = vs.iter().map(|p| p.x).max().unwrap_or(0);
    let max_y = vs.iter().map(|p| p.y).max().unwrap_or(0);
    let frame = Frame {
        width: max_x + 2,
        height: max_y + 2,
    };
    let w = 2.0 * MARGIN + SPACING * frame.width as f64;
    let h = 2.0 * MARGIN + SPACING * frame.height as f64;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();

    writeln!(s, r##"<g stroke="#ddd" stroke-width="1">"##).unwrap();
    for i in 0..=frame.width {
        let x = frame.px(i as f64);
        let (y0, y1) = (frame.py(0.0), frame.py(frame.height as f64));
        writeln!(s, r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}"/>"#).unwrap();
    }
    for j in 0..=frame.height {
        let y = frame.py(j as f64);
        let (x0, x1) = (frame.px(0.0), frame.px(frame.width as f64));
        writeln!(s, r#"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}"/>"#).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    let (ox, oy) = (frame.px(0.0), frame.py(0.0));
    writeln!(
        s,
        r#"<line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}" stroke="black"/>"#,
        frame.px(frame.width as f64)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}" stroke="black"/>"#,
        frame.py(frame.height as f64)
    )
    .unwrap();

    for f in polygon.facets() {
        if let Some(dir) = f.ray_direction() {
            let p = f.start();
            let reach = frame.width.max(frame.height) as f64;
            let (x2, y2) = (
                (p.x as f64 + reach * dir.x as f64).min(frame.width as f64),
                (p.y as f64 + reach * dir.y as f64).min(frame.height as f64),
            );
            writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="steelblue" stroke-width="2" stroke-dasharray="4 3"/>"#,
                frame.px(p.x as f64),
                frame.py(p.y as f64),
                frame.px(x2),
                frame.py(y2)
            )
            .unwrap();
        }
    }

    let d: Vec<String> = vs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let cmd = if i == 0 { 'M' } else { 'L' };
            format!("{cmd} {} {}", frame.px(p.x as f64), frame.py(p.y as f64))
        })
        .collect();
    writeln!(
        s,
        r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        d.join(" ")
    )
    .unwrap();

    let c = polygon.diagonal().c.to_f64().unwrap_or(0.0);
    writeln!(
        s,
        r#"<line x1="{ox}" y1="{oy}" x2="{}" y2="{}" stroke="firebrick" stroke-dasharray="2 2"/>"#,
        frame.px(c),
        frame.py(c)
    )
    .unwrap();
    writeln!(
        s,
        r#"<circle cx="{}" cy="{}" r="3" fill="firebrick"/>"#,
        frame.px(c),
        frame.py(c)
    )
    .unwrap();

    for p in vs {
        let (x, y) = (frame.px(p.x as f64), frame.py(p.y as f64));
        writeln!(s, r#"<circle cx="{x}" cy="{y}" r="3" fill="black"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">({}, {})</text>"#,
            x + 5.0,
            y - 5.0,
            p.x,
            p.y
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
