//! Minimal SVG views of an estimate: the mapped simplex with accepted cells
//! shaded and the thresholded points on top.

use std::fmt::Write;

use angular_support::json::{AngularReport, EstimateReport};
use angular_support::{Error, Result};

const SIZE: f64 = 600.0;
const PAD: f64 = 20.0;

pub fn render(estimate: &EstimateReport, points: &AngularReport) -> Result<String> {
    match estimate.dims {
        2 => Ok(interval_bar(estimate, points)),
        3 => Ok(triangle(estimate, points)),
        n => Err(Error::InvalidParameter(format!("plots support N=2 or N=3, got N={n}"))),
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
}

fn triangle(estimate: &EstimateReport, points: &AngularReport) -> String {
    let h = 3f64.sqrt() / 2.0;
    let (w, ht) = (SIZE + 2.0 * PAD, h * SIZE + 2.0 * PAD);
    let px = |u: f64| PAD + u * SIZE;
    let py = |v: f64| PAD + (h - v) * SIZE;
    let cell = SIZE / estimate.m as f64;
    let mut out = String::new();
    header(&mut out, w, ht);
    let _ = writeln!(out, r#"<defs><clipPath id="simplex"><polygon points="{},{} {},{} {},{}"/></clipPath></defs>"#,
        px(0.0), py(0.0), px(1.0), py(0.0), px(0.5), py(h));
    let _ = writeln!(out, r#"<g clip-path="url(#simplex)" fill="steelblue" fill-opacity="0.45">"#);
    for c in &estimate.cells {
        let (u, v) = (c.anchor[0], c.anchor[1]);
        let top = v + 1.0 / estimate.m as f64;
        let _ = writeln!(out, r#"<rect x="{:.3}" y="{:.3}" width="{cell:.3}" height="{cell:.3}"/>"#, px(u), py(top));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black" fill-opacity="0.5">"#);
    for p in &points.points {
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="1"/>"#, px(p[0]), py(p[1]));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<polygon points="{},{} {},{} {},{}" fill="none" stroke="black"/>"#,
        px(0.0), py(0.0), px(1.0), py(0.0), px(0.5), py(h)
    );
    out.push_str("</svg>\n");
    out
}

fn interval_bar(estimate: &EstimateReport, points: &AngularReport) -> String {
    let bar = 40.0;
    let (w, ht) = (SIZE + 2.0 * PAD, bar + 2.0 * PAD);
    let px = |u: f64| PAD + u * SIZE;
    let cell = SIZE / estimate.m as f64;
    let mut out = String::new();
    header(&mut out, w, ht);
    for c in &estimate.cells {
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{PAD}" width="{cell:.3}" height="{bar}" fill="steelblue" fill-opacity="0.45"/>"#,
            px(c.anchor[0])
        );
    }
    for p in &points.points {
        let x = px(p[0]);
        let _ = writeln!(out, r#"<line x1="{x:.3}" y1="{PAD}" x2="{x:.3}" y2="{}" stroke="black" stroke-opacity="0.3"/>"#, PAD + bar);
    }
    let _ = writeln!(out, r#"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{bar}" fill="none" stroke="black"/>"#);
    out.push_str("</svg>\n");
    out
}
