//! Text and SVG pictures of small families. Every cell shows the id of the
//! box containing it; `.` marks an uncovered cell and `*` a cell covered
//! more than once.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::format::PartitionDocument;
use crate::geometry::mask_elements;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(format!("unknown render format '{other}' (expected ascii or svg)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("{format} rendering supports dimension {supported}, got {got}")]
    Dimension { format: &'static str, supported: &'static str, got: usize },
}

const CELL: usize = 40;

/// Cell labels indexed by point index: the 1-based box id, `.` or `*`.
fn cell_labels(doc: &PartitionDocument) -> Vec<String> {
    let ambient = doc.ambient();
    let mut owner: Vec<Option<usize>> = vec![None; ambient.volume()];
    let mut multi = vec![false; ambient.volume()];
    for (id, b) in doc.family.boxes().iter().enumerate() {
        let mut stack = vec![Vec::new()];
        for axis in 0..b.dim() {
            stack = stack
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    mask_elements(b.mask(axis)).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        for p in stack {
            let i = ambient.point_index(&p);
            if owner[i].is_some() {
                multi[i] = true;
            }
            owner[i] = Some(id + 1);
        }
    }
    owner
        .iter()
        .zip(&multi)
        .map(|(o, &m)| match (o, m) {
            (_, true) => "*".to_string(),
            (Some(id), false) => id.to_string(),
            (None, false) => ".".to_string(),
        })
        .collect()
}

pub fn render(doc: &PartitionDocument, format: RenderFormat) -> Result<String, RenderError> {
    match format {
        RenderFormat::Ascii => render_ascii(doc),
        RenderFormat::Svg => render_svg(doc),
    }
}

/// Grids with the first coordinate across and the second down. In three
/// dimensions there is one grid per value of the third coordinate.
pub fn render_ascii(doc: &PartitionDocument) -> Result<String, RenderError> {
    let ambient = doc.ambient();
    let d = ambient.dim();
    if d > 3 {
        return Err(RenderError::Dimension { format: "ascii", supported: "1 to 3", got: d });
    }
    let labels = cell_labels(doc);
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let side = |a: usize| if a < d { ambient.side(a) } else { 1 };
    let mut out = String::new();
    for z in 1..=side(2) {
        if d == 3 {
            if z > 1 {
                out.push('\n');
            }
            let _ = writeln!(out, "layer {z}:");
        }
        for y in 1..=side(1) {
            let row: Vec<String> = (1..=side(0))
                .map(|x| {
                    let point = [x, y, z];
                    format!("{:>width$}", labels[ambient.point_index(&point[..d])])
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

/// Rectangles per brick, unit tiles for boxes with a gap in some factor.
pub fn render_svg(doc: &PartitionDocument) -> Result<String, RenderError> {
    let ambient = doc.ambient();
    if ambient.dim() != 2 {
        return Err(RenderError::Dimension { format: "svg", supported: "2", got: ambient.dim() });
    }
    let (w, h) = (ambient.side(0) * CELL, ambient.side(1) * CELL);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="12">"#
    );
    let rect = |out: &mut String, id: usize, x0: usize, y0: usize, xs: usize, ys: usize| {
        let hue = (id * 137) % 360;
        let _ = writeln!(
            out,
            r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="hsl({hue},60%,80%)" stroke="black"/>"#,
            (x0 - 1) * CELL,
            (y0 - 1) * CELL,
            xs * CELL,
            ys * CELL
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle">{id}</text>"#,
            (x0 - 1) * CELL + xs * CELL / 2,
            (y0 - 1) * CELL + ys * CELL / 2
        );
    };
    for (i, b) in doc.family.boxes().iter().enumerate() {
        if b.is_brick() {
            let (x0, x1) = b.factor_bounds(0);
            let (y0, y1) = b.factor_bounds(1);
            rect(&mut out, i + 1, x0, y0, x1 - x0 + 1, y1 - y0 + 1);
        } else {
            for x in b.factor(0) {
                for y in b.factor(1) {
                    rect(&mut out, i + 1, x, y, 1, 1);
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
