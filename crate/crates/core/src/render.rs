//! Text and SVG pictures of placements.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{lower_bound_certificate, rings_of, selection_of};
use crate::board::{Line, Placement, Square};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Ascii,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            other => Err(Error::domain(format!("unknown format `{other}` (expected ascii or svg)"))),
        }
    }
}

/// Which layers to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Show {
    pub queens: bool,
    pub covered: bool,
    /// Ring levels of the occupied-line grid.
    pub rings: bool,
    pub certificate_lines: bool,
}

impl Default for Show {
    fn default() -> Self {
        Show { queens: true, covered: true, rings: false, certificate_lines: false }
    }
}

impl Show {
    /// Parses a comma-separated list such as `queens,covered,rings`.
    pub fn parse_list(list: &str) -> Result<Self> {
        let mut show = Show { queens: false, covered: false, rings: false, certificate_lines: false };
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "queens" => show.queens = true,
                "covered" => show.covered = true,
                "rings" => show.rings = true,
                "certificate-lines" => show.certificate_lines = true,
                other => return Err(Error::domain(format!("unknown layer `{other}`"))),
            }
        }
        Ok(show)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RenderSpec {
    pub format: Format,
    pub show: Show,
    /// Side of one cell in pixels; SVG only.
    pub cell_size: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { format: Format::Ascii, show: Show::default(), cell_size: 24 }
    }
}

pub fn render(p: &Placement, spec: &RenderSpec) -> Result<String> {
    match spec.format {
        Format::Ascii => render_ascii(p, &spec.show),
        Format::Svg => render_svg(p, &spec.show, spec.cell_size),
    }
}

/// Ring level of each grid point, indexed by square.
fn ring_levels(p: &Placement) -> Result<Vec<(Square, usize)>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let sel = selection_of(p)?;
    Ok(rings_of(&sel)
        .into_iter()
        .flat_map(|r| r.points.into_iter().map(move |q| (q, r.level)))
        .collect())
}

fn certificate_lines(p: &Placement) -> Result<Vec<Line>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    Ok(lower_bound_certificate(p)?.lines)
}

/// One line per row, top row first, one glyph per cell: `Q` queen, a digit
/// for a grid point's ring level (with `rings`), `#` covered, `.` otherwise.
pub fn render_ascii(p: &Placement, show: &Show) -> Result<String> {
    let n = p.n();
    let covered = p.covered_squares();
    let rings = if show.rings { ring_levels(p)? } else { Vec::new() };
    let cert = if show.certificate_lines { certificate_lines(p)? } else { Vec::new() };
    let mut out = String::with_capacity(((n + 1) * n) as usize);
    for y in (1..=n).rev() {
        for x in 1..=n {
            let sq = Square::new(x, y);
            let ring = rings.iter().find(|(q, _)| *q == sq).map(|&(_, l)| l);
            let glyph = if show.queens && p.contains(sq) {
                'Q'
            } else if let Some(level) = ring {
                char::from_digit(level.min(9) as u32, 10).unwrap()
            } else if cert.iter().any(|l| l.contains(sq)) {
                '+'
            } else if show.covered && covered.contains(sq) {
                '#'
            } else {
                '.'
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    Ok(out)
}

const RING_COLORS: [&str; 6] = ["#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd", "#8c564b"];

pub fn render_svg(p: &Placement, show: &Show, cell_size: u32) -> Result<String> {
    if cell_size == 0 {
        return Err(Error::domain("cell size must be positive"));
    }
    let n = p.n();
    let cs = cell_size as f64;
    let side = cs * n as f64;
    // Board (x, y) has its lower-left corner at ((x-1)*cs, (n-y)*cs) in SVG space.
    let corner = |sq: Square| ((sq.x - 1) as f64 * cs, (n - sq.y) as f64 * cs);
    let centre = |sq: Square| {
        let (x, y) = corner(sq);
        (x + cs / 2.0, y + cs / 2.0)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    let _ = writeln!(s, r#"  <rect x="0" y="0" width="{side}" height="{side}" fill="white"/>"#);

    let covered = p.covered_squares();
    let _ = writeln!(s, r##"  <g id="cells" stroke="#999" stroke-width="0.5">"##);
    for sq in p.dim().squares() {
        let (x, y) = corner(sq);
        let fill = if show.covered && covered.contains(sq) {
            "#f2c8c8"
        } else if (sq.x + sq.y) % 2 == 0 {
            "#e8e8e8"
        } else {
            "#ffffff"
        };
        let _ = writeln!(s, r#"    <rect x="{x}" y="{y}" width="{cs}" height="{cs}" fill="{fill}"/>"#);
    }
    s.push_str("  </g>\n");

    if show.certificate_lines {
        let _ = writeln!(s, r##"  <g id="certificate" stroke="#1f4e99" stroke-width="{}" stroke-linecap="round">"##, cs / 8.0);
        for line in certificate_lines(p)? {
            let squares = line.squares(p.dim())?;
            let (first, last) = (squares[0], *squares.last().unwrap());
            let ((x1, y1), (x2, y2)) = (centre(first), centre(last));
            let _ = writeln!(s, r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        s.push_str("  </g>\n");
    }

    if show.rings {
        let _ = writeln!(s, r#"  <g id="rings" fill="none" stroke-width="{}">"#, cs / 10.0);
        for (sq, level) in ring_levels(p)? {
            let (x, y) = corner(sq);
            let color = RING_COLORS[(level - 1) % RING_COLORS.len()];
            let inset = cs / 10.0;
            let _ = writeln!(
                s,
                r#"    <rect x="{}" y="{}" width="{}" height="{}" stroke="{color}"/>"#,
                x + inset,
                y + inset,
                cs - 2.0 * inset,
                cs - 2.0 * inset
            );
        }
        s.push_str("  </g>\n");
    }

    if show.queens {
        let _ = writeln!(s, r##"  <g id="queens" fill="#222">"##);
        for &q in p.queens() {
            let (cx, cy) = centre(q);
            let _ = writeln!(s, r#"    <circle cx="{cx}" cy="{cy}" r="{}"/>"#, cs * 0.35);
        }
        s.push_str("  </g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}
