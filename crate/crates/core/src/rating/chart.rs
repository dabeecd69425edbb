use std::f64::consts::PI;
use std::fmt::Write;
use std::str::FromStr;

use super::{RatingError, RatingSummary};
use crate::corpus::Polarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    SvgBar,
    SvgPie,
    Ascii,
}

impl ChartFormat {
    pub const ALL: [ChartFormat; 3] =
        [ChartFormat::SvgBar, ChartFormat::SvgPie, ChartFormat::Ascii];

    pub fn token(self) -> &'static str {
        match self {
            ChartFormat::SvgBar => "svg_bar",
            ChartFormat::SvgPie => "svg_pie",
            ChartFormat::Ascii => "ascii",
        }
    }

    pub fn file_extension(self) -> &'static str {
        match self {
            ChartFormat::SvgBar => "bar.svg",
            ChartFormat::SvgPie => "pie.svg",
            ChartFormat::Ascii => "txt",
        }
    }
}

impl FromStr for ChartFormat {
    type Err = RatingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg_bar" => Ok(ChartFormat::SvgBar),
            "svg_pie" => Ok(ChartFormat::SvgPie),
            "ascii" => Ok(ChartFormat::Ascii),
            other => Err(RatingError::UnsupportedFormat(other.to_string())),
        }
    }
}

const COLORS: [(Polarity, &str); 3] = [
    (Polarity::Positive, "#2e7d32"),
    (Polarity::Negative, "#c62828"),
    (Polarity::Neutral, "#9e9e9e"),
];

const WIDTH: f64 = 420.0;
const HEIGHT: f64 = 300.0;
const BAR_AREA: f64 = 200.0;
const BAR_BASE: f64 = 240.0;
const BAR_WIDTH: f64 = 80.0;
const PIE_CX: f64 = 150.0;
const PIE_CY: f64 = 150.0;
const PIE_R: f64 = 120.0;

/// Renders a summary deterministically in the requested format.
pub fn render_chart(summary: &RatingSummary, format: ChartFormat) -> String {
    match format {
        ChartFormat::SvgBar => svg_bar(summary),
        ChartFormat::SvgPie => svg_pie(summary),
        ChartFormat::Ascii => ascii_table(summary),
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn svg_open(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", xml_escape(title));
}

fn svg_bar(s: &RatingSummary) -> String {
    let mut out = String::new();
    svg_open(&mut out, &format!("Comment polarity for {}", s.product_id));
    let max = COLORS
        .iter()
        .map(|(p, _)| s.count(*p))
        .max()
        .unwrap_or(0)
        .max(1);
    for (i, (p, color)) in COLORS.iter().enumerate() {
        let count = s.count(*p);
        let h = count as f64 / max as f64 * BAR_AREA;
        let x = 40.0 + i as f64 * 120.0;
        let y = BAR_BASE - h;
        let _ = writeln!(
            out,
            r#"  <rect class="bar" data-polarity="{p}" x="{x:.4}" y="{y:.4}" width="{BAR_WIDTH:.4}" height="{h:.4}" fill="{color}"/>"#
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.4}" y="{:.4}" text-anchor="middle" font-size="12">{count} ({}%)</text>"#,
            x + BAR_WIDTH / 2.0,
            y - 6.0,
            s.percent(*p)
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.4}" y="{:.4}" text-anchor="middle" font-size="13">{p}</text>"#,
            x + BAR_WIDTH / 2.0,
            BAR_BASE + 20.0
        );
    }
    let _ = writeln!(
        out,
        r#"  <line x1="30" y1="{BAR_BASE}" x2="{}" y2="{BAR_BASE}" stroke="black"/>"#,
        WIDTH - 30.0
    );
    out.push_str("</svg>\n");
    out
}

fn point_at(angle: f64) -> (f64, f64) {
    // angle in radians, measured clockwise from twelve o'clock
    (PIE_CX + PIE_R * angle.sin(), PIE_CY - PIE_R * angle.cos())
}

fn svg_pie(s: &RatingSummary) -> String {
    let mut out = String::new();
    svg_open(&mut out, &format!("Comment polarity for {}", s.product_id));
    let total = s.total as f64;
    let mut start = 0.0f64;
    for (p, color) in COLORS {
        let count = s.count(p);
        if count == 0 {
            continue;
        }
        let sweep = count as f64 / total * 2.0 * PI;
        let degrees = count as f64 / total * 360.0;
        if count == s.total {
            let _ = writeln!(
                out,
                r#"  <circle class="sector" data-polarity="{p}" data-degrees="{degrees:.4}" cx="{PIE_CX}" cy="{PIE_CY}" r="{PIE_R}" fill="{color}"/>"#
            );
        } else {
            let (x1, y1) = point_at(start);
            let (x2, y2) = point_at(start + sweep);
            let large = u8::from(sweep > PI);
            let _ = writeln!(
                out,
                r#"  <path class="sector" data-polarity="{p}" data-degrees="{degrees:.4}" d="M {PIE_CX} {PIE_CY} L {x1:.4} {y1:.4} A {PIE_R} {PIE_R} 0 {large} 1 {x2:.4} {y2:.4} Z" fill="{color}"/>"#
            );
        }
        start += sweep;
    }
    for (i, (p, color)) in COLORS.iter().enumerate() {
        let y = 40.0 + i as f64 * 24.0;
        let _ = writeln!(
            out,
            r#"  <rect class="legend" x="300" y="{:.4}" width="14" height="14" fill="{color}"/>"#,
            y - 11.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="320" y="{y:.4}" font-size="12">{p} {} ({}%)</text>"#,
            s.count(*p),
            s.percent(*p)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn ascii_only(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii() && !c.is_ascii_control() {
                c
            } else {
                '?'
            }
        })
        .collect()
}

fn ascii_table(s: &RatingSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Product: {}", ascii_only(&s.product_id));
    let _ = writeln!(out, "{:<10} {:>8} {:>8}", "polarity", "comments", "percent");
    for p in Polarity::ALL {
        let _ = writeln!(
            out,
            "{:<10} {:>8} {:>7}%",
            p.as_str(),
            s.count(p),
            s.percent(p).to_string()
        );
    }
    let _ = writeln!(out, "{:<10} {:>8}", "total", s.total);
    let _ = writeln!(out, "net score (extension): {:.3}", s.net_score);
    out
}
