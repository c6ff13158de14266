//! String-diagram rendering with explicit bracketing.

mod layout;
mod svg;
mod tikz;

use std::str::FromStr;

pub use layout::{layout, LayoutNode, NodeKind, Port, Rect, StructKind, Wire};
pub use svg::emit_svg;
pub use tikz::emit_tikz;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderConfig {
    /// Vertical space per wire.
    pub unit: f64,
    pub padding: f64,
    pub hgap: f64,
    pub vgap: f64,
    pub color: bool,
    pub font_size: f64,
    pub stroke: f64,
    pub group_stroke: f64,
    /// Draw the borders of composition and tensor groups.
    pub group_boxes: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            unit: 20.0,
            padding: 6.0,
            hgap: 16.0,
            vgap: 8.0,
            color: false,
            font_size: 10.0,
            stroke: 1.2,
            group_stroke: 0.8,
            group_boxes: true,
        }
    }
}

impl RenderConfig {
    /// Sets one option by its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let number = || -> Result<f64, String> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| format!("`{key}` must be a positive number, found `{value}`"))
        };
        let flag = || -> Result<bool, String> {
            value
                .parse::<bool>()
                .map_err(|_| format!("`{key}` must be true or false, found `{value}`"))
        };
        match key {
            "unit" => self.unit = number()?,
            "padding" => self.padding = number()?,
            "hgap" => self.hgap = number()?,
            "vgap" => self.vgap = number()?,
            "font_size" => self.font_size = number()?,
            "stroke" => self.stroke = number()?,
            "group_stroke" => self.group_stroke = number()?,
            "color" => self.color = flag()?,
            "group_boxes" => self.group_boxes = flag()?,
            _ => return Err(format!("unknown render option `{key}`")),
        }
        Ok(())
    }
}

/// `key = value` lines; `#` starts a comment.
impl FromStr for RenderConfig {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let mut cfg = RenderConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", no + 1))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {e}", no + 1))?;
        }
        Ok(cfg)
    }
}

/// Fixed-precision number formatting shared by both emitters.
pub(crate) fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// A stable color for a name, as `#rrggbb`.
pub(crate) fn name_color(name: &str) -> String {
    let mut h: u32 = 0x811c9dc5;
    for b in name.bytes() {
        h = (h ^ u32::from(b)).wrapping_mul(0x01000193);
    }
    let hue = f64::from(h % 360);
    let (s, l) = (0.55, 0.82);
    let c = (1.0 - (2.0 * l - 1.0_f64).abs()) * s;
    let x = c * (1.0 - ((hue / 60.0) % 2.0 - 1.0).abs());
    let m = l - c / 2.0;
    let (r, g, b) = match (hue / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let to = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}
