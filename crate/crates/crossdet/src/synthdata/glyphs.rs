//! Parameterized glyph vocabulary for the synthetic scenes.
//!
//! A class id maps to (shape kind, palette slot): `kind = id % 10`. Every
//! shape touches all four edges of its unit square so the placement box is a
//! tight annotation. Part-structured kinds are drawn as a dull body (the
//! kind's shape, squeezed into the lower region) plus a small vivid "head"
//! disc at the top center; the head carries the class color while bodies
//! share one ambiguous color across all part classes.

pub const N_KINDS: usize = 10;

pub const KIND_NAMES: [&str; N_KINDS] = [
    "circle", "square", "triangle", "ring", "cross", "star", "ladder", "lshape", "tshape", "blob",
];

pub const PALETTE_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Shared body color for part-structured glyphs: dull, close to clutter.
pub const BODY_COLOR: [u8; 3] = [96, 88, 78];

/// Fraction of the glyph height taken by the head disc of a part glyph.
pub const HEAD_FRAC: f64 = 0.34;

pub fn class_name(class_id: usize) -> String {
    format!(
        "{}_{}",
        KIND_NAMES[class_id % N_KINDS],
        PALETTE_NAMES[(class_id / N_KINDS) % PALETTE_NAMES.len()]
    )
}

/// Distinct saturated color per class, hues spread by the golden angle.
pub fn class_color(class_id: usize) -> [u8; 3] {
    let hue = (class_id as f64 * 137.508).rem_euclid(360.0);
    hsv_to_rgb(hue, 0.85, 0.9)
}

pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match hp as usize {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [
        ((r + m) * 255.0).round() as u8,
        ((g + m) * 255.0).round() as u8,
        ((b + m) * 255.0).round() as u8,
    ]
}

/// Membership test for a plain (non-part) glyph in unit coordinates.
pub fn inside(kind: usize, u: f64, v: f64) -> bool {
    let cu = 2.0 * u - 1.0;
    let cv = 2.0 * v - 1.0;
    match kind % N_KINDS {
        // circle
        0 => cu * cu + cv * cv <= 1.0,
        // square
        1 => true,
        // triangle with a small flat top so the apex survives rasterization
        2 => (u - 0.5).abs() <= 0.04 + 0.46 * v,
        // ring
        3 => {
            let r2 = cu * cu + cv * cv;
            (0.3..=1.0).contains(&r2)
        }
        // cross: thick plus
        4 => (u - 0.5).abs() <= 0.18 || (v - 0.5).abs() <= 0.18,
        // star: diamond with diagonal spokes
        5 => {
            let du = u - 0.5;
            let dv = v - 0.5;
            du.abs() + dv.abs() <= 0.5 || (du - dv).abs() <= 0.11 || (du + dv).abs() <= 0.11
        }
        // ladder: three full-width stripes
        6 => v <= 0.2 || (0.4..=0.6).contains(&v) || v >= 0.8,
        // lshape
        7 => u <= 0.38 || v >= 0.62,
        // tshape
        8 => v <= 0.34 || (u - 0.5).abs() <= 0.19,
        // blob: superellipse
        _ => cu.abs().powf(1.6) + cv.abs().powf(1.6) <= 1.0,
    }
}

/// What to draw at `(u, v)` inside a part-structured glyph of pixel size
/// `(w, h)`: `Some(true)` head, `Some(false)` body, `None` empty.
pub fn inside_part(kind: usize, u: f64, v: f64, w: f64, h: f64) -> Option<bool> {
    // head disc touching the top edge, centered horizontally
    let head_r = 0.5 * HEAD_FRAC * h;
    let dx = (u - 0.5) * w;
    let dy = v * h - head_r;
    if dx * dx + dy * dy <= head_r * head_r {
        return Some(true);
    }
    // body: the kind's shape squeezed into the region below the head center
    let body_top = 0.55 * HEAD_FRAC;
    if v >= body_top {
        let bv = (v - body_top) / (1.0 - body_top);
        if inside(kind, u, bv) {
            return Some(false);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_colors_distinct() {
        let colors: Vec<[u8; 3]> = (0..20).map(class_color).collect();
        for i in 0..20 {
            for j in (i + 1)..20 {
                let d: i32 = colors[i]
                    .iter()
                    .zip(&colors[j])
                    .map(|(a, b)| (*a as i32 - *b as i32).abs())
                    .sum();
                assert!(d > 30, "classes {i} and {j} too close: {d}");
            }
        }
    }

    /// Every shape must touch all four edges of the unit square so that the
    /// placement box is a tight annotation.
    #[test]
    fn shapes_touch_all_edges() {
        let n = 400;
        for kind in 0..N_KINDS {
            let (mut top, mut bottom, mut left, mut right) = (false, false, false, false);
            for i in 0..n {
                let t = (i as f64 + 0.5) / n as f64;
                top |= inside(kind, t, 0.001);
                bottom |= inside(kind, t, 0.999);
                left |= inside(kind, 0.001, t);
                right |= inside(kind, 0.999, t);
            }
            assert!(
                top && bottom && left && right,
                "kind {kind} ({}) does not touch all edges",
                KIND_NAMES[kind]
            );
        }
    }

    #[test]
    fn part_glyph_head_touches_top_and_body_bottom() {
        for kind in [8usize, 9] {
            assert_eq!(inside_part(kind, 0.5, 0.002, 30.0, 50.0), Some(true));
            assert_eq!(inside_part(kind, 0.5, 0.995, 30.0, 50.0), Some(false));
        }
    }
}
