//! Standalone SVG 1.1 pictures of patches, subtrees and star-graphs.

use std::collections::HashSet;
use std::fmt::Write as _;

use p2flis::geometry::{Patch, TileKind};
use p2flis::ring::Cyclo10;
use p2flis::stargraph::{StarColor, StarGraph};

const SCALE: f64 = 20.0;

fn xy(z: Cyclo10) -> (f64, f64) {
    let (x, y) = z.to_complex();
    (x * SCALE, -y * SCALE)
}

pub fn color_hex(c: StarColor) -> &'static str {
    match c {
        StarColor::Red => "#d62728",
        StarColor::Green => "#2ca02c",
        StarColor::Blue => "#1f77b4",
    }
}

pub fn render(p: &Patch, tree: &[usize], stars: Option<&StarGraph>) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for t in &p.tiles {
        for v in t.vertices() {
            let (x, y) = xy(v);
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    if p.tiles.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let pad = SCALE;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    s.push_str("<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"{:.3} {:.3} {w:.3} {h:.3}\">",
        x0 - pad,
        y0 - pad
    )
    .unwrap();
    let in_tree: HashSet<usize> = tree.iter().copied().collect();
    s.push_str("<g stroke=\"#333333\" stroke-width=\"0.6\">\n");
    for t in &p.tiles {
        let fill = match (in_tree.contains(&t.id), t.kind) {
            (true, _) => "#f2a900",
            (false, TileKind::Kite) => "#e8e0cf",
            (false, TileKind::Dart) => "#b8c4d6",
        };
        let pts: Vec<String> = t
            .vertices()
            .iter()
            .map(|&v| {
                let (x, y) = xy(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(s, "<polygon id=\"t{}\" points=\"{}\" fill=\"{fill}\"/>", t.id, pts.join(" ")).unwrap();
    }
    s.push_str("</g>\n");
    if let Some(sg) = stars {
        s.push_str("<g stroke=\"#000000\" stroke-width=\"2\">\n");
        for &(a, b) in &sg.edges {
            let (xa, ya) = xy(sg.vertices[a].center);
            let (xb, yb) = xy(sg.vertices[b].center);
            writeln!(s, "<line x1=\"{xa:.3}\" y1=\"{ya:.3}\" x2=\"{xb:.3}\" y2=\"{yb:.3}\"/>").unwrap();
        }
        s.push_str("</g>\n<g stroke=\"#000000\" stroke-width=\"1\">\n");
        for (i, v) in sg.vertices.iter().enumerate() {
            let (x, y) = xy(v.center);
            writeln!(
                s,
                "<circle id=\"s{i}\" class=\"star {}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.1}\" fill=\"{}\"/>",
                v.color.letter(),
                SCALE * 0.4,
                color_hex(v.color)
            )
            .unwrap();
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
