use std::fmt::Write as _;
use std::io;

use super::assembly::FiberAssembly;
use super::gadget::GadgetGeometry;
use super::geom::{qi, to_decimal, Point2};
use super::BeckerError;

const PLACES: u32 = 6;

fn coord(p: &Point2) -> String {
    let x = &p.x * qi(1000);
    let y = (qi(1) - &p.y) * qi(1000);
    format!("{} {}", to_decimal(&x, PLACES), to_decimal(&y, PLACES))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG rendering of a gadget in a `1000 x 1000` view box, `y` pointing up.
pub fn export_svg(g: &GadgetGeometry) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n",
    );
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n");
    for s in &g.segments {
        let _ = writeln!(
            out,
            "<path data-label=\"{}\" d=\"M {} L {}\"/>",
            escape(&s.label),
            coord(&s.from),
            coord(&s.to)
        );
    }
    for p in &g.polylines {
        let pts: Vec<String> = p.vertices.iter().map(coord).collect();
        let _ = writeln!(
            out,
            "<path data-label=\"zigzag{}\" d=\"M {}\"/>",
            escape(&super::tree::node_label(&p.node)),
            pts.join(" L ")
        );
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for (label, p) in &g.marked_points {
        let c = coord(p);
        let (x, y) = c.split_once(' ').expect("two coordinates");
        let _ = writeln!(
            out,
            "<circle data-label=\"{}\" cx=\"{x}\" cy=\"{y}\" r=\"3\"/>",
            escape(label)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn write_svg<W: io::Write>(g: &GadgetGeometry, sink: &mut W) -> Result<(), BeckerError> {
    sink.write_all(export_svg(g).as_bytes())
        .map_err(|e| BeckerError::Io(e.to_string()))
}

/// Pretty-printed JSON with exact `"p/q"` coordinates.
pub fn export_json(a: &FiberAssembly) -> String {
    serde_json::to_string_pretty(a).expect("assembly serializes")
}

pub fn load_assembly_json(text: &str) -> Result<FiberAssembly, BeckerError> {
    let a: FiberAssembly =
        serde_json::from_str(text).map_err(|e| BeckerError::Json(e.to_string()))?;
    a.validate()?;
    Ok(a)
}
