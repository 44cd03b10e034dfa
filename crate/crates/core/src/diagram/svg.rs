use std::fmt::Write;

use super::{passive_strands, Geometry, Layout, Row};

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn path(&mut self, d: &str) {
        writeln!(self.body, r#"    <path d="{d}"/>"#).unwrap();
    }

    fn vertical(&mut self, x: f64, y0: f64, y1: f64) {
        self.path(&format!("M {} {} V {}", num(x), num(y0), num(y1)));
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, content: &str) {
        writeln!(
            self.body,
            r#"    <text x="{}" y="{}" text-anchor="{anchor}" stroke="none" fill="black" font-family="serif" font-size="12">{content}</text>"#,
            num(x),
            num(y)
        )
        .unwrap();
    }
}

/// Standalone SVG 1.1 document; identity rows are drawn with `<line>`,
/// every other primitive with `<path>`, `<rect>` and `<text>`.
pub fn emit_svg(layout: &Layout, geom: &Geometry) -> String {
    let strands = layout.strands();
    let rows = layout.rows();
    let width = 2.0 * geom.margin + (strands as f64 - 1.0) * geom.pitch;
    let height = 2.0 * geom.margin + rows.len() as f64 * geom.row_height;
    let h = geom.row_height;
    let mut c = Canvas { body: String::new() };
    let half_n = layout.qudits();

    for (r, row) in rows.iter().enumerate() {
        let (y0, y1) = (geom.y(r), geom.y(r + 1));
        let ym = (y0 + y1) / 2.0;
        writeln!(c.body, r#"  <g class="row-{r}">"#).unwrap();
        if matches!(row, Row::Identity) {
            for s in 1..=strands {
                let x = num(geom.x(s));
                writeln!(c.body, r#"    <line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#, num(y0), num(y1)).unwrap();
            }
        } else {
            for s in passive_strands(row, strands) {
                c.vertical(geom.x(s), y0, y1);
            }
        }
        match row {
            Row::Identity => {}
            Row::ChargeLabel { strand, exp } => {
                c.text(geom.x(*strand) - 4.0, ym + 4.0, "end", &exp.to_string());
            }
            Row::Crossing { left, positive } => {
                let (xa, xb) = (geom.x(*left), geom.x(left + 1));
                // over strand runs between the top of one strand and the bottom of the other
                let (top, bottom) = if *positive { (xa, xb) } else { (xb, xa) };
                c.path(&format!(
                    "M {} {} C {} {}, {} {}, {} {}",
                    num(top),
                    num(y0),
                    num(top),
                    num(ym),
                    num(bottom),
                    num(ym),
                    num(bottom),
                    num(y1)
                ));
                // under strand, broken around the crossing point
                let dx = top - bottom;
                c.path(&format!(
                    "M {} {} L {} {}",
                    num(bottom),
                    num(y0),
                    num(bottom + 0.35 * dx),
                    num(y0 + 0.35 * h)
                ));
                c.path(&format!(
                    "M {} {} L {} {}",
                    num(top - 0.35 * dx),
                    num(y1 - 0.35 * h),
                    num(top),
                    num(y1)
                ));
            }
            Row::CapCup { qudit } => {
                let (xa, xb) = (geom.x(2 * qudit - 1), geom.x(2 * qudit));
                let (yc, yk) = (y0 + 0.4 * h, y1 - 0.4 * h);
                c.path(&format!(
                    "M {} {} C {} {}, {} {}, {} {}",
                    num(xa), num(y0), num(xa), num(yc), num(xb), num(yc), num(xb), num(y0)
                ));
                c.path(&format!(
                    "M {} {} C {} {}, {} {}, {} {}",
                    num(xa), num(y1), num(xa), num(yk), num(xb), num(yk), num(xb), num(y1)
                ));
                c.text(xa - 4.0, ym + 4.0, "end", "&#948;&#8315;&#185;");
            }
            Row::GroundCaps | Row::Measure => {
                let cap = matches!(row, Row::GroundCaps);
                let (base, tip) = if cap { (y1, y0 + 0.2 * h) } else { (y0, y1 - 0.2 * h) };
                for k in 1..=half_n {
                    let (xa, xb) = (geom.x(2 * k - 1), geom.x(2 * k));
                    c.path(&format!(
                        "M {} {} C {} {}, {} {}, {} {}",
                        num(xa), num(base), num(xa), num(tip), num(xb), num(tip), num(xb), num(base)
                    ));
                }
                c.text(geom.margin / 4.0, ym + 4.0, "start", &format!("&#948;^(-{half_n}/2)"));
            }
            Row::NonlocalBox { lo, hi, label } => {
                let (xl, xr) = (geom.x(*lo) - geom.pitch / 4.0, geom.x(*hi) + geom.pitch / 4.0);
                let (yt, yb) = (y0 + 0.2 * h, y1 - 0.2 * h);
                for s in *lo..=*hi {
                    c.vertical(geom.x(s), y0, yt);
                    c.vertical(geom.x(s), yb, y1);
                }
                writeln!(
                    c.body,
                    r#"    <rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
                    num(xl),
                    num(yt),
                    num(xr - xl),
                    num(yb - yt)
                )
                .unwrap();
                c.text((xl + xr) / 2.0, ym + 4.0, "middle", &format!("{label}*"));
            }
        }
        c.body.push_str("  </g>\n");
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    )
    .unwrap();
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n");
    out.push_str(&c.body);
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::diagram::{layout_expr, layout_word};
    use crate::lang::parse;

    #[test]
    fn identity_on_one_qudit_has_two_segments() {
        let lay = layout_word(&BraidWord::identity(), 1).unwrap();
        let svg = emit_svg(&lay, &Geometry::default());
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.starts_with("<?xml"));
        assert!(!svg.contains("href"));
    }

    #[test]
    fn emitting_twice_is_byte_identical() {
        let lay = layout_expr(&parse("(b[2,3]*b[3,4]*b[1,2]*b[2,3])|vac>").unwrap(), 2, true).unwrap();
        let g = Geometry { pitch: 30.0, row_height: 25.0, margin: 10.0 };
        assert_eq!(emit_svg(&lay, &g), emit_svg(&lay, &g));
        assert_eq!(emit_svg(&lay, &g).matches("<g class=\"row-").count(), 6);
    }

    #[test]
    fn geometry_sets_canvas_size() {
        let lay = layout_word(&BraidWord::new(vec![(1, 2)]), 1).unwrap();
        let g = Geometry { pitch: 50.0, row_height: 30.0, margin: 5.0 };
        assert!(emit_svg(&lay, &g).contains(r#"width="60" height="40""#));
    }
}
