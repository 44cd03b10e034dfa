use std::fmt::Write;

use super::{passive_strands, Geometry, Layout, Row};

/// Macro definitions, each guarded by `\providecommand` so a document that
/// already defines them keeps its own versions.
const PREAMBLE: &str = r"% braid between (#1,#2) on top and (#3,#4) below; the strand starting at #1 passes over
\providecommand{\fbraid}[4]{%
  \draw (#1,#2) .. controls (#1,{(#2+#4)/2}) and (#3,{(#2+#4)/2}) .. (#3,#4);%
  \draw[white,line width=4pt] ($(#3,#2)!0.35!(#1,#4)$) -- ($(#3,#2)!0.65!(#1,#4)$);%
  \draw (#3,#2) -- (#1,#4);}
% cap of width #3 and height #4 whose feet stand at (#1,#2); #5 is a label
\providecommand{\fqudit}[5]{%
  \draw (#1,#2) .. controls (#1,{#2+#4}) and ({#1+#3},{#2+#4}) .. ({#1+#3},#2);%
  \node at ({#1+#3/2},{#2+#4/2}) {#5};}
% cup of width #3 and depth #4 hanging from (#1,#2); #5 is a label
\providecommand{\fmeasure}[5]{%
  \draw (#1,#2) .. controls (#1,{#2-#4}) and ({#1+#3},{#2-#4}) .. ({#1+#3},#2);%
  \node at ({#1+#3/2},{#2-#4/2}) {#5};}
";

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// TikZ fragment (requires the `calc` library) built from the same primitive
/// macros the figures use.
pub fn emit_tikz(layout: &Layout, geom: &Geometry) -> String {
    let scale = 1.0 / 40.0;
    let x = |s: usize| num(geom.x(s) * scale);
    let y = |r: usize| num(-geom.y(r) * scale);
    let h = geom.row_height * scale;
    let w = geom.pitch * scale;
    let n = layout.qudits();

    let mut out = String::from(PREAMBLE);
    out.push_str("\\begin{tikzpicture}\n");
    for (r, row) in layout.rows().iter().enumerate() {
        writeln!(out, "  % row {r}").unwrap();
        for s in passive_strands(row, layout.strands()) {
            writeln!(out, "  \\draw ({},{}) -- ({},{});", x(s), y(r), x(s), y(r + 1)).unwrap();
        }
        match row {
            Row::Identity => {}
            Row::ChargeLabel { strand, exp } => {
                let ym = num(-(geom.y(r) + geom.row_height / 2.0) * scale);
                writeln!(out, "  \\node[left] at ({},{ym}) {{${exp}$}};", x(*strand)).unwrap();
            }
            Row::Crossing { left, positive } => {
                let (top, bottom) = if *positive { (*left, left + 1) } else { (left + 1, *left) };
                writeln!(out, "  \\fbraid{{{}}}{{{}}}{{{}}}{{{}}}", x(top), y(r), x(bottom), y(r + 1)).unwrap();
            }
            Row::CapCup { qudit } => {
                let a = 2 * qudit - 1;
                writeln!(out, "  \\fmeasure{{{}}}{{{}}}{{{}}}{{{}}}{{}}", x(a), y(r), num(w), num(0.4 * h)).unwrap();
                writeln!(
                    out,
                    "  \\fqudit{{{}}}{{{}}}{{{}}}{{{}}}{{$\\delta^{{-1}}$}}",
                    x(a),
                    y(r + 1),
                    num(w),
                    num(0.4 * h)
                )
                .unwrap();
            }
            Row::GroundCaps => {
                for k in 1..=n {
                    writeln!(out, "  \\fqudit{{{}}}{{{}}}{{{}}}{{{}}}{{}}", x(2 * k - 1), y(r + 1), num(w), num(0.8 * h))
                        .unwrap();
                }
                writeln!(out, "  % normalisation: delta^(-{n}/2)").unwrap();
            }
            Row::Measure => {
                for k in 1..=n {
                    writeln!(out, "  \\fmeasure{{{}}}{{{}}}{{{}}}{{{}}}{{}}", x(2 * k - 1), y(r), num(w), num(0.8 * h))
                        .unwrap();
                }
                writeln!(out, "  % normalisation: delta^(-{n}/2)").unwrap();
            }
            Row::NonlocalBox { lo, hi, label } => {
                let xl = num((geom.x(*lo) - geom.pitch / 4.0) * scale);
                let xr = num((geom.x(*hi) + geom.pitch / 4.0) * scale);
                let yt = num(-(geom.y(r) + 0.2 * geom.row_height) * scale);
                let yb = num(-(geom.y(r + 1) - 0.2 * geom.row_height) * scale);
                for s in *lo..=*hi {
                    writeln!(out, "  \\draw ({},{}) -- ({},{yt});", x(s), y(r), x(s)).unwrap();
                    writeln!(out, "  \\draw ({},{yb}) -- ({},{});", x(s), x(s), y(r + 1)).unwrap();
                }
                writeln!(
                    out,
                    "  \\draw[fill=white] ({xl},{yt}) rectangle ({xr},{yb}) node[midway] {{${label}^{{*}}$}};"
                )
                .unwrap();
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::diagram::layout_word;

    #[test]
    fn crossings_use_the_braid_macro() {
        let lay = layout_word(&BraidWord::new(vec![(2, 3), (3, 2)]), 2).unwrap();
        let t = emit_tikz(&lay, &Geometry::default());
        assert_eq!(t.matches("  \\fbraid{").count(), 2);
        assert!(t.contains("\\providecommand{\\fqudit}"));
        assert_eq!(t, emit_tikz(&lay, &Geometry::default()));
    }
}
