//! Braid-word and state-expression diagrams as rows of graphical primitives.
//!
//! Rows run top to bottom in order of application: for `x|vac>` the ground
//! caps come first, followed by the factors of `x` from rightmost to leftmost,
//! and an identity row carrying the open strand ends. Rendering is a pure
//! transcription and never looks at scalar values.

mod svg;
mod tikz;

use std::path::Path;

pub use svg::emit_svg;
pub use tikz::emit_tikz;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::lang::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Row {
    /// All strands straight through.
    Identity,
    /// `c_strand^exp`, label drawn immediately left of the strand.
    ChargeLabel { strand: usize, exp: i64 },
    /// Crossing of strands `left` and `left + 1`; positive is b_{l,l+1}, negative b_{l+1,l}.
    Crossing { left: usize, positive: bool },
    /// Cup-cap replacing strands 2k−1, 2k (δ E_k).
    CapCup { qudit: usize },
    /// One cap per qudit (δ^{n/2} |Ω⟩).
    GroundCaps,
    /// One cup per qudit (δ^{n/2} ⟨Ω|).
    Measure,
    /// A braid b_{kl} with |k − l| > 1, drawn as a box over strands lo..=hi.
    NonlocalBox { lo: usize, hi: usize, label: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    qudits: usize,
    rows: Vec<Row>,
}

impl Layout {
    pub fn new(qudits: usize) -> Result<Self> {
        if qudits == 0 {
            return Err(Error::InvalidQuditCount(0));
        }
        Ok(Layout { qudits, rows: Vec::new() })
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn strands(&self) -> usize {
        2 * self.qudits
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    fn check_strand(&self, s: usize) -> Result<()> {
        crate::algebra::check_index(s, self.strands())
    }

    /// Appends a row below the existing ones, validating its indices.
    pub fn push(&mut self, row: Row) -> Result<()> {
        match &row {
            Row::Identity | Row::GroundCaps | Row::Measure => {}
            Row::ChargeLabel { strand, .. } => self.check_strand(*strand)?,
            Row::Crossing { left, .. } => {
                self.check_strand(*left)?;
                self.check_strand(left + 1)?;
            }
            Row::CapCup { qudit } => crate::algebra::check_index(*qudit, self.qudits)?,
            Row::NonlocalBox { lo, hi, .. } => {
                self.check_strand(*lo)?;
                self.check_strand(*hi)?;
                if hi <= lo {
                    return Err(Error::Layout(format!("box spans an empty strand range {lo}..{hi}")));
                }
            }
        }
        self.rows.push(row);
        Ok(())
    }

    /// Appends a cup-cap on the strand pair `(a, b)`, which must be the two
    /// strands of one qudit.
    pub fn push_cap_cup_on(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_strand(a)?;
        self.check_strand(b)?;
        let (lo, hi) = (a.min(b), a.max(b));
        if lo % 2 == 0 || hi != lo + 1 {
            return Err(Error::Layout(format!(
                "cup-cap on strands ({lo},{hi}) straddles qudits; only (2k-1, 2k) is allowed"
            )));
        }
        self.push(Row::CapCup { qudit: hi / 2 })
    }

    fn push_braid(&mut self, k: usize, l: usize) -> Result<()> {
        if k == l {
            return Err(Error::DegenerateBraid(k));
        }
        let (lo, hi) = (k.min(l), k.max(l));
        if hi == lo + 1 {
            self.push(Row::Crossing { left: lo, positive: k < l })
        } else {
            self.push(Row::NonlocalBox {
                lo,
                hi,
                label: format!("b{k},{l}"),
            })
        }
    }
}

/// Layout of a braid word acting on `n` qudits; the empty word is one identity row.
pub fn layout_word(w: &BraidWord, n: usize) -> Result<Layout> {
    let mut lay = Layout::new(n)?;
    w.validate(n)?;
    if w.is_empty() {
        lay.push(Row::Identity)?;
    }
    for &(k, l) in w.factors().iter().rev() {
        lay.push_braid(k, l)?;
    }
    Ok(lay)
}

#[derive(Clone, Debug)]
enum Factor {
    Gen(usize, i64),
    Proj(usize),
    Braid(usize, usize),
}

impl Factor {
    fn adjoint(self) -> Factor {
        match self {
            Factor::Gen(i, e) => Factor::Gen(i, -e),
            Factor::Proj(k) => Factor::Proj(k),
            Factor::Braid(k, l) => Factor::Braid(l, k),
        }
    }
}

fn is_scalar(e: &Expr) -> bool {
    match e {
        Expr::Number { .. } | Expr::Symbol(_) => true,
        Expr::Pow(x, _) | Expr::Adjoint(x) | Expr::Neg(x) => is_scalar(x),
        Expr::Mul(a, b) => is_scalar(a) && is_scalar(b),
        _ => false,
    }
}

/// Factors of a product in written (left-to-right) order; scalars are dropped.
fn factors(e: &Expr, out: &mut Vec<Factor>) -> Result<()> {
    if is_scalar(e) {
        return Ok(());
    }
    match e {
        Expr::Gen(i) => out.push(Factor::Gen(*i, 1)),
        Expr::Proj(k) => out.push(Factor::Proj(*k)),
        Expr::Braid(k, l) => out.push(Factor::Braid(*k, *l)),
        Expr::Pow(x, p) if matches!(**x, Expr::Gen(_)) => {
            let Expr::Gen(i) = **x else { unreachable!() };
            out.push(Factor::Gen(i, *p));
        }
        Expr::Pow(x, p) => {
            let mut inner = Vec::new();
            factors(x, &mut inner)?;
            if *p < 0 {
                inner = inner.into_iter().rev().map(Factor::adjoint).collect();
            }
            for _ in 0..p.unsigned_abs() {
                out.extend(inner.iter().cloned());
            }
        }
        Expr::Adjoint(x) => {
            let mut inner = Vec::new();
            factors(x, &mut inner)?;
            out.extend(inner.into_iter().rev().map(Factor::adjoint));
        }
        Expr::Neg(x) => factors(x, out)?,
        Expr::Mul(a, b) => {
            factors(a, out)?;
            factors(b, out)?;
        }
        Expr::Add(..) | Expr::Sub(..) => {
            return Err(Error::Unsupported("diagrams of sums; draw each summand separately".into()))
        }
        Expr::Vac(_) => return Err(Error::Layout("|vac> may only terminate the whole expression".into())),
        Expr::Number { .. } | Expr::Symbol(_) => {}
    }
    Ok(())
}

fn push_factor(lay: &mut Layout, f: &Factor) -> Result<()> {
    match *f {
        Factor::Gen(i, e) => lay.push(Row::ChargeLabel { strand: i, exp: e }),
        Factor::Proj(k) => lay.push(Row::CapCup { qudit: k }),
        Factor::Braid(k, l) => lay.push_braid(k, l),
    }
}

/// Layout of an operator or state expression (a product, optionally applied
/// to `|vac>`). Pass `measure` to close the diagram with ⟨Ω|.
pub fn layout_expr(e: &Expr, n: usize, measure: bool) -> Result<Layout> {
    let mut lay = Layout::new(n)?;
    let (body, on_vacuum) = match e {
        Expr::Vac(x) => (&**x, true),
        other => (other, false),
    };
    let mut fs = Vec::new();
    factors(body, &mut fs)?;
    if on_vacuum {
        lay.push(Row::GroundCaps)?;
    }
    for f in fs.iter().rev() {
        push_factor(&mut lay, f)?;
    }
    if measure {
        lay.push(Row::Measure)?;
    } else if on_vacuum || fs.is_empty() {
        lay.push(Row::Identity)?;
    }
    Ok(lay)
}

/// Fixed drawing constants, in SVG user units (TikZ uses them divided by 40, in cm).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometry {
    pub pitch: f64,
    pub row_height: f64,
    pub margin: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            pitch: 40.0,
            row_height: 40.0,
            margin: 20.0,
        }
    }
}

impl Geometry {
    pub(crate) fn x(&self, strand: usize) -> f64 {
        self.margin + (strand as f64 - 1.0) * self.pitch
    }

    pub(crate) fn y(&self, row: usize) -> f64 {
        self.margin + row as f64 * self.row_height
    }
}

/// Renders and writes SVG to `path`.
pub fn write_svg(layout: &Layout, geom: &Geometry, path: &Path) -> Result<()> {
    std::fs::write(path, emit_svg(layout, geom))?;
    Ok(())
}

/// Renders and writes a TikZ fragment to `path`.
pub fn write_tikz(layout: &Layout, geom: &Geometry, path: &Path) -> Result<()> {
    std::fs::write(path, emit_tikz(layout, geom))?;
    Ok(())
}

/// Strands not involved in the primitive of a row.
pub(crate) fn passive_strands(row: &Row, strands: usize) -> Vec<usize> {
    (1..=strands)
        .filter(|&s| match row {
            Row::Identity | Row::ChargeLabel { .. } => true,
            Row::Crossing { left, .. } => s != *left && s != left + 1,
            Row::CapCup { qudit } => s != 2 * qudit - 1 && s != 2 * qudit,
            Row::GroundCaps | Row::Measure => false,
            Row::NonlocalBox { lo, hi, .. } => s < *lo || s > *hi,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;
    use crate::state::slide_word;

    #[test]
    fn empty_word_is_one_identity_row() {
        let lay = layout_word(&BraidWord::identity(), 2).unwrap();
        assert_eq!(lay.strands(), 4);
        assert_eq!(lay.rows(), &[Row::Identity]);
    }

    #[test]
    fn single_adjacent_braid_is_a_crossing() {
        let lay = layout_word(&BraidWord::new(vec![(2, 3)]), 2).unwrap();
        assert_eq!(lay.rows(), &[Row::Crossing { left: 2, positive: true }]);
        let lay = layout_word(&BraidWord::new(vec![(3, 2)]), 2).unwrap();
        assert_eq!(lay.rows(), &[Row::Crossing { left: 2, positive: false }]);
    }

    #[test]
    fn rightmost_factor_is_drawn_first() {
        let lay = layout_word(&BraidWord::new(vec![(1, 2), (2, 3)]), 2).unwrap();
        assert_eq!(
            lay.rows(),
            &[Row::Crossing { left: 2, positive: true }, Row::Crossing { left: 1, positive: true }]
        );
    }

    #[test]
    fn nonlocal_braids_become_boxes() {
        let lay = layout_word(&BraidWord::new(vec![(4, 2)]), 2).unwrap();
        assert_eq!(
            lay.rows(),
            &[Row::NonlocalBox {
                lo: 2,
                hi: 4,
                label: "b4,2".into()
            }]
        );
    }

    #[test]
    fn projector_is_an_in_place_cap_cup() {
        let lay = layout_expr(&parse("E[1]").unwrap(), 2, false).unwrap();
        assert_eq!(lay.rows(), &[Row::CapCup { qudit: 1 }]);
        let mut lay = Layout::new(2).unwrap();
        assert!(matches!(lay.push_cap_cup_on(2, 3), Err(Error::Layout(_))));
        lay.push_cap_cup_on(3, 4).unwrap();
        assert_eq!(lay.rows(), &[Row::CapCup { qudit: 2 }]);
    }

    #[test]
    fn slide_left_side_has_caps_atop_four_crossings() {
        let e = parse("(b[2,3]*b[3,4]*b[1,2]*b[2,3])|vac>").unwrap();
        let lay = layout_expr(&e, 2, false).unwrap();
        assert_eq!(lay.rows().len(), 6);
        assert_eq!(lay.rows()[0], Row::GroundCaps);
        assert!(lay.rows()[1..5].iter().all(|r| matches!(r, Row::Crossing { .. })));
        // same rows as the word itself, framed by caps and open ends
        let w = layout_word(&slide_word(1, 2), 2).unwrap();
        assert_eq!(&lay.rows()[1..5], w.rows());
    }

    #[test]
    fn scalars_are_transparent_and_adjoint_reverses() {
        let a = layout_expr(&parse("omega*sqrtN^-1*b[1,2]*c[3]^2").unwrap(), 2, false).unwrap();
        assert_eq!(
            a.rows(),
            &[Row::ChargeLabel { strand: 3, exp: 2 }, Row::Crossing { left: 1, positive: true }]
        );
        let b = layout_expr(&parse("(b[1,2]*c[3]^2)'").unwrap(), 2, false).unwrap();
        assert_eq!(
            b.rows(),
            &[Row::Crossing { left: 1, positive: false }, Row::ChargeLabel { strand: 3, exp: -2 }]
        );
        assert!(matches!(layout_expr(&parse("c[1]+c[2]").unwrap(), 1, false), Err(Error::Unsupported(_))));
        assert!(matches!(layout_expr(&parse("b[1,5]").unwrap(), 2, false), Err(Error::IndexOutOfRange { .. })));
    }
}
