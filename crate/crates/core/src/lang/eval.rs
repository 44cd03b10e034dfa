//! Evaluation of expressions into scalars, algebra elements, state operators and states.

use std::sync::Arc;

use num_rational::BigRational;

use super::ast::Expr;
use super::token::Symbol;
use crate::algebra::Element;
use crate::braid::{braid_element, BraidWord};
use crate::error::{Error, Result};
use crate::scalar::{Cyclo, ScalarContext};
use crate::state::{Atom, State, StateOp};

/// Linear combination of products of state-space atoms; used for expressions
/// that contain projectors E[k].
#[derive(Clone, Debug)]
pub struct Operator {
    pub terms: Vec<(Cyclo, StateOp)>,
}

impl Operator {
    fn from_element(x: Element) -> Self {
        let one = x.ctx().one();
        Operator {
            terms: vec![(one, StateOp::new(vec![Atom::Element(x)]))],
        }
    }

    fn mul(&self, other: &Operator) -> Operator {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut atoms = x.atoms.clone();
                atoms.extend(y.atoms.iter().cloned());
                terms.push((a * b, StateOp::new(atoms)));
            }
        }
        Operator { terms }
    }

    fn scale(&self, c: &Cyclo) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(a, x)| (a * c, x.clone())).collect(),
        }
    }

    fn adjoint(&self) -> Operator {
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| {
                let atoms = x
                    .atoms
                    .iter()
                    .rev()
                    .map(|atom| match atom {
                        Atom::Generator { index, exp } => Atom::Generator { index: *index, exp: -exp },
                        Atom::Projector(k) => Atom::Projector(*k),
                        Atom::Element(e) => Atom::Element(e.adjoint()),
                        Atom::Word(w) => Atom::Word(w.adjoint()),
                    })
                    .collect();
                (a.conj(), StateOp::new(atoms))
            })
            .collect();
        Operator { terms }
    }

    pub fn apply(&self, s: &State) -> Result<State> {
        let mut out = State::zero(s.ctx(), s.n());
        for (c, op) in &self.terms {
            out = out.add(&op.apply(s)?.scale(c))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Cyclo),
    Element(Element),
    /// An operator involving projectors; only meaningful applied to a state.
    Op(Operator),
    State(State),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Element(_) => "element",
            Value::Op(_) => "operator",
            Value::State(_) => "state",
        }
    }
}

struct Evaluator<'a> {
    ctx: &'a Arc<ScalarContext>,
    n: usize,
}

fn misuse(msg: impl Into<String>) -> Error {
    Error::ContextMisuse(msg.into())
}

impl Evaluator<'_> {
    fn to_element(&self, v: Value) -> Result<Element> {
        match v {
            Value::Scalar(c) => Ok(Element::scalar(self.ctx, self.n, c)),
            Value::Element(x) => Ok(x),
            other => Err(misuse(format!("expected an algebra element, found a {}", other.kind()))),
        }
    }

    fn to_operator(&self, v: Value) -> Result<Operator> {
        match v {
            Value::Op(o) => Ok(o),
            Value::State(_) => Err(misuse("a state cannot be used as an operator")),
            other => Ok(Operator::from_element(self.to_element(other)?)),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        let ctx = self.ctx;
        Ok(match e {
            Expr::Number { num, den } => Value::Scalar(ctx.rational(BigRational::new((*num).into(), (*den).into()))),
            Expr::Symbol(s) => Value::Scalar(
                match s {
                    Symbol::Q => ctx.q(),
                    Symbol::Zeta => ctx.zeta(),
                    Symbol::Omega => ctx.omega(),
                    Symbol::OmegaSqrt => ctx.omega_sqrt(),
                    Symbol::SqrtN => ctx.sqrt_n(),
                }
                .clone(),
            ),
            Expr::Gen(i) => Value::Element(Element::generator(ctx, self.n, *i, 1)?),
            Expr::Braid(k, l) => Value::Element(braid_element(ctx, self.n, *k, *l)?),
            Expr::Proj(k) => {
                crate::algebra::check_index(*k, self.n)?;
                Value::Op(Operator {
                    terms: vec![(ctx.one(), StateOp::new(vec![Atom::Projector(*k)]))],
                })
            }
            Expr::Pow(x, p) => self.pow(self.eval(x)?, *p)?,
            Expr::Adjoint(x) => match self.eval(x)? {
                Value::Scalar(c) => Value::Scalar(c.conj()),
                Value::Element(y) => Value::Element(y.adjoint()),
                Value::Op(o) => Value::Op(o.adjoint()),
                Value::State(_) => return Err(Error::Unsupported("adjoint of a state (bra vectors)".into())),
            },
            Expr::Vac(x) => {
                let g = State::ground(ctx, self.n)?;
                match self.eval(x)? {
                    Value::State(_) => return Err(misuse("|vac> applied to a state")),
                    Value::Scalar(c) => Value::State(g.scale(&c)),
                    Value::Element(y) => Value::State(g.apply_element(&y)?),
                    Value::Op(o) => Value::State(o.apply(&g)?),
                }
            }
            Expr::Neg(x) => self.scale(self.eval(x)?, &ctx.int(-1)),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let rhs = self.scale(self.eval(b)?, &ctx.int(-1));
                self.add(self.eval(a)?, rhs)?
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
        })
    }

    fn scale(&self, v: Value, c: &Cyclo) -> Value {
        match v {
            Value::Scalar(x) => Value::Scalar(&x * c),
            Value::Element(x) => Value::Element(x.scale(c)),
            Value::Op(o) => Value::Op(o.scale(c)),
            Value::State(s) => Value::State(s.scale(c)),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::State(x), Value::State(y)) => Value::State(x.add(&y)?),
            (Value::State(_), _) | (_, Value::State(_)) => {
                return Err(misuse("cannot add a state and an operator"))
            }
            (a @ Value::Op(_), b) | (a, b @ Value::Op(_)) => {
                let mut o = self.to_operator(a)?;
                o.terms.extend(self.to_operator(b)?.terms);
                Value::Op(o)
            }
            (a, b) => Value::Element(&self.to_element(a)? + &self.to_element(b)?),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::State(_), _) => return Err(misuse("a state can only appear rightmost in a product")),
            (Value::Scalar(x), other) | (other, Value::Scalar(x)) => self.scale(other, &x),
            (Value::Element(x), Value::State(s)) => Value::State(s.apply_element(&x)?),
            (Value::Op(o), Value::State(s)) => Value::State(o.apply(&s)?),
            (Value::Element(x), Value::Element(y)) => Value::Element(&x * &y),
            (a, b) => Value::Op(self.to_operator(a)?.mul(&self.to_operator(b)?)),
        })
    }

    fn pow(&self, v: Value, p: i64) -> Result<Value> {
        match v {
            Value::Scalar(c) => Ok(Value::Scalar(c.pow(p)?)),
            Value::Element(x) => {
                let base = if p >= 0 { x } else { invert(&x)? };
                Ok(Value::Element(base.pow(p.unsigned_abs() as u32)))
            }
            Value::Op(o) if p >= 0 => {
                let mut acc = Operator::from_element(Element::identity(self.ctx, self.n));
                for _ in 0..p {
                    acc = acc.mul(&o);
                }
                Ok(Value::Op(acc))
            }
            Value::Op(_) => Err(Error::Unsupported("negative powers of projector expressions".into())),
            Value::State(_) => Err(misuse("powers of a state")),
        }
    }
}

/// Inverse of a unitary element (x† when x x† = 1) or of a single scaled monomial.
fn invert(x: &Element) -> Result<Element> {
    let adj = x.adjoint();
    if (x * &adj) == Element::identity(x.ctx(), x.n()) {
        return Ok(adj);
    }
    if x.len() == 1 {
        let (m, c) = x.terms().iter().next().expect("one term");
        let unit = Element::monomial(x.ctx(), x.n(), m.clone(), x.ctx().one()).adjoint();
        return Ok(unit.scale(&c.inv()?));
    }
    Err(Error::Unsupported("inverse of a non-unitary element".into()))
}

/// Evaluates an expression in an algebra with `n` qudits. Expressions whose
/// value is an operator involving E[k] must be applied to `|vac>`.
pub fn eval(e: &Expr, ctx: &Arc<ScalarContext>, n: usize) -> Result<Value> {
    if n == 0 {
        return Err(Error::InvalidQuditCount(0));
    }
    match (Evaluator { ctx, n }).eval(e)? {
        Value::Op(_) => Err(misuse("E[k] is a state-space operator; apply the expression to |vac>")),
        v => Ok(v),
    }
}

/// Like [`eval`], but applies operator-valued results to the ground state
/// implicitly. Used where a vacuum context is given by the command.
pub fn eval_on_vacuum(e: &Expr, ctx: &Arc<ScalarContext>, n: usize) -> Result<State> {
    if n == 0 {
        return Err(Error::InvalidQuditCount(0));
    }
    let g = State::ground(ctx, n)?;
    match (Evaluator { ctx, n }).eval(e)? {
        Value::State(s) => Ok(s),
        Value::Scalar(c) => Ok(g.scale(&c)),
        Value::Element(x) => g.apply_element(&x),
        Value::Op(o) => o.apply(&g),
    }
}

/// Smallest qudit count that accommodates every index in the expression.
pub fn required_qudits(e: &Expr) -> usize {
    fn walk(e: &Expr) -> usize {
        match e {
            Expr::Number { .. } | Expr::Symbol(_) => 1,
            Expr::Gen(i) => i.div_ceil(2),
            Expr::Proj(k) => *k,
            Expr::Braid(k, l) => (*k.max(l)).div_ceil(2),
            Expr::Pow(x, _) | Expr::Adjoint(x) | Expr::Vac(x) | Expr::Neg(x) => walk(x),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => walk(a).max(walk(b)),
        }
    }
    walk(e).max(1)
}

/// Reads a braid word from a product of `b[k,l]` atoms (adjoints and integer
/// powers allowed); `1` is the empty word.
impl std::str::FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn collect(e: &Expr, out: &mut Vec<(usize, usize)>) -> Result<()> {
            match e {
                Expr::Number { num: 1, den: 1 } => {}
                Expr::Braid(k, l) => out.push((*k, *l)),
                Expr::Mul(a, b) => {
                    collect(a, out)?;
                    collect(b, out)?;
                }
                Expr::Adjoint(x) => {
                    let mut inner = Vec::new();
                    collect(x, &mut inner)?;
                    out.extend(inner.into_iter().rev().map(|(k, l)| (l, k)));
                }
                Expr::Pow(x, p) => {
                    let mut inner = Vec::new();
                    collect(x, &mut inner)?;
                    if *p < 0 {
                        inner = inner.into_iter().rev().map(|(k, l)| (l, k)).collect();
                    }
                    for _ in 0..p.unsigned_abs() {
                        out.extend(inner.iter().copied());
                    }
                }
                other => {
                    return Err(Error::Precondition(format!("'{other}' is not part of a braid word")));
                }
            }
            Ok(())
        }
        let mut factors = Vec::new();
        collect(&super::ast::parse(s)?, &mut factors)?;
        Ok(BraidWord::new(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::ast::parse;
    use crate::state::vev;

    fn run(text: &str, dim: u32, n: usize) -> Result<Value> {
        eval(&parse(text).unwrap(), &ScalarContext::new(dim).unwrap(), n)
    }

    fn elem(text: &str, dim: u32, n: usize) -> Element {
        match run(text, dim, n).unwrap() {
            Value::Element(x) => x,
            Value::Scalar(c) => Element::scalar(&ScalarContext::new(dim).unwrap(), n, c),
            other => panic!("expected element, got {other:?}"),
        }
    }

    #[test]
    fn unitarity_through_the_language() {
        let ctx = ScalarContext::new(3).unwrap();
        assert_eq!(elem("b[1,2]*b[2,1]", 3, 1), Element::identity(&ctx, 1));
    }

    #[test]
    fn generator_order_normalises() {
        let ctx = ScalarContext::new(3).unwrap();
        assert_eq!(elem("c[1]^3", 3, 1), Element::identity(&ctx, 1));
        assert_eq!(elem("c[1]^-1", 3, 1), elem("c[1]^2", 3, 1));
        assert_eq!(elem("b[1,2]^-1", 3, 1), elem("b[2,1]", 3, 1));
    }

    #[test]
    fn omega_has_unit_modulus() {
        match run("omega*omega'", 5, 1).unwrap() {
            Value::Scalar(c) => assert!(c.is_one()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projector_needs_vacuum() {
        assert!(matches!(run("b[1,2]*E[1]", 3, 1), Err(Error::ContextMisuse(_))));
        match run("(b[1,2]*E[1])|vac>", 3, 1).unwrap() {
            Value::State(s) => {
                let ctx = s.ctx().clone();
                let g = State::ground(&ctx, 1).unwrap();
                assert_eq!(s, g.scale(&ctx.omega_half_pow(-1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn slide_left_side_is_the_ground_state() {
        match run("(b[2,3]*b[3,4]*b[1,2]*b[2,3])|vac>", 4, 2).unwrap() {
            Value::State(s) => assert_eq!(s, State::ground(s.ctx(), 2).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn states_only_on_the_right() {
        assert!(matches!(run("c[1]|vac>*c[1]", 3, 1), Err(Error::ContextMisuse(_))));
        assert!(matches!(run("c[1]|vac>+c[1]", 3, 1), Err(Error::ContextMisuse(_))));
        assert!(matches!(run("c[3]", 3, 1), Err(Error::IndexOutOfRange { index: 3, max: 2 })));
    }

    #[test]
    fn sums_and_scalars() {
        let ctx = ScalarContext::new(2).unwrap();
        let x = elem("(c[1]+c[2])*(c[1]+c[2])", 2, 1);
        assert_eq!(x, Element::scalar(&ctx, 1, ctx.int(2)));
        let y = elem("3/2*c[1]-1/2*c[1]", 2, 1);
        assert_eq!(y, Element::generator(&ctx, 1, 1, 1).unwrap());
    }

    #[test]
    fn vacuum_expectation_of_operator_expression() {
        let ctx = ScalarContext::new(3).unwrap();
        let s = eval_on_vacuum(&parse("E[1]*b[2,3]").unwrap(), &ctx, 2).unwrap();
        let g = State::ground(&ctx, 2).unwrap();
        let v = g.inner(&s).unwrap();
        assert_eq!(v, vev(&braid_element(&ctx, 2, 2, 3).unwrap()).unwrap());
    }

    #[test]
    fn braid_words_parse() {
        let w: BraidWord = "b[1,2]*b[2,3]'*b[3,4]^2".parse().unwrap();
        assert_eq!(w.factors(), &[(1, 2), (3, 2), (3, 4), (3, 4)]);
        assert!("1".parse::<BraidWord>().unwrap().is_empty());
        assert!(matches!("b[1,2]+b[2,3]".parse::<BraidWord>(), Err(Error::Precondition(_))));
    }

    #[test]
    fn qudit_inference() {
        assert_eq!(required_qudits(&parse("b[3,4]*c[5]").unwrap()), 3);
        assert_eq!(required_qudits(&parse("E[2]").unwrap()), 2);
        assert_eq!(required_qudits(&parse("q").unwrap()), 1);
    }
}
