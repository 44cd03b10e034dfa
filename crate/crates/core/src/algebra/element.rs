use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::monomial::{mono_mul, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{Backend, Cyclo, ScalarContext};

/// An element of C_{2n}^{(N)} in normal form: a sparse sum of normal-ordered
/// monomials with nonzero cyclotomic coefficients.
#[derive(Clone)]
pub struct Element {
    ctx: Arc<ScalarContext>,
    n: usize,
    terms: BTreeMap<Monomial, Cyclo>,
}

impl Element {
    pub fn zero(ctx: &Arc<ScalarContext>, n: usize) -> Self {
        Element {
            ctx: ctx.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ctx: &Arc<ScalarContext>, n: usize) -> Self {
        Self::scalar(ctx, n, ctx.one())
    }

    pub fn scalar(ctx: &Arc<ScalarContext>, n: usize, c: Cyclo) -> Self {
        Self::monomial(ctx, n, Monomial::identity(2 * n), c)
    }

    /// `c · m`; a zero coefficient yields the zero element.
    pub fn monomial(ctx: &Arc<ScalarContext>, n: usize, m: Monomial, c: Cyclo) -> Self {
        assert_eq!(m.len(), 2 * n, "monomial length must be 2n");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            ctx: ctx.clone(),
            n,
            terms,
        }
    }

    /// Generator power c_i^exp (1-based `i`, any integer exponent).
    pub fn generator(ctx: &Arc<ScalarContext>, n: usize, i: usize, exp: i64) -> Result<Self> {
        check_index(i, 2 * n)?;
        let m = Monomial::generator(2 * n, i, exp, ctx.dim());
        Ok(Self::monomial(ctx, n, m, ctx.one()))
    }

    /// Builds an element from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(ctx: &Arc<ScalarContext>, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Cyclo)>,
    {
        let mut out = Self::zero(ctx, n);
        for (exps, c) in terms {
            if exps.len() != 2 * n {
                return Err(Error::Precondition(format!(
                    "monomial has {} exponents, expected {}",
                    exps.len(),
                    2 * n
                )));
            }
            out.add_term(Monomial::from_exps(&exps, ctx.dim()), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    /// Number of qudits n (the algebra has 2n generators).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> usize {
        2 * self.n
    }

    pub fn dim(&self) -> u32 {
        self.ctx.dim()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclo> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyclo {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Coefficient of the identity monomial.
    pub fn constant_term(&self) -> Cyclo {
        self.coeff(&Monomial::identity(self.generators()))
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        self.n == other.n && self.dim() == other.dim()
    }

    fn expect_same(&self, other: &Element) {
        assert!(
            self.same_algebra(other),
            "elements from different algebras: (N={}, n={}) vs (N={}, n={})",
            self.dim(),
            self.n,
            other.dim(),
            other.n
        );
    }

    /// Fallible product for callers that cannot guarantee matching algebras.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self * other)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self + other)
    }

    pub fn scale(&self, alpha: &Cyclo) -> Element {
        if alpha.is_zero() {
            return Self::zero(&self.ctx, self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * alpha))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Element {
            ctx: self.ctx.clone(),
            n: self.n,
            terms,
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Element {
        self.scale(&self.ctx.rational(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Self::identity(&self.ctx, self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// x†: coefficients conjugated, each monomial reversed and generator
    /// exponents negated (c_i† = c_i^{N−1}), then re-normalised.
    pub fn adjoint(&self) -> Element {
        let dim = self.dim();
        let len = self.generators();
        let mut out = Self::zero(&self.ctx, self.n);
        for (m, c) in &self.terms {
            // (c_1^{r1} ⋯ c_L^{rL})† = c_L^{-rL} ⋯ c_1^{-r1}
            let mut phase = 0u32;
            let mut acc = Monomial::identity(len);
            for i in (0..len).rev() {
                let e = m.exps()[i];
                if e == 0 {
                    continue;
                }
                let g = Monomial::generator(len, i + 1, -(e as i64), dim);
                let (p, t) = mono_mul(&acc, &g, dim);
                phase = (phase + p) % dim;
                acc = t;
            }
            let coeff = c.conj().mul_root(self.ctx.q_exponent(phase as i64));
            out.add_term(acc, coeff);
        }
        out
    }

    /// Sector j holds the monomials of charge Σ r_i ≡ j (mod N).
    pub fn charge_decompose(&self) -> Vec<Element> {
        let dim = self.dim();
        let mut sectors = vec![Self::zero(&self.ctx, self.n); dim as usize];
        for (m, c) in &self.terms {
            sectors[m.charge(dim) as usize].terms.insert(m.clone(), c.clone());
        }
        sectors
    }

    /// The charge operator C: each monomial scaled by q^{charge}.
    pub fn charge_apply(&self) -> Element {
        let dim = self.dim();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.mul_root(self.ctx.q_exponent(m.charge(dim) as i64))))
            .collect();
        Element {
            ctx: self.ctx.clone(),
            n: self.n,
            terms,
        }
    }

    /// Equality under a chosen backend; `Exact` coincides with `==`.
    pub fn eq_with(&self, other: &Element, backend: Backend) -> bool {
        if !self.same_algebra(other) {
            return false;
        }
        match backend {
            Backend::Exact => self == other,
            Backend::Float => {
                let zero = self.ctx.zero();
                let keys: std::collections::BTreeSet<&Monomial> =
                    self.terms.keys().chain(other.terms.keys()).collect();
                keys.into_iter().all(|m| {
                    let a = self.terms.get(m).unwrap_or(&zero);
                    let b = other.terms.get(m).unwrap_or(&zero);
                    self.ctx.scalar_eq(a, b, Backend::Float)
                })
            }
        }
    }

    /// Remaps generator indices: c_i ↦ c_{map(i)} in an algebra with `target_n`
    /// qudits. `map` is a list of `(source, target)` pairs (1-based); it must
    /// cover every generator that occurs in `self` and be strictly increasing
    /// there, so that normal order is preserved.
    pub fn subalgebra_map(&self, map: &[(usize, usize)], target_n: usize) -> Result<Element> {
        let lookup: BTreeMap<usize, usize> = map.iter().copied().collect();
        if lookup.len() != map.len() {
            return Err(Error::Precondition("index map lists a source index twice".into()));
        }
        let mut used = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    used.insert(i + 1);
                }
            }
        }
        let mut last = 0usize;
        for &src in &used {
            let dst = *lookup.get(&src).ok_or_else(|| {
                Error::Precondition(format!("index map does not cover generator c_{src}"))
            })?;
            check_index(dst, 2 * target_n)?;
            if dst <= last {
                return Err(Error::NonMonotoneMap);
            }
            last = dst;
        }
        let len = 2 * target_n;
        let mut out = Self::zero(&self.ctx, target_n);
        for (m, c) in &self.terms {
            let mut exps = vec![0i64; len];
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    exps[lookup[&(i + 1)] - 1] = e as i64;
                }
            }
            out.add_term(Monomial::from_exps(&exps, self.dim()), c.clone());
        }
        Ok(out)
    }
}

pub(crate) fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::IndexOutOfRange { index: i, max })
    } else {
        Ok(())
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[N={}, n={}]{{", self.dim(), self.n)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:?}: {}", self.ctx.format_scalar(c))?;
        }
        write!(f, "}}")
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.expect_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            ctx: self.ctx.clone(),
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.expect_same(rhs);
        let dim = self.dim();
        let mut raw: BTreeMap<Monomial, Vec<(u32, BigRational)>> = BTreeMap::new();
        for (r, a) in &self.terms {
            for (s, b) in &rhs.terms {
                let (phase, t) = mono_mul(r, s, dim);
                let shift = self.ctx.q_exponent(phase as i64) as u32;
                a.mul_into(b, shift, raw.entry(t).or_default());
            }
        }
        let field = self.ctx.field();
        let terms = raw
            .into_iter()
            .map(|(m, v)| (m, Cyclo::from_raw(field, v)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Element {
            ctx: self.ctx.clone(),
            n: self.n,
            terms,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
