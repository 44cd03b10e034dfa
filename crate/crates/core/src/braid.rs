//! Braid elements b_{kl} and exact checks of the identities they satisfy.
//!
//! For k < l, b_{kl} = (ω^{1/2}/√N) Σ_i c_k^i c_l^{−i}; for k > l the prefactor
//! is ω^{−1/2}. Words are applied right to left, as operators.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{certify_equal, certify_equal_at, check_index, Certificate, Element, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{gauss_diagnostics, Backend, ScalarContext};

/// A product of braid elements, written left to right, acting right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    factors: Vec<(usize, usize)>,
}

impl BraidWord {
    pub fn new(factors: Vec<(usize, usize)>) -> Self {
        BraidWord { factors }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Largest generator index used (0 for the empty word).
    pub fn max_index(&self) -> usize {
        self.factors.iter().map(|&(k, l)| k.max(l)).max().unwrap_or(0)
    }

    /// The word whose value is the adjoint: reversed, each pair flipped.
    pub fn adjoint(&self) -> BraidWord {
        BraidWord {
            factors: self.factors.iter().rev().map(|&(k, l)| (l, k)).collect(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for &(k, l) in &self.factors {
            check_pair(k, l, n)?;
        }
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    /// Expression-language form, e.g. `b[1,2]*b[2,3]`; `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (k, l)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "b[{k},{l}]")?;
        }
        Ok(())
    }
}

fn check_pair(k: usize, l: usize, n: usize) -> Result<()> {
    check_index(k, 2 * n)?;
    check_index(l, 2 * n)?;
    if k == l {
        return Err(Error::DegenerateBraid(k));
    }
    Ok(())
}

fn gen(ctx: &Arc<ScalarContext>, n: usize, i: usize, e: i64) -> Element {
    Element::generator(ctx, n, i, e).expect("generator index validated by caller")
}

/// The neutral pair c_k^a c_l^{−a}, normal-ordered.
pub fn neutral_pair(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, a: i64) -> Result<Element> {
    check_index(k, 2 * n)?;
    check_index(l, 2 * n)?;
    Ok(&gen(ctx, n, k, a) * &gen(ctx, n, l, -a))
}

pub fn braid_element(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize) -> Result<Element> {
    check_pair(k, l, n)?;
    let sign = if k < l { 1 } else { -1 };
    let prefactor = &ctx.omega_half_pow(sign) * &ctx.inv_sqrt_n();
    let mut sum = Element::zero(ctx, n);
    for i in 0..ctx.dim() as i64 {
        sum = &sum + &neutral_pair(ctx, n, k, l, i)?;
    }
    Ok(sum.scale(&prefactor))
}

/// Normal-form value of a word; the empty word is the identity.
pub fn word_eval(ctx: &Arc<ScalarContext>, n: usize, w: &BraidWord) -> Result<Element> {
    w.validate(n)?;
    let mut acc = Element::identity(ctx, n);
    for &(k, l) in w.factors() {
        acc = &acc * &braid_element(ctx, n, k, l)?;
    }
    Ok(acc)
}

fn require_ordered(k: usize, l: usize) -> Result<()> {
    if k >= l {
        return Err(Error::Precondition(format!("expected k < l, got ({k},{l})")));
    }
    Ok(())
}

/// b_{kl} c_k^a c_l^b = q^{a²+ab} c_k^{2a+b} c_l^{−a} b_{kl}.
pub fn check_master_intertwiner(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, a: i64, b: i64) -> Result<bool> {
    check_master_intertwiner_with(ctx, n, k, l, a, b, Backend::Exact)
}

pub fn check_master_intertwiner_with(
    ctx: &Arc<ScalarContext>,
    n: usize,
    k: usize,
    l: usize,
    a: i64,
    b: i64,
    backend: Backend,
) -> Result<bool> {
    require_ordered(k, l)?;
    let bkl = braid_element(ctx, n, k, l)?;
    let lhs = &bkl * &(&gen(ctx, n, k, a) * &gen(ctx, n, l, b));
    let rhs = (&(&gen(ctx, n, k, 2 * a + b) * &gen(ctx, n, l, -a)) * &bkl).scale(&ctx.q_pow(a * a + a * b));
    Ok(lhs.eq_with(&rhs, backend))
}

/// b_{lk} c_k^r c_l^s = q^{rs+s²} c_k^{−s} c_l^{r+2s} b_{lk}.
pub fn check_adjoint_intertwiner(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, r: i64, s: i64) -> Result<bool> {
    check_adjoint_intertwiner_with(ctx, n, k, l, r, s, Backend::Exact)
}

pub fn check_adjoint_intertwiner_with(
    ctx: &Arc<ScalarContext>,
    n: usize,
    k: usize,
    l: usize,
    r: i64,
    s: i64,
    backend: Backend,
) -> Result<bool> {
    require_ordered(k, l)?;
    let blk = braid_element(ctx, n, l, k)?;
    let lhs = &blk * &(&gen(ctx, n, k, r) * &gen(ctx, n, l, s));
    let rhs = (&(&gen(ctx, n, k, -s) * &gen(ctx, n, l, r + 2 * s)) * &blk).scale(&ctx.q_pow(r * s + s * s));
    Ok(lhs.eq_with(&rhs, backend))
}

/// Three commutation facts about the neutral pairs u_a = c_k^a c_l^{−a}:
/// u_b u_a = u_a u_b, u_a c_p = c_p u_a for p outside [k, l], and b_{kl} u_a = u_a b_{kl}.
pub fn check_neutral_commutation(
    ctx: &Arc<ScalarContext>,
    n: usize,
    k: usize,
    l: usize,
    a: i64,
    b: i64,
    p: usize,
) -> Result<bool> {
    check_neutral_commutation_with(ctx, n, k, l, a, b, p, Backend::Exact)
}

#[allow(clippy::too_many_arguments)]
pub fn check_neutral_commutation_with(
    ctx: &Arc<ScalarContext>,
    n: usize,
    k: usize,
    l: usize,
    a: i64,
    b: i64,
    p: usize,
    backend: Backend,
) -> Result<bool> {
    require_ordered(k, l)?;
    check_index(p, 2 * n)?;
    if (k..=l).contains(&p) {
        return Err(Error::Precondition(format!("p={p} must lie outside [{k},{l}]")));
    }
    let ua = neutral_pair(ctx, n, k, l, a)?;
    let ub = neutral_pair(ctx, n, k, l, b)?;
    let cp = gen(ctx, n, p, 1);
    let bkl = braid_element(ctx, n, k, l)?;
    let eq = |x: Element, y: Element| x.eq_with(&y, backend);
    Ok(eq(&ub * &ua, &ua * &ub) && eq(&ua * &cp, &cp * &ua) && eq(&bkl * &ua, &ua * &bkl))
}

/// b_{kl} b_{lk} = b_{lk} b_{kl} = 1.
pub fn check_unitarity(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize) -> Result<bool> {
    check_unitarity_with(ctx, n, k, l, Backend::Exact)
}

pub fn check_unitarity_with(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, backend: Backend) -> Result<bool> {
    check_pair(k, l, n)?;
    let bkl = braid_element(ctx, n, k, l)?;
    let blk = braid_element(ctx, n, l, k)?;
    let one = Element::identity(ctx, n);
    Ok((&bkl * &blk).eq_with(&one, backend) && (&blk * &bkl).eq_with(&one, backend))
}

/// b_{ij} b_{kl} = b_{kl} b_{ij} for index intervals that do not overlap.
pub fn check_distant_commutation(ctx: &Arc<ScalarContext>, n: usize, first: (usize, usize), second: (usize, usize)) -> Result<bool> {
    check_distant_commutation_with(ctx, n, first, second, Backend::Exact)
}

pub fn check_distant_commutation_with(
    ctx: &Arc<ScalarContext>,
    n: usize,
    first: (usize, usize),
    second: (usize, usize),
    backend: Backend,
) -> Result<bool> {
    let (lo1, hi1) = (first.0.min(first.1), first.0.max(first.1));
    let (lo2, hi2) = (second.0.min(second.1), second.0.max(second.1));
    if !(hi1 < lo2 || hi2 < lo1) {
        return Err(Error::Precondition(format!("pairs {first:?} and {second:?} overlap")));
    }
    let x = braid_element(ctx, n, first.0, first.1)?;
    let y = braid_element(ctx, n, second.0, second.1)?;
    Ok((&x * &y).eq_with(&(&y * &x), backend))
}

/// Which coefficient the centre-based certificate used to fix the scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateRoute {
    ConstantTerm,
    /// Coefficient of the given monomial (c_j c_k^{−1}), used when constant terms vanish.
    Shifted(Monomial),
    /// Neither pinning coefficient is nonzero; only direct equality applies.
    Unavailable,
}

#[derive(Clone, Debug)]
pub struct YangBaxterReport {
    pub indices: (usize, usize, usize),
    /// Direct normal-form equality; authoritative.
    pub direct: bool,
    pub route: CertificateRoute,
    pub certificate: Option<Certificate>,
    /// Whether Σ q^{−i²} vanishes for this N, predicting a zero constant term.
    pub constant_sum_vanishes: bool,
    /// Whether the constant term of b_{ij}b_{jk}b_{ij} is in fact zero.
    pub constant_term_zero: bool,
}

impl YangBaxterReport {
    pub fn passed(&self) -> bool {
        self.direct
    }

    /// Both routes agree whenever the certificate was applicable.
    pub fn consistent(&self) -> bool {
        self.certificate.as_ref().is_none_or(|c| c.passed() == self.direct)
    }
}

/// b_{ij} b_{jk} b_{ij} = b_{jk} b_{ij} b_{jk} for i < j < k.
pub fn check_yang_baxter(ctx: &Arc<ScalarContext>, n: usize, i: usize, j: usize, k: usize) -> Result<YangBaxterReport> {
    check_yang_baxter_with(ctx, n, i, j, k, Backend::Exact)
}

/// As [`check_yang_baxter`]; `backend` decides the direct comparison, the
/// certificate route is always exact.
pub fn check_yang_baxter_with(
    ctx: &Arc<ScalarContext>,
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    backend: Backend,
) -> Result<YangBaxterReport> {
    if !(i < j && j < k) {
        return Err(Error::Precondition(format!("expected i < j < k, got ({i},{j},{k})")));
    }
    check_index(k, 2 * n)?;
    let x = word_eval(ctx, n, &BraidWord::new(vec![(i, j), (j, k), (i, j)]))?;
    let y = word_eval(ctx, n, &BraidWord::new(vec![(j, k), (i, j), (j, k)]))?;
    let y_inv = word_eval(ctx, n, &BraidWord::new(vec![(k, j), (j, i), (k, j)]))?;
    let direct = x.eq_with(&y, backend);
    let constant_term_zero = x.constant_term().is_zero();

    let shifted = {
        let mut e = vec![0i64; 2 * n];
        e[j - 1] = 1;
        e[k - 1] = -1;
        Monomial::from_exps(&e, ctx.dim())
    };
    let (route, certificate) = match certify_equal(&x, &y, &y_inv) {
        Ok(c) => (CertificateRoute::ConstantTerm, Some(c)),
        Err(Error::ZeroConstantTerm(_)) => match certify_equal_at(&x, &y, &y_inv, &shifted) {
            Ok(c) => (CertificateRoute::Shifted(shifted), Some(c)),
            Err(Error::Precondition(_)) => (CertificateRoute::Unavailable, None),
            Err(e) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    Ok(YangBaxterReport {
        indices: (i, j, k),
        direct,
        route,
        certificate,
        constant_sum_vanishes: gauss_diagnostics(ctx.dim())?.vanishes_a,
        constant_term_zero,
    })
}
