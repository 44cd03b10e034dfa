//! Centre of the algebra and equality certificates built on it.
//!
//! Since the centre is trivial, `y⁻¹x` central means `x = λy` for a scalar λ,
//! and λ is pinned down by comparing any one coefficient where `y` is nonzero.

use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// True iff `x` commutes with every generator c_1 … c_{2n}.
pub fn is_central(x: &Element) -> bool {
    (1..=x.generators()).all(|i| {
        let c = Element::generator(x.ctx(), x.n(), i, 1).expect("index in range");
        (x * &c) == (&c * x)
    })
}

/// Normal-ordered monomials that commute with every generator.
///
/// Moving c_k across c^r from the left picks up q^{−Σ_{i<k} r_i}, from the
/// right q^{−Σ_{i>k} r_i}; so c^r is central iff
/// Σ_{i<k} r_i ≡ Σ_{i>k} r_i (mod N) for every k. Taking k = 1 and stepping
/// forward forces r_{k+1} ≡ −r_k and finally r_{2n} ≡ 0, hence only the
/// identity survives.
pub fn center_basis(dim: u32, n: usize) -> Result<Vec<Monomial>> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    if n == 0 {
        return Err(Error::InvalidQuditCount(n));
    }
    let len = 2 * n;
    let total = (dim as u128).checked_pow(len as u32).filter(|&t| t <= 1 << 26).ok_or_else(|| {
        Error::Unsupported(format!("enumerating {dim}^{len} monomials is too large"))
    })?;
    let d = dim as u64;
    let mut out = Vec::new();
    let mut exps = vec![0u32; len];
    for _ in 0..total {
        let full: u64 = exps.iter().map(|&e| e as u64).sum();
        let mut before = 0u64;
        let central = exps.iter().all(|&e| {
            let after = full - before - e as u64;
            let ok = before % d == after % d;
            before += e as u64;
            ok
        });
        if central {
            out.push(Monomial::from_exps(&exps.iter().map(|&e| e as i64).collect::<Vec<_>>(), dim));
        }
        // odometer increment
        for e in exps.iter_mut() {
            *e += 1;
            if *e < dim {
                break;
            }
            *e = 0;
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of [`certify_equal`]. `passed()` implies `x = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub central_check: bool,
    pub constant_match: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.central_check && self.constant_match
    }
}

fn check_inverse(y: &Element, y_inv: &Element) -> Result<()> {
    if !y.same_algebra(y_inv) {
        return Err(Error::AlgebraMismatch);
    }
    let one = Element::identity(y.ctx(), y.n());
    if y * y_inv != one {
        return Err(Error::NotInverse);
    }
    Ok(())
}

/// Certifies `x = y` by checking that `y_inv · x` is central and that the
/// constant terms of `x` and `y` agree.
///
/// Preconditions (reported as errors, distinct from a failing certificate):
/// `y · y_inv = 1`, and both constant terms nonzero.
pub fn certify_equal(x: &Element, y: &Element, y_inv: &Element) -> Result<Certificate> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    check_inverse(y, y_inv)?;
    let cx = x.constant_term();
    let cy = y.constant_term();
    if cx.is_zero() {
        return Err(Error::ZeroConstantTerm("x"));
    }
    if cy.is_zero() {
        return Err(Error::ZeroConstantTerm("y"));
    }
    Ok(Certificate {
        central_check: is_central(&(y_inv * x)),
        constant_match: cx == cy,
    })
}

/// Variant of [`certify_equal`] that pins the scalar through the coefficient of
/// `key` instead of the constant term. Used when constant terms vanish.
pub fn certify_equal_at(x: &Element, y: &Element, y_inv: &Element, key: &Monomial) -> Result<Certificate> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    check_inverse(y, y_inv)?;
    let cx = x.coeff(key);
    let cy = y.coeff(key);
    if cx.is_zero() || cy.is_zero() {
        return Err(Error::Precondition(format!("coefficient of {key} vanishes")));
    }
    Ok(Certificate {
        central_check: is_central(&(y_inv * x)),
        constant_match: cx == cy,
    })
}
