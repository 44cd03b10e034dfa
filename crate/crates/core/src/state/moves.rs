//! Twist, slide and slip moves and the entangled states built from chains of braids.

use std::sync::Arc;

use super::State;
use crate::algebra::check_index;
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::scalar::{Backend, ScalarContext};

fn on_ground(ctx: &Arc<ScalarContext>, n: usize, w: &BraidWord) -> Result<State> {
    State::ground(ctx, n)?.apply_word(w)
}

fn word(pairs: &[(usize, usize)]) -> BraidWord {
    BraidWord::new(pairs.to_vec())
}

fn require_pair(k: usize, l: usize, n: usize) -> Result<()> {
    check_index(l, n)?;
    if k == 0 || k >= l {
        return Err(Error::Precondition(format!("expected 1 <= k < l <= n, got ({k},{l})")));
    }
    Ok(())
}

/// b_{2k−1,2k} E_k = ω^{−1/2} E_k, and the adjoint form b_{2k,2k−1} E_k = ω^{1/2} E_k,
/// checked as operators on every basis ket.
pub fn check_twist(ctx: &Arc<ScalarContext>, n: usize, k: usize) -> Result<bool> {
    check_twist_with(ctx, n, k, Backend::Exact)
}

pub fn check_twist_with(ctx: &Arc<ScalarContext>, n: usize, k: usize, backend: Backend) -> Result<bool> {
    check_index(k, n)?;
    let pos = word(&[(2 * k - 1, 2 * k)]);
    let neg = pos.adjoint();
    for a in State::basis_labels(ctx.dim(), n) {
        let a: Vec<i64> = a.into_iter().map(i64::from).collect();
        let projected = State::basis(ctx, n, &a).apply_projector(k)?;
        if !projected.apply_word(&pos)?.eq_with(&projected.scale(&ctx.omega_half_pow(-1)), backend) {
            return Ok(false);
        }
        if !projected.apply_word(&neg)?.eq_with(&projected.scale(ctx.omega_sqrt()), backend) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// b_{2k,2l−1} b_{2l−1,2l} b_{2k−1,2k} b_{2k,2l−1}.
pub fn slide_word(k: usize, l: usize) -> BraidWord {
    word(&[(2 * k, 2 * l - 1), (2 * l - 1, 2 * l), (2 * k - 1, 2 * k), (2 * k, 2 * l - 1)])
}

/// b_{2k,2l−1} b_{2l−1,2l} b_{2k,2k−1} b_{2l−1,2k}.
pub fn slip_word(k: usize, l: usize) -> BraidWord {
    word(&[(2 * k, 2 * l - 1), (2 * l - 1, 2 * l), (2 * k, 2 * k - 1), (2 * l - 1, 2 * k)])
}

fn same_on_ground(ctx: &Arc<ScalarContext>, n: usize, a: &[(usize, usize)], b: &[(usize, usize)], backend: Backend) -> Result<bool> {
    Ok(on_ground(ctx, n, &word(a))?.eq_with(&on_ground(ctx, n, &word(b))?, backend))
}

fn fixes_ground(ctx: &Arc<ScalarContext>, n: usize, w: &BraidWord, backend: Backend) -> Result<bool> {
    Ok(on_ground(ctx, n, w)?.eq_with(&State::ground(ctx, n)?, backend))
}

/// The slide word fixes the ground state; for (k, l) = (1, 2) also
/// b₁₂b₂₃|Ω⟩ = b₄₃b₃₂|Ω⟩.
pub fn check_slide(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize) -> Result<bool> {
    check_slide_with(ctx, n, k, l, Backend::Exact)
}

pub fn check_slide_with(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, backend: Backend) -> Result<bool> {
    require_pair(k, l, n)?;
    if !fixes_ground(ctx, n, &slide_word(k, l), backend)? {
        return Ok(false);
    }
    if (k, l) == (1, 2) {
        return same_on_ground(ctx, n, &[(1, 2), (2, 3)], &[(4, 3), (3, 2)], backend);
    }
    Ok(true)
}

/// The slip word fixes the ground state; for (k, l) = (1, 2) also
/// b₂₁b₃₂|Ω⟩ = b₄₃b₃₂|Ω⟩.
pub fn check_slip(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize) -> Result<bool> {
    check_slip_with(ctx, n, k, l, Backend::Exact)
}

pub fn check_slip_with(ctx: &Arc<ScalarContext>, n: usize, k: usize, l: usize, backend: Backend) -> Result<bool> {
    require_pair(k, l, n)?;
    if !fixes_ground(ctx, n, &slip_word(k, l), backend)? {
        return Ok(false);
    }
    if (k, l) == (1, 2) {
        return same_on_ground(ctx, n, &[(2, 1), (3, 2)], &[(4, 3), (3, 2)], backend);
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    /// b₃₄b₂₃|Ω⟩ = b₄₃b₃₂|Ω⟩.
    pub short: bool,
    /// b₅₆b₄₅b₃₄b₂₃|Ω⟩ = b₆₅b₅₄b₄₃b₃₂|Ω⟩; `None` when n < 3.
    pub long: Option<bool>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.short && self.long.unwrap_or(true)
    }
}

pub fn check_chain_identities(ctx: &Arc<ScalarContext>, n: usize) -> Result<ChainReport> {
    check_chain_identities_with(ctx, n, Backend::Exact)
}

pub fn check_chain_identities_with(ctx: &Arc<ScalarContext>, n: usize, backend: Backend) -> Result<ChainReport> {
    if n < 2 {
        return Err(Error::Precondition("chain identities need n >= 2".into()));
    }
    let short = same_on_ground(ctx, n, &[(3, 4), (2, 3)], &[(4, 3), (3, 2)], backend)?;
    let long = if n >= 3 {
        Some(same_on_ground(ctx, n, &[(5, 6), (4, 5), (3, 4), (2, 3)], &[(6, 5), (5, 4), (4, 3), (3, 2)], backend)?)
    } else {
        None
    };
    Ok(ChainReport { short, long })
}

/// b_{2k−1,2k} b_{2k−2,2k−1} ⋯ b₃₄ b₂₃ (empty for k = 1).
pub fn chain_word(k: usize) -> BraidWord {
    BraidWord::new((2..2 * k).rev().map(|i| (i, i + 1)).collect())
}

/// N^{−(k−1)/2} Σ_{a ∈ Z_N^k, Σa ≡ 0} ζ^{Σ a_i²} |a_1 … a_k, 0 … 0⟩.
pub fn closed_form_chain(ctx: &Arc<ScalarContext>, n: usize, k: usize) -> Result<State> {
    check_index(k, n)?;
    let dim = ctx.dim();
    let norm = ctx.inv_sqrt_n_pow(k as u32 - 1);
    let terms = State::basis_labels(dim, k)
        .into_iter()
        .filter(|a| a.iter().sum::<u32>() % dim == 0)
        .map(|a| {
            let sq: i64 = a.iter().map(|&x| (x as i64) * (x as i64)).sum();
            let mut label: Vec<i64> = a.into_iter().map(i64::from).collect();
            label.resize(n, 0);
            (label, &ctx.zeta_pow(sq) * &norm)
        });
    State::from_terms(ctx, n, terms)
}

pub fn check_closed_form_chain(ctx: &Arc<ScalarContext>, n: usize, k: usize) -> Result<bool> {
    check_closed_form_chain_with(ctx, n, k, Backend::Exact)
}

pub fn check_closed_form_chain_with(ctx: &Arc<ScalarContext>, n: usize, k: usize, backend: Backend) -> Result<bool> {
    Ok(on_ground(ctx, n, &chain_word(k))?.eq_with(&closed_form_chain(ctx, n, k)?, backend))
}

/// b₄₂|Ω⟩ = ω^{−1/2} b₃₄b₂₃|Ω⟩ = b₃₄b₂₃b₃₄|Ω⟩.
pub fn check_nonlocal_entangler(ctx: &Arc<ScalarContext>, n: usize) -> Result<bool> {
    check_nonlocal_entangler_with(ctx, n, Backend::Exact)
}

pub fn check_nonlocal_entangler_with(ctx: &Arc<ScalarContext>, n: usize, backend: Backend) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition("the nonlocal entangler needs n >= 2".into()));
    }
    let lhs = on_ground(ctx, n, &word(&[(4, 2)]))?;
    let mid = on_ground(ctx, n, &word(&[(3, 4), (2, 3)]))?.scale(&ctx.omega_half_pow(-1));
    let rhs = on_ground(ctx, n, &word(&[(3, 4), (2, 3), (3, 4)]))?;
    Ok(lhs.eq_with(&mid, backend) && lhs.eq_with(&rhs, backend))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<ScalarContext> {
        ScalarContext::new(n).unwrap()
    }

    #[test]
    fn twist_holds() {
        assert!(check_twist(&ctx(2), 1, 1).unwrap());
        assert!(check_twist(&ctx(3), 2, 2).unwrap());
        assert!(check_twist(&ctx(5), 2, 1).unwrap());
    }

    #[test]
    fn twist_with_wrong_sign_fails() {
        // sanity: b_{12}E_1 is not ω^{+1/2}E_1 for N=3
        let c = ctx(3);
        let g = State::ground(&c, 1).unwrap();
        let out = g.apply_word(&word(&[(1, 2)])).unwrap();
        assert_ne!(out, g.scale(c.omega_sqrt()));
    }

    #[test]
    fn slide_and_slip() {
        for dim in 2..=5 {
            let c = ctx(dim);
            assert!(check_slide(&c, 2, 1, 2).unwrap(), "slide N={dim}");
            assert!(check_slip(&c, 2, 1, 2).unwrap(), "slip N={dim}");
        }
        let c = ctx(3);
        assert!(check_slide(&c, 3, 1, 3).unwrap());
        assert!(check_slip(&c, 3, 1, 3).unwrap());
        assert!(check_slide(&c, 3, 2, 1).is_err());
    }

    #[test]
    fn chain_identities() {
        for dim in [2, 3, 5] {
            let r = check_chain_identities(&ctx(dim), 3).unwrap();
            assert_eq!(r, ChainReport { short: true, long: Some(true) }, "N={dim}");
        }
        assert_eq!(check_chain_identities(&ctx(3), 2).unwrap().long, None);
    }

    #[test]
    fn two_site_closed_form_by_direct_expansion() {
        // (1/√N) Σ q^{i²} |i, −i⟩
        for dim in 2..=5 {
            let c = ctx(dim);
            let d = dim as i64;
            let terms = (0..d).map(|i| (vec![i, -i], &c.q_pow(i * i) * &c.inv_sqrt_n()));
            let expect = State::from_terms(&c, 2, terms).unwrap();
            assert_eq!(closed_form_chain(&c, 2, 2).unwrap(), expect);
            assert!(check_closed_form_chain(&c, 2, 2).unwrap());
        }
        // N=2: (1/√2)(|00⟩ − |11⟩)
        let c = ctx(2);
        let s = closed_form_chain(&c, 2, 2).unwrap();
        assert_eq!(s.coeff(&[0, 0]), c.inv_sqrt_n());
        assert_eq!(s.coeff(&[1, 1]), -c.inv_sqrt_n());
    }

    #[test]
    fn three_site_closed_form() {
        // (1/N) Σ_{j,l} q^{−jl} q^{l²+j²} |l, j−l, −j⟩
        for dim in 2..=4 {
            let c = ctx(dim);
            let d = dim as i64;
            let inv_n = c.rational(num_rational::BigRational::new(1.into(), d.into()));
            let mut terms = Vec::new();
            for j in 0..d {
                for l in 0..d {
                    terms.push((vec![l, j - l, -j], &c.q_pow(-j * l + l * l + j * j) * &inv_n));
                }
            }
            let expect = State::from_terms(&c, 3, terms).unwrap();
            assert_eq!(closed_form_chain(&c, 3, 3).unwrap(), expect);
            assert!(check_closed_form_chain(&c, 3, 3).unwrap());
        }
    }

    #[test]
    fn nonlocal_entangler() {
        for dim in 2..=4 {
            assert!(check_nonlocal_entangler(&ctx(dim), 2).unwrap());
        }
        // b₃₄|Ω⟩ = ω^{−1/2}|Ω⟩ is the twist on the second qudit
        let c = ctx(3);
        let g = State::ground(&c, 2).unwrap();
        assert_eq!(g.apply_word(&word(&[(3, 4)])).unwrap(), g.scale(&c.omega_half_pow(-1)));
    }

    #[test]
    fn chain_words() {
        assert_eq!(chain_word(1), BraidWord::identity());
        assert_eq!(chain_word(3).factors(), &[(5, 6), (4, 5), (3, 4), (2, 3)]);
    }
}
