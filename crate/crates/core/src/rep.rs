//! Clock-and-shift matrix representation on (C^N)^{⊗n}, used as an independent
//! numerical oracle for the symbolic modules.
//!
//! With Z e_a = q^a e_a and X e_a = e_{a+1}:
//! g_{2j−1} = X at site j and g_{2j} = ζ^{−1} X Z^{−1} at site j, each
//! followed by Z on every later site. The trailing Z-string makes
//! g_i g_j = q g_j g_i for i < j; the even-site phase makes both g_{2j}^N = 1
//! and g_{2j−1} e_0 = ζ g_{2j} e_0 hold.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::Element;
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::state::State;

/// Largest representation dimension N^n that `build_rep` accepts by default.
pub const DEFAULT_DIMENSION_BUDGET: usize = 4096;

/// Tolerance for the build-time axiom checks.
pub const BUILD_TOLERANCE: f64 = 1e-12;

type CMat = DMatrix<Complex64>;
type CVec = DVector<Complex64>;

pub struct RepContext {
    dim: u32,
    n: usize,
    size: usize,
    q: Complex64,
    zeta: Complex64,
    /// powers[i][e] = g_{i+1}^e for e in 0..N.
    powers: Vec<Vec<CMat>>,
    projectors: Vec<CMat>,
    ground: CVec,
    /// Image of each basis label g_2^{a_1} ⋯ g_{2n}^{a_n} e_0, in lexicographic label order.
    basis: Vec<CVec>,
}

fn kron_all(factors: &[CMat]) -> CMat {
    let mut acc = CMat::from_element(1, 1, Complex64::new(1.0, 0.0));
    for f in factors {
        acc = acc.kronecker(f);
    }
    acc
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn label_index(a: &[u32], dim: u32) -> usize {
    a.iter().fold(0usize, |acc, &x| acc * dim as usize + x as usize)
}

/// Builds the representation and verifies its axioms to [`BUILD_TOLERANCE`].
pub fn build_rep(dim: u32, n: usize) -> Result<RepContext> {
    build_rep_with_budget(dim, n, DEFAULT_DIMENSION_BUDGET)
}

pub fn build_rep_with_budget(dim: u32, n: usize, budget: usize) -> Result<RepContext> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    if n == 0 {
        return Err(Error::InvalidQuditCount(0));
    }
    let size = (dim as usize)
        .checked_pow(n as u32)
        .filter(|&s| s <= budget)
        .ok_or(Error::DimensionBudget {
            dim: (dim as usize).saturating_pow(n as u32),
            budget,
        })?;
    let d = dim as usize;
    let nf = dim as f64;
    let q = Complex64::from_polar(1.0, 2.0 * PI / nf);
    let zeta = Complex64::from_polar(1.0, PI * (nf + 1.0) / nf);

    let eye = CMat::identity(d, d);
    let z = CMat::from_fn(d, d, |r, c| if r == c { q.powi(r as i32) } else { Complex64::new(0.0, 0.0) });
    let z_inv = z.adjoint();
    let x = CMat::from_fn(d, d, |r, c| {
        if r == (c + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let even_site = (&x * &z_inv) * zeta.inv();

    let site_op = |j: usize, op: &CMat| -> CMat {
        let factors: Vec<CMat> = (1..=n)
            .map(|s| match s.cmp(&j) {
                std::cmp::Ordering::Less => eye.clone(),
                std::cmp::Ordering::Equal => op.clone(),
                std::cmp::Ordering::Greater => z.clone(),
            })
            .collect();
        kron_all(&factors)
    };
    let mut gens = Vec::with_capacity(2 * n);
    for j in 1..=n {
        gens.push(site_op(j, &x));
        gens.push(site_op(j, &even_site));
    }
    let identity = CMat::identity(size, size);
    let powers: Vec<Vec<CMat>> = gens
        .iter()
        .map(|g| {
            let mut v = vec![identity.clone()];
            for e in 1..d {
                let next = &v[e - 1] * g;
                v.push(next);
            }
            v
        })
        .collect();

    let mut ground0 = CMat::zeros(d, d);
    ground0[(0, 0)] = Complex64::new(1.0, 0.0);
    let projectors: Vec<CMat> = (1..=n)
        .map(|k| {
            let factors: Vec<CMat> = (1..=n).map(|s| if s == k { ground0.clone() } else { eye.clone() }).collect();
            kron_all(&factors)
        })
        .collect();
    let mut ground = CVec::zeros(size);
    ground[0] = Complex64::new(1.0, 0.0);

    let labels = State::basis_labels(dim, n);
    let basis: Vec<CVec> = labels
        .iter()
        .map(|a| {
            let mut v = ground.clone();
            for k in (0..n).rev() {
                v = &powers[2 * k + 1][a[k] as usize] * v;
            }
            v
        })
        .collect();

    let rc = RepContext {
        dim,
        n,
        size,
        q,
        zeta,
        powers,
        projectors,
        ground,
        basis,
    };
    rc.check_axioms(&gens)?;
    Ok(rc)
}

impl RepContext {
    fn check_axioms(&self, gens: &[CMat]) -> Result<()> {
        let fail = |what: String| Err(Error::Precondition(format!("representation axiom failed: {what}")));
        let identity = CMat::identity(self.size, self.size);
        for (i, g) in gens.iter().enumerate() {
            if max_abs(&(&self.powers[i][self.dim as usize - 1] * g - &identity)) > BUILD_TOLERANCE {
                return fail(format!("g_{}^N = 1", i + 1));
            }
            if max_abs(&(g.adjoint() * g - &identity)) > BUILD_TOLERANCE {
                return fail(format!("g_{} unitary", i + 1));
            }
            for (j, h) in gens.iter().enumerate().skip(i + 1) {
                if max_abs(&(g * h - (h * g) * self.q)) > BUILD_TOLERANCE {
                    return fail(format!("g_{} g_{} = q g_{} g_{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        for k in 0..self.n {
            let (odd, even) = (&gens[2 * k], &gens[2 * k + 1]);
            let lhs = odd * &self.ground;
            let rhs = (even * &self.ground) * self.zeta;
            if (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) > BUILD_TOLERANCE {
                return fail(format!("g_{} ground = zeta g_{} ground", 2 * k + 1, 2 * k + 2));
            }
            let p = &self.projectors[k];
            if max_abs(&(odd * p - (even * p) * self.zeta)) > BUILD_TOLERANCE {
                return fail(format!("g_{} P_{} = zeta g_{} P_{}", 2 * k + 1, k + 1, 2 * k + 2, k + 1));
            }
        }
        // orthonormality of the even-generator orbit
        let b = CMat::from_columns(&self.basis);
        if max_abs(&(b.adjoint() * &b - &identity)) > BUILD_TOLERANCE {
            return fail("basis orthonormality".into());
        }
        Ok(())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// N^n.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    /// g_i (1-based).
    pub fn generator(&self, i: usize) -> &CMat {
        &self.powers[i - 1][1]
    }

    pub fn projector(&self, k: usize) -> &CMat {
        &self.projectors[k - 1]
    }

    pub fn ground(&self) -> &CVec {
        &self.ground
    }

    /// Image of the basis ket |a⟩.
    pub fn basis_vector(&self, a: &[u32]) -> &CVec {
        &self.basis[label_index(a, self.dim)]
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim || x.n() != self.n {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn monomial_matrix(&self, exps: &[u32]) -> CMat {
        let mut m = CMat::identity(self.size, self.size);
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                m *= &self.powers[i][e as usize];
            }
        }
        m
    }

    pub fn elem_to_matrix(&self, x: &Element) -> Result<CMat> {
        self.check_element(x)?;
        let mut out = CMat::zeros(self.size, self.size);
        for (m, c) in x.terms() {
            out += self.monomial_matrix(m.exps()) * c.embed();
        }
        Ok(out)
    }

    /// b_{kl} from its defining sum, with the prefactor taken from the element's context.
    fn braid_matrix(&self, x_ctx: &crate::scalar::ScalarContext, k: usize, l: usize) -> CMat {
        let d = self.dim as usize;
        let sign = if k < l { 1 } else { -1 };
        let pref = x_ctx.omega_half_pow(sign).embed() / (self.dim as f64).sqrt();
        let mut out = CMat::zeros(self.size, self.size);
        for i in 0..d {
            out += &self.powers[k - 1][i] * &self.powers[l - 1][(d - i) % d];
        }
        out * pref
    }

    pub fn word_to_matrix(&self, ctx: &crate::scalar::ScalarContext, w: &BraidWord) -> Result<CMat> {
        if ctx.dim() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        w.validate(self.n)?;
        let mut acc = CMat::identity(self.size, self.size);
        for &(k, l) in w.factors() {
            acc *= self.braid_matrix(ctx, k, l);
        }
        Ok(acc)
    }

    /// Coordinates of a symbolic state.
    pub fn state_vector(&self, s: &State) -> Result<CVec> {
        if s.ctx().dim() != self.dim || s.n() != self.n {
            return Err(Error::AlgebraMismatch);
        }
        let mut v = CVec::zeros(self.size);
        for (a, c) in s.coeffs() {
            v += self.basis_vector(a) * c.embed();
        }
        Ok(v)
    }

    /// x·v by matrix-vector products only.
    pub fn apply_element(&self, x: &Element, v: &CVec) -> Result<CVec> {
        self.check_element(x)?;
        let mut out = CVec::zeros(self.size);
        for (m, c) in x.terms() {
            let mut w = v.clone();
            for (i, &e) in m.exps().iter().enumerate().rev() {
                if e != 0 {
                    w = &self.powers[i][e as usize] * w;
                }
            }
            out += w * c.embed();
        }
        Ok(out)
    }

    /// Compares the symbolic action `x·s` with the matrix action.
    pub fn cross_validate(&self, x: &Element, s: &State, tol: f64) -> Result<CrossReport> {
        if tol <= 0.0 {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        let symbolic = self.state_vector(&s.apply_element(x)?)?;
        let numeric = self.apply_element(x, &self.state_vector(s)?)?;
        Ok(CrossReport::new(&symbolic, &numeric, tol))
    }

    /// Compares the symbolic action of a braid word with products of braid matrices.
    pub fn cross_validate_word(&self, ctx: &crate::scalar::ScalarContext, w: &BraidWord, s: &State, tol: f64) -> Result<CrossReport> {
        if tol <= 0.0 {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        let symbolic = self.state_vector(&s.apply_word(w)?)?;
        let mut v = self.state_vector(s)?;
        for &(k, l) in w.factors().iter().rev() {
            v = self.braid_matrix(ctx, k, l) * v;
        }
        Ok(CrossReport::new(&symbolic, &v, tol))
    }

    /// Numerical rank of the Hilbert–Schmidt Gram matrix of all N^{2n}
    /// monomial matrices; equal to N^{2n} iff they are linearly independent.
    pub fn monomial_gram_rank(&self) -> usize {
        let d = self.dim as usize;
        let count = d.pow(2 * self.n as u32);
        let mats: Vec<CMat> = (0..count)
            .map(|code| {
                let exps: Vec<u32> = (0..2 * self.n).map(|i| ((code / d.pow(i as u32)) % d) as u32).collect();
                self.monomial_matrix(&exps)
            })
            .collect();
        let gram = CMat::from_fn(count, count, |r, c| mats[r].dotc(&mats[c]) / self.size as f64);
        let sv = gram.singular_values();
        sv.iter().filter(|&&s| s > 1e-9).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CrossReport {
    fn new(a: &CVec, b: &CVec, tol: f64) -> Self {
        let dev = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
        CrossReport {
            max_deviation: dev,
            tolerance: tol,
            passed: dev < tol,
        }
    }
}
