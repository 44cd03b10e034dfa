//! Vector states in the basis |a⟩ = c_2^{a_1} c_4^{a_2} ⋯ c_{2n}^{a_n} |Ω⟩.
//!
//! Generator action on basis kets, with P = Σ_{i<k} a_i:
//!
//! * c_{2k} |a⟩ = q^{−P} |a + e_k⟩ — c_{2k} passes the factors c_{2i}^{a_i},
//!   i > k, freely in normal order and commutes into place past those with
//!   i < k, picking up q^{−a_i} each;
//! * c_{2k−1} |a⟩ = ζ q^{a_k − P} |a + e_k⟩ — it is moved to the vacuum (past
//!   every c_{2i}, i ≥ k), converted there via c_{2k−1}|Ω⟩ = ζ c_{2k}|Ω⟩ and the
//!   resulting c_{2k} moved back.
//!
//! Iterating gives c_{2k−1}^e |a⟩ = ζ^{e²} q^{e(a_k − P)} |a + e e_k⟩. These
//! rules are checked against the matrix representation in the test suite.

mod moves;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{check_index, Element};
use crate::braid::{braid_element, BraidWord};
use crate::error::{Error, Result};
use crate::scalar::{Backend, Cyclo, ScalarContext};

pub use moves::{
    chain_word, check_chain_identities, check_chain_identities_with, check_closed_form_chain,
    check_closed_form_chain_with, check_nonlocal_entangler, check_nonlocal_entangler_with, check_slide,
    check_slide_with, check_slip, check_slip_with, check_twist, check_twist_with, closed_form_chain, slide_word,
    slip_word, ChainReport,
};

#[derive(Clone)]
pub struct State {
    ctx: Arc<ScalarContext>,
    n: usize,
    coeffs: BTreeMap<Vec<u32>, Cyclo>,
}

/// One step of a state operator.
#[derive(Clone, Debug)]
pub enum Atom {
    /// c_index^exp.
    Generator { index: usize, exp: i64 },
    /// Ground-state projector on qudit k.
    Projector(usize),
    Element(Element),
    Word(BraidWord),
}

/// A product of atoms, applied right to left.
#[derive(Clone, Debug, Default)]
pub struct StateOp {
    pub atoms: Vec<Atom>,
}

impl StateOp {
    pub fn new(atoms: Vec<Atom>) -> Self {
        StateOp { atoms }
    }

    pub fn apply(&self, s: &State) -> Result<State> {
        let mut out = s.clone();
        for atom in self.atoms.iter().rev() {
            out = match atom {
                Atom::Generator { index, exp } => out.apply_generator(*index, *exp)?,
                Atom::Projector(k) => out.apply_projector(*k)?,
                Atom::Element(x) => out.apply_element(x)?,
                Atom::Word(w) => out.apply_word(w)?,
            };
        }
        Ok(out)
    }
}

impl State {
    pub fn zero(ctx: &Arc<ScalarContext>, n: usize) -> Self {
        State {
            ctx: ctx.clone(),
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// |Ω⟩^{⊗n}.
    pub fn ground(ctx: &Arc<ScalarContext>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuditCount(0));
        }
        Ok(Self::basis(ctx, n, &vec![0; n]))
    }

    /// The basis ket |a⟩ (entries reduced mod N).
    pub fn basis(ctx: &Arc<ScalarContext>, n: usize, a: &[i64]) -> Self {
        assert_eq!(a.len(), n, "label length must be n");
        let d = ctx.dim() as i64;
        let mut s = Self::zero(ctx, n);
        s.coeffs.insert(a.iter().map(|x| x.rem_euclid(d) as u32).collect(), ctx.one());
        s
    }

    pub fn from_terms<I>(ctx: &Arc<ScalarContext>, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Cyclo)>,
    {
        let d = ctx.dim() as i64;
        let mut raw: BTreeMap<Vec<u32>, Cyclo> = BTreeMap::new();
        for (a, c) in terms {
            if a.len() != n {
                return Err(Error::Precondition(format!("label has {} entries, expected {n}", a.len())));
            }
            let key: Vec<u32> = a.iter().map(|x| x.rem_euclid(d) as u32).collect();
            let slot = raw.entry(key).or_insert_with(|| ctx.zero());
            *slot = &*slot + &c;
        }
        raw.retain(|_, c| !c.is_zero());
        Ok(State {
            ctx: ctx.clone(),
            n,
            coeffs: raw,
        })
    }

    /// Every basis ket of (Z_N)^n, in lexicographic order.
    pub fn basis_labels(dim: u32, n: usize) -> Vec<Vec<u32>> {
        let total = (dim as usize).pow(n as u32);
        (0..total)
            .map(|code| {
                let mut a = vec![0u32; n];
                let mut c = code;
                for slot in a.iter_mut().rev() {
                    *slot = (c % dim as usize) as u32;
                    c /= dim as usize;
                }
                a
            })
            .collect()
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, Cyclo> {
        &self.coeffs
    }

    pub fn coeff(&self, a: &[u32]) -> Cyclo {
        self.coeffs.get(a).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_space(&self, other: &State) -> bool {
        self.n == other.n && self.ctx.dim() == other.ctx.dim()
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        if x.n() != self.n || x.dim() != self.ctx.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, alpha: &Cyclo) -> State {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, c)| (a.clone(), c * alpha))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        State {
            ctx: self.ctx.clone(),
            n: self.n,
            coeffs,
        }
    }

    pub fn add(&self, other: &State) -> Result<State> {
        if !self.same_space(other) {
            return Err(Error::AlgebraMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (a, c) in &other.coeffs {
            let s = coeffs.get(a).map_or_else(|| c.clone(), |x| x + c);
            if s.is_zero() {
                coeffs.remove(a);
            } else {
                coeffs.insert(a.clone(), s);
            }
        }
        Ok(State {
            ctx: self.ctx.clone(),
            n: self.n,
            coeffs,
        })
    }

    /// Phase (as a ζ_M exponent) and label change of c_j^e on the ket `a`, in place.
    fn step(&self, a: &mut [u32], j: usize, e: u32) -> i64 {
        let dim = self.ctx.dim();
        let k = j.div_ceil(2);
        let prefix: i64 = a[..k - 1].iter().map(|&x| x as i64).sum();
        let e64 = e as i64;
        let phase = if j.is_multiple_of(2) {
            self.ctx.q_exponent(-e64 * prefix)
        } else {
            self.ctx.zeta_exponent(e64 * e64) + self.ctx.q_exponent(e64 * (a[k - 1] as i64 - prefix))
        };
        a[k - 1] = (a[k - 1] + e) % dim;
        phase
    }

    /// c_j^exp applied to the state (closed-form power).
    pub fn apply_generator(&self, j: usize, exp: i64) -> Result<State> {
        check_index(j, 2 * self.n)?;
        let e = exp.rem_euclid(self.ctx.dim() as i64) as u32;
        let mut out = Self::zero(&self.ctx, self.n);
        for (a, c) in &self.coeffs {
            let mut b = a.clone();
            let phase = self.step(&mut b, j, e);
            out.coeffs.insert(b, c.mul_root(phase));
        }
        Ok(out)
    }

    /// E_k: keeps only kets with a_k = 0.
    pub fn apply_projector(&self, k: usize) -> Result<State> {
        check_index(k, self.n)?;
        let mut out = self.clone();
        out.coeffs.retain(|a, _| a[k - 1] == 0);
        Ok(out)
    }

    /// x·s, each monomial applied generator by generator from the right.
    pub fn apply_element(&self, x: &Element) -> Result<State> {
        self.check_element(x)?;
        let mut raw: BTreeMap<Vec<u32>, Vec<(u32, BigRational)>> = BTreeMap::new();
        let m = self.ctx.modulus() as i64;
        for (mono, cx) in x.terms() {
            for (a, ca) in &self.coeffs {
                let mut b = a.clone();
                let mut phase = 0i64;
                for (i, &e) in mono.exps().iter().enumerate().rev() {
                    if e != 0 {
                        phase += self.step(&mut b, i + 1, e);
                    }
                }
                cx.mul_into(ca, phase.rem_euclid(m) as u32, raw.entry(b).or_default());
            }
        }
        let field = self.ctx.field();
        let coeffs = raw
            .into_iter()
            .map(|(a, v)| (a, Cyclo::from_raw(field, v)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(State {
            ctx: self.ctx.clone(),
            n: self.n,
            coeffs,
        })
    }

    /// Applies a braid word factor by factor, rightmost first.
    pub fn apply_word(&self, w: &BraidWord) -> Result<State> {
        w.validate(self.n)?;
        let mut s = self.clone();
        for &(k, l) in w.factors().iter().rev() {
            s = s.apply_element(&braid_element(&self.ctx, self.n, k, l)?)?;
        }
        Ok(s)
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &State) -> Result<Cyclo> {
        if !self.same_space(other) {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = self.ctx.zero();
        for (a, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(a) {
                acc = &acc + &(&c.conj() * d);
            }
        }
        Ok(acc)
    }

    pub fn eq_with(&self, other: &State, backend: Backend) -> bool {
        if !self.same_space(other) {
            return false;
        }
        match backend {
            Backend::Exact => self == other,
            Backend::Float => {
                let zero = self.ctx.zero();
                let keys: std::collections::BTreeSet<&Vec<u32>> =
                    self.coeffs.keys().chain(other.coeffs.keys()).collect();
                keys.into_iter().all(|a| {
                    let x = self.coeffs.get(a).unwrap_or(&zero);
                    let y = other.coeffs.get(a).unwrap_or(&zero);
                    self.ctx.scalar_eq(x, y, Backend::Float)
                })
            }
        }
    }
}

/// ⟨Ω| x |Ω⟩.
pub fn vev(x: &Element) -> Result<Cyclo> {
    let g = State::ground(x.ctx(), x.n())?;
    g.inner(&g.apply_element(x)?)
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.coeffs == other.coeffs
    }
}

impl Eq for State {}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State[N={}, n={}]{{", self.ctx.dim(), self.n)?;
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a:?}: {}", self.ctx.format_scalar(c))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::testutil::random_element;

    fn ctx(n: u32) -> Arc<ScalarContext> {
        ScalarContext::new(n).unwrap()
    }

    fn random_state<R: Rng>(c: &Arc<ScalarContext>, n: usize, rng: &mut R) -> State {
        let d = c.dim() as i64;
        let terms = (0..4).map(|_| {
            let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..d)).collect();
            (a, c.root(rng.random_range(0..c.modulus() as i64)))
        });
        State::from_terms(c, n, terms).unwrap()
    }

    #[test]
    fn ground_basics() {
        let c = ctx(3);
        let g = State::ground(&c, 2).unwrap();
        assert!(g.inner(&g).unwrap().is_one());
        assert_eq!(g.apply_projector(2).unwrap(), g);
        assert!(matches!(State::ground(&c, 0), Err(Error::InvalidQuditCount(0))));
    }

    #[test]
    fn odd_generator_on_vacuum_is_zeta_times_even() {
        for dim in 2..=5 {
            let c = ctx(dim);
            let g = State::ground(&c, 3).unwrap();
            for k in 1..=3 {
                let odd = g.apply_generator(2 * k - 1, 1).unwrap();
                let even = g.apply_generator(2 * k, 1).unwrap();
                assert_eq!(odd, even.scale(c.zeta()));
            }
            let mut e1 = vec![0i64; 3];
            e1[0] = 1;
            assert_eq!(g.apply_generator(2, 1).unwrap(), State::basis(&c, 3, &e1));
        }
    }

    #[test]
    fn closed_form_powers_match_repeated_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dim in 2..=5 {
            let c = ctx(dim);
            for _ in 0..10 {
                let s = random_state(&c, 3, &mut rng);
                for j in 1..=6 {
                    for e in 0..dim as i64 + 2 {
                        let mut it = s.clone();
                        for _ in 0..e {
                            it = it.apply_generator(j, 1).unwrap();
                        }
                        assert_eq!(s.apply_generator(j, e).unwrap(), it, "N={dim} j={j} e={e}");
                    }
                    assert_eq!(s.apply_generator(j, -1).unwrap(), s.apply_generator(j, dim as i64 - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn generator_action_respects_relations() {
        // c_i c_j s = q c_j c_i s and c_i^N s = s, purely through the phase rules
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for dim in 2..=4 {
            let c = ctx(dim);
            let s = random_state(&c, 2, &mut rng);
            for i in 1..=4 {
                assert_eq!(s.apply_generator(i, dim as i64).unwrap(), s);
                for j in i + 1..=4 {
                    let lhs = s.apply_generator(j, 1).unwrap().apply_generator(i, 1).unwrap();
                    let rhs = s.apply_generator(i, 1).unwrap().apply_generator(j, 1).unwrap().scale(c.q());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn projector_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 2..=4 {
            let c = ctx(dim);
            for _ in 0..5 {
                let s = random_state(&c, 2, &mut rng);
                for k in 1..=2 {
                    let p = s.apply_projector(k).unwrap();
                    let odd = p.apply_generator(2 * k - 1, 1).unwrap();
                    let even = p.apply_generator(2 * k, 1).unwrap();
                    assert_eq!(odd, even.scale(c.zeta()));
                }
            }
        }
        let c = ctx(3);
        let g = State::ground(&c, 2).unwrap();
        assert!(g.apply_generator(2, 1).unwrap().apply_projector(1).unwrap().is_zero());
    }

    #[test]
    fn module_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = ctx(3);
        for _ in 0..15 {
            let x = random_element(&c, 2, 3, &mut rng);
            let y = random_element(&c, 2, 3, &mut rng);
            let s = random_state(&c, 2, &mut rng);
            let lhs = s.apply_element(&(&x * &y)).unwrap();
            let rhs = s.apply_element(&y).unwrap().apply_element(&x).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(s.apply_element(&Element::identity(&c, 2)).unwrap(), s);
        }
    }

    #[test]
    fn word_and_element_application_agree() {
        let c = ctx(3);
        let g = State::ground(&c, 2).unwrap();
        let w = BraidWord::new(vec![(2, 3)]);
        assert_eq!(g.apply_word(&w).unwrap(), g.apply_element(&braid_element(&c, 2, 2, 3).unwrap()).unwrap());
    }

    #[test]
    fn vacuum_expectations() {
        for dim in 2..=5 {
            let c = ctx(dim);
            assert!(vev(&Element::identity(&c, 2)).unwrap().is_one());
            let b23 = braid_element(&c, 2, 2, 3).unwrap();
            assert_eq!(vev(&b23).unwrap(), c.omega_sqrt() * &c.inv_sqrt_n());
        }
        let c = ctx(3);
        let a = State::basis(&c, 2, &[1, 0]);
        let b = State::basis(&c, 2, &[0, 1]);
        assert!(a.inner(&b).unwrap().is_zero());
    }

    #[test]
    fn braid_words_preserve_norm_and_charge() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dim in 2..=4u32 {
            let c = ctx(dim);
            for _ in 0..8 {
                let len = rng.random_range(0..5);
                let w = BraidWord::new(
                    (0..len)
                        .map(|_| loop {
                            let k = rng.random_range(1..=4);
                            let l = rng.random_range(1..=4);
                            if k != l {
                                break (k, l);
                            }
                        })
                        .collect(),
                );
                let s = random_state(&c, 2, &mut rng);
                let t = s.apply_word(&w).unwrap();
                assert_eq!(t.inner(&t).unwrap(), s.inner(&s).unwrap());

                let a: Vec<i64> = (0..2).map(|_| rng.random_range(0..dim as i64)).collect();
                let charge = a.iter().sum::<i64>().rem_euclid(dim as i64) as u32;
                let out = State::basis(&c, 2, &a).apply_word(&w).unwrap();
                for label in out.coeffs().keys() {
                    assert_eq!(label.iter().sum::<u32>() % dim, charge);
                }
            }
        }
    }
}
