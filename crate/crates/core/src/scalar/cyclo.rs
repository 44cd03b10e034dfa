use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::CycloField;
use crate::error::{Error, Result};

/// Exact element of Q(ζ_M), kept in the power basis `ζ_M^k`, `k < φ(M)`.
///
/// Terms are sorted by exponent and never carry a zero coefficient, so two
/// values are equal exactly when their term lists agree.
#[derive(Clone)]
pub struct Cyclo {
    field: Arc<CycloField>,
    terms: Vec<(u32, BigRational)>,
}

/// Complex approximation together with an upper bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: Complex64,
    pub radius: f64,
}

impl Cyclo {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclo {
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, value: BigRational) -> Self {
        let terms = if value.is_zero() { Vec::new() } else { vec![(0, value)] };
        Cyclo {
            field: field.clone(),
            terms,
        }
    }

    pub fn from_int(field: &Arc<CycloField>, value: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(value.into()))
    }

    /// ζ_M^k for any integer k.
    pub fn root(field: &Arc<CycloField>, k: i64) -> Self {
        Self::from_raw(field, vec![(wrap(k, field.modulus()), BigRational::one())])
    }

    /// Builds a value from arbitrary exponent/coefficient pairs (exponents taken mod M).
    pub fn from_raw(field: &Arc<CycloField>, raw: Vec<(u32, BigRational)>) -> Self {
        Cyclo {
            field: field.clone(),
            terms: field.canonicalize(raw),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    /// Canonical `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    fn check_field(&self, other: &Cyclo) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "cyclotomic values from different fields: M={} vs M={}",
            self.modulus(),
            other.modulus()
        );
    }

    /// Multiplication by ζ_M^k.
    pub fn mul_root(&self, k: i64) -> Self {
        let m = self.modulus();
        let k = wrap(k, m);
        if k == 0 {
            return self.clone();
        }
        let raw = self.terms.iter().map(|(e, c)| ((e + k) % m, c.clone())).collect();
        Self::from_raw(&self.field, raw)
    }

    /// Appends the unreduced terms of `self · other · ζ_M^shift` to `out`.
    ///
    /// Callers batch many products into one buffer and reduce once via
    /// [`Cyclo::from_raw`].
    pub(crate) fn mul_into(&self, other: &Cyclo, shift: u32, out: &mut Vec<(u32, BigRational)>) {
        self.check_field(other);
        let m = self.modulus();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.push(((ea + eb + shift) % m, ca * cb));
            }
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.field);
        }
        Cyclo {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Complex conjugation, the automorphism ζ_M ↦ ζ_M^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.modulus();
        let raw = self.terms.iter().map(|(e, c)| ((m - e) % m, c.clone())).collect();
        Self::from_raw(&self.field, raw)
    }

    /// Galois automorphism ζ_M ↦ ζ_M^j, j coprime to M.
    pub fn galois(&self, j: u32) -> Self {
        let m = self.modulus() as u64;
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u64 * j as u64) % m) as u32, c.clone()))
            .collect();
        Self::from_raw(&self.field, raw)
    }

    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(e, c)] => Ok(Self::from_raw(
                &self.field,
                vec![((self.modulus() - e) % self.modulus(), c.recip())],
            )),
            _ => self.inv_euclid(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against Φ_M in Q[x].
    fn inv_euclid(&self) -> Result<Self> {
        let to_q = |p: Vec<BigInt>| -> Vec<BigRational> {
            p.into_iter().map(BigRational::from_integer).collect()
        };
        let mut r0 = to_q(self.field.cyclotomic_polynomial());
        let top = self.terms.last().map(|(e, _)| *e as usize).unwrap_or(0);
        let mut r1 = vec![BigRational::zero(); top + 1];
        for (e, c) in &self.terms {
            r1[*e as usize] = c.clone();
        }
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !qpoly_is_zero(&r1) {
            let (quot, rem) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; it is a nonzero constant because Φ_M is irreducible
        let g = r0[0].clone();
        if r0.len() != 1 || g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ginv = g.recip();
        let raw = s0
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c * &ginv))
            .collect();
        Ok(Self::from_raw(&self.field, raw))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Numerical value at ζ_M = exp(2πi/M).
    pub fn embed(&self) -> Complex64 {
        self.embed_complex(52).value
    }

    /// Double-precision evaluation with an a-priori error bound.
    ///
    /// The radius covers coefficient rounding, twiddle factors and the
    /// accumulation. Requests beyond double precision are not refined; callers
    /// compare `radius` against `2^-precision` when they need the guarantee.
    pub fn embed_complex(&self, precision: u32) -> Approx {
        let _ = precision;
        let m = self.modulus() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (e, c) in &self.terms {
            let cf = rational_to_f64(c);
            let theta = std::f64::consts::TAU * (*e as f64 / m);
            acc += Complex64::from_polar(cf, theta);
            mag += cf.abs();
        }
        let k = self.terms.len().max(1) as f64;
        Approx {
            value: acc,
            radius: mag * f64::EPSILON * (4.0 + k),
        }
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: divide after scaling down
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn wrap(k: i64, m: u32) -> u32 {
    k.rem_euclid(m as i64) as u32
}

fn qpoly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn qpoly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut b = b.to_vec();
    qpoly_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    qpoly_trim(&mut rem);
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            if !d.is_zero() {
                rem[k + j] -= &c * d;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    qpoly_trim(&mut rem);
    (quot, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    qpoly_trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qpoly_trim(&mut out);
    out
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.terms == other.terms
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[M={}](", self.modulus())?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for Cyclo {
    /// Power-basis rendering, `c*z{M}^k` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "z{}^{}", self.modulus(), e)?;
            } else {
                write!(f, "{abs}*z{}^{}", self.modulus(), e)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.check_field(rhs);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Cyclo {
            field: self.field.clone(),
            terms: out,
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero(&self.field);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let m = self.modulus();
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                raw.push(((ea + eb) % m, ca * cb));
            }
        }
        Cyclo::from_raw(&self.field, raw)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(mut iter: I) -> Cyclo {
        let first = iter.next().expect("sum of an empty iterator needs a field; use fold");
        iter.fold(first, |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> Arc<CycloField> {
        Arc::new(CycloField::new(m))
    }

    #[test]
    fn roots_wrap_and_conjugate() {
        let f = field(64);
        let z = Cyclo::root(&f, 5);
        assert_eq!(z.conj(), Cyclo::root(&f, 59));
        assert_eq!(Cyclo::root(&f, -5), Cyclo::root(&f, 59));
        assert!((&z * &z.conj()).is_one());
    }

    #[test]
    fn sum_of_all_roots_is_zero() {
        for m in [16u32, 36, 64, 144, 400] {
            let f = field(m);
            let s = (0..m as i64).map(|k| Cyclo::root(&f, k)).fold(Cyclo::zero(&f), |a, b| a + b);
            assert!(s.is_zero(), "M={m}");
        }
    }

    #[test]
    fn quarter_turn_squares_to_minus_one() {
        let f = field(144);
        let i = Cyclo::root(&f, 36);
        assert!((&Cyclo::one(&f) + &(&i * &i)).is_zero());
    }

    #[test]
    fn inverse_of_general_element() {
        let f = field(144);
        let x = &(&Cyclo::from_int(&f, 2) + &Cyclo::root(&f, 7)) + &Cyclo::root(&f, 100).scale(&BigRational::new(3.into(), 5.into()));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(matches!(Cyclo::zero(&f).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn embedding_matches_polar_form() {
        let f = field(64);
        let z = Cyclo::root(&f, 8).embed();
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU / 8.0);
        assert!((z - expect).norm() < 1e-15);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = field(36);
        let x = &Cyclo::root(&f, 1) + &Cyclo::from_int(&f, 1);
        let mut acc = Cyclo::one(&f);
        for _ in 0..7 {
            acc = &acc * &x;
        }
        assert_eq!(x.pow(7).unwrap(), acc);
        assert!((&x.pow(-3).unwrap() * &x.pow(3).unwrap()).is_one());
    }
}
