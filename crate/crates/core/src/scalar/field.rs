//! Ambient cyclotomic field data: the modulus M, the cyclotomic polynomial
//! Φ_M and the reduction tables used to keep every value in the power basis
//! `1, ζ, …, ζ^{φ(M)-1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient of `num` by a monic `den`; panics if the division leaves a remainder.
fn poly_div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem = num.clone();
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

fn divisors(m: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=m).take_while(|d| d * d <= m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut big: Vec<u64> = ds.iter().map(|d| m / d).filter(|&e| e * e != m).collect();
    big.reverse();
    ds.extend(big);
    ds
}

/// Distinct prime factors of `m`, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    prime_factors(m).iter().fold(m, |acc, p| acc / p * (p - 1))
}

/// Φ_m by iterated exact division of `x^m - 1` by Φ_d over the proper divisors d of m.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u64, memo: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den: IntPoly = vec![BigInt::one()];
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let phi_d = cyclotomic_memo(d, memo);
        den = poly_mul(&den, &phi_d);
    }
    let p = poly_div_exact(&num, &den);
    memo.insert(m, p.clone());
    p
}

/// Reduction data for Q(ζ_M).
///
/// With R the radical of M and s = M/R, Φ_M(x) = Φ_R(x^s). An exponent
/// e = u·s + v (v < s) is canonical iff u < φ(R); otherwise ζ^e folds onto
/// `x^v · (y^u mod Φ_R(y))` with y = x^s.
#[derive(Debug)]
pub struct CycloField {
    modulus: u32,
    radical: u32,
    stride: u32,
    radical_degree: u32,
    radical_poly: IntPoly,
    folds: Vec<Vec<(u32, BigRational)>>,
}

impl CycloField {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 1);
        let radical = prime_factors(modulus as u64).iter().product::<u64>() as u32;
        let stride = modulus / radical;
        let radical_poly = cyclotomic_polynomial(radical as u64);
        let radical_degree = (radical_poly.len() - 1) as u32;

        // y^u mod Φ_R for u in 0..R, built incrementally from y^{u-1}.
        let d = radical_degree as usize;
        let mut folds = Vec::with_capacity(radical as usize);
        let mut cur = vec![BigInt::zero(); d];
        if d > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..radical {
            folds.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j as u32, BigRational::from_integer(c.clone())))
                    .collect(),
            );
            // multiply by y and reduce the top coefficient with the monic Φ_R
            let mut next = vec![BigInt::zero(); d];
            let top = cur[d - 1].clone();
            for j in (1..d).rev() {
                next[j] = cur[j - 1].clone();
            }
            if !top.is_zero() {
                for (j, slot) in next.iter_mut().enumerate() {
                    *slot -= &top * &radical_poly[j];
                }
            }
            cur = next;
        }

        CycloField {
            modulus,
            radical,
            stride,
            radical_degree,
            radical_poly,
            folds,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// φ(M), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        (self.radical_degree * self.stride) as usize
    }

    pub fn radical(&self) -> u32 {
        self.radical
    }

    pub fn is_canonical(&self, e: u32) -> bool {
        e / self.stride < self.radical_degree
    }

    /// Φ_M lifted from Φ_R.
    pub fn cyclotomic_polynomial(&self) -> IntPoly {
        let s = self.stride as usize;
        let mut out = vec![BigInt::zero(); self.degree() + 1];
        for (j, c) in self.radical_poly.iter().enumerate() {
            out[j * s] = c.clone();
        }
        out
    }

    /// Brings raw `(exponent, coefficient)` pairs into sorted canonical form with
    /// zero coefficients removed.
    pub(crate) fn canonicalize(&self, raw: Vec<(u32, BigRational)>) -> Vec<(u32, BigRational)> {
        let mut spread = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            let e = e % self.modulus;
            let u = e / self.stride;
            if u < self.radical_degree {
                spread.push((e, c));
            } else {
                let v = e % self.stride;
                for (j, f) in &self.folds[u as usize] {
                    spread.push((j * self.stride + v, &c * f));
                }
            }
        }
        spread.sort_unstable_by_key(|(e, _)| *e);
        let mut out: Vec<(u32, BigRational)> = Vec::with_capacity(spread.len());
        for (e, c) in spread {
            match out.last_mut() {
                Some((last, acc)) if *last == e => *acc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for CycloField {}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn lifted_polynomial_matches_iterated_division() {
        for m in [16u32, 36, 64, 144, 256, 400, 576] {
            let f = CycloField::new(m);
            assert_eq!(f.cyclotomic_polynomial(), cyclotomic_polynomial(m as u64), "M={m}");
            assert_eq!(f.degree() as u64, totient(m as u64));
        }
    }

    #[test]
    fn folding_reduces_top_powers() {
        // M = 16: Φ_16 = x^8 + 1, so ζ^8 = -1
        let f = CycloField::new(16);
        let out = f.canonicalize(vec![(8, BigRational::one())]);
        assert_eq!(out, vec![(0, -BigRational::one())]);
        // M = 36: R = 6, s = 6, Φ_36 = x^12 - x^6 + 1
        let f = CycloField::new(36);
        let out = f.canonicalize(vec![(12, BigRational::one())]);
        assert_eq!(out, vec![(0, -BigRational::one()), (6, BigRational::one())]);
    }
}
