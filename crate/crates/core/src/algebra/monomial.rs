use std::fmt;

/// Normal-ordered monomial c_1^{r_1} ⋯ c_{2n}^{r_{2n}}, exponents in 0..N.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn identity(generators: usize) -> Self {
        Monomial(vec![0; generators])
    }

    /// Exponents reduced mod `dim`; negative entries are allowed.
    pub fn from_exps(exps: &[i64], dim: u32) -> Self {
        Monomial(exps.iter().map(|e| e.rem_euclid(dim as i64) as u32).collect())
    }

    /// c_index^exp with a 1-based generator index.
    pub fn generator(generators: usize, index: usize, exp: i64, dim: u32) -> Self {
        let mut v = vec![0; generators];
        v[index - 1] = exp.rem_euclid(dim as i64) as u32;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Σ r_i mod N.
    pub fn charge(&self, dim: u32) -> u32 {
        (self.0.iter().map(|&e| e as u64).sum::<u64>() % dim as u64) as u32
    }

    /// Componentwise negation mod N.
    pub fn inverse_exps(&self, dim: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| (dim - e) % dim).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    /// Expression-language rendering, e.g. `c[1]*c[3]^2`; `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "c[{}]", i + 1)?;
            } else {
                write!(f, "c[{}]^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// (c^r)(c^s) = q^{phase} c^{r+s}, with phase = −Σ_{j<k} s_j r_k mod N.
pub fn mono_mul(r: &Monomial, s: &Monomial, dim: u32) -> (u32, Monomial) {
    assert_eq!(r.len(), s.len(), "monomials over different generator sets");
    let n = dim as u64;
    // suffix sums of r: Σ_{k>j} r_k
    let mut suffix = 0u64;
    let mut phase = 0u64;
    for j in (0..r.len()).rev() {
        phase = (phase + s.0[j] as u64 * suffix) % n;
        suffix = (suffix + r.0[j] as u64) % n;
    }
    let t = r.0.iter().zip(&s.0).map(|(a, b)| (a + b) % dim).collect();
    (((n - phase) % n) as u32, Monomial(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reordering_two_generators() {
        let c1 = Monomial::generator(2, 1, 1, 3);
        let c2 = Monomial::generator(2, 2, 1, 3);
        let (p, t) = mono_mul(&c2, &c1, 3);
        assert_eq!(p, 2); // q^{-1}
        assert_eq!(t, Monomial::from_exps(&[1, 1], 3));
        let (p, t) = mono_mul(&c1, &c2, 3);
        assert_eq!(p, 0);
        assert_eq!(t, Monomial::from_exps(&[1, 1], 3));
    }

    #[test]
    fn powers_commute_up_to_q_ab() {
        let dim = 5;
        for a in 0..5 {
            for b in 0..5 {
                let x = Monomial::generator(3, 1, a, dim);
                let y = Monomial::generator(3, 3, b, dim);
                let (p1, t1) = mono_mul(&x, &y, dim);
                let (p2, t2) = mono_mul(&y, &x, dim);
                assert_eq!(t1, t2);
                assert_eq!((p1 + dim - p2) % dim, ((a * b) % 5) as u32);
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let s = Monomial::from_exps(&[2, 0, 1, 1], 3);
        assert_eq!(mono_mul(&Monomial::identity(4), &s, 3), (0, s.clone()));
        assert_eq!(mono_mul(&s, &Monomial::identity(4), 3), (0, s));
    }

    #[test]
    fn display_uses_expression_syntax() {
        assert_eq!(Monomial::from_exps(&[1, 0, 2], 3).to_string(), "c[1]*c[3]^2");
        assert_eq!(Monomial::identity(2).to_string(), "1");
    }
}
