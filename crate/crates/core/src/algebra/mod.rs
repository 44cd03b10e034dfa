//! Normal-form arithmetic in the generalized Clifford algebra C_{2n}^{(N)}.
//!
//! Generators c_1 … c_{2n} satisfy c_i c_j = q c_j c_i for i < j and c_i^N = 1.
//! Every element is stored as a combination of normal-ordered monomials
//! c_1^{r_1} ⋯ c_{2n}^{r_{2n}}, which form a basis.

mod center;
mod element;
mod monomial;

pub use center::{center_basis, certify_equal, certify_equal_at, is_central, Certificate};
pub(crate) use element::check_index;
pub use element::Element;
pub use monomial::{mono_mul, Monomial};


#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::testutil::random_element;
    use super::*;
    use crate::error::Error;
    use crate::scalar::ScalarContext;

    fn g(ctx: &std::sync::Arc<ScalarContext>, n: usize, i: usize, e: i64) -> Element {
        Element::generator(ctx, n, i, e).unwrap()
    }

    #[test]
    fn defining_relations_hold_exhaustively() {
        for dim in 2..=5 {
            let ctx = ScalarContext::new(dim).unwrap();
            for n in 1..=3 {
                let one = Element::identity(&ctx, n);
                for i in 1..=2 * n {
                    assert_eq!(g(&ctx, n, i, 1).pow(dim), one, "c_{i}^N = 1, N={dim}");
                    for j in i + 1..=2 * n {
                        let lhs = &g(&ctx, n, i, 1) * &g(&ctx, n, j, 1);
                        let rhs = (&g(&ctx, n, j, 1) * &g(&ctx, n, i, 1)).scale(ctx.q());
                        assert_eq!(lhs, rhs, "c_{i} c_{j} = q c_{j} c_{i}, N={dim}, n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn n2_sum_of_generators_squares_to_two() {
        let ctx = ScalarContext::new(2).unwrap();
        let x = &g(&ctx, 1, 1, 1) + &g(&ctx, 1, 2, 1);
        assert_eq!(&x * &x, Element::scalar(&ctx, 1, ctx.int(2)));
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [2, 3] {
            let ctx = ScalarContext::new(dim).unwrap();
            for _ in 0..25 {
                let x = random_element(&ctx, 2, 4, &mut rng);
                let y = random_element(&ctx, 2, 4, &mut rng);
                let z = random_element(&ctx, 2, 4, &mut rng);
                assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                assert_eq!(&x * &Element::identity(&ctx, 2), x);
                assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            }
        }
    }

    #[test]
    fn adjoint_of_generators() {
        for dim in 2..=5u32 {
            let ctx = ScalarContext::new(dim).unwrap();
            let n1 = dim as i64 - 1;
            assert_eq!(g(&ctx, 1, 1, 1).adjoint(), g(&ctx, 1, 1, n1));
            let c12 = &g(&ctx, 1, 1, 1) * &g(&ctx, 1, 2, 1);
            let expect = (&g(&ctx, 1, 1, n1) * &g(&ctx, 1, 2, n1)).scale(&ctx.q_pow(-1));
            assert_eq!(c12.adjoint(), expect);
        }
    }

    #[test]
    fn adjoint_matches_closed_form_on_monomials() {
        // (c^r)† = q^{-Σ_{j<k} r_j r_k} c^{-r}
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2u32, 3, 4, 5] {
            let ctx = ScalarContext::new(dim).unwrap();
            for _ in 0..30 {
                let x = random_element(&ctx, 2, 1, &mut rng);
                let Some((m, c)) = x.terms().iter().next() else { continue };
                let r = m.exps();
                let mut phase = 0i64;
                for j in 0..r.len() {
                    for k in j + 1..r.len() {
                        phase += r[j] as i64 * r[k] as i64;
                    }
                }
                let expect = Element::monomial(&ctx, 2, m.inverse_exps(dim), c.conj().mul_root(ctx.q_exponent(-phase)));
                assert_eq!(x.adjoint(), expect);
            }
        }
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in [2, 3, 4] {
            let ctx = ScalarContext::new(dim).unwrap();
            for _ in 0..20 {
                let x = random_element(&ctx, 2, 3, &mut rng);
                let y = random_element(&ctx, 2, 3, &mut rng);
                assert_eq!(x.adjoint().adjoint(), x);
                assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
            }
        }
    }

    #[test]
    fn constant_terms() {
        let ctx = ScalarContext::new(3).unwrap();
        assert!(Element::identity(&ctx, 1).constant_term().is_one());
        assert!(g(&ctx, 1, 1, 1).constant_term().is_zero());
    }

    #[test]
    fn charge_sectors() {
        let ctx = ScalarContext::new(4).unwrap();
        let m = &g(&ctx, 1, 1, 1) * &g(&ctx, 1, 2, 3);
        assert_eq!(m.terms().keys().next().unwrap().charge(4), 0);
        assert_eq!(g(&ctx, 1, 1, 1).charge_apply(), g(&ctx, 1, 1, 1).scale(ctx.q()));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_element(&ctx, 2, 6, &mut rng);
        let sectors = x.charge_decompose();
        assert_eq!(sectors.len(), 4);
        let total = sectors.iter().fold(Element::zero(&ctx, 2), |a, b| &a + b);
        assert_eq!(total, x);
        for (j, s) in sectors.iter().enumerate() {
            assert_eq!(s.charge_apply(), s.scale(&ctx.q_pow(j as i64)));
        }
    }

    #[test]
    fn centre_is_trivial() {
        for (dim, n) in [(2, 1), (3, 2), (5, 1), (2, 3), (4, 2), (3, 3)] {
            let basis = center_basis(dim, n).unwrap();
            assert_eq!(basis, vec![Monomial::identity(2 * n)], "N={dim}, n={n}");
        }
    }

    #[test]
    fn centre_enumeration_agrees_with_direct_commutation() {
        // brute-force oracle: test each monomial against every generator
        for (dim, n) in [(2u32, 1usize), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)] {
            let ctx = ScalarContext::new(dim).unwrap();
            let len = 2 * n;
            let mut central = Vec::new();
            for code in 0..(dim as usize).pow(len as u32) {
                let exps: Vec<i64> = (0..len).map(|i| ((code / (dim as usize).pow(i as u32)) % dim as usize) as i64).collect();
                let m = Monomial::from_exps(&exps, dim);
                if is_central(&Element::monomial(&ctx, n, m.clone(), ctx.one())) {
                    central.push(m);
                }
            }
            central.sort();
            assert_eq!(central, center_basis(dim, n).unwrap());
        }
    }

    #[test]
    fn vanishing_sum_of_other_exponents_is_not_centrality() {
        // r = (1,1,1,1), N = 3: every "sum over i ≠ k" is 3 ≡ 0, yet c1c2c3c4 does not
        // commute with c1
        let ctx = ScalarContext::new(3).unwrap();
        let m = Element::monomial(&ctx, 2, Monomial::from_exps(&[1, 1, 1, 1], 3), ctx.one());
        assert!(!is_central(&m));
    }

    #[test]
    fn centrality_of_simple_elements() {
        let ctx = ScalarContext::new(3).unwrap();
        assert!(is_central(&Element::identity(&ctx, 2)));
        assert!(!is_central(&g(&ctx, 2, 1, 1)));
    }

    #[test]
    fn certificate_preconditions() {
        let ctx = ScalarContext::new(3).unwrap();
        let one = Element::identity(&ctx, 1);
        let cert = certify_equal(&one, &one, &one).unwrap();
        assert!(cert.passed());
        let c1 = g(&ctx, 1, 1, 1);
        assert!(matches!(certify_equal(&c1, &one, &one), Err(Error::ZeroConstantTerm("x"))));
        assert!(matches!(certify_equal(&one, &one, &c1), Err(Error::NotInverse)));
        // a valid inverse with a different scalar fails the certificate, not the precondition
        let two = Element::scalar(&ctx, 1, ctx.int(2));
        let half = Element::scalar(&ctx, 1, ctx.rational(num_rational::BigRational::new(1.into(), 2.into())));
        let cert = certify_equal(&one, &two, &half).unwrap();
        assert!(cert.central_check && !cert.constant_match);
    }

    #[test]
    fn subalgebra_map_relabels_generators() {
        let ctx = ScalarContext::new(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let x = &g(&ctx, 1, 1, a) * &g(&ctx, 1, 2, b);
                let y = x.subalgebra_map(&[(1, 2), (2, 5)], 3).unwrap();
                assert_eq!(y, &g(&ctx, 3, 2, a) * &g(&ctx, 3, 5, b));
            }
        }
        let one = Element::identity(&ctx, 1);
        assert_eq!(one.subalgebra_map(&[], 2).unwrap(), Element::identity(&ctx, 2));
        let x = &g(&ctx, 1, 1, 1) * &g(&ctx, 1, 2, 1);
        assert!(matches!(x.subalgebra_map(&[(1, 4), (2, 3)], 2), Err(Error::NonMonotoneMap)));
    }

    #[test]
    fn subalgebra_map_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for dim in [2, 3, 4] {
            let ctx = ScalarContext::new(dim).unwrap();
            let map = [(1, 2), (2, 4)];
            for _ in 0..20 {
                let x = random_element(&ctx, 1, 3, &mut rng);
                let y = random_element(&ctx, 1, 3, &mut rng);
                let lhs = (&x * &y).subalgebra_map(&map, 2).unwrap();
                let rhs = &x.subalgebra_map(&map, 2).unwrap() * &y.subalgebra_map(&map, 2).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generator_index_is_checked() {
        let ctx = ScalarContext::new(2).unwrap();
        assert!(matches!(
            Element::generator(&ctx, 1, 3, 1),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        ));
    }
}
