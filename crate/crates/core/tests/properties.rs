//! Property tests for the structural invariants of each module.

use std::collections::BTreeSet;

use kmhecke::catalog;
use kmhecke::linalg::rank;
use kmhecke::principal::act_on_character;
use kmhecke::verify::{self, equal_q4, Rng8, SeedableRng};
use kmhecke::{
    BigRational as Q, Character, Coroot, Field, HeckeAlgebra, IntegralPart, LaurentPoly, LowerSet, ModuleVector, PrincipalSeries,
    RationalElt, RootDatum, TauAnalysis, TauContext, WeylGroup,
};
use proptest::prelude::*;

fn q(n: i64) -> Q {
    <Q as Field>::from_i64(n)
}

fn datum(k: usize) -> RootDatum {
    [catalog::a2(), catalog::b2(), catalog::affine_a1(), catalog::rank3(), catalog::g2()][k % 5].clone()
}

fn word(max: usize, gens: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..gens, 0..=max)
}

fn exponent(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

fn nonzero_ratio() -> impl Strategy<Value = Q> {
    (prop::sample::select(vec![-5i64, -3, -2, 2, 3, 5, 7]), 1i64..=4).prop_map(|(a, b)| q(a) / q(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // ---- root data ----

    #[test]
    fn reflections_are_involutions(k in 0usize..5, v in exponent(3)) {
        let d = datum(k);
        let v: Vec<i64> = v.into_iter().take(d.lattice_rank()).collect();
        prop_assume!(v.len() == d.lattice_rank());
        for i in 0..d.num_simple() {
            prop_assert_eq!(d.reflect(i, &d.reflect(i, &v)), v.clone());
        }
    }

    #[test]
    fn coroot_set_closed_under_reflection_and_negation(k in 0usize..5) {
        let d = datum(k);
        let bound = 12;
        let set = d.enumerate_coroots(bound);
        for i in 0..d.num_simple() {
            prop_assert!(set.contains(&Coroot::simple(d.num_simple(), i)));
        }
        for b in &set {
            prop_assert!(set.contains(&b.neg()));
            for i in 0..d.num_simple() {
                let r = d.reflect_coroot(i, b);
                if r.height() <= bound {
                    prop_assert!(set.contains(&r), "{} -> {}", b, r);
                }
            }
        }
    }

    // ---- Weyl group ----

    #[test]
    fn length_is_subadditive_with_parity(k in 0usize..5, u in word(5, 3), v in word(5, 3)) {
        let d = datum(k);
        let n = d.num_simple();
        let g = WeylGroup::new(d);
        let u = g.from_word(&u.into_iter().map(|i| i % n).collect::<Vec<_>>());
        let v = g.from_word(&v.into_iter().map(|i| i % n).collect::<Vec<_>>());
        let uv = g.multiply(&u, &v);
        prop_assert!(uv.len() <= u.len() + v.len());
        prop_assert_eq!((uv.len() + u.len() + v.len()) % 2, 0);
        prop_assert!(g.multiply(&u, &g.inverse(&u)).is_identity());
    }

    #[test]
    fn inversions_count_length_and_descents(k in 0usize..5, w in word(6, 3)) {
        let d = datum(k);
        let n = d.num_simple();
        let g = WeylGroup::new(d);
        let w = g.from_word(&w.into_iter().map(|i| i % n).collect::<Vec<_>>());
        let inv = g.inversion_coroots(&w);
        prop_assert_eq!(inv.len(), w.len());
        prop_assert_eq!(inv.iter().collect::<BTreeSet<_>>().len(), inv.len());
        for b in &inv {
            prop_assert!(b.is_positive() && w.act_coroot(b).is_negative());
        }
        for i in 0..n {
            let descends = g.right_mul_gen(&w, i).len() < w.len();
            prop_assert_eq!(descends, w.act_coroot(&Coroot::simple(n, i)).is_negative());
            prop_assert_eq!(g.is_right_descent(&w, i), descends);
        }
    }

    #[test]
    fn reflections_from_coroots(k in 0usize..5, idx in 0usize..100) {
        let d = datum(k);
        let g = WeylGroup::new(d.clone());
        let pos: Vec<Coroot> = d.enumerate_coroots(10).into_iter().filter(|b| b.is_positive()).collect();
        let b = &pos[idx % pos.len()];
        let r = g.reflection_from_coroot(b).unwrap();
        prop_assert!(g.multiply(&r.element, &r.element).is_identity());
        prop_assert_eq!(r.element.act_coroot(b), b.neg());
        prop_assert_eq!(g.coroot_of_reflection(&r.element), Some(b.clone()));
    }

    // ---- Laurent polynomials and rational functions ----

    #[test]
    fn twist_is_compatible_with_evaluation(w in word(4, 2), a in exponent(2), b in exponent(2), t1 in nonzero_ratio(), t2 in nonzero_ratio(), c in 2i64..5) {
        let alg = equal_q4(catalog::a2());
        let g = alg.group();
        let w = g.from_word(&w);
        let tau = Character::new(vec![t1, t2]).unwrap();
        let theta = &RationalElt::monomial(q(1), a) + &RationalElt::with_denominator(LaurentPoly::monomial(q(2), b), [(q(c), vec![1, 0])]);
        let twisted = alg.twist(&w, &theta);
        let moved = act_on_character(g, &g.inverse(&w), &tau);
        prop_assert_eq!(twisted.evaluate(&tau).ok(), theta.evaluate(&moved).ok());
        let sq = alg.twist(&w, &(&theta * &theta));
        prop_assert_eq!(sq, &twisted * &twisted);
    }

    #[test]
    fn rational_arithmetic_laws(a in exponent(2), b in exponent(2), c in exponent(2), s in 2i64..5) {
        let x = RationalElt::with_denominator(LaurentPoly::monomial(q(1), a), [(q(s), vec![0, 1])]);
        let y = RationalElt::with_denominator(LaurentPoly::monomial(q(3), b), [(q(1), vec![1, -1])]);
        let z = RationalElt::monomial(q(-2), c);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        let mut r = &(&x * &y) * &y;
        let before = r.clone();
        r.reduce();
        prop_assert_eq!(r, before);
    }

    #[test]
    fn omega_of_monomial_is_polynomial(k in 0usize..5, lam in exponent(3), i in 0usize..3) {
        let d = datum(k);
        let n = d.lattice_rank();
        let i = i % d.num_simple();
        prop_assume!(lam.len() >= n);
        let alg = equal_q4(d);
        let omega = alg.omega_tilde(i, &RationalElt::monomial(q(1), lam[..n].to_vec()));
        prop_assert!(omega.is_polynomial());
    }

    // ---- Hecke algebra ----

    #[test]
    fn associativity_with_intertwiners(seed in any::<u64>(), k in 0usize..3) {
        let (_, alg) = verify::test_algebras().swap_remove(k);
        let mut rng = Rng8::seed_from_u64(seed);
        let a = &verify::random_element(&alg, &mut rng, 2, 1) + &alg.f_simple(0);
        let b = verify::random_element(&alg, &mut rng, 2, 1);
        let c = alg.f_simple(1);
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn f_w_intertwines_monomials(w in word(4, 3), lam in exponent(3)) {
        let alg = equal_q4(catalog::rank3());
        let g = alg.group();
        let w = g.from_word(&w);
        let f = alg.f_w(&w);
        let theta = RationalElt::monomial(q(1), lam);
        prop_assert_eq!(alg.mul(&alg.scalar(theta.clone()), &f), f.mul_scalar_right(&alg.twist(&g.inverse(&w), &theta)));
    }

    // ---- principal series ----

    #[test]
    fn action_axiom(seed in any::<u64>(), t1 in nonzero_ratio(), t2 in nonzero_ratio()) {
        let alg = equal_q4(catalog::a2());
        let m = PrincipalSeries::new(&alg, Character::new(vec![t1, t2]).unwrap()).unwrap();
        let mut rng = Rng8::seed_from_u64(seed);
        let h1 = verify::random_element(&alg, &mut rng, 2, 1);
        let h2 = verify::random_element(&alg, &mut rng, 2, 1);
        let x = &m.v_tau() + &ModuleVector::basis(alg.group().from_word(&[1]));
        let lhs = m.act(&alg.mul(&h1, &h2), &x).unwrap();
        let rhs = m.act(&h1, &m.act(&h2, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomials_preserve_lower_sets(lam in exponent(3), w in word(3, 2)) {
        let alg = equal_q4(catalog::affine_a1());
        let m = PrincipalSeries::new(&alg, Character::trivial(3)).unwrap();
        let g = alg.group();
        let w = g.from_word(&w);
        let dom = LowerSet::closure(g, [&w]);
        let y = m.act_poly(&LaurentPoly::monomial(q(1), lam), &ModuleVector::basis(w.clone()));
        let allowed: BTreeSet<_> = dom.elements().iter().collect();
        prop_assert!(y.support().all(|v| allowed.contains(v)));
    }

    #[test]
    fn weight_vectors_are_eigenvectors(k in 0usize..3, t in prop::sample::select(vec![-1i64, 1, 2])) {
        let (_, alg) = verify::test_algebras().swap_remove(k);
        let n = alg.lattice_rank();
        let tau = Character::new(vec![q(t); n]).unwrap();
        let m = PrincipalSeries::new(&alg, tau.clone()).unwrap();
        let dom = LowerSet::ball(alg.group(), 2);
        let ws = m.weight_space(&tau, &dom).unwrap();
        prop_assert!(ws.contains(&m.v_tau()) || rank(&[vec![q(1)]], 1) == 1);
        for x in &ws {
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                prop_assert_eq!(m.act_poly(&LaurentPoly::monomial(q(1), e), x), x.scale(&tau.values()[j]));
            }
        }
        let gws = m.generalized_weight_space(&tau, &dom, 4).unwrap().len();
        prop_assert!(gws >= ws.len());
    }
}

/// The trivial, partial and `(-1, 1, 1)` characters with their algebras.
fn stabilizer_cases() -> Vec<(HeckeAlgebra<Q>, Character<Q>)> {
    vec![
        (equal_q4(catalog::a2()), Character::trivial(2)),
        (equal_q4(catalog::a2()), verify::a2_partial_character()),
        (equal_q4(catalog::affine_a1()), Character::trivial(3)),
        (equal_q4(catalog::affine_a1()), Character::new(vec![q(-1), q(1), q(1)]).unwrap()),
        (equal_q4(catalog::rank3()), Character::new(vec![q(-1), q(1), q(-1)]).unwrap()),
        (equal_q4(catalog::a1()), Character::new(vec![q(-1)]).unwrap()),
    ]
}

/// Is `target` a non-negative integer combination of `gens`?
fn in_cone(target: &Coroot, gens: &[Coroot], memo: &mut std::collections::BTreeMap<Coroot, bool>) -> bool {
    if target.coords().iter().all(|&c| c == 0) {
        return true;
    }
    if !target.is_positive() {
        return false;
    }
    if let Some(&v) = memo.get(target) {
        return v;
    }
    let v = gens.iter().any(|g| {
        let rest = Coroot::new(target.coords().iter().zip(g.coords()).map(|(a, b)| a - b).collect());
        in_cone(&rest, gens, memo)
    });
    memo.insert(target.clone(), v);
    v
}

#[test]
fn sigma_tau_structure() {
    for (alg, tau) in stabilizer_cases() {
        let ctx = TauContext::new(&alg, tau).unwrap();
        let an = TauAnalysis::compute(&ctx, 10, 4).unwrap();
        assert!(an.sigma_certificate.reflection_criterion_agrees && an.sigma_certificate.pair_search_agrees);
        let reflections: BTreeSet<_> = an.s_tau.iter().map(|r| r.element.clone()).collect();
        assert_eq!(reflections.len(), an.sigma_tau.len());
        for r in &an.s_tau {
            assert_eq!(alg.group().coroot_of_reflection(&r.element).as_ref(), Some(&r.coroot));
        }
        let mut memo = Default::default();
        for b in an.phi_tau_plus() {
            assert!(in_cone(b, &an.sigma_tau, &mut memo), "{b} not in N Sigma_tau");
        }
        assert!(an.semidirect_check(&ctx));
        for w in &an.w_paren_tau_ball {
            for v in &an.w_paren_tau_ball {
                if ctx.tau_bruhat_leq(v, w) {
                    assert!(alg.group().bruhat_leq(v, w), "{v} <=_tau {w}");
                }
            }
        }
    }
}

#[test]
fn k_tilde_relations_on_balls() {
    let mut rng = Rng8::seed_from_u64(11);
    for (alg, tau) in stabilizer_cases() {
        let ctx = TauContext::new(&alg, tau).unwrap();
        for o in verify::k_tilde_suite(&ctx, 10, 3) {
            assert!(o.passed(), "{o:?}");
        }
        let gens = verify::s_tau_generators(&ctx, 10);
        let g = alg.group();
        for r in &gens {
            let kt = alg.k_tilde_reflection(r);
            let k = alg.k_reflection(r);
            let s2 = alg.params().sigma(r.simple).clone() * alg.params().sigma(r.simple).clone();
            // K_s^2 = -(1 + sigma^2) K_s
            assert_eq!(alg.mul(&k, &k), k.scale(&-(q(1) + s2.clone())));
            // theta K~_s = K~_s (s.theta) + Omega~_s(theta), with Omega~_s = Q_s (theta - s.theta)
            let theta = RationalElt::monomial(q(1), verify::random_exponent(&mut rng, alg.lattice_rank(), 2));
            let st = alg.twist(&r.element, &theta);
            let omega = &alg.q_reflection(r) * &(&theta - &st);
            assert!(omega.is_polynomial());
            assert_eq!(alg.mul(&alg.scalar(theta.clone()), &kt), &kt.mul_scalar_right(&st) + &alg.scalar(omega));
        }
        // Hecke product rule on the ball.
        for w in verify::w_paren_ball(&ctx, &gens, 2).into_iter().flatten() {
            let kw = ctx.k_tilde_of(&w).unwrap();
            for r in &gens {
                let ws = g.multiply(&w, &r.element);
                let kws = ctx.k_tilde_of(&ws).unwrap();
                let s2 = alg.params().sigma(r.simple).clone() * alg.params().sigma(r.simple).clone();
                let prod = alg.mul(&kw, &alg.k_tilde_reflection(r));
                let expect = if ctx.tau_length(&ws) > ctx.tau_length(&w) {
                    kws
                } else {
                    &kw.scale(&(s2.clone() - q(1))) + &kws.scale(&s2)
                };
                assert_eq!(prod, expect, "{w} * {}", r.coroot);
            }
        }
    }
}

#[test]
fn integral_part_filtration() {
    let mut rng = Rng8::seed_from_u64(12);
    use rand::Rng;
    for (alg, tau) in stabilizer_cases().into_iter().take(3) {
        let ctx = TauContext::new(&alg, tau.clone()).unwrap();
        let itg = IntegralPart::new(&ctx).unwrap();
        let gens: Vec<_> = verify::s_tau_generators(&ctx, 10).into_iter().map(|r| r.element).collect();
        let basis = itg.basis(&gens, 3).unwrap();
        let m = itg.series();
        let n = alg.lattice_rank();
        for _ in 0..20 {
            let x = basis.iter().fold(ModuleVector::zero(), |acc, b| &acc + &b.vector.scale(&q(rng.gen_range(-2..=2))));
            let lam = verify::random_exponent(&mut rng, n, 2);
            // theta = Z^lam - tau(lam) vanishes at tau and lowers l_tau.
            let theta = &LaurentPoly::monomial(q(1), lam.clone()) - &LaurentPoly::constant(n, tau.eval(&lam));
            let y = m.act_poly(&theta, &x);
            let lx = itg.stats(&x).unwrap().tau_length;
            let ly = itg.stats(&y).unwrap().tau_length;
            assert!(ly.is_none() || ly < lx, "{x} -> {y}");
        }
        // A non-vanishing theta acts injectively on the span of the basis.
        let theta = &LaurentPoly::monomial(q(1), vec![1; n]) + &LaurentPoly::constant(n, q(2));
        if theta.evaluate(&tau) != q(0) {
            let index: Vec<_> = basis.iter().map(|b| b.element.clone()).collect();
            let rows: Vec<Vec<Q>> = basis
                .iter()
                .map(|b| {
                    let y = m.act_poly(&theta, &b.vector);
                    let c = itg.coordinates(&y).unwrap();
                    index.iter().map(|w| c.get(w).cloned().unwrap_or_else(|| q(0))).collect()
                })
                .collect();
            assert_eq!(rank(&rows, index.len()), basis.len());
        }
    }
}

#[test]
fn generalized_weight_space_from_psi_images() {
    // A1 at tau = -1: R_tau = {e, s}, W_(tau) = {e}.
    let alg = equal_q4(catalog::a1());
    let tau = Character::new(vec![q(-1)]).unwrap();
    let m = PrincipalSeries::new(&alg, tau.clone()).unwrap();
    let dom = LowerSet::ball(alg.group(), 1);
    let gws = m.generalized_weight_space(&tau, &dom, 3).unwrap();
    let images = [m.psi(&alg.group().identity(), &m.v_tau()).unwrap(), m.psi(alg.generator(0), &m.v_tau()).unwrap()];
    let index = dom.elements().to_vec();
    let rows: Vec<Vec<Q>> = images.iter().map(|x| index.iter().map(|w| x.coefficient(w)).collect()).collect();
    assert_eq!(rank(&rows, index.len()), gws.len());

    // Trivial tau on A2: R_tau = {e}, and the integral part fills the module.
    let alg = equal_q4(catalog::a2());
    let tau = Character::trivial(2);
    let m = PrincipalSeries::new(&alg, tau.clone()).unwrap();
    let dom = LowerSet::ball(alg.group(), 3);
    assert_eq!(m.generalized_weight_space(&tau, &dom, 4).unwrap().len(), 6);
}
