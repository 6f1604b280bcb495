//! Workloads shared by the criterion benchmarks.

use kmhecke::{
    catalog, BigRational, Character, Field, HeckeAlgebra, HeckeElt, LaurentPoly, LowerSet, ParameterSet, PrincipalSeries,
    RationalElt, RootDatum, TauAnalysis, TauContext,
};

pub fn algebra(datum: RootDatum, q: i64) -> HeckeAlgebra<BigRational> {
    let k = datum.num_simple();
    HeckeAlgebra::new(datum, ParameterSet::from_q(k, q).expect("q is a square")).expect("valid datum")
}

fn int(n: i64) -> BigRational {
    <BigRational as Field>::from_i64(n)
}

/// Number of positive real coroots of height at most `bound` in the odd-pair datum.
pub fn coroot_count(bound: i64) -> usize {
    catalog::odd_pair().enumerate_coroots(bound).iter().filter(|b| b.is_positive()).count()
}

/// Size of the Weyl group ball of the given radius for the rank 3 hyperbolic datum.
pub fn ball_size(length: usize) -> usize {
    kmhecke::WeylGroup::new(catalog::rank3()).enumerate_ball(length).len()
}

/// `(T_{w0} Z^{lambda}) (T_{w0} Z^{-lambda})` in the given finite-type algebra.
pub fn bernstein_product(alg: &HeckeAlgebra<BigRational>, w0: &[usize]) -> HeckeElt<BigRational> {
    let n = alg.lattice_rank();
    let lambda: Vec<i64> = (0..n).map(|i| i as i64 + 1).collect();
    let minus: Vec<i64> = lambda.iter().map(|x| -x).collect();
    let t = alg.t_word(w0);
    let a = alg.mul(&t, &alg.scalar(RationalElt::from_poly(LaurentPoly::monomial(int(1), lambda))));
    let b = alg.mul(&t, &alg.scalar(RationalElt::from_poly(LaurentPoly::monomial(int(1), minus))));
    alg.mul(&a, &b)
}

/// Stabilizer analysis of the sign-like character on affine A1.
pub fn affine_analysis(coroot_bound: i64, length_bound: usize) -> usize {
    let alg = algebra(catalog::affine_a1(), 4);
    let tau = Character::new(vec![int(-1), int(1), int(1)]).expect("nonzero values");
    let ctx = TauContext::new(&alg, tau).expect("rank matches");
    TauAnalysis::compute(&ctx, coroot_bound, length_bound).expect("analysis").r_tau_ball.len()
}

/// Dimension of the tau-weight space on a ball of affine A1.
pub fn affine_weight_space(ball: usize) -> usize {
    let alg = algebra(catalog::affine_a1(), 4);
    let tau = Character::new(vec![int(-1), int(1), int(1)]).expect("nonzero values");
    let series = PrincipalSeries::new(&alg, tau.clone()).expect("series");
    series.weight_space(&tau, &LowerSet::ball(alg.group(), ball)).expect("weight space").len()
}
