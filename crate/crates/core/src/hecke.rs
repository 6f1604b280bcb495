//! The Bernstein-Lusztig-Hecke algebra over `F(Y)`, in the normal form
//! `sum_w T_w * theta_w` with coefficients on the right.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coxeter::{CoxeterError, Reflection, WeylElement, WeylGroup};
use crate::field::Field;
use crate::laurent::{LaurentPoly, RationalElt};
use crate::rootdata::{validate_parameters, Coroot, DatumError, ParameterSet, RootDatum, TitsCone};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("elements live over different lattices (rank {0} vs {1})")]
    IncompatibleData(usize, usize),
    #[error("word {0:?} is not reduced for the tau-length")]
    WordNotReduced(Vec<String>),
}

/// An element `sum_w T_w * theta_w`.
#[derive(Debug, Clone)]
pub struct HeckeElt<F> {
    rank: usize,
    coeffs: BTreeMap<WeylElement, RationalElt<F>>,
}

impl<F: Field> HeckeElt<F> {
    pub fn zero(rank: usize) -> Self {
        Self { rank, coeffs: BTreeMap::new() }
    }

    /// `T_w * theta`.
    pub fn term(w: WeylElement, theta: RationalElt<F>) -> Self {
        let mut out = Self::zero(theta.rank());
        out.add_term(w, theta);
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &RationalElt<F>)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElement> {
        self.coeffs.keys()
    }

    pub fn coefficient(&self, w: &WeylElement) -> RationalElt<F> {
        self.coeffs.get(w).cloned().unwrap_or_else(|| RationalElt::zero(self.rank))
    }

    pub fn add_term(&mut self, w: WeylElement, theta: RationalElt<F>) {
        if theta.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(c) => {
                let s = &*c + &theta;
                if s.is_zero() {
                    self.coeffs.remove(&w);
                } else {
                    *c = s;
                }
            }
            None => {
                self.coeffs.insert(w, theta);
            }
        }
    }

    /// `self * theta`.
    pub fn mul_scalar_right(&self, theta: &RationalElt<F>) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in &self.coeffs {
            out.add_term(w.clone(), c * theta);
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, x) in &self.coeffs {
            out.add_term(w.clone(), x.scale(c));
        }
        out
    }
}

impl<F: Field> PartialEq for HeckeElt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for HeckeElt<F> {}

impl<F: Field> Add for &HeckeElt<F> {
    type Output = HeckeElt<F>;
    fn add(self, rhs: Self) -> HeckeElt<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &HeckeElt<F> {
    type Output = HeckeElt<F>;
    fn sub(self, rhs: Self) -> HeckeElt<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &HeckeElt<F> {
    type Output = HeckeElt<F>;
    fn neg(self) -> HeckeElt<F> {
        HeckeElt { rank: self.rank, coeffs: self.coeffs.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl<F: Field> fmt::Display for HeckeElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "T[{w}]*({c})")?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for HeckeElt<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(bound = "")]
        struct Term<'a, F: Field> {
            word: Vec<usize>,
            coefficient: &'a RationalElt<F>,
        }
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (w, c) in &self.coeffs {
            seq.serialize_element(&Term { word: w.word_one_based(), coefficient: c })?;
        }
        seq.end()
    }
}

/// Membership in the Bernstein-Lusztig algebra (polynomial coefficients)
/// and in the Iwahori-Hecke algebra (exponents in the Tits cone).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_blh: bool,
    /// `None` when a Tits-cone test was undetermined.
    pub in_ih: Option<bool>,
}

/// The algebra attached to a root datum and a parameter set.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<F> {
    group: WeylGroup,
    params: ParameterSet<F>,
    gens: Vec<WeylElement>,
    q_simple: Vec<RationalElt<F>>,
}

impl<F: Field> HeckeAlgebra<F> {
    pub fn new(datum: RootDatum, params: ParameterSet<F>) -> Result<Self, HeckeError> {
        validate_parameters(&datum, &params)?;
        let group = WeylGroup::new(datum);
        let gens = (0..group.rank()).map(|i| group.generator(i)).collect();
        let q_simple = (0..group.rank()).map(|i| Self::build_q(&group, &params, i)).collect();
        Ok(Self { group, params, gens, q_simple })
    }

    fn build_q(group: &WeylGroup, params: &ParameterSet<F>, i: usize) -> RationalElt<F> {
        let datum = group.datum();
        let n = datum.lattice_rank();
        let (sigma, sigma_p) = (params.sigma(i).clone(), params.sigma_prime(i).clone());
        let minus: Vec<i64> = datum.simple_coroot(i).iter().map(|x| -x).collect();
        let constant = sigma.clone() * sigma.clone() - F::one();
        let linear = sigma * (sigma_p.clone() - sigma_p.inv().expect("nonzero parameter"));
        let num = &LaurentPoly::constant(n, constant) + &LaurentPoly::monomial(linear, minus.clone());
        RationalElt::with_denominator(num, [(F::one(), minus.clone()), (-F::one(), minus)])
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn params(&self) -> &ParameterSet<F> {
        &self.params
    }

    /// Rank of the lattice `Y`.
    pub fn lattice_rank(&self) -> usize {
        self.datum().lattice_rank()
    }

    pub fn num_simple(&self) -> usize {
        self.group.rank()
    }

    pub fn generator(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    fn sigma_sq(&self, i: usize) -> F {
        let s = self.params.sigma(i).clone();
        s.clone() * s
    }

    // ---- basic elements ----

    pub fn zero(&self) -> HeckeElt<F> {
        HeckeElt::zero(self.lattice_rank())
    }

    pub fn one(&self) -> HeckeElt<F> {
        self.t(&self.group.identity())
    }

    pub fn t(&self, w: &WeylElement) -> HeckeElt<F> {
        HeckeElt::term(w.clone(), RationalElt::one(self.lattice_rank()))
    }

    pub fn t_word(&self, word: &[usize]) -> HeckeElt<F> {
        self.t(&self.group.from_word(word))
    }

    /// `T_e * theta`.
    pub fn scalar(&self, theta: RationalElt<F>) -> HeckeElt<F> {
        HeckeElt::term(self.group.identity(), theta)
    }

    pub fn monomial(&self, c: F, lambda: Vec<i64>) -> HeckeElt<F> {
        self.scalar(RationalElt::monomial(c, lambda))
    }

    // ---- coefficient operators ----

    pub fn q_s_t(&self, i: usize) -> &RationalElt<F> {
        &self.q_simple[i]
    }

    /// `Q_r^T = ^w Q_{s0}^T` for `r = w s0 w^{-1}` with `w s0 > w`.
    pub fn q_reflection(&self, r: &Reflection) -> RationalElt<F> {
        self.q_simple[r.simple].twist(r.conjugator.y_matrix())
    }

    pub fn twist(&self, w: &WeylElement, theta: &RationalElt<F>) -> RationalElt<F> {
        theta.twist(w.y_matrix())
    }

    /// `Q_s^T (theta - ^s theta)`.
    pub fn omega_tilde(&self, i: usize, theta: &RationalElt<F>) -> RationalElt<F> {
        let diff = theta - &theta.twist(self.gens[i].y_matrix());
        &self.q_simple[i] * &diff
    }

    /// `zeta_r = sigma_r^2 - Q_r^T`.
    pub fn zeta(&self, beta: &Coroot) -> Result<RationalElt<F>, HeckeError> {
        let r = self.group.reflection_from_coroot(beta)?;
        Ok(self.zeta_of(&r))
    }

    pub fn zeta_of(&self, r: &Reflection) -> RationalElt<F> {
        &RationalElt::constant(self.lattice_rank(), self.sigma_sq(r.simple)) - &self.q_reflection(r)
    }

    /// `1 / theta` when its numerator splits into binomials along real
    /// coroots with the scales occurring in `zeta` and `Q^T`.
    pub fn invert_scalar(&self, theta: &RationalElt<F>) -> Option<RationalElt<F>> {
        let exps: Vec<&Vec<i64>> = theta.numerator().terms().map(|(e, _)| e).collect();
        let span = exps
            .iter()
            .flat_map(|a| exps.iter().map(move |b| a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum::<i64>()))
            .max()
            .unwrap_or(0);
        let mut scales: Vec<F> = Vec::new();
        for i in 0..self.num_simple() {
            let (s, sp) = (self.params.sigma(i).clone(), self.params.sigma_prime(i).clone());
            for c in [F::one(), -F::one(), s.clone() * sp.clone(), -(s / sp)] {
                for d in [c.clone(), c.inv().expect("nonzero scale")] {
                    if !scales.contains(&d) {
                        scales.push(d);
                    }
                }
            }
        }
        let candidates: Vec<(F, Vec<i64>)> = self
            .datum()
            .enumerate_coroots(span.max(1))
            .iter()
            .filter(|b| b.is_positive())
            .flat_map(|b| {
                let y = self.datum().coroot_to_y(b);
                scales.iter().map(move |c| (c.clone(), y.clone()))
            })
            .collect();
        theta.recip_with(&candidates)
    }

    // ---- products ----

    /// `T_x T_s` as a list of (element, scalar) pairs.
    fn t_times_gen(&self, x: &WeylElement, s: usize) -> Vec<(WeylElement, F)> {
        let xs = self.group.right_mul_gen(x, s);
        if !self.group.is_right_descent(x, s) {
            vec![(xs, F::one())]
        } else {
            let q = self.sigma_sq(s);
            vec![(x.clone(), q.clone() - F::one()), (xs, q)]
        }
    }

    /// `T_s T_x`.
    fn gen_times_t(&self, s: usize, x: &WeylElement) -> Vec<(WeylElement, F)> {
        let sx = self.group.left_mul_gen(s, x);
        if sx.len() > x.len() {
            vec![(sx, F::one())]
        } else {
            let q = self.sigma_sq(s);
            vec![(x.clone(), q.clone() - F::one()), (sx, q)]
        }
    }

    /// `theta * T_v` in normal form, via `theta T_s = T_s ^s theta + Omega_s(theta)`.
    pub fn theta_times_t(&self, theta: &RationalElt<F>, v: &WeylElement) -> HeckeElt<F> {
        let mut state = self.scalar(theta.clone());
        for &s in v.word() {
            let mut next = self.zero();
            for (x, c) in state.terms() {
                let twisted = c.twist(self.gens[s].y_matrix());
                for (y, k) in self.t_times_gen(x, s) {
                    next.add_term(y, twisted.scale(&k));
                }
                next.add_term(x.clone(), self.omega_tilde(s, c));
            }
            state = next;
        }
        state
    }

    /// `T_u * h`.
    pub fn t_times(&self, u: &WeylElement, h: &HeckeElt<F>) -> HeckeElt<F> {
        let mut state = h.clone();
        for &s in u.word().iter().rev() {
            let mut next = self.zero();
            for (x, c) in state.terms() {
                for (y, k) in self.gen_times_t(s, x) {
                    next.add_term(y, c.scale(&k));
                }
            }
            state = next;
        }
        state
    }

    pub fn mul(&self, a: &HeckeElt<F>, b: &HeckeElt<F>) -> HeckeElt<F> {
        let mut out = self.zero();
        for (u, theta) in a.terms() {
            let mut inner = self.zero();
            for (v, phi) in b.terms() {
                inner = &inner + &self.theta_times_t(theta, v).mul_scalar_right(phi);
            }
            out = &out + &self.t_times(u, &inner);
        }
        out
    }

    pub fn checked_mul(&self, a: &HeckeElt<F>, b: &HeckeElt<F>) -> Result<HeckeElt<F>, HeckeError> {
        for h in [a, b] {
            if h.rank() != self.lattice_rank() {
                return Err(HeckeError::IncompatibleData(h.rank(), self.lattice_rank()));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a HeckeElt<F>>) -> HeckeElt<F> {
        factors.into_iter().fold(self.one(), |acc, h| self.mul(&acc, h))
    }

    pub fn pow(&self, h: &HeckeElt<F>, n: usize) -> HeckeElt<F> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, h))
    }

    // ---- intertwiners ----

    /// `F_s = T_s - Q_s^T`, the element with `theta F_s = F_s ^s theta`.
    pub fn f_simple(&self, i: usize) -> HeckeElt<F> {
        let mut h = self.t(&self.gens[i]);
        h.add_term(self.group.identity(), -&self.q_simple[i]);
        h
    }

    /// `F_w = F_{s_1} ... F_{s_k}` along the canonical reduced word.
    pub fn f_w(&self, w: &WeylElement) -> HeckeElt<F> {
        self.f_word(w.word())
    }

    /// The product of `F_s` along an arbitrary word.
    pub fn f_word(&self, word: &[usize]) -> HeckeElt<F> {
        word.iter().fold(self.one(), |acc, &s| self.mul(&acc, &self.f_simple(s)))
    }

    /// `zeta_s^{-1}`. The numerator of `zeta_s` splits as
    /// `(1 - sigma sigma' x)(1 + (sigma / sigma') x)` with `x = Z^{-alpha_s}`.
    fn zeta_simple_inverse(&self, i: usize) -> RationalElt<F> {
        let n = self.lattice_rank();
        let (sigma, sigma_p) = (self.params.sigma(i).clone(), self.params.sigma_prime(i).clone());
        let minus: Vec<i64> = self.datum().simple_coroot(i).iter().map(|x| -x).collect();
        let x = LaurentPoly::monomial(F::one(), minus.clone());
        let num = &(&LaurentPoly::one(n) - &x) * &(&LaurentPoly::one(n) + &x);
        let ratio = sigma.clone() / sigma_p.clone();
        RationalElt::with_denominator(num, [(sigma * sigma_p, minus.clone()), (-ratio, minus)])
    }

    /// `F_s^{-1} = F_s (zeta_s ^s zeta_s)^{-1}`.
    pub fn f_simple_inverse(&self, i: usize) -> HeckeElt<F> {
        let z = self.zeta_simple_inverse(i);
        let c = &z * &z.twist(self.gens[i].y_matrix());
        self.f_simple(i).mul_scalar_right(&c)
    }

    /// `F_r = F_w F_s F_w^{-1}` for `r = w s w^{-1}`, so that
    /// `F_r^2 = zeta_r ^r zeta_r`. Agrees with `F_s` for simple `r`.
    pub fn f_reflection(&self, r: &Reflection) -> HeckeElt<F> {
        let word = r.conjugator.word();
        let inverse = word.iter().rev().fold(self.one(), |acc, &s| self.mul(&acc, &self.f_simple_inverse(s)));
        self.product([&self.f_word(word), &self.f_simple(r.simple), &inverse])
    }

    /// `K~_r = F_r + Q_r^T`.
    pub fn k_tilde_reflection(&self, r: &Reflection) -> HeckeElt<F> {
        let mut h = self.f_reflection(r);
        h.add_term(self.group.identity(), self.q_reflection(r));
        h
    }

    /// `K_r = F_r - zeta_r`.
    pub fn k_reflection(&self, r: &Reflection) -> HeckeElt<F> {
        let mut h = self.f_reflection(r);
        h.add_term(self.group.identity(), -&self.zeta_of(r));
        h
    }

    /// `K~_{r_1} ... K~_{r_k}` without a reducedness check.
    pub fn k_tilde_product(&self, word: &[Reflection]) -> HeckeElt<F> {
        word.iter().fold(self.one(), |acc, r| self.mul(&acc, &self.k_tilde_reflection(r)))
    }

    // ---- support ----

    pub fn membership(&self, h: &HeckeElt<F>, cap: Option<usize>) -> Membership {
        let in_blh = h.terms().all(|(_, c)| c.is_polynomial());
        if !in_blh {
            return Membership { in_blh, in_ih: Some(false) };
        }
        // Y^+ is W-stable and Omega_s preserves C[Y^+], so right and left
        // normal forms have the same exponents up to that closure.
        let mut undetermined = false;
        for (_, c) in h.terms() {
            for (lambda, _) in c.numerator().terms() {
                match self.datum().tits_cone(lambda, cap) {
                    TitsCone::InPositiveCone(_) => {}
                    TitsCone::InNegativeCone(_) => return Membership { in_blh, in_ih: Some(false) },
                    TitsCone::Undetermined => undetermined = true,
                }
            }
        }
        Membership { in_blh, in_ih: if undetermined { None } else { Some(true) } }
    }

    /// Bruhat-maximal elements of the support.
    pub fn max_supp(&self, h: &HeckeElt<F>) -> Vec<WeylElement> {
        let supp: Vec<&WeylElement> = h.support().collect();
        supp.iter()
            .filter(|&&w| !supp.iter().any(|&v| v != w && v.len() > w.len() && self.group.bruhat_leq(w, v)))
            .map(|&w| w.clone())
            .collect()
    }
}
