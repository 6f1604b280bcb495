//! Stabilizer analysis of a character: the coroots `Phi_(tau)`, the simple
//! system `Sigma_tau`, the groups `W_tau`, `W_(tau)`, `R_tau`, and Kato's
//! irreducibility verdict.
//!
//! Membership in `Sigma_tau` is decided exactly: a positive `beta` in
//! `Phi_(tau)` is simple iff it is the only element of `Phi_(tau)` inverted
//! by `r_beta`. Everything downstream (the tau-length, `W_(tau)` and `R_tau`
//! membership) follows by peeling inversions, so only the enumeration of
//! infinite sets is bounded.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::coxeter::{Reflection, WeylElement};
use crate::field::Field;
use crate::hecke::{HeckeAlgebra, HeckeElt, HeckeError};
use crate::laurent::{Character, LaurentError};
use crate::rootdata::{Coroot, DatumError, KacMoodyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Character(#[from] LaurentError),
    #[error("pairing matrix over Sigma_tau is not a Kac-Moody matrix: {0}")]
    KacMoodyViolation(DatumError),
    #[error("{0} is not in W_(tau)")]
    NotInWParen(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Exact per-element tests for a fixed character.
#[derive(Debug)]
pub struct TauContext<'a, F> {
    algebra: &'a HeckeAlgebra<F>,
    tau: Character<F>,
    phi_cache: Mutex<HashMap<Coroot, bool>>,
    sigma_cache: Mutex<HashMap<Coroot, bool>>,
}

impl<'a, F: Field> TauContext<'a, F> {
    pub fn new(algebra: &'a HeckeAlgebra<F>, tau: Character<F>) -> Result<Self, StabilizerError> {
        tau.ensure_rank(algebra.lattice_rank())?;
        Ok(Self { algebra, tau, phi_cache: Mutex::default(), sigma_cache: Mutex::default() })
    }

    pub fn algebra(&self) -> &'a HeckeAlgebra<F> {
        self.algebra
    }

    pub fn tau(&self) -> &Character<F> {
        &self.tau
    }

    pub fn tau_of_coroot(&self, beta: &Coroot) -> F {
        self.tau.eval(&self.algebra.datum().coroot_to_y(beta))
    }

    pub fn reflection(&self, beta: &Coroot) -> Reflection {
        self.algebra.group().reflection_from_coroot(beta).expect("enumerated coroots are real")
    }

    /// `beta` lies in `Phi_(tau)`: a reduced denominator factor of `zeta`
    /// vanishes at tau.
    pub fn in_phi(&self, beta: &Coroot) -> bool {
        let key = beta.positive_part();
        if let Some(&v) = self.phi_cache.lock().unwrap().get(&key) {
            return v;
        }
        let z = self.algebra.zeta_of(&self.reflection(&key));
        let v = z.denominator().any(|(f, _)| f.evaluate(&self.tau).is_zero());
        self.phi_cache.lock().unwrap().insert(key, v);
        v
    }

    /// The reduced numerator of `zeta_beta` vanishes at tau.
    pub fn zeta_numerator_vanishes(&self, beta: &Coroot) -> bool {
        let z = self.algebra.zeta_of(&self.reflection(&beta.positive_part()));
        z.numerator().evaluate(&self.tau).is_zero()
    }

    /// Inversions of `w` that lie in `Phi_(tau)`.
    pub fn phi_inversions(&self, w: &WeylElement) -> Vec<Coroot> {
        self.algebra.group().inversion_coroots(w).into_iter().filter(|b| self.in_phi(b)).collect()
    }

    /// Exact test for `beta` in `Sigma_tau`.
    pub fn is_sigma(&self, beta: &Coroot) -> bool {
        if !beta.is_positive() || !self.in_phi(beta) {
            return false;
        }
        if let Some(&v) = self.sigma_cache.lock().unwrap().get(beta) {
            return v;
        }
        let r = self.reflection(beta);
        let v = self.phi_inversions(&r.element) == [beta.clone()];
        self.sigma_cache.lock().unwrap().insert(beta.clone(), v);
        v
    }

    /// `w . tau = tau`, tested on a basis of `Y`.
    pub fn fixes_tau(&self, w: &WeylElement) -> bool {
        let inv = self.algebra.group().inverse(w);
        let n = self.algebra.lattice_rank();
        (0..n).all(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            self.tau.eval(&inv.act_y(&e)) == self.tau.values()[j]
        })
    }

    /// Writes `w = w_R * r_1 ... r_k` with `r_i` in `S_tau`, the word
    /// `tau`-reduced and `w_R` without inversions in `Phi_(tau)`.
    pub fn factor(&self, w: &WeylElement) -> (WeylElement, Vec<Reflection>) {
        let group = self.algebra.group();
        let mut cur = w.clone();
        let mut peeled = Vec::new();
        while let Some(beta) = group.inversion_coroots(&cur).into_iter().find(|b| self.is_sigma(b)) {
            let r = self.reflection(&beta);
            cur = group.multiply(&cur, &r.element);
            peeled.push(r);
        }
        peeled.reverse();
        (cur, peeled)
    }

    pub fn in_w_paren(&self, w: &WeylElement) -> bool {
        self.factor(w).0.is_identity()
    }

    /// `l_tau(w)` for `w` in `W_(tau)`.
    pub fn tau_length(&self, w: &WeylElement) -> Option<usize> {
        let (rest, word) = self.factor(w);
        rest.is_identity().then_some(word.len())
    }

    /// A `tau`-reduced word of `w` over `S_tau`.
    pub fn tau_word(&self, w: &WeylElement) -> Option<Vec<Reflection>> {
        let (rest, word) = self.factor(w);
        rest.is_identity().then_some(word)
    }

    pub fn in_r_tau(&self, w: &WeylElement) -> bool {
        self.fixes_tau(w) && self.phi_inversions(w).is_empty()
    }

    /// `w <=_tau w'` on `W_(tau)`: some subword of a reduced word of `w'`.
    pub fn tau_bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let Some(word) = self.tau_word(w) else { return false };
        let group = self.algebra.group();
        let mut reach: BTreeSet<WeylElement> = BTreeSet::from([group.identity()]);
        for r in &word {
            let next: Vec<WeylElement> = reach.iter().map(|x| group.multiply(x, &r.element)).collect();
            reach.extend(next);
        }
        reach.contains(v)
    }

    /// `sigma''_{r,tau}`.
    pub fn sigma_pp(&self, r: &Reflection) -> F {
        let params = self.algebra.params();
        sigma_pp_value(params.sigma(r.simple), params.sigma_prime(r.simple), &self.tau_of_coroot(&r.coroot))
    }

    /// `alpha_s(beta_r)` for two coroots of `Sigma_tau`.
    pub fn pairing(&self, beta_r: &Coroot, beta_s: &Coroot) -> i64 {
        let s = self.reflection(beta_s);
        let image = s.element.act_coroot(beta_r);
        // s . beta_r = beta_r - alpha_s(beta_r) beta_s
        let (i, &c) = beta_s.coords().iter().enumerate().find(|(_, &c)| c != 0).unwrap();
        (beta_r.coords()[i] - image.coords()[i]) / c
    }

    /// `K~_{r_1} ... K~_{r_k}` for a `tau`-reduced word over `S_tau`.
    pub fn k_tilde_w(&self, word: &[Reflection]) -> Result<HeckeElt<F>, HeckeError> {
        let group = self.algebra.group();
        let names = || word.iter().map(|r| r.coroot.to_string()).collect::<Vec<_>>();
        if word.iter().any(|r| !self.is_sigma(&r.coroot)) {
            return Err(HeckeError::WordNotReduced(names()));
        }
        let w = word.iter().fold(group.identity(), |acc, r| group.multiply(&acc, &r.element));
        if self.tau_length(&w) != Some(word.len()) {
            return Err(HeckeError::WordNotReduced(names()));
        }
        Ok(self.algebra.k_tilde_product(word))
    }

    /// `K~_w` along the canonical `tau`-reduced word.
    pub fn k_tilde_of(&self, w: &WeylElement) -> Result<HeckeElt<F>, StabilizerError> {
        let word = self.tau_word(w).ok_or_else(|| StabilizerError::NotInWParen(w.to_string()))?;
        Ok(self.algebra.k_tilde_product(&word))
    }
}

/// `((sigma^2 - 1) + sigma (sigma' - 1/sigma') t) / 2` with `t = tau(coroot)`.
pub fn sigma_pp_value<F: Field>(sigma: &F, sigma_prime: &F, t: &F) -> F {
    let lin = sigma.clone() * (sigma_prime.clone() - sigma_prime.inv().expect("nonzero parameter"));
    ((sigma.clone() * sigma.clone() - F::one()) + lin * t.clone()) / F::from_i64(2)
}

/// A common direction `rho` with every value in `rho * R_{>0}`.
pub fn rho_check<F: Field>(values: &[F]) -> Option<F> {
    let Some(first) = values.first() else { return Some(F::one()) };
    if first.is_zero() {
        return None;
    }
    if !values.iter().all(|v| (v.clone() / first.clone()).is_positive_real()) {
        return None;
    }
    if first.is_positive_real() {
        Some(F::one())
    } else if (-first.clone()).is_positive_real() {
        Some(-F::one())
    } else {
        Some(first.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UcVerdict {
    InUc { coroot_bound: i64 },
    NotInUc { witness: Coroot },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KatoStatus {
    Irreducible,
    Reducible,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KatoWitness {
    /// `tau(zeta^num) = 0` for this coroot.
    ZetaNumeratorVanishes(Coroot),
    /// An element of `W_tau` outside `W_(tau)`.
    StabilizerExcess(WeylElement),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KatoVerdict {
    pub status: KatoStatus,
    pub coroot_bound: i64,
    pub length_bound: usize,
    /// Length of the longest element when the whole group was enumerated.
    pub finite_longest_length: Option<usize>,
    pub witness: Option<KatoWitness>,
}

/// Outcome of the bounded cross-checks of `Sigma_tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCertificate {
    /// The reflection criterion on the enumerated set never rejects an
    /// exact member.
    pub reflection_criterion_agrees: bool,
    /// The conic pair search never finds a decomposition of an exact member.
    pub pair_search_agrees: bool,
    /// Non-members whose non-minimality witness lies beyond the bound.
    pub uncertified: Vec<Coroot>,
}

/// All bounded data attached to a character.
#[derive(Debug, Clone)]
pub struct TauAnalysis<F> {
    pub character: Character<F>,
    pub coroot_bound: i64,
    pub length_bound: usize,
    pub phi_tau: Vec<Coroot>,
    pub sigma_tau: Vec<Coroot>,
    pub s_tau: Vec<Reflection>,
    pub s_tau_matrix: Vec<Vec<i64>>,
    pub sigma_certificate: SigmaCertificate,
    pub w_tau_ball: Vec<WeylElement>,
    pub w_paren_tau_ball: Vec<WeylElement>,
    pub r_tau_ball: Vec<WeylElement>,
    pub sigma_pp: BTreeMap<Coroot, F>,
    pub rho_witness: Option<F>,
    pub uc: UcVerdict,
    pub finite_longest_length: Option<usize>,
}

impl<F: Field> TauAnalysis<F> {
    pub fn compute(ctx: &TauContext<'_, F>, coroot_bound: i64, length_bound: usize) -> Result<Self, StabilizerError> {
        let algebra = ctx.algebra();
        let group = algebra.group();
        let coroots = algebra.datum().enumerate_coroots(coroot_bound);
        let phi_tau: Vec<Coroot> = coroots.iter().filter(|b| ctx.in_phi(b)).cloned().collect();
        let phi_plus: Vec<Coroot> = phi_tau.iter().filter(|b| b.is_positive()).cloned().collect();
        let sigma_tau: Vec<Coroot> = phi_plus.iter().filter(|b| ctx.is_sigma(b)).cloned().collect();
        let sigma_certificate = certify_sigma(ctx, &phi_plus, &sigma_tau);
        let s_tau: Vec<Reflection> = sigma_tau.iter().map(|b| ctx.reflection(b)).collect();
        let s_tau_matrix = s_tau_matrix(ctx, &sigma_tau)?;

        let ball = group.enumerate_ball(length_bound);
        let finite_longest_length = group.longest_length(length_bound);
        let w_tau_ball: Vec<WeylElement> = ball.iter().filter(|w| ctx.fixes_tau(w)).cloned().collect();
        let w_paren_tau_ball: Vec<WeylElement> = ball.iter().filter(|w| ctx.in_w_paren(w)).cloned().collect();
        let r_tau_ball: Vec<WeylElement> = w_tau_ball.iter().filter(|w| ctx.in_r_tau(w)).cloned().collect();

        let sigma_pp: BTreeMap<Coroot, F> = s_tau.iter().map(|r| (r.coroot.clone(), ctx.sigma_pp(r))).collect();
        let values: Vec<F> = sigma_pp.values().cloned().collect();
        let rho_witness = rho_check(&values);
        let uc = match coroots.iter().find(|b| b.is_positive() && ctx.zeta_numerator_vanishes(b)) {
            Some(b) => UcVerdict::NotInUc { witness: b.clone() },
            None => UcVerdict::InUc { coroot_bound },
        };
        Ok(Self {
            character: ctx.tau().clone(),
            coroot_bound,
            length_bound,
            phi_tau,
            sigma_tau,
            s_tau,
            s_tau_matrix,
            sigma_certificate,
            w_tau_ball,
            w_paren_tau_ball,
            r_tau_ball,
            sigma_pp,
            rho_witness,
            uc,
            finite_longest_length,
        })
    }

    pub fn phi_tau_plus(&self) -> impl Iterator<Item = &Coroot> {
        self.phi_tau.iter().filter(|b| b.is_positive())
    }

    /// Kato's criterion: irreducible iff `tau` is in `U_C` and
    /// `W_tau = W_(tau)`.
    pub fn kato(&self) -> KatoVerdict {
        let mut verdict = KatoVerdict {
            status: KatoStatus::Irreducible,
            coroot_bound: self.coroot_bound,
            length_bound: self.length_bound,
            finite_longest_length: self.finite_longest_length,
            witness: None,
        };
        if let UcVerdict::NotInUc { witness } = &self.uc {
            verdict.status = KatoStatus::Reducible;
            verdict.witness = Some(KatoWitness::ZetaNumeratorVanishes(witness.clone()));
            return verdict;
        }
        let paren: BTreeSet<&WeylElement> = self.w_paren_tau_ball.iter().collect();
        if let Some(w) = self.w_tau_ball.iter().find(|w| !paren.contains(w)) {
            verdict.status = KatoStatus::Reducible;
            verdict.witness = Some(KatoWitness::StabilizerExcess(w.clone()));
        }
        verdict
    }

    /// `W_tau = R_tau |x W_(tau)` on the balls: every element factors
    /// uniquely, and `W_(tau)` generators stay in `W_(tau)` under conjugation.
    pub fn semidirect_check(&self, ctx: &TauContext<'_, F>) -> bool {
        let group = ctx.algebra().group();
        let paren: BTreeSet<&WeylElement> = self.w_paren_tau_ball.iter().collect();
        let paren_ok = self.w_paren_tau_ball.iter().all(|w| ctx.fixes_tau(w));
        let r_ok = self.r_tau_ball.iter().all(|r| !paren.contains(r) || r.is_identity());
        let factor_ok = self.w_tau_ball.iter().all(|w| {
            let (w_r, word) = ctx.factor(w);
            if !ctx.in_r_tau(&w_r) {
                return false;
            }
            let rest = word.iter().fold(group.identity(), |acc, r| group.multiply(&acc, &r.element));
            if group.multiply(&w_r, &rest) != *w {
                return false;
            }
            // Uniqueness among the enumerated R_tau elements.
            let splits = self
                .r_tau_ball
                .iter()
                .filter(|r| ctx.in_w_paren(&group.multiply(&group.inverse(r), w)))
                .count();
            splits == 1
        });
        let normal_ok = self
            .w_tau_ball
            .iter()
            .all(|w| self.sigma_tau.iter().all(|b| ctx.in_phi(&w.act_coroot(b))));
        paren_ok && r_ok && factor_ok && normal_ok
    }

    pub fn report(&self) -> AnalysisReport {
        AnalysisReport {
            character: self.character.values().iter().map(ToString::to_string).collect(),
            coroot_bound: self.coroot_bound,
            length_bound: self.length_bound,
            phi_tau: self.phi_tau.clone(),
            sigma_tau: self.sigma_tau.clone(),
            s_tau_words: self.s_tau.iter().map(|r| r.element.word_one_based()).collect(),
            s_tau_matrix: self.s_tau_matrix.clone(),
            sigma_certificate: self.sigma_certificate.clone(),
            w_tau_ball_size: self.w_tau_ball.len(),
            w_paren_tau_ball_size: self.w_paren_tau_ball.len(),
            r_tau_ball: self.r_tau_ball.clone(),
            sigma_pp: self.sigma_pp.iter().map(|(b, v)| (b.to_string(), v.to_string())).collect(),
            rho_witness: self.rho_witness.as_ref().map(ToString::to_string),
            uc: self.uc.clone(),
            verdict: self.kato(),
        }
    }
}

/// Serializable view of a [`TauAnalysis`].
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub character: Vec<String>,
    pub coroot_bound: i64,
    pub length_bound: usize,
    pub phi_tau: Vec<Coroot>,
    pub sigma_tau: Vec<Coroot>,
    pub s_tau_words: Vec<Vec<usize>>,
    pub s_tau_matrix: Vec<Vec<i64>>,
    pub sigma_certificate: SigmaCertificate,
    pub w_tau_ball_size: usize,
    pub w_paren_tau_ball_size: usize,
    pub r_tau_ball: Vec<WeylElement>,
    pub sigma_pp: BTreeMap<String, String>,
    pub rho_witness: Option<String>,
    pub uc: UcVerdict,
    pub verdict: KatoVerdict,
}

/// The bounded reflection criterion: `r_beta` keeps every other enumerated
/// element of `Phi_(tau),+` positive.
pub fn reflection_criterion<F: Field>(ctx: &TauContext<'_, F>, beta: &Coroot, phi_plus: &[Coroot]) -> bool {
    let r = ctx.reflection(beta);
    phi_plus.iter().filter(|g| *g != beta).all(|g| r.element.act_coroot(g).is_positive())
}

/// A pair `(gamma, delta)` of enumerated elements of `Phi_(tau),+` other
/// than `beta` with `gamma + delta` a positive multiple of `beta`.
pub fn conic_pair<'c>(beta: &Coroot, phi_plus: &'c [Coroot]) -> Option<(&'c Coroot, &'c Coroot)> {
    let set: BTreeSet<&Coroot> = phi_plus.iter().collect();
    let b = beta.coords();
    for g in phi_plus.iter().filter(|g| *g != beta) {
        // delta = k beta - gamma for some k >= 1 with delta positive.
        let max_k = g.height() / beta.height() + 2;
        for k in 1..=max_k {
            let d = Coroot::new(b.iter().zip(g.coords()).map(|(x, y)| k * x - y).collect());
            if d.is_positive() && &d != beta && set.contains(&d) {
                return Some((g, set.get(&d).unwrap()));
            }
        }
    }
    None
}

fn certify_sigma<F: Field>(ctx: &TauContext<'_, F>, phi_plus: &[Coroot], sigma: &[Coroot]) -> SigmaCertificate {
    let members: BTreeSet<&Coroot> = sigma.iter().collect();
    let mut cert = SigmaCertificate { reflection_criterion_agrees: true, pair_search_agrees: true, uncertified: Vec::new() };
    for beta in phi_plus {
        let exact = members.contains(beta);
        let refl = reflection_criterion(ctx, beta, phi_plus);
        let pair = conic_pair(beta, phi_plus).is_none();
        if exact && !refl {
            cert.reflection_criterion_agrees = false;
        }
        if exact && !pair {
            cert.pair_search_agrees = false;
        }
        if !exact && (refl || pair) {
            cert.uncertified.push(beta.clone());
        }
    }
    cert
}

/// `(alpha_s(beta_r))_{r,s}` over `Sigma_tau`, validated as a Kac-Moody matrix.
pub fn s_tau_matrix<F: Field>(ctx: &TauContext<'_, F>, sigma: &[Coroot]) -> Result<Vec<Vec<i64>>, StabilizerError> {
    let m: Vec<Vec<i64>> = sigma.iter().map(|r| sigma.iter().map(|s| ctx.pairing(r, s)).collect()).collect();
    if !m.is_empty() {
        KacMoodyMatrix::new(m.clone()).map_err(StabilizerError::KacMoodyViolation)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::rat;
    use crate::rootdata::ParameterSet;
    use num_rational::BigRational as Q;

    fn q(n: i64) -> Q {
        <Q as Field>::from_i64(n)
    }

    fn algebra(datum: crate::RootDatum) -> HeckeAlgebra<Q> {
        let p = ParameterSet::from_q(datum.num_simple(), 4).unwrap();
        HeckeAlgebra::new(datum, p).unwrap()
    }

    fn chr(v: &[i64]) -> Character<Q> {
        Character::new(v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn a2_trivial_character() {
        let h = algebra(catalog::a2());
        let ctx = TauContext::new(&h, chr(&[1, 1])).unwrap();
        let an = TauAnalysis::compute(&ctx, 6, 4).unwrap();
        assert_eq!(an.sigma_tau, vec![Coroot::new(vec![0, 1]), Coroot::new(vec![1, 0])]);
        assert_eq!(an.w_paren_tau_ball.len(), 6);
        assert_eq!(an.r_tau_ball.len(), 1);
        assert_eq!(an.kato().status, KatoStatus::Irreducible);
        assert_eq!(an.finite_longest_length, Some(3));
        assert!(an.semidirect_check(&ctx));
        let m = &an.s_tau_matrix;
        assert_eq!(m, &vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn a1_minus_one() {
        let h = algebra(catalog::a1());
        let ctx = TauContext::new(&h, chr(&[-1])).unwrap();
        let an = TauAnalysis::compute(&ctx, 3, 3).unwrap();
        assert!(an.phi_tau.is_empty());
        assert_eq!(an.w_tau_ball.len(), 2);
        assert_eq!(an.w_paren_tau_ball.len(), 1);
        assert_eq!(an.r_tau_ball.len(), 2);
        let v = an.kato();
        assert_eq!(v.status, KatoStatus::Reducible);
        assert!(matches!(v.witness, Some(KatoWitness::StabilizerExcess(_))));
        assert!(an.semidirect_check(&ctx));
    }

    #[test]
    fn a1_at_q_is_not_in_uc() {
        let h = algebra(catalog::a1());
        let ctx = TauContext::new(&h, chr(&[4])).unwrap();
        let an = TauAnalysis::compute(&ctx, 3, 3).unwrap();
        assert_eq!(an.uc, UcVerdict::NotInUc { witness: Coroot::new(vec![1]) });
        assert_eq!(an.kato().status, KatoStatus::Reducible);
    }

    #[test]
    fn affine_a1_non_simple_generators() {
        let h = algebra(catalog::affine_a1());
        let ctx = TauContext::new(&h, chr(&[-1, 1, 1])).unwrap();
        let an = TauAnalysis::compute(&ctx, 9, 5).unwrap();
        assert_eq!(an.sigma_tau, vec![Coroot::new(vec![0, 1]), Coroot::new(vec![2, 1])]);
        assert_eq!(an.s_tau_matrix, vec![vec![2, -2], vec![-2, 2]]);
        let s1 = h.generator(0);
        assert!(an.r_tau_ball.contains(s1));
        assert!(an.semidirect_check(&ctx));
        assert!(an.sigma_certificate.reflection_criterion_agrees);
        assert!(an.sigma_certificate.pair_search_agrees);
        // W_(tau) ball agrees with the closure under the generators.
        let g = h.group();
        let mut closure: BTreeSet<WeylElement> = BTreeSet::from([g.identity()]);
        loop {
            let next: Vec<WeylElement> = closure
                .iter()
                .flat_map(|x| an.s_tau.iter().map(move |r| g.multiply(x, &r.element)))
                .filter(|y| y.len() <= 5)
                .collect();
            let before = closure.len();
            closure.extend(next);
            if closure.len() == before {
                break;
            }
        }
        let ball: BTreeSet<WeylElement> = an.w_paren_tau_ball.iter().cloned().collect();
        assert_eq!(closure, ball);
    }

    #[test]
    fn sigma_pp_values() {
        let p = ParameterSet::new(vec![q(2)], vec![q(3)]);
        let h = HeckeAlgebra::new(catalog::a1(), p).unwrap();
        let r = h.group().reflection_from_coroot(&Coroot::new(vec![1])).unwrap();
        let plus = TauContext::new(&h, chr(&[1])).unwrap();
        let minus = TauContext::new(&h, chr(&[-1])).unwrap();
        assert_eq!(plus.sigma_pp(&r), rat(25, 6));
        assert_eq!(minus.sigma_pp(&r), rat(-7, 6));
        assert_eq!(rho_check(&[q(3), rat(-7, 6)]), None);
        assert_eq!(rho_check::<Q>(&[]), Some(q(1)));
        assert_eq!(rho_check(&[q(3), q(3)]), Some(q(1)));
        let eq = algebra(catalog::a1());
        let ctx = TauContext::new(&eq, chr(&[1])).unwrap();
        assert_eq!(ctx.sigma_pp(&r), q(3));
    }

    #[test]
    fn tau_length_and_order() {
        let h = algebra(catalog::affine_a1());
        let ctx = TauContext::new(&h, chr(&[-1, 1, 1])).unwrap();
        let g = h.group();
        let w = g.from_word(&[1, 0, 1, 0]); // s2 s1 s2 s1 = s2 * (s1 s2 s1)
        assert_eq!(ctx.tau_length(&w), Some(2));
        let s2 = g.generator(1);
        assert!(ctx.tau_bruhat_leq(&s2, &w));
        assert!(g.bruhat_leq(&s2, &w));
        assert_eq!(ctx.tau_length(&g.generator(0)), None);
    }
}
