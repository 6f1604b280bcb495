//! The principal series module `I_tau = sum_w F T_w . v_tau`, its weight
//! spaces, intertwiners and the `ord_tau` filtration.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coxeter::{WeylElement, WeylGroup};
use crate::field::Field;
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::laurent::{clear_denominators, Character, LaurentError, LaurentPoly, RationalElt};
use crate::linalg::{mat_vec, nullspace};
use crate::stabilizer::TauContext;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrincipalError {
    #[error("coefficient of T[{element}] has a pole at the character: {source}")]
    PoleAtCharacter { element: String, source: LaurentError },
    #[error(transparent)]
    Character(#[from] LaurentError),
    #[error("element has non-polynomial coefficients")]
    NotInBLH,
    #[error("domain is not closed under the Bruhat order: {0} is missing")]
    DomainNotLowerSet(String),
    #[error("vector is not in the generalized weight space (no vanishing after {0} steps)")]
    NotInGenWeightSpace(usize),
    #[error("vector is not in the span of the K~ basis: {0} is not in W_(tau)")]
    NotInItgSpan(String),
    #[error("element has top support {0} outside W_(tau)")]
    DecompositionFailure(String),
    #[error("no strictly dominant vector with coordinates in [-{0}, {0}]")]
    NoDominantVector(i64),
}

/// `sum_w a_w T_w . v_tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector<F> {
    coeffs: BTreeMap<WeylElement, F>,
}

impl<F: Field> Default for ModuleVector<F> {
    fn default() -> Self {
        Self { coeffs: BTreeMap::new() }
    }
}

impl<F: Field> ModuleVector<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `T_w . v_tau`.
    pub fn basis(w: WeylElement) -> Self {
        let mut x = Self::zero();
        x.add_term(w, F::one());
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeylElement, F)>) -> Self {
        let mut x = Self::zero();
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }

    pub fn add_term(&mut self, w: WeylElement, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, w: &WeylElement) -> F {
        self.coeffs.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &F)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElement> {
        self.coeffs.keys()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(w, x)| (w.clone(), x.clone() * c.clone())))
    }

    /// `sum_w T_w * a_w` in the algebra.
    pub fn lift(&self, rank: usize) -> HeckeElt<F> {
        let mut h = HeckeElt::zero(rank);
        for (w, c) in &self.coeffs {
            h.add_term(w.clone(), RationalElt::constant(rank, c.clone()));
        }
        h
    }
}

impl<F: Field> Add for &ModuleVector<F> {
    type Output = ModuleVector<F>;
    fn add(self, rhs: Self) -> ModuleVector<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &ModuleVector<F> {
    type Output = ModuleVector<F>;
    fn sub(self, rhs: Self) -> ModuleVector<F> {
        self + &rhs.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for ModuleVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T[{w}].v")?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for ModuleVector<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            word: Vec<usize>,
            scalar: String,
        }
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (w, c) in &self.coeffs {
            seq.serialize_element(&Term { word: w.word_one_based(), scalar: c.to_string() })?;
        }
        seq.end()
    }
}

/// A finite Bruhat-closed set of Weyl group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerSet {
    elements: Vec<WeylElement>,
}

impl LowerSet {
    /// Validates closure under deleting one letter of the canonical word.
    pub fn new(group: &WeylGroup, elements: impl IntoIterator<Item = WeylElement>) -> Result<Self, PrincipalError> {
        let set: BTreeSet<WeylElement> = elements.into_iter().collect();
        for w in &set {
            for v in deletions(group, w) {
                if !set.contains(&v) {
                    return Err(PrincipalError::DomainNotLowerSet(v.to_string()));
                }
            }
        }
        Ok(Self { elements: set.into_iter().collect() })
    }

    pub fn ball(group: &WeylGroup, length: usize) -> Self {
        Self { elements: group.enumerate_ball(length) }
    }

    /// The smallest lower set containing `seeds`.
    pub fn closure<'a>(group: &WeylGroup, seeds: impl IntoIterator<Item = &'a WeylElement>) -> Self {
        let mut set: BTreeSet<WeylElement> = BTreeSet::new();
        let mut stack: Vec<WeylElement> = seeds.into_iter().cloned().collect();
        stack.push(group.identity());
        while let Some(w) = stack.pop() {
            if set.insert(w.clone()) {
                stack.extend(deletions(group, &w).into_iter().filter(|v| !set.contains(v)));
            }
        }
        Self { elements: set.into_iter().collect() }
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn deletions(group: &WeylGroup, w: &WeylElement) -> Vec<WeylElement> {
    let word = w.word();
    (0..word.len())
        .map(|k| {
            let mut d = word.to_vec();
            d.remove(k);
            group.from_word(&d)
        })
        .collect()
}

/// `(w . tau)(lambda) = tau(w^{-1} . lambda)`.
pub fn act_on_character<F: Field>(group: &WeylGroup, w: &WeylElement, tau: &Character<F>) -> Character<F> {
    tau.compose(group.inverse(w).y_matrix())
}

/// Matrices of `Z^{e_j} - c_j` on the span of a lower set.
struct Operators<F> {
    index: BTreeMap<WeylElement, usize>,
    elements: Vec<WeylElement>,
    mats: Vec<Vec<Vec<F>>>,
}

impl<F: Field> Operators<F> {
    fn coords(&self, x: &ModuleVector<F>) -> Option<Vec<F>> {
        let mut v = vec![F::zero(); self.elements.len()];
        for (w, c) in x.terms() {
            v[*self.index.get(w)?] = c.clone();
        }
        Some(v)
    }

    fn vector(&self, v: &[F]) -> ModuleVector<F> {
        ModuleVector::from_terms(self.elements.iter().cloned().zip(v.iter().cloned()))
    }
}

/// `I_tau` for a fixed algebra and character.
#[derive(Debug, Clone)]
pub struct PrincipalSeries<'a, F> {
    algebra: &'a HeckeAlgebra<F>,
    tau: Character<F>,
}

impl<'a, F: Field> PrincipalSeries<'a, F> {
    pub fn new(algebra: &'a HeckeAlgebra<F>, tau: Character<F>) -> Result<Self, PrincipalError> {
        tau.ensure_rank(algebra.lattice_rank())?;
        Ok(Self { algebra, tau })
    }

    pub fn algebra(&self) -> &'a HeckeAlgebra<F> {
        self.algebra
    }

    pub fn tau(&self) -> &Character<F> {
        &self.tau
    }

    pub fn v_tau(&self) -> ModuleVector<F> {
        ModuleVector::basis(self.algebra.group().identity())
    }

    /// Coefficient-wise evaluation of the right coefficients at tau.
    pub fn ev_tau(&self, h: &HeckeElt<F>) -> Result<ModuleVector<F>, PrincipalError> {
        let mut out = ModuleVector::zero();
        for (w, c) in h.terms() {
            let v = c
                .evaluate(&self.tau)
                .map_err(|source| PrincipalError::PoleAtCharacter { element: w.to_string(), source })?;
            out.add_term(w.clone(), v);
        }
        Ok(out)
    }

    /// `h . x` for `h` with polynomial coefficients.
    pub fn act(&self, h: &HeckeElt<F>, x: &ModuleVector<F>) -> Result<ModuleVector<F>, PrincipalError> {
        if !h.terms().all(|(_, c)| c.is_polynomial()) {
            return Err(PrincipalError::NotInBLH);
        }
        let prod = self.algebra.mul(h, &x.lift(self.algebra.lattice_rank()));
        self.ev_tau(&prod)
    }

    /// `theta . x` for a Laurent polynomial.
    pub fn act_poly(&self, theta: &LaurentPoly<F>, x: &ModuleVector<F>) -> ModuleVector<F> {
        let mut out = ModuleVector::zero();
        for (w, a) in x.terms() {
            let h = self.algebra.theta_times_t(&RationalElt::from_poly(theta.clone()), w);
            for (v, c) in h.terms() {
                let val = c.evaluate(&self.tau).expect("polynomial coefficients have no poles");
                out.add_term(v.clone(), val * a.clone());
            }
        }
        out
    }

    fn operators(&self, dom: &LowerSet, eigen: &Character<F>) -> Result<Operators<F>, PrincipalError> {
        let n = self.algebra.lattice_rank();
        let elements = dom.elements().to_vec();
        let index: BTreeMap<WeylElement, usize> = elements.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let d = elements.len();
        let mut mats = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let theta = LaurentPoly::monomial(F::one(), e);
            let shift = eigen.values()[j].clone();
            let mut m = vec![vec![F::zero(); d]; d];
            for (col, w) in elements.iter().enumerate() {
                let image = self.act_poly(&theta, &ModuleVector::basis(w.clone()));
                for (v, c) in image.terms() {
                    let row = *index.get(v).ok_or_else(|| PrincipalError::DomainNotLowerSet(v.to_string()))?;
                    m[row][col] = c.clone();
                }
                m[col][col] = m[col][col].clone() - shift.clone();
            }
            mats.push(m);
        }
        Ok(Operators { index, elements, mats })
    }

    /// Basis of the `tau'`-weight vectors supported on `dom`.
    pub fn weight_space(&self, eigen: &Character<F>, dom: &LowerSet) -> Result<Vec<ModuleVector<F>>, PrincipalError> {
        eigen.ensure_rank(self.algebra.lattice_rank())?;
        let ops = self.operators(dom, eigen)?;
        let stacked: Vec<Vec<F>> = ops.mats.iter().flatten().cloned().collect();
        Ok(nullspace(&stacked, dom.len()).iter().map(|v| ops.vector(v)).collect())
    }

    /// Basis of `ker (Z^{e_j} - tau'(e_j))^{n_cap}` for all `j`, on `dom`.
    pub fn generalized_weight_space(
        &self,
        eigen: &Character<F>,
        dom: &LowerSet,
        n_cap: usize,
    ) -> Result<Vec<ModuleVector<F>>, PrincipalError> {
        eigen.ensure_rank(self.algebra.lattice_rank())?;
        let ops = self.operators(dom, eigen)?;
        let mut stacked = Vec::new();
        for m in &ops.mats {
            let mut p = m.clone();
            for _ in 1..n_cap {
                p = crate::linalg::mat_mul(&p, m);
            }
            stacked.extend(p);
        }
        Ok(nullspace(&stacked, dom.len()).iter().map(|v| ops.vector(v)).collect())
    }

    /// `ord_tau(x)`: the least `k` with `J_tau^k . x = 0`, by iterating
    /// spans under the generators `Z^{e_j} - tau(e_j)` of the ideal.
    pub fn ord(&self, x: &ModuleVector<F>) -> Result<usize, PrincipalError> {
        if x.is_zero() {
            return Ok(0);
        }
        let dom = LowerSet::closure(self.algebra.group(), x.support());
        let ops = self.operators(&dom, &self.tau)?;
        let d = dom.len();
        let mut span: Vec<Vec<F>> = vec![ops.coords(x).expect("support lies in its closure")];
        for k in 1..=d + 1 {
            let images: Vec<Vec<F>> = span.iter().flat_map(|v| ops.mats.iter().map(move |m| mat_vec(m, v))).collect();
            let mut basis = images;
            crate::linalg::rref(&mut basis, d);
            if basis.is_empty() {
                return Ok(k);
            }
            span = basis;
        }
        Err(PrincipalError::NotInGenWeightSpace(d + 1))
    }

    /// Least `k` with `(Z^lambda - tau(lambda))^k . x = 0` for one `lambda`.
    pub fn ord_probe(&self, x: &ModuleVector<F>, lambda: &[i64]) -> Result<usize, PrincipalError> {
        let n = self.algebra.lattice_rank();
        let theta = &LaurentPoly::monomial(F::one(), lambda.to_vec()) - &LaurentPoly::constant(n, self.tau.eval(lambda));
        let cap = LowerSet::closure(self.algebra.group(), x.support()).len() + 1;
        let mut cur = x.clone();
        for k in 0..=cap {
            if cur.is_zero() {
                return Ok(k);
            }
            cur = self.act_poly(&theta, &cur);
        }
        Err(PrincipalError::NotInGenWeightSpace(cap))
    }

    /// A strictly dominant `lambda` in `Y` with coordinates in `[-bound, bound]`.
    pub fn dominant_probe(&self, bound: i64) -> Result<Vec<i64>, PrincipalError> {
        self.algebra.datum().strictly_dominant(bound).ok_or(PrincipalError::NoDominantVector(bound))
    }

    /// `psi_{w_R}(x) = sum_w a_w T_w . (F_{w_R}(tau) . v_tau)`.
    pub fn psi(&self, w_r: &WeylElement, x: &ModuleVector<F>) -> Result<ModuleVector<F>, PrincipalError> {
        let image = self.ev_tau(&self.algebra.f_w(w_r))?;
        self.act(&x.lift(self.algebra.lattice_rank()), &image)
    }
}

/// `I_tau` together with the stabilizer data of tau: the `K~` basis of the
/// integral part and the extended action of `K_tau`.
pub struct IntegralPart<'c, 'a, F> {
    series: PrincipalSeries<'a, F>,
    ctx: &'c TauContext<'a, F>,
    cache: RefCell<BTreeMap<WeylElement, ItgVector<F>>>,
}

/// One vector `ev_tau(K~_w) . v_tau` of the integral basis with its
/// denominator-clearing polynomial.
#[derive(Debug, Clone)]
pub struct ItgVector<F> {
    pub element: WeylElement,
    pub tau_length: usize,
    pub k_tilde: HeckeElt<F>,
    pub clearing: LaurentPoly<F>,
    pub vector: ModuleVector<F>,
}

/// The statistics `supp`, `l_tau`, `LT` and `N_tau` of a vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats<F> {
    pub support: Vec<WeylElement>,
    /// `None` stands for minus infinity (the zero vector).
    pub tau_length: Option<usize>,
    pub leading: ModuleVector<F>,
    pub leading_count: usize,
}

impl<'c, 'a, F: Field> IntegralPart<'c, 'a, F> {
    pub fn new(ctx: &'c TauContext<'a, F>) -> Result<Self, PrincipalError> {
        let series = PrincipalSeries::new(ctx.algebra(), ctx.tau().clone())?;
        Ok(Self { series, ctx, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn series(&self) -> &PrincipalSeries<'a, F> {
        &self.series
    }

    pub fn context(&self) -> &'c TauContext<'a, F> {
        self.ctx
    }

    /// `ev_tau(K~_w) . v_tau`, computed as `ev_tau(K~_w g_w) / tau(g_w)` and
    /// checked against direct evaluation.
    pub fn basis_vector(&self, w: &WeylElement) -> Result<ItgVector<F>, PrincipalError> {
        if let Some(hit) = self.cache.borrow().get(w) {
            return Ok(hit.clone());
        }
        let word = self.ctx.tau_word(w).ok_or_else(|| PrincipalError::NotInItgSpan(w.to_string()))?;
        let algebra = self.series.algebra();
        let k_tilde = algebra.k_tilde_product(&word);
        let n = algebra.lattice_rank();
        let (clearing, cleared) = clear_denominators(n, k_tilde.terms().map(|(_, c)| c));
        let g_tau = clearing.evaluate(self.series.tau());
        if g_tau.is_zero() {
            return Err(PrincipalError::PoleAtCharacter {
                element: w.to_string(),
                source: LaurentError::PoleAtCharacter("clearing polynomial".into()),
            });
        }
        let inv = g_tau.inv().expect("nonzero");
        let mut vector = ModuleVector::zero();
        for ((u, _), p) in k_tilde.terms().zip(&cleared) {
            vector.add_term(u.clone(), p.evaluate(self.series.tau()) * inv.clone());
        }
        debug_assert_eq!(Ok(&vector), self.series.ev_tau(&k_tilde).as_ref());
        let item = ItgVector { element: w.clone(), tau_length: word.len(), k_tilde, clearing, vector };
        self.cache.borrow_mut().insert(w.clone(), item.clone());
        Ok(item)
    }

    /// The basis vectors for `W_(tau)` elements of tau-length at most
    /// `max_tau_length`, generated from the given `S_tau` reflections.
    pub fn basis(&self, generators: &[WeylElement], max_tau_length: usize) -> Result<Vec<ItgVector<F>>, PrincipalError> {
        let group = self.series.algebra().group();
        let mut seen: BTreeSet<WeylElement> = BTreeSet::from([group.identity()]);
        let mut layer = vec![group.identity()];
        let mut out = vec![self.basis_vector(&group.identity())?];
        for k in 1..=max_tau_length {
            let mut next = BTreeSet::new();
            for x in &layer {
                for r in generators {
                    let y = group.multiply(x, r);
                    if !seen.contains(&y) && self.ctx.tau_length(&y) == Some(k) {
                        next.insert(y);
                    }
                }
            }
            for y in &next {
                out.push(self.basis_vector(y)?);
                seen.insert(y.clone());
            }
            layer = next.into_iter().collect();
        }
        Ok(out)
    }

    /// Coordinates of `x` in the `ev_tau(K~_w) . v_tau` basis, by peeling
    /// Bruhat-maximal support (every basis vector has top term a multiple of `T_w`).
    pub fn coordinates(&self, x: &ModuleVector<F>) -> Result<BTreeMap<WeylElement, F>, PrincipalError> {
        let group = self.series.algebra().group();
        let mut rest = x.clone();
        let mut coords = BTreeMap::new();
        while let Some(top) = rest.support().max_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b))).cloned() {
            debug_assert!(rest.support().all(|v| v == &top || !group.bruhat_leq(&top, v)));
            let b = self.basis_vector(&top)?;
            let a = rest.coefficient(&top) / b.vector.coefficient(&top);
            rest = &rest - &b.vector.scale(&a);
            coords.insert(top, a);
        }
        Ok(coords)
    }

    pub fn stats(&self, x: &ModuleVector<F>) -> Result<Stats<F>, PrincipalError> {
        let coords = self.coordinates(x)?;
        let lengths: BTreeMap<&WeylElement, usize> =
            coords.keys().map(|w| (w, self.ctx.tau_length(w).expect("coordinates lie in W_(tau)"))).collect();
        let top = lengths.values().copied().max();
        let mut leading = ModuleVector::zero();
        let mut leading_count = 0;
        if let Some(t) = top {
            for (w, a) in &coords {
                if lengths[w] == t {
                    leading = &leading + &self.basis_vector(w)?.vector.scale(a);
                    leading_count += 1;
                }
            }
        }
        Ok(Stats { support: coords.keys().cloned().collect(), tau_length: top, leading, leading_count })
    }

    /// Writes `h = sum_w K~_w * theta_w` by peeling Bruhat-maximal support.
    pub fn decompose(&self, h: &HeckeElt<F>) -> Result<BTreeMap<WeylElement, RationalElt<F>>, PrincipalError> {
        let algebra = self.series.algebra();
        let mut rest = h.clone();
        let mut out: BTreeMap<WeylElement, RationalElt<F>> = BTreeMap::new();
        while let Some(top) = rest.support().max_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b))).cloned() {
            let mut c = rest.coefficient(&top);
            if self.ctx.tau_word(&top).is_none() {
                return Err(PrincipalError::DecompositionFailure(top.to_string()));
            }
            let k = self.basis_vector(&top)?.k_tilde;
            c = &c * &algebra.invert_scalar(&k.coefficient(&top)).ok_or_else(|| PrincipalError::DecompositionFailure(top.to_string()))?;
            rest = &rest - &k.mul_scalar_right(&c);
            let entry = out.entry(top).or_insert_with(|| RationalElt::zero(algebra.lattice_rank()));
            *entry = &*entry + &c;
        }
        Ok(out)
    }

    /// The extended action `k . x` for `k` in `K_tau` and `x` in the span
    /// of the integral basis.
    pub fn k_tau_act(&self, k: &HeckeElt<F>, x: &ModuleVector<F>) -> Result<ModuleVector<F>, PrincipalError> {
        let algebra = self.series.algebra();
        let mut lifted = algebra.zero();
        for (w, a) in self.coordinates(x)? {
            let b = self.basis_vector(&w)?;
            let g_tau = b.clearing.evaluate(self.series.tau());
            let scale = RationalElt::from_poly(b.clearing.scale(&(a / g_tau)));
            lifted = &lifted + &b.k_tilde.mul_scalar_right(&scale);
        }
        let prod = algebra.mul(k, &lifted);
        let mut out = ModuleVector::zero();
        for (w, theta) in self.decompose(&prod)? {
            let value = theta
                .evaluate(self.series.tau())
                .map_err(|source| PrincipalError::PoleAtCharacter { element: w.to_string(), source })?;
            out = &out + &self.basis_vector(&w)?.vector.scale(&value);
        }
        Ok(out)
    }
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
    fn ev_tau_of_f_s() {
        let h = algebra(catalog::a1());
        let m = PrincipalSeries::new(&h, chr(&[-1])).unwrap();
        let v = m.ev_tau(&h.f_simple(0)).unwrap();
        assert_eq!(v.coefficient(h.generator(0)), q(1));
        assert_eq!(v.coefficient(&h.group().identity()), rat(-3, 2));
        let triv = PrincipalSeries::new(&h, chr(&[1])).unwrap();
        assert!(matches!(triv.ev_tau(&h.f_simple(0)), Err(PrincipalError::PoleAtCharacter { .. })));
    }

    #[test]
    fn act_examples() {
        let h = algebra(catalog::a1());
        let m = PrincipalSeries::new(&h, chr(&[-1])).unwrap();
        let s = h.generator(0).clone();
        let ts_v = ModuleVector::basis(s.clone());
        let z = h.monomial(q(1), vec![1]);
        assert_eq!(m.act(&z, &ts_v).unwrap(), ts_v.scale(&q(-1)));
        assert_eq!(m.act(&z, &m.v_tau()).unwrap(), m.v_tau().scale(&q(-1)));
        let expect = &ts_v.scale(&q(3)) + &m.v_tau().scale(&q(4));
        assert_eq!(m.act(&h.t(&s), &ts_v).unwrap(), expect);
        assert!(matches!(m.act(&h.f_simple(0), &ts_v), Err(PrincipalError::NotInBLH)));
    }

    #[test]
    fn weight_spaces_a1() {
        let h = algebra(catalog::a1());
        let m = PrincipalSeries::new(&h, chr(&[-1])).unwrap();
        let dom = LowerSet::ball(h.group(), 1);
        assert_eq!(m.weight_space(m.tau(), &dom).unwrap().len(), 2);
        assert_eq!(m.generalized_weight_space(m.tau(), &dom, 2).unwrap().len(), 2);
        let e = LowerSet::ball(h.group(), 0);
        assert_eq!(m.weight_space(m.tau(), &e).unwrap(), vec![m.v_tau()]);
        let bad = LowerSet::new(h.group(), [h.generator(0).clone()]);
        assert!(matches!(bad, Err(PrincipalError::DomainNotLowerSet(_))));
    }

    #[test]
    fn affine_trivial_weight_spaces() {
        let h = algebra(catalog::affine_a1());
        let m = PrincipalSeries::new(&h, chr(&[1, 1, 1])).unwrap();
        let dom = LowerSet::ball(h.group(), 2);
        assert_eq!(m.generalized_weight_space(m.tau(), &dom, 5).unwrap().len(), 5);
        assert_eq!(m.weight_space(m.tau(), &dom).unwrap(), vec![m.v_tau()]);
    }

    #[test]
    fn ord_trivial_a2() {
        let h = algebra(catalog::a2());
        let m = PrincipalSeries::new(&h, chr(&[1, 1])).unwrap();
        let g = h.group();
        assert_eq!(m.ord(&m.v_tau()).unwrap(), 1);
        assert_eq!(m.ord(&ModuleVector::basis(g.generator(0))).unwrap(), 2);
        let x = &ModuleVector::basis(g.from_word(&[0, 1])) + &ModuleVector::basis(g.from_word(&[1, 0]));
        assert_eq!(m.ord(&x).unwrap(), 3);
        let lam = m.dominant_probe(5).unwrap();
        assert!(m.ord_probe(&x, &lam).unwrap() <= 3);
    }

    #[test]
    fn psi_of_identity_and_reflection() {
        let h = algebra(catalog::a1());
        let m = PrincipalSeries::new(&h, chr(&[-1])).unwrap();
        let s = h.generator(0).clone();
        let x = &m.v_tau() + &ModuleVector::basis(s.clone()).scale(&q(2));
        assert_eq!(m.psi(&h.group().identity(), &x).unwrap(), x);
        let y = m.psi(&s, &m.v_tau()).unwrap();
        assert_eq!(y, &ModuleVector::basis(s.clone()) + &m.v_tau().scale(&rat(-3, 2)));
        // psi(v) is a weight vector for s.tau = tau.
        let dom = LowerSet::ball(h.group(), 1);
        let z = LaurentPoly::monomial(q(1), vec![1]);
        assert_eq!(m.act_poly(&z, &y), y.scale(&q(-1)));
        assert_eq!(m.weight_space(m.tau(), &dom).unwrap().len(), 2);
    }

    #[test]
    fn integral_basis_and_extended_action() {
        let h = algebra(catalog::a2());
        let ctx = TauContext::new(&h, chr(&[1, 1])).unwrap();
        let itg = IntegralPart::new(&ctx).unwrap();
        let gens: Vec<WeylElement> = (0..2).map(|i| h.generator(i).clone()).collect();
        let basis = itg.basis(&gens, 3).unwrap();
        assert_eq!(basis.len(), 6);
        for b in &basis {
            assert_eq!(b.vector, ModuleVector::basis(b.element.clone()));
        }
        let g = h.group();
        let x = &ModuleVector::basis(g.generator(0)) + &ModuleVector::basis(g.from_word(&[0, 1]));
        let st = itg.stats(&x).unwrap();
        assert_eq!((st.tau_length, st.leading_count), (Some(2), 1));
        let zero = itg.stats(&ModuleVector::zero()).unwrap();
        assert_eq!((zero.tau_length, zero.leading_count), (None, 0));
        let k = h.t(&g.from_word(&[1]));
        assert_eq!(itg.k_tau_act(&k, &x).unwrap(), itg.series().act(&k, &x).unwrap());
    }
}
