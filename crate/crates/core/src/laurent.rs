//! Laurent polynomials on `Y`, characters of `Y`, and rational functions
//! whose denominators are products of binomials `1 - c Z^mu`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::coxeter::IntMatrix;
use crate::field::Field;
use crate::linalg::gcd_all;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("pole at the character: denominator factor {0} vanishes")]
    PoleAtCharacter(String),
    #[error("character has a zero value on basis vector {0}")]
    ZeroCharacterValue(usize),
    #[error("character has {found} values, lattice rank is {expected}")]
    CharacterRank { expected: usize, found: usize },
}

/// A group homomorphism `Y -> F^*`, given by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character<F> {
    values: Vec<F>,
    inverses: Vec<F>,
}

impl<F: Field> Character<F> {
    pub fn new(values: Vec<F>) -> Result<Self, LaurentError> {
        let inverses = values
            .iter()
            .enumerate()
            .map(|(j, v)| v.inv().ok_or(LaurentError::ZeroCharacterValue(j)))
            .collect::<Result<_, _>>()?;
        Ok(Self { values, inverses })
    }

    pub fn trivial(rank: usize) -> Self {
        Self::new(vec![F::one(); rank]).expect("one is invertible")
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `tau(lambda)`.
    pub fn eval(&self, lambda: &[i64]) -> F {
        let mut acc = F::one();
        for (j, &e) in lambda.iter().enumerate() {
            if e != 0 {
                let base = if e > 0 { &self.values[j] } else { &self.inverses[j] };
                acc = acc * base.pow(e.abs()).expect("nonzero base");
            }
        }
        acc
    }

    /// The character `lambda -> tau(m . lambda)`.
    pub fn compose(&self, m: &IntMatrix) -> Self {
        let n = self.rank();
        let values = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.eval(&m.apply(&e))
            })
            .collect();
        Self::new(values).expect("values of a character are units")
    }

    pub fn ensure_rank(&self, rank: usize) -> Result<(), LaurentError> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(LaurentError::CharacterRank { expected: rank, found: self.rank() })
        }
    }
}

/// A finite sum of `c_lambda Z^lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F> {
    rank: usize,
    terms: BTreeMap<Vec<i64>, F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, c: F) -> Self {
        Self::monomial(c, vec![0; rank])
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, F::one())
    }

    pub fn monomial(c: F, exponent: Vec<i64>) -> Self {
        let rank = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { rank, terms }
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, F)>) -> Self {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent of the wrong rank");
            p.add_term(e, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant `c` if this is `c Z^0`.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, exponent: &[i64]) -> F {
        self.terms.get(exponent).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, e: Vec<i64>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self { rank: self.rank, terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect() }
    }

    /// Multiplies by the monomial `c Z^shift`.
    pub fn shift(&self, c: &F, shift: &[i64]) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, x) in &self.terms {
            let ee: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.add_term(ee, x.clone() * c.clone());
        }
        out
    }

    /// `^w p`: exponents transformed by the `Y` matrix of `w`.
    pub fn twist(&self, m: &IntMatrix) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, x) in &self.terms {
            out.add_term(m.apply(e), x.clone());
        }
        out
    }

    pub fn evaluate(&self, tau: &Character<F>) -> F {
        self.terms.iter().fold(F::zero(), |acc, (e, c)| acc + c.clone() * tau.eval(e))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.rank), |acc, _| &acc * self)
    }

    /// Exact quotient by `1 - c Z^mu`, or `None` if it does not divide.
    pub fn divide_binomial(&self, factor: &BinomialFactor<F>) -> Option<Self> {
        let mu = &factor.direction;
        let c = &factor.scale;
        let p = mu.iter().position(|&x| x != 0)?;
        // Group exponents by their class modulo Z mu.
        let mut classes: BTreeMap<Vec<i64>, BTreeMap<i64, F>> = BTreeMap::new();
        for (e, x) in &self.terms {
            let k = e[p].div_euclid(mu[p]);
            let rep: Vec<i64> = e.iter().zip(mu).map(|(a, m)| a - k * m).collect();
            classes.entry(rep).or_default().insert(k, x.clone());
        }
        let mut out = Self::zero(self.rank);
        for (rep, series) in classes {
            let lo = *series.keys().next().unwrap();
            let hi = *series.keys().next_back().unwrap();
            if lo == hi {
                return None;
            }
            let mut prev = F::zero();
            for k in lo..hi {
                let a = series.get(&k).cloned().unwrap_or_else(F::zero);
                let q = a + c.clone() * prev;
                if !q.is_zero() {
                    let e: Vec<i64> = rep.iter().zip(mu).map(|(r, m)| r + k * m).collect();
                    out.add_term(e, q.clone());
                }
                prev = q;
            }
            let top = series[&hi].clone() + c.clone() * prev;
            if !top.is_zero() {
                return None;
            }
        }
        Some(out)
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if e.iter().all(|&x| x == 0) {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*Z^{e:?}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Serialize for LaurentPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

/// The binomial `1 - scale * Z^direction`, oriented so that the first
/// nonzero coordinate of `direction` is negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomialFactor<F> {
    direction: Vec<i64>,
    scale: F,
}

impl<F: Field> BinomialFactor<F> {
    pub fn direction(&self) -> &[i64] {
        &self.direction
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn as_poly(&self) -> LaurentPoly<F> {
        let n = self.direction.len();
        &LaurentPoly::one(n) - &LaurentPoly::monomial(self.scale.clone(), self.direction.clone())
    }

    pub fn evaluate(&self, tau: &Character<F>) -> F {
        F::one() - self.scale.clone() * tau.eval(&self.direction)
    }

    /// Orients `1 - c Z^mu`; returns the factor and the unit `u Z^nu` with
    /// `1 / (1 - c Z^mu) = u Z^nu / factor`.
    fn oriented(scale: F, direction: Vec<i64>) -> (Self, F, Vec<i64>) {
        let n = direction.len();
        let first = direction.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if first <= 0 {
            (Self { direction, scale }, F::one(), vec![0; n])
        } else {
            let inv = scale.inv().expect("binomial scale is nonzero");
            let neg: Vec<i64> = direction.iter().map(|x| -x).collect();
            (Self { direction: neg.clone(), scale: inv.clone() }, -inv, neg)
        }
    }
}

impl<F: Field> fmt::Display for BinomialFactor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - {}*Z^{:?})", self.scale, self.direction)
    }
}

/// An element of `F(Y)`: a Laurent numerator over a multiset of binomials.
///
/// Kept reduced: no denominator factor divides the numerator. Equality is
/// tested by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalElt<F> {
    num: LaurentPoly<F>,
    den: BTreeMap<BinomialFactor<F>, u32>,
}

impl<F: Field> RationalElt<F> {
    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn constant(rank: usize, c: F) -> Self {
        Self::from_poly(LaurentPoly::constant(rank, c))
    }

    pub fn monomial(c: F, exponent: Vec<i64>) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, exponent))
    }

    pub fn from_poly(num: LaurentPoly<F>) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    /// `num / prod (1 - c Z^mu)` over the given `(c, mu)` pairs.
    pub fn with_denominator(num: LaurentPoly<F>, factors: impl IntoIterator<Item = (F, Vec<i64>)>) -> Self {
        let mut out = Self::from_poly(num);
        for (c, mu) in factors {
            out.divide_by_binomial(c, mu);
        }
        out.reduce();
        out
    }

    fn divide_by_binomial(&mut self, c: F, mu: Vec<i64>) {
        if mu.iter().all(|&x| x == 0) {
            let v = F::one() - c;
            self.num = self.num.scale(&v.inv().expect("constant denominator is nonzero"));
            return;
        }
        let (factor, unit, shift) = BinomialFactor::oriented(c, mu);
        self.num = self.num.shift(&unit, &shift);
        *self.den.entry(factor).or_insert(0) += 1;
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&BinomialFactor<F>, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn denominator_poly(&self) -> LaurentPoly<F> {
        expand(&self.den, self.rank())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&LaurentPoly<F>> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<F> {
        self.as_polynomial().and_then(LaurentPoly::as_constant)
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<BinomialFactor<F>> = self.den.keys().cloned().collect();
        for f in factors {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match self.num.divide_binomial(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `^w theta`.
    pub fn twist(&self, m: &IntMatrix) -> Self {
        let mut out = Self::from_poly(self.num.twist(m));
        for (f, &mult) in &self.den {
            for _ in 0..mult {
                out.divide_by_binomial(f.scale.clone(), m.apply(&f.direction));
            }
        }
        out.reduced()
    }

    /// Value at `tau`, or `PoleAtCharacter` if a reduced denominator factor
    /// vanishes there.
    pub fn evaluate(&self, tau: &Character<F>) -> Result<F, LaurentError> {
        let mut num = self.num.clone();
        let mut den_value = F::one();
        for (f, &mult) in &self.den {
            for _ in 0..mult {
                let v = f.evaluate(tau);
                if !v.is_zero() {
                    den_value = den_value * v;
                    continue;
                }
                // A non-primitive direction k*mu0 may still cancel against
                // the linear factor 1 - z Z^mu0 that vanishes at tau.
                let k = gcd_all(&f.direction);
                let pole = || LaurentError::PoleAtCharacter(f.to_string());
                if k <= 1 {
                    return Err(pole());
                }
                let mu0: Vec<i64> = f.direction.iter().map(|x| x / k).collect();
                let z = tau.eval(&mu0).inv().ok_or_else(pole)?;
                let linear = BinomialFactor { direction: mu0, scale: z };
                num = num.divide_binomial(&linear).ok_or_else(pole)?;
                den_value = den_value * F::from_i64(k);
            }
        }
        Ok(num.evaluate(tau) / den_value)
    }

    /// `1 / self`, provided the numerator is a monomial times binomials
    /// `1 - c Z^mu` drawn from `candidates`.
    pub fn recip_with(&self, candidates: &[(F, Vec<i64>)]) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut rest = self.num.clone();
        let mut factors = Vec::new();
        for (c, mu) in candidates {
            if mu.iter().all(|&x| x == 0) || c.is_zero() {
                continue;
            }
            let (f, _, _) = BinomialFactor::oriented(c.clone(), mu.clone());
            while let Some(q) = rest.divide_binomial(&f) {
                rest = q;
                factors.push((f.scale.clone(), f.direction.clone()));
            }
        }
        if rest.num_terms() != 1 {
            return None;
        }
        let (e, a) = rest.terms().next().map(|(e, a)| (e.clone(), a.clone()))?;
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        let num = self.denominator_poly().shift(&a.inv()?, &neg);
        Some(Self::with_denominator(num, factors))
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.rank()), |acc, _| &acc * self)
    }
}

fn expand<F: Field>(den: &BTreeMap<BinomialFactor<F>, u32>, rank: usize) -> LaurentPoly<F> {
    let mut p = LaurentPoly::one(rank);
    for (f, &m) in den {
        let fp = f.as_poly();
        for _ in 0..m {
            p = &p * &fp;
        }
    }
    p
}

// lcm of two multisets, and the cofactors lcm/a, lcm/b.
#[allow(clippy::type_complexity)]
fn lcm<F: Field>(
    a: &BTreeMap<BinomialFactor<F>, u32>,
    b: &BTreeMap<BinomialFactor<F>, u32>,
) -> (BTreeMap<BinomialFactor<F>, u32>, BTreeMap<BinomialFactor<F>, u32>, BTreeMap<BinomialFactor<F>, u32>) {
    let mut l = a.clone();
    for (f, &m) in b {
        let e = l.entry(f.clone()).or_insert(0);
        *e = (*e).max(m);
    }
    let co = |x: &BTreeMap<BinomialFactor<F>, u32>| {
        l.iter()
            .filter_map(|(f, &m)| {
                let r = m - x.get(f).copied().unwrap_or(0);
                (r > 0).then(|| (f.clone(), r))
            })
            .collect::<BTreeMap<_, _>>()
    };
    let (ca, cb) = (co(a), co(b));
    (l, ca, cb)
}

/// A common denominator `g` of the given elements (the lcm of their
/// factored denominators) and the polynomials `g * theta`.
pub fn clear_denominators<'a, F: Field + 'a>(
    rank: usize,
    elts: impl IntoIterator<Item = &'a RationalElt<F>>,
) -> (LaurentPoly<F>, Vec<LaurentPoly<F>>) {
    let elts: Vec<&RationalElt<F>> = elts.into_iter().collect();
    let mut l = BTreeMap::new();
    for e in &elts {
        l = lcm(&l, &e.den).0;
    }
    let cleared = elts.iter().map(|e| &e.num * &expand(&lcm(&l, &e.den).2, rank)).collect();
    (expand(&l, rank), cleared)
}

impl<F: Field> Add for &RationalElt<F> {
    type Output = RationalElt<F>;
    fn add(self, rhs: Self) -> RationalElt<F> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let rank = self.rank();
        if self.den == rhs.den {
            return RationalElt { num: &self.num + &rhs.num, den: self.den.clone() }.reduced();
        }
        let (l, ca, cb) = lcm(&self.den, &rhs.den);
        let num = &(&self.num * &expand(&ca, rank)) + &(&rhs.num * &expand(&cb, rank));
        RationalElt { num, den: l }.reduced()
    }
}

impl<F: Field> Sub for &RationalElt<F> {
    type Output = RationalElt<F>;
    fn sub(self, rhs: Self) -> RationalElt<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &RationalElt<F> {
    type Output = RationalElt<F>;
    fn neg(self) -> RationalElt<F> {
        RationalElt { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Field> Mul for &RationalElt<F> {
    type Output = RationalElt<F>;
    fn mul(self, rhs: Self) -> RationalElt<F> {
        if self.is_zero() || rhs.is_zero() {
            return RationalElt::zero(self.rank());
        }
        let mut den = self.den.clone();
        for (f, &m) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        RationalElt { num: &self.num * &rhs.num, den }.reduced()
    }
}

impl<F: Field> PartialEq for RationalElt<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, ca, cb) = lcm(&self.den, &other.den);
        let rank = self.rank();
        &self.num * &expand(&ca, rank) == &other.num * &expand(&cb, rank)
    }
}

impl<F: Field> Eq for RationalElt<F> {}

impl<F: Field> fmt::Display for RationalElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ", self.num)?;
        for (k, (fac, m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{fac}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Serialize for RationalElt<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            scale: String,
            direction: &'a [i64],
            multiplicity: u32,
        }
        let den: Vec<Factor> = self
            .den
            .iter()
            .map(|(f, &m)| Factor { scale: f.scale.to_string(), direction: &f.direction, multiplicity: m })
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("numerator", &self.num)?;
        map.serialize_entry("denominator", &den)?;
        map.end()
    }
}
