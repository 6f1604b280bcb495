//! Kac-Moody matrices, root generating systems, real coroots and the Tits cone.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::field::{Field, ScalarError};
use crate::linalg::{gcd_all, integer_rank};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error("diagonal entry a[{0}][{0}] is not 2")]
    DiagonalNot2(usize),
    #[error("off-diagonal entry a[{0}][{1}] is positive")]
    SignViolation(usize, usize),
    #[error("a[{0}][{1}] and a[{1}][{0}] must vanish together")]
    ZeroPatternViolation(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the simple {0} are not linearly independent")]
    DependentFamily(&'static str),
    #[error("pairing mismatch: alpha_{j}(coroot_{i}) = {found}, matrix says {expected}", i = .0, j = .1, expected = .2, found = .3)]
    PairingMismatch(usize, usize, i64, i64),
    #[error("parameter constraint violated at {0}: {1}")]
    ParameterConstraintViolation(usize, String),
    #[error("parameter {0} must have modulus > 1")]
    ParameterModulusViolation(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KacMoodyMatrix(Vec<Vec<i64>>);

impl KacMoodyMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, DatumError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(DatumError::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(DatumError::DiagonalNot2(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(DatumError::SignViolation(i, j));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(DatumError::ZeroPatternViolation(i, j));
                }
            }
        }
        Ok(Self(entries))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Order of `r_i r_j`, or `None` when it is infinite.
    pub fn braid_order(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(1);
        }
        match self.0[i][j] * self.0[j][i] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }
}

/// A coroot written in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Coroot(Vec<i64>);

impl Coroot {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of absolute coordinates; the pruning norm.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// Plain sum of coordinates.
    pub fn ht_signed(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&x| x <= 0) && self.0.iter().any(|&x| x < 0)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// The positive one of `self`, `-self`.
    pub fn positive_part(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Ord for Coroot {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.height(), &self.0).cmp(&(other.height(), &other.0))
    }
}

impl PartialOrd for Coroot {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Outcome of the Tits cone membership test. Words are 0-based generator
/// indices of an element `w` with the vector in `w` applied to the closed
/// fundamental chamber (or its negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TitsCone {
    InPositiveCone(Vec<usize>),
    InNegativeCone(Vec<usize>),
    Undetermined,
}

/// Lattices, simple roots and simple coroots; no parameters.
///
/// `Y` is `Z^n`; the simple coroots are vectors of `Y` and the simple roots
/// are vectors of the dual lattice, so `alpha_j(coroot_i) = roots[j] . coroots[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    matrix: KacMoodyMatrix,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(matrix: KacMoodyMatrix, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Result<Self, DatumError> {
        let k = matrix.size();
        if roots.len() != k || coroots.len() != k {
            return Err(DatumError::ShapeMismatch(format!(
                "{} simple roots and {} simple coroots for a matrix of size {k}",
                roots.len(),
                coroots.len()
            )));
        }
        let n = roots[0].len();
        if n == 0 || roots.iter().chain(&coroots).any(|v| v.len() != n) {
            return Err(DatumError::ShapeMismatch("roots and coroots must share one lattice rank".into()));
        }
        if integer_rank(&roots) < k {
            return Err(DatumError::DependentFamily("roots"));
        }
        if integer_rank(&coroots) < k {
            return Err(DatumError::DependentFamily("coroots"));
        }
        for i in 0..k {
            for j in 0..k {
                let found = dot(&roots[j], &coroots[i]);
                if found != matrix.get(i, j) {
                    return Err(DatumError::PairingMismatch(i, j, matrix.get(i, j), found));
                }
            }
        }
        Ok(Self { matrix, roots, coroots })
    }

    /// `Y` spanned by the simple coroots, with extra coordinates added only
    /// when the matrix is singular (so the simple roots stay independent).
    pub fn minimal_realization(matrix: KacMoodyMatrix) -> Result<Self, DatumError> {
        let k = matrix.size();
        let base: Vec<Vec<i64>> = (0..k).map(|j| (0..k).map(|i| matrix.get(i, j)).collect()).collect();
        let mut extra_for = vec![None; k];
        let mut kept: Vec<Vec<i64>> = Vec::new();
        let mut extra = 0;
        for j in 0..k {
            kept.push(base[j].clone());
            if integer_rank(&kept) < kept.len() {
                kept.pop();
                extra_for[j] = Some(extra);
                extra += 1;
            }
        }
        let n = k + extra;
        let roots = (0..k)
            .map(|j| {
                let mut r = base[j].clone();
                r.resize(n, 0);
                if let Some(e) = extra_for[j] {
                    r[k + e] = 1;
                }
                r
            })
            .collect();
        let coroots = (0..k)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        Self::new(matrix, roots, coroots)
    }

    pub fn matrix(&self) -> &KacMoodyMatrix {
        &self.matrix
    }

    /// Number of simple reflections.
    pub fn num_simple(&self) -> usize {
        self.matrix.size()
    }

    /// Rank of `Y`.
    pub fn lattice_rank(&self) -> usize {
        self.roots[0].len()
    }

    pub fn simple_root(&self, j: usize) -> &[i64] {
        &self.roots[j]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    /// `alpha_j(y)` for `y` in `Y`.
    pub fn pairing(&self, j: usize, y: &[i64]) -> i64 {
        dot(&self.roots[j], y)
    }

    /// `alpha_j(beta)` for a coroot in simple-coroot coordinates.
    pub fn coroot_pairing(&self, j: usize, beta: &Coroot) -> i64 {
        beta.0.iter().enumerate().map(|(i, n)| n * self.matrix.get(i, j)).sum()
    }

    /// `Y`-coordinates of a coroot.
    pub fn coroot_to_y(&self, beta: &Coroot) -> Vec<i64> {
        let mut y = vec![0; self.lattice_rank()];
        for (i, &n) in beta.0.iter().enumerate() {
            if n != 0 {
                for (yk, ck) in y.iter_mut().zip(&self.coroots[i]) {
                    *yk += n * ck;
                }
            }
        }
        y
    }

    /// `r_i(v) = v - alpha_i(v) coroot_i` on `Y`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let p = self.pairing(i, v);
        v.iter().zip(&self.coroots[i]).map(|(x, c)| x - p * c).collect()
    }

    pub fn reflect_coroot(&self, i: usize, beta: &Coroot) -> Coroot {
        let p = self.coroot_pairing(i, beta);
        let mut c = beta.0.clone();
        c[i] -= p;
        Coroot(c)
    }

    /// `alpha_i(Y) = g Z`; returns `g`.
    pub fn root_image_index(&self, i: usize) -> i64 {
        gcd_all(&self.roots[i])
    }

    /// Real coroots of height at most `bound`, sorted by (height, coordinates).
    pub fn enumerate_coroots(&self, bound: i64) -> BTreeSet<Coroot> {
        let k = self.num_simple();
        let mut seen = BTreeSet::new();
        let mut frontier: BTreeSet<Coroot> = BTreeSet::new();
        if bound < 1 {
            return seen;
        }
        for i in 0..k {
            let c = Coroot::simple(k, i);
            frontier.insert(c.neg());
            frontier.insert(c);
        }
        while !frontier.is_empty() {
            let mut next = BTreeSet::new();
            for c in &frontier {
                seen.insert(c.clone());
            }
            for c in &frontier {
                for i in 0..k {
                    let r = self.reflect_coroot(i, c);
                    if r.height() <= bound && !seen.contains(&r) {
                        next.insert(r);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Writes a positive real coroot as `r_{j_1} ... r_{j_m} . coroot_i`;
    /// returns `(j_1..j_m, i)`, or `None` if `beta` is not a positive real coroot.
    pub fn descend(&self, beta: &Coroot) -> Option<(Vec<usize>, usize)> {
        let k = self.num_simple();
        if beta.coords().len() != k || !beta.is_positive() {
            return None;
        }
        let mut cur = beta.clone();
        let mut path = Vec::new();
        loop {
            if let Some(i) = (0..k).find(|&i| cur == Coroot::simple(k, i)) {
                return Some((path, i));
            }
            let j = (0..k).find(|&j| self.coroot_pairing(j, &cur) > 0)?;
            cur = self.reflect_coroot(j, &cur);
            if !cur.is_positive() {
                return None;
            }
            path.push(j);
        }
    }

    /// Tits cone test for `lambda` in `Y` with a step cap per sign.
    pub fn tits_cone(&self, lambda: &[i64], cap: Option<usize>) -> TitsCone {
        let height: i64 = lambda.iter().map(|x| x.abs()).sum();
        let cap = cap.unwrap_or(10 * height as usize + 10);
        if let Some(w) = self.to_dominant(lambda, cap) {
            return TitsCone::InPositiveCone(w);
        }
        let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
        if let Some(w) = self.to_dominant(&neg, cap) {
            return TitsCone::InNegativeCone(w);
        }
        TitsCone::Undetermined
    }

    fn to_dominant(&self, lambda: &[i64], cap: usize) -> Option<Vec<usize>> {
        let mut v = lambda.to_vec();
        let mut word = Vec::new();
        for _ in 0..=cap {
            match (0..self.num_simple()).find(|&i| self.pairing(i, &v) < 0) {
                None => return Some(word),
                Some(i) => {
                    v = self.reflect(i, &v);
                    word.push(i);
                }
            }
        }
        None
    }

    /// A `lambda` in `Y` with `alpha_i(lambda) > 0` for all `i`, searched over
    /// coordinates in `[-bound, bound]` by (norm, lexicographic) order.
    pub fn strictly_dominant(&self, bound: i64) -> Option<Vec<i64>> {
        let n = self.lattice_rank();
        for norm in 1..=(bound * n as i64) {
            let mut found: Option<Vec<i64>> = None;
            for_each_vector(n, bound, norm, &mut |v| {
                if found.is_none() && (0..self.num_simple()).all(|i| self.pairing(i, v) > 0) {
                    found = Some(v.to_vec());
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn for_each_vector(n: usize, bound: i64, norm: i64, f: &mut dyn FnMut(&[i64])) {
    fn rec(v: &mut Vec<i64>, n: usize, bound: i64, left: i64, f: &mut dyn FnMut(&[i64])) {
        if v.len() == n {
            if left == 0 {
                f(v);
            }
            return;
        }
        for x in -bound..=bound {
            if x.abs() <= left {
                v.push(x);
                rec(v, n, bound, left - x.abs(), f);
                v.pop();
            }
        }
    }
    rec(&mut Vec::with_capacity(n), n, bound, norm, f);
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The parameters `sigma_s`, `sigma'_s` of each simple reflection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterSet<F> {
    sigma: Vec<F>,
    sigma_prime: Vec<F>,
}

impl<F: Field> ParameterSet<F> {
    pub fn new(sigma: Vec<F>, sigma_prime: Vec<F>) -> Self {
        Self { sigma, sigma_prime }
    }

    pub fn equal(sigma: Vec<F>) -> Self {
        Self { sigma_prime: sigma.clone(), sigma }
    }

    /// `sigma_s = sigma'_s = sqrt(q)` for every simple reflection.
    pub fn from_q(count: usize, q: i64) -> Result<Self, ScalarError> {
        let s = F::sqrt_of_int(q)?;
        Ok(Self::equal(vec![s; count]))
    }

    pub fn sigma(&self, i: usize) -> &F {
        &self.sigma[i]
    }

    pub fn sigma_prime(&self, i: usize) -> &F {
        &self.sigma_prime[i]
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn is_equal_parameter(&self, i: usize) -> bool {
        self.sigma[i] == self.sigma_prime[i]
    }
}

/// A root datum together with admissible parameters.
#[derive(Debug, Clone)]
pub struct RootGeneratingSystem<F> {
    datum: RootDatum,
    params: ParameterSet<F>,
}

impl<F: Field> RootGeneratingSystem<F> {
    pub fn new(datum: RootDatum, params: ParameterSet<F>) -> Result<Self, DatumError> {
        validate_parameters(&datum, &params)?;
        Ok(Self { datum, params })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn params(&self) -> &ParameterSet<F> {
        &self.params
    }
}

/// Checks the parameter constraints against the datum.
pub fn validate_parameters<F: Field>(datum: &RootDatum, params: &ParameterSet<F>) -> Result<(), DatumError> {
    let k = datum.num_simple();
    if params.sigma.len() != k || params.sigma_prime.len() != k {
        return Err(DatumError::ShapeMismatch(format!("expected {k} parameters")));
    }
    for i in 0..k {
        if params.sigma[i].modulus() <= 1.0 {
            return Err(DatumError::ParameterModulusViolation(i));
        }
        if params.sigma_prime[i].modulus() <= 1.0 {
            return Err(DatumError::ParameterModulusViolation(i));
        }
        if datum.root_image_index(i) == 1 && params.sigma[i] != params.sigma_prime[i] {
            return Err(DatumError::ParameterConstraintViolation(
                i,
                "alpha(Y) = Z forces sigma = sigma'".into(),
            ));
        }
    }
    // Reflections joined by a chain of simply-laced edges are conjugate.
    let a = datum.matrix();
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for i in 0..k {
        for j in 0..k {
            if i != j && a.get(i, j) == -1 && a.get(j, i) == -1 {
                let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
                comp[ri] = rj;
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i == j || find(&mut comp, i) != find(&mut comp, j) {
                continue;
            }
            let all = [&params.sigma[i], &params.sigma_prime[i], &params.sigma[j], &params.sigma_prime[j]];
            if all.iter().any(|x| *x != all[0]) {
                return Err(DatumError::ParameterConstraintViolation(
                    i,
                    format!("reflections {i} and {j} are conjugate and need equal parameters"),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_rational::BigRational;

    #[test]
    fn matrix_validation() {
        assert_eq!(KacMoodyMatrix::new(vec![vec![1]]), Err(DatumError::DiagonalNot2(0)));
        assert_eq!(KacMoodyMatrix::new(vec![vec![2, 1], vec![-1, 2]]), Err(DatumError::SignViolation(0, 1)));
        assert_eq!(
            KacMoodyMatrix::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(DatumError::ZeroPatternViolation(0, 1))
        );
        assert!(KacMoodyMatrix::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
    }

    #[test]
    fn pairing_mismatch_is_reported() {
        let a = KacMoodyMatrix::new(vec![vec![2]]).unwrap();
        let err = RootDatum::new(a, vec![vec![1]], vec![vec![1]]).unwrap_err();
        assert_eq!(err, DatumError::PairingMismatch(0, 0, 2, 1));
    }

    #[test]
    fn singular_matrix_gets_extra_coordinate() {
        let d = catalog::affine_a1();
        assert_eq!(d.lattice_rank(), 3);
        assert_eq!(d.simple_root(1), &[-2, 2, 1]);
    }

    #[test]
    fn parameter_constraints() {
        let a2 = catalog::a2();
        let p = ParameterSet::new(vec![BigRational::from_i64(2), BigRational::from_i64(3)], vec![
            BigRational::from_i64(2),
            BigRational::from_i64(3),
        ]);
        assert!(matches!(validate_parameters(&a2, &p), Err(DatumError::ParameterConstraintViolation(..))));
        let half = catalog::a1_half_lattice();
        let p = ParameterSet::new(vec![BigRational::from_i64(2)], vec![BigRational::from_i64(3)]);
        assert!(matches!(validate_parameters(&half, &p), Err(DatumError::ParameterConstraintViolation(..))));
        let a1 = catalog::a1();
        assert!(validate_parameters(&a1, &p).is_ok());
        let small = ParameterSet::equal(vec![crate::field::rat(1, 2)]);
        assert_eq!(validate_parameters(&a1, &small), Err(DatumError::ParameterModulusViolation(0)));
    }

    #[test]
    fn reflection_example() {
        let a2 = catalog::a2();
        assert_eq!(a2.reflect(0, &[0, 1]), vec![1, 1]);
    }

    #[test]
    fn a2_coroots() {
        let set = catalog::a2().enumerate_coroots(2);
        let got: Vec<_> = set.iter().map(|c| c.coords().to_vec()).collect();
        assert_eq!(got, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0], vec![-1, -1], vec![1, 1]]);
    }

    #[test]
    fn affine_a1_coroots_have_expected_shape() {
        let set = catalog::affine_a1().enumerate_coroots(7);
        for c in set.iter().filter(|c| c.is_positive()) {
            let (a, b) = (c.coords()[0], c.coords()[1]);
            assert_eq!((a - b).abs(), 1, "{c}");
        }
        assert_eq!(set.len(), 16);
    }

    #[test]
    fn tits_cone() {
        let a2 = catalog::a2();
        assert!(matches!(a2.tits_cone(&[-1, -1], None), TitsCone::InPositiveCone(_)));
        let aff = catalog::affine_a1();
        assert!(matches!(aff.tits_cone(&[1, 1, 0], None), TitsCone::InPositiveCone(ref w) if w.is_empty()));
        assert!(matches!(aff.tits_cone(&[1, 0, 0], None), TitsCone::Undetermined));
        assert!(matches!(aff.tits_cone(&[0, 0, -1], None), TitsCone::InNegativeCone(_)));
    }

    #[test]
    fn dominant_probe() {
        let lam = catalog::a2().strictly_dominant(5).unwrap();
        assert_eq!(lam, vec![1, 1]);
        let aff = catalog::affine_a1();
        let lam = aff.strictly_dominant(5).unwrap();
        assert!((0..2).all(|i| aff.pairing(i, &lam) > 0));
    }

    #[test]
    fn descend_rejects_imaginary() {
        let aff = catalog::affine_a1();
        assert!(aff.descend(&Coroot::new(vec![1, 1])).is_none());
        let (path, i) = aff.descend(&Coroot::new(vec![2, 1])).unwrap();
        let mut c = Coroot::simple(2, i);
        for &j in path.iter().rev() {
            c = aff.reflect_coroot(j, &c);
        }
        assert_eq!(c, Coroot::new(vec![2, 1]));
    }
}
