//! The rank-4 datum whose `S_tau` is infinite at `tau(lambda) = (-1)^{ht lambda}`:
//! the reflections `w r3 r4 r3 w^{-1}` for `w` in the rank-2 parabolic
//! `<r1, r2>` (free, since `a_12 = -2`) all lie in `S_tau`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::coxeter::WeylElement;
use crate::field::{Field, ScalarError};
use crate::hecke::HeckeAlgebra;
use crate::laurent::Character;
use crate::linalg::integer_determinant;
use crate::rootdata::{Coroot, ParameterSet, RootDatum};
use crate::stabilizer::{StabilizerError, TauContext};

/// Conjugators `e, r1, r2, r1 r2, r2 r1` (zero-based words).
pub const CONJUGATOR_WORDS: [&[usize]; 5] = [&[], &[0], &[1], &[0, 1], &[1, 0]];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("datum must have rank 4, found {0}")]
    Rank(usize),
    #[error("Kac-Moody matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugateCheck {
    /// One-based conjugator word.
    pub conjugator: Vec<usize>,
    /// One-based word of `w r3 r4 r3 w^{-1}`.
    pub element: Vec<usize>,
    pub coroot: Vec<i64>,
    pub in_phi_tau: bool,
    /// `N(v) ∩ Phi_(tau)` is exactly the coroot of `v` (all of `N(v)` is finite).
    pub exact: bool,
    /// The same test against the enumerated positive part of `Phi_(tau)`.
    pub bounded: bool,
    pub inversions: usize,
    pub phi_inversions: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub matrix: Vec<Vec<i64>>,
    pub determinant: String,
    pub q: i64,
    pub coroot_bound: i64,
    pub enumerated_coroots: usize,
    pub enumerated_phi_tau_plus: usize,
    /// `u . alpha_i` for `i <= 3` and the listed conjugators fall outside `Phi_(tau)`.
    pub simple_images_outside: bool,
    pub checks: Vec<ConjugateCheck>,
}

impl FamilyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.exact && c.bounded && c.in_phi_tau).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checks.len() && self.simple_images_outside
    }

    pub fn summary(&self) -> String {
        format!("{}/{} conjugates certified in S_tau", self.passed(), self.checks.len())
    }
}

/// `(-1)^{ht}` on coroot coordinates, valid when `Y` has the simple coroots as basis.
pub fn sign_character(rank: usize) -> Character<BigRational> {
    Character::new(vec![-<BigRational as Field>::one(); rank]).expect("units")
}

pub fn check(datum: RootDatum, q: i64, coroot_bound: i64) -> Result<FamilyReport, FamilyError> {
    if datum.num_simple() != 4 {
        return Err(FamilyError::Rank(datum.num_simple()));
    }
    let matrix = datum.matrix().rows().to_vec();
    let det: BigInt = integer_determinant(&matrix);
    if det.is_zero() {
        return Err(FamilyError::Singular);
    }
    let params = ParameterSet::from_q(4, q)?;
    let algebra = HeckeAlgebra::new(datum, params).map_err(StabilizerError::from)?;
    let ctx = TauContext::new(&algebra, sign_character(algebra.lattice_rank()))?;
    let group = algebra.group();

    let coroots = algebra.datum().enumerate_coroots(coroot_bound);
    let phi_plus: Vec<Coroot> = coroots.iter().filter(|b| b.is_positive() && ctx.in_phi(b)).cloned().collect();

    let core = group.from_word(&[2, 3, 2]);
    let alpha4 = Coroot::simple(4, 3);
    let mut outside = true;
    let mut checks = Vec::new();
    for word in CONJUGATOR_WORDS {
        let w = group.from_word(word);
        let v = group.multiply(&group.multiply(&w, &core), &group.inverse(&w));
        let coroot = group.multiply(&w, &group.generator(2)).act_coroot(&alpha4);
        outside &= (0..3).all(|i| !ctx.in_phi(&w.act_coroot(&Coroot::simple(4, i))));
        let phi_inv = ctx.phi_inversions(&v);
        let bounded: Vec<&Coroot> = phi_plus.iter().filter(|b| v.act_coroot(b).is_negative()).collect();
        checks.push(ConjugateCheck {
            conjugator: w.word_one_based(),
            element: v.word_one_based(),
            coroot: coroot.coords().to_vec(),
            in_phi_tau: ctx.in_phi(&coroot),
            exact: phi_inv == [coroot.clone()] && ctx.is_sigma(&coroot),
            bounded: bounded == [&coroot],
            inversions: v.len(),
            phi_inversions: phi_inv.iter().map(|b| b.coords().to_vec()).collect(),
        });
    }
    Ok(FamilyReport {
        matrix,
        determinant: det.to_string(),
        q,
        coroot_bound,
        enumerated_coroots: coroots.len(),
        enumerated_phi_tau_plus: phi_plus.len(),
        simple_images_outside: outside,
        checks,
    })
}

/// Elements of the parabolic `<r1, r2>` up to the given length.
pub fn parabolic_ball(datum: &RootDatum, length: usize) -> Vec<WeylElement> {
    let group = crate::coxeter::WeylGroup::new(datum.clone());
    let mut out = vec![group.identity()];
    for n in 1..=length {
        for start in [0usize, 1] {
            let word: Vec<usize> = (0..n).map(|k| (start + k) % 2).collect();
            out.push(group.from_word(&word));
        }
    }
    out
}
