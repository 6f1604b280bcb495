//! The Weyl group of a root datum: exact matrices, ShortLex words, Bruhat
//! order, inversion sets and reflections.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use crate::linalg::gcd_all;
use crate::rootdata::{Coroot, RootDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("{0} is not a real coroot")]
    NotARealCoroot(Coroot),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.data.chunks(self.n).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn column_is_negative(&self, c: usize) -> bool {
        (0..self.n).any(|r| self.get(r, c) < 0)
    }
}

/// An element of the Weyl group: its matrices on `Y` and on the coroot
/// lattice (simple-coroot coordinates) plus its ShortLex reduced word.
///
/// Equality is equality of the `Y` matrices; the order is ShortLex.
#[derive(Debug, Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    on_y: IntMatrix,
    on_coroots: IntMatrix,
}

impl WeylElement {
    /// Canonical reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn y_matrix(&self) -> &IntMatrix {
        &self.on_y
    }

    pub fn coroot_matrix(&self) -> &IntMatrix {
        &self.on_coroots
    }

    /// `w . lambda` for `lambda` in `Y`.
    pub fn act_y(&self, lambda: &[i64]) -> Vec<i64> {
        self.on_y.apply(lambda)
    }

    pub fn act_coroot(&self, beta: &Coroot) -> Coroot {
        Coroot::new(self.on_coroots.apply(beta.coords()))
    }

    /// Word with 1-based letters, the serialized form.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.on_y == other.on_y
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.on_y.hash(state);
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.word_one_based().serialize(s)
    }
}

/// A reflection `r = w s_i w^{-1}` with `w.coroot_i` its positive coroot.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub coroot: Coroot,
    pub element: WeylElement,
    /// The conjugating element `w`, with `w s_i > w`.
    pub conjugator: WeylElement,
    pub simple: usize,
}

/// The Weyl group of a root datum.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: RootDatum,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        Self { datum }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.num_simple()
    }

    // M <- M * s_i on the coroot lattice.
    fn right_mul_coroot_gen(&self, m: &mut IntMatrix, i: usize) {
        let n = m.n;
        let a = self.datum.matrix();
        for r in 0..n {
            let mi = m.data[r * n + i];
            if mi == 0 {
                continue;
            }
            for b in 0..n {
                let aib = a.get(b, i);
                if aib != 0 {
                    m.data[r * n + b] -= aib * mi;
                }
            }
        }
    }

    // M <- M * s_i on Y.
    fn right_mul_y_gen(&self, m: &mut IntMatrix, i: usize) {
        let n = m.n;
        let c = self.datum.simple_coroot(i);
        let root = self.datum.simple_root(i);
        for r in 0..n {
            let row = &mut m.data[r * n..(r + 1) * n];
            let mc: i64 = row.iter().zip(c).map(|(x, y)| x * y).sum();
            if mc != 0 {
                for (x, a) in row.iter_mut().zip(root) {
                    *x -= mc * a;
                }
            }
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            on_y: IntMatrix::identity(self.datum.lattice_rank()),
            on_coroots: IntMatrix::identity(self.rank()),
        }
    }

    pub fn generator(&self, i: usize) -> WeylElement {
        self.from_word(&[i])
    }

    /// The element represented by an arbitrary word (0-based letters).
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        // Matrix of w^{-1} on coroots, then peel smallest left descents.
        let mut inv = IntMatrix::identity(self.rank());
        for &i in word.iter().rev() {
            self.right_mul_coroot_gen(&mut inv, i);
        }
        let mut canon = Vec::with_capacity(word.len());
        while let Some(i) = (0..self.rank()).find(|&i| inv.column_is_negative(i)) {
            canon.push(i);
            self.right_mul_coroot_gen(&mut inv, i);
        }
        let mut on_y = IntMatrix::identity(self.datum.lattice_rank());
        let mut on_coroots = IntMatrix::identity(self.rank());
        for &i in &canon {
            self.right_mul_y_gen(&mut on_y, i);
            self.right_mul_coroot_gen(&mut on_coroots, i);
        }
        WeylElement { word: canon, on_y, on_coroots }
    }

    pub fn checked_word(&self, word: &[usize]) -> Result<WeylElement, CoxeterError> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(CoxeterError::BadGenerator(bad));
        }
        Ok(self.from_word(word))
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let word: Vec<usize> = u.word.iter().chain(&v.word).copied().collect();
        self.from_word(&word)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        self.from_word(&word)
    }

    /// `s_i w`.
    pub fn left_mul_gen(&self, i: usize, w: &WeylElement) -> WeylElement {
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(i);
        word.extend_from_slice(&w.word);
        self.from_word(&word)
    }

    /// `w s_i`.
    pub fn right_mul_gen(&self, w: &WeylElement, i: usize) -> WeylElement {
        let mut word = w.word.clone();
        word.push(i);
        self.from_word(&word)
    }

    /// `l(w s_i) < l(w)`, i.e. `w . coroot_i` is negative.
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.on_coroots.column_is_negative(i)
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        self.left_mul_gen(i, w).len() < w.len()
    }

    /// Length by the descent algorithm on the coroot matrix.
    pub fn length(&self, w: &WeylElement) -> usize {
        let mut m = w.on_coroots.clone();
        let mut count = 0;
        while let Some(i) = (0..self.rank()).find(|&i| m.column_is_negative(i)) {
            self.right_mul_coroot_gen(&mut m, i);
            count += 1;
        }
        count
    }

    /// Bruhat order `v <= w`.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let mut v = v.clone();
        let mut w = w.clone();
        loop {
            if v.len() > w.len() {
                return false;
            }
            if w.is_identity() {
                return v.is_identity();
            }
            if v == w {
                return true;
            }
            // s is a left descent of w; lift through it.
            let s = w.word[0];
            let sv = self.left_mul_gen(s, &v);
            if sv.len() < v.len() {
                v = sv;
            }
            w = self.from_word(&w.word[1..]);
        }
    }

    /// `{beta > 0 : w.beta < 0}`, sorted by (height, coordinates).
    pub fn inversion_coroots(&self, w: &WeylElement) -> Vec<Coroot> {
        let k = self.rank();
        let word = &w.word;
        let mut out: Vec<Coroot> = (0..word.len())
            .map(|j| {
                let mut c = Coroot::simple(k, word[j]);
                for &t in &word[j + 1..] {
                    c = self.datum.reflect_coroot(t, &c);
                }
                c
            })
            .collect();
        out.sort();
        out
    }

    pub fn reflection_from_coroot(&self, beta: &Coroot) -> Result<Reflection, CoxeterError> {
        let pos = beta.positive_part();
        let (path, simple) = self.datum.descend(&pos).ok_or_else(|| CoxeterError::NotARealCoroot(beta.clone()))?;
        let mut word = path.clone();
        word.push(simple);
        word.extend(path.iter().rev());
        Ok(Reflection {
            coroot: pos,
            element: self.from_word(&word),
            conjugator: self.from_word(&path),
            simple,
        })
    }

    /// Positive coroot of a reflection, or `None` if `r` is not a reflection.
    pub fn coroot_of_reflection(&self, r: &WeylElement) -> Option<Coroot> {
        let k = self.rank();
        if r.is_identity() || !self.multiply(r, r).is_identity() {
            return None;
        }
        let cols: Vec<Vec<i64>> = (0..k)
            .map(|b| (0..k).map(|a| i64::from(a == b) - r.on_coroots.get(a, b)).collect())
            .collect();
        let c = cols.iter().find(|c| c.iter().any(|&x| x != 0))?;
        let g = gcd_all(c);
        let beta = Coroot::new(c.iter().map(|x| x / g).collect()).positive_part();
        let refl = self.reflection_from_coroot(&beta).ok()?;
        (refl.element == *r).then_some(beta)
    }

    /// Elements of length at most `bound`, in (length, ShortLex) order.
    pub fn enumerate_ball(&self, bound: usize) -> Vec<WeylElement> {
        let mut out = vec![self.identity()];
        let mut layer = vec![self.identity()];
        for _ in 0..bound {
            let mut next = BTreeSet::new();
            for u in &layer {
                for i in 0..self.rank() {
                    if !self.is_right_descent(u, i) {
                        next.insert(self.right_mul_gen(u, i));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Length of the longest element if the group is finite with longest
    /// length at most `cap`.
    pub fn longest_length(&self, cap: usize) -> Option<usize> {
        let ball = self.enumerate_ball(cap + 1);
        let top = ball.last().map_or(0, WeylElement::len);
        (top <= cap).then_some(top)
    }
}
