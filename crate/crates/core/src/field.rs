//! Exact scalar fields: the rationals and quadratic extensions `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("sqrt({0}) and sqrt({1}) do not live in one quadratic field")]
    MixedExtension(i64, i64),
    #[error("sqrt({0}) is not in this field")]
    NoSquareRoot(i64),
}

/// An exact field of characteristic zero with a fixed complex embedding.
///
/// `Ord` is an arbitrary total order, used only to make canonical forms
/// deterministic.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: BigRational) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Square root of an integer, if it lies in the field.
    fn sqrt_of_int(n: i64) -> Result<Self, ScalarError>;
    /// Image under the fixed embedding into the complex numbers.
    fn to_complex(&self) -> (f64, f64);
    /// Exact test for "is a real number > 0" under the embedding.
    fn is_positive_real(&self) -> bool;
    fn parse(s: &str) -> Result<Self, ScalarError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// `self^e`; `None` for a negative power of zero.
    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * sq.clone();
            }
            n >>= 1;
            if n > 0 {
                sq = sq.clone() * sq;
            }
        }
        Some(acc)
    }

    fn modulus(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }
}

/// Splits `n = k^2 * m` with `m` squarefree.
fn square_part(n: i64) -> (i64, i64) {
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k as i64, sign * m as i64)
}

fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    BigRational::from_str(t).map_err(|_| ScalarError::Parse(s.to_string()))
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: BigRational) -> Self {
        r
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn sqrt_of_int(n: i64) -> Result<Self, ScalarError> {
        let (k, m) = square_part(n);
        match m {
            1 => Ok(Self::from_i64(k)),
            0 => Ok(Zero::zero()),
            _ => Err(ScalarError::NoSquareRoot(n)),
        }
    }
    fn to_complex(&self) -> (f64, f64) {
        (self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_positive_real(&self) -> bool {
        self.is_positive()
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }
}

/// An element `a + b*sqrt(d)` of a quadratic extension of the rationals.
///
/// `d` is squarefree and different from 0 and 1 whenever `b != 0`; rational
/// elements carry `d = 0` so they combine with any extension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadratic {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl Quadratic {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self, ScalarError> {
        if Zero::is_zero(&b) || d == 0 {
            return Ok(Self::rational(a));
        }
        let (k, m) = square_part(d);
        if m == 1 {
            return Ok(Self::rational(a + b * BigRational::from_integer(k.into())));
        }
        Ok(Self::normalized(a, b * BigRational::from_integer(k.into()), m))
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: Zero::zero(), d: 0 }
    }

    fn normalized(a: BigRational, b: BigRational, d: i64) -> Self {
        if Zero::is_zero(&b) {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or `None` for a rational element.
    pub fn radicand(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    fn common_radicand(&self, other: &Self) -> i64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("{}", ScalarError::MixedExtension(d, e)),
        }
    }

    fn real_sign(&self) -> Option<Ordering> {
        if self.d < 0 {
            return None;
        }
        let zero: BigRational = Zero::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        Some(match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            (s, t) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * BigRational::from_integer(self.d.into());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => t,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        })
    }
}

impl Add for Quadratic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::normalized(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Quadratic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::normalized(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Quadratic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let dd = BigRational::from_integer(d.into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::normalized(a, b, d)
    }
}

impl Div for Quadratic {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero")
    }
}

impl Neg for Quadratic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::normalized(-self.a, -self.b, self.d)
    }
}

impl Field for Quadratic {
    fn zero() -> Self {
        Self::rational(Zero::zero())
    }
    fn one() -> Self {
        Self::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_rational(r: BigRational) -> Self {
        Self::rational(r)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let dd = BigRational::from_integer(self.d.into());
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        Some(Self::normalized(&self.a / &norm, -(&self.b / &norm), self.d))
    }
    fn sqrt_of_int(n: i64) -> Result<Self, ScalarError> {
        let (k, m) = square_part(n);
        let k = BigRational::from_integer(k.into());
        Ok(match m {
            0 => Self::zero(),
            1 => Self::rational(k),
            _ => Self::normalized(Zero::zero(), k, m),
        })
    }
    fn to_complex(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.d >= 0 {
            (a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            (a, b * (-self.d as f64).sqrt())
        }
    }
    fn is_positive_real(&self) -> bool {
        self.real_sign() == Some(Ordering::Greater)
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ScalarError::Parse(s.to_string());
        let Some(at) = compact.find("sqrt(") else {
            return Ok(Self::rational(parse_rational(&compact)?));
        };
        let rest = &compact[at + 5..];
        let radicand = rest.strip_suffix(')').ok_or_else(err)?;
        let d: i64 = radicand.parse().map_err(|_| err())?;
        let head = &compact[..at];
        let (a, b) = match head.strip_suffix('*') {
            Some(p) => match p.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last() {
                Some((i, _)) => (parse_rational(&p[..i])?, parse_rational(&p[i..])?),
                None => (Zero::zero(), parse_rational(p)?),
            },
            None => {
                let (a_part, sign) = match head.chars().last() {
                    Some('+') => (&head[..head.len() - 1], 1),
                    Some('-') => (&head[..head.len() - 1], -1),
                    None => ("", 1),
                    Some(_) => return Err(err()),
                };
                let a = if a_part.is_empty() { Zero::zero() } else { parse_rational(a_part)? };
                (a, BigRational::from_integer(sign.into()))
            }
        };
        Self::new(a, b, d)
    }
}

impl Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            return write!(f, "{}", self.a);
        }
        let mag = self.b.abs();
        let neg = self.b.is_negative();
        let coeff = if One::is_one(&mag) { String::new() } else { format!("{mag}*") };
        if Zero::is_zero(&self.a) {
            write!(f, "{}{coeff}sqrt({})", if neg { "-" } else { "" }, self.d)
        } else {
            write!(f, "{}{}{coeff}sqrt({})", self.a, if neg { "-" } else { "+" }, self.d)
        }
    }
}

impl Debug for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Convenience constructor for rational literals in tests and catalogs.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
