//! Exact scalars: prime fields `F_p` and the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Prime field `F_p`; rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { value: 0, p },
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u64, p },
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::Rationals => None,
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }

    /// Parses a field literal: an integer for `F_p`, `num/den` or an integer for `Q`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Prime(_) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad F_p literal `{s}`")))?;
                Ok(self.from_i64(n))
            }
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad rational literal `{s}`")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad rational literal `{s}`")))?;
                if den.is_zero() {
                    return Err(Error::Validation(format!("zero denominator in `{s}`")));
                }
                Ok(Scalar::Q(BigRational::new(num, den)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// An element of a [`FieldSpec`]. Arithmetic between different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u64, p: u64 },
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Q(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: inv_mod(*value, *p), p: *p },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: (a + b) % p, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: (a + p - b) % p, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: a * b % p, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: (p - value) % p, p: *p },
            Scalar::Q(a) => Scalar::Q(-a),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
