//! Exact scalars over ℚ and 𝔽_p.
//!
//! Rationals keep an `i64` fast path and promote to arbitrary precision
//! only when an intermediate result no longer fits. Both representations
//! are kept in lowest terms with a positive denominator, and a value that
//! fits in `i64` is always stored small, so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field 𝔽_p. Fails unless `p` is prime and small enough for
    /// products of residues to fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldScalar {
        match self {
            Field::Rational => FieldScalar::Rational(Rational::from_int(n)),
            Field::Prime(p) => FieldScalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `(-1)^k` in this field.
    pub fn sign(self, odd: bool) -> FieldScalar {
        if odd {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldScalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Parses an integer or `a/b` literal into this field.
    pub fn parse_scalar(self, text: &str) -> Result<FieldScalar> {
        let bad = || Error::BadScalar(text.to_string());
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            self.from_bigint(&n).div(&self.from_bigint(&d))
        } else {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(self.from_bigint(&n))
        }
    }

    fn from_bigint(self, n: &BigInt) -> FieldScalar {
        match self {
            Field::Rational => {
                FieldScalar::Rational(Rational::from_big(BigRational::from_integer(n.clone())))
            }
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldScalar::Modular {
                    value: r.to_u64().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        // i64::MIN is kept out of the small range so negation never overflows.
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small {
                num: n as i64,
                den: d as i64,
            }
        } else {
            Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small { num: n, den: d };
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small { num, .. } => BigInt::from(*num),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small { den, .. } => BigInt::from(*den),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) =
            (self, other)
        {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Self::from_i128(a + c, b);
            }
            return Self::from_i128(a * d + c * b, b * d);
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small { num, den } => Rational::Small {
                num: -num,
                den: *den,
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) =
            (self, other)
        {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }

    fn cmp_zero(&self) -> Ordering {
        match self {
            Rational::Small { num, .. } => num.cmp(&0),
            Rational::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else if b.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// An element of ℚ or 𝔽_p. Arithmetic between scalars of different fields
/// is a logic error and panics; every container checks field agreement at
/// construction time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(Rational),
    Modular { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rational,
            FieldScalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => matches!(r, Rational::Small { num: 1, den: 1 }),
            FieldScalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        match self {
            FieldScalar::Rational(r) => r
                .inv()
                .map(FieldScalar::Rational)
                .ok_or(Error::DivisionByZero),
            FieldScalar::Modular { value, modulus } => {
                if *value == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldScalar::Modular {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn div(&self, other: &FieldScalar) -> Result<FieldScalar> {
        Ok(self * &other.inv()?)
    }

    /// Sign of a nonzero rational (always `Greater` for nonzero residues).
    pub fn signum(&self) -> Ordering {
        match self {
            FieldScalar::Rational(r) => r.cmp_zero(),
            FieldScalar::Modular { value, .. } => value.cmp(&0),
        }
    }

    /// `-self` when `odd`, otherwise a clone.
    pub fn signed(&self, odd: bool) -> FieldScalar {
        if odd {
            -self
        } else {
            self.clone()
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &FieldScalar, b: &FieldScalar) -> ! {
    panic!("arithmetic between {} and {}", a.field(), b.field())
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a.add(b)),
            (
                FieldScalar::Modular { value: a, modulus },
                FieldScalar::Modular { value: b, modulus: m2 },
            ) if modulus == m2 => FieldScalar::Modular {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self + &(-rhs)
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a.mul(b)),
            (
                FieldScalar::Modular { value: a, modulus },
                FieldScalar::Modular { value: b, modulus: m2 },
            ) if modulus == m2 => FieldScalar::Modular {
                value: a * b % modulus,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(a.neg()),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}
