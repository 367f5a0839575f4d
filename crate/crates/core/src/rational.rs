//! Exact rational scalars with overflow-checked `i128` parts.
//!
//! Every operation returns `Result`; nothing wraps or silently promotes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{ArithError, Error, Result};

/// A reduced fraction `num / den` with `den > 0` and `gcd(|num|, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(ArithError::DivisionByZero.into());
        }
        if num == i128::MIN || den == i128::MIN {
            return Err(ArithError::Overflow.into());
        }
        let g = gcd(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Rational { num: n, den: d })
    }

    pub const fn from_int(n: i64) -> Self {
        Rational { num: n as i128, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn add(&self, other: &Rational) -> Result<Rational> {
        if self.den == other.den {
            let n = self.num.checked_add(other.num).ok_or(ArithError::Overflow)?;
            return Rational::new(n, self.den);
        }
        let g = gcd(self.den, other.den);
        let lhs = self
            .num
            .checked_mul(other.den / g)
            .ok_or(ArithError::Overflow)?;
        let rhs = other
            .num
            .checked_mul(self.den / g)
            .ok_or(ArithError::Overflow)?;
        let n = lhs.checked_add(rhs).ok_or(ArithError::Overflow)?;
        let d = (self.den / g)
            .checked_mul(other.den)
            .ok_or(ArithError::Overflow)?;
        Rational::new(n, d)
    }

    pub fn neg(&self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }

    pub fn sub(&self, other: &Rational) -> Result<Rational> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Result<Rational> {
        if self.num == 0 || other.num == 0 {
            return Ok(Rational::ZERO);
        }
        // cross-cancel first so intermediates stay as small as possible
        let g1 = gcd(self.num, other.den);
        let g2 = gcd(other.num, self.den);
        let n = (self.num / g1)
            .checked_mul(other.num / g2)
            .ok_or(ArithError::Overflow)?;
        let d = (self.den / g2)
            .checked_mul(other.den / g1)
            .ok_or(ArithError::Overflow)?;
        Rational::new(n, d)
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::new(self.den, self.num)
    }

    pub fn div(&self, other: &Rational) -> Result<Rational> {
        self.mul(&other.recip()?)
    }

    pub fn mul_int(&self, k: i64) -> Result<Rational> {
        self.mul(&Rational::from_int(k))
    }

    /// Positive rational square root, if one exists.
    pub fn sqrt(&self) -> Option<Rational> {
        if self.num < 0 {
            return None;
        }
        let n = isqrt(self.num)?;
        let d = isqrt(self.den)?;
        Some(Rational { num: n, den: d })
    }
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r > 0 && r.checked_mul(r).is_none_or(|sq| sq > v) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= v) {
        r += 1;
    }
    (r * r == v).then_some(r)
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // exact comparison; falls back to a subtraction sign when products overflow
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => match self.sub(other) {
                Ok(diff) => diff.num.cmp(&0),
                Err(_) => (self.num as f64 / self.den as f64)
                    .partial_cmp(&(other.num as f64 / other.den as f64))
                    .unwrap_or(Ordering::Equal),
            },
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Rational::new(parse(s)?, 1),
        }
    }
}

/// Sum with overflow checking.
pub fn sum<'a, I>(items: I) -> Result<Rational>
where
    I: IntoIterator<Item = &'a Rational>,
{
    items
        .into_iter()
        .try_fold(Rational::ZERO, |acc, r| acc.add(r))
}
